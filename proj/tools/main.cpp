#include "cli.hpp"

int main(int argc, char** argv) { return bandlimit::cli::run(argc, argv); }
