// Integrals of the box majorant and minorant of exp(-pi |x|^2) in d = 2 as the
// box grows, next to the Gaussian's own integral and the asymptotic certificate.

#include <cstdio>

#include "bandlimit/bandlimit.hpp"

int main() {
  using namespace bandlimit;
  std::printf("%6s %14s %14s %14s %12s %12s %4s\n", "a", "majorant", "gaussian", "minorant", "excess", "allowance",
              "ok");
  for (double a : {0.5, 0.75, 1.0, 1.5, 2.0, 3.0}) {
    BoxParams p({1.0, 1.0}, {a, a});
    const auto cert = asymptotic_certificate(p);
    std::printf("%6.2f %14.10f %14.10f %14.10f %12.3e %12.3e %4s\n", a, majorant_integral_nd(p),
                exact_gaussian_integral(p), minorant_integral_nd(p), cert.excess, cert.allowance,
                cert.ok ? "yes" : "no");
  }

  // spot check at one point: L <= G <= M
  BoxExtremal box(BoxParams({1.0, 2.0}, {1.0, 1.5}));
  const double x[] = {0.3, -0.7};
  std::printf("\nlambda=(1,2) a=(1,1.5) x=(0.3,-0.7): L=%.12f G=%.12f M=%.12f\n", box.minorant(x), box.gaussian(x),
              box.majorant(x));
  return 0;
}
