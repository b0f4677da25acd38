#pragma once

#include "bandlimit/errors.hpp"
#include "bandlimit/theta.hpp"
#include "bandlimit/quadrature.hpp"
#include "bandlimit/gaussian1d.hpp"
#include "bandlimit/box_extremal.hpp"
#include "bandlimit/measures.hpp"
#include "bandlimit/subordination.hpp"
#include "bandlimit/periodic.hpp"
#include "bandlimit/hilbert.hpp"
#include "bandlimit/io.hpp"
#include "bandlimit/verify.hpp"
