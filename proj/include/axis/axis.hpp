#pragma once

// Umbrella header for the axis library: eigenpairs and polynomial roots as
// zeros of matrix-induced vector fields on complex projective space, with
// index/degree cross-checks.

#include "axis/degree.hpp"
#include "axis/embedding.hpp"
#include "axis/errors.hpp"
#include "axis/fields.hpp"
#include "axis/homogeneous.hpp"
#include "axis/json_io.hpp"
#include "axis/matrix.hpp"
#include "axis/polynomial.hpp"
#include "axis/projective.hpp"
#include "axis/quadrature.hpp"
#include "axis/singular_combination.hpp"
#include "axis/solver.hpp"
#include "axis/tolerances.hpp"
#include "axis/tubular.hpp"
