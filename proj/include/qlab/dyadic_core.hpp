#pragma once

#include "qlab/spaces.hpp"
#include "qlab/step_function.hpp"

namespace qlab {

/// Ambient grid: functions live on [0, 2^K) at resolution N.
struct Grid {
    int K = 1;
    int N = 2;
};

/// Conditional expectation at scale j: constant on dyadic intervals of
/// length 2^j with the average of f there.
StepFunction conditional_expectation(const StepFunction& f, int scale);

/// Dyadic maximal function of a nonnegative scalar f at one cell: sup of
/// averages over the cell and its dyadic ancestors up to [0, 2^K). Exact.
ExactScalar dyadic_maximal(const StepFunction& f, long long cell);

/// Dyadic BMO_p norm; sup ranges over dyadic intervals meeting the support.
double bmo_norm(const StepFunction& f, double p, const NormedSpace& space);

/// L^p norm of a vector-valued step function (p = kInfExponent for sup).
double lp_norm(const StepFunction& f, double p, const NormedSpace& space);

/// Exact squared L^2 norm with coordinatewise squares (l^2 value norm).
ExactScalar l2_norm_sq_exact(const StepFunction& f);

}  // namespace qlab
