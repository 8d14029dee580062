#pragma once

#include "qlab/corpus.hpp"
#include "qlab/dyadic_core.hpp"
#include "qlab/walsh.hpp"

#include <cmath>

namespace qlab::testutil {

/// Indicator 1_I materialized at the given resolution on [0, 2^K).
inline StepFunction indicator(const DyadicInterval& I, int res, int K) {
    StepFunction f(res, K, 1);
    long long first = I.pos << (res + I.log_len);
    long long count = 1LL << (res + I.log_len);
    for (long long c = first; c < first + count; ++c) f.set_cell(c, {ExactScalar(1)});
    return f;
}

inline bool close(double a, double b, double tol = 1e-9) {
    return std::fabs(a - b) <= tol * std::max({1.0, std::fabs(a), std::fabs(b)});
}

inline bool coord_zero(const Coord& c) {
    for (const auto& x : c)
        if (!x.is_zero()) return false;
    return true;
}

}  // namespace qlab::testutil
