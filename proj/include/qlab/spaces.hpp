#pragma once

#include "qlab/step_function.hpp"

#include <limits>
#include <vector>

namespace qlab {

constexpr double kInfExponent = std::numeric_limits<double>::infinity();

/// Finite-dimensional l^p space surrogate.
struct NormedSpace {
    int dim = 1;
    double p = 2.0;  // kInfExponent for sup norm

    double norm(const Coord& v) const;
    double dual_exponent() const {
        if (p == kInfExponent) return 1.0;
        if (p == 1.0) return kInfExponent;
        return p / (p - 1.0);
    }
    NormedSpace dual() const { return {dim, dual_exponent()}; }
};

/// Trilinear form Pi : X1 x X2 x X3 -> scalars, evaluated exactly.
struct TrilinearForm {
    enum class Kind { Duality, Scalar, Tensor };

    Kind kind = Kind::Scalar;
    int d1 = 1, d2 = 1, d3 = 1;
    // Tensor case: coefficient at (i,j,k) is tensor[(i*d2 + j)*d3 + k].
    std::vector<ExactScalar> tensor;
    double bound_constant = 1.0;

    static TrilinearForm duality(int d) { return {Kind::Duality, d, d, 1, {}, 1.0}; }
    static TrilinearForm scalar() { return {Kind::Scalar, 1, 1, 1, {}, 1.0}; }

    int dim(int slot) const { return slot == 1 ? d1 : slot == 2 ? d2 : d3; }

    ExactScalar eval(const Coord& x1, const Coord& x2, const Coord& x3) const;

    /// Induced bilinear form: pairs the two inputs, returns coordinates of a
    /// functional on the remaining slot's space.
    Coord induced(int slot, const Coord& x, const Coord& y) const;
};

/// Dual pairing of a coordinate functional with a vector.
ExactScalar pair(const Coord& functional, const Coord& v);

struct QuartileTypeEstimate {
    double q = 2.0;
    double worst_ratio = 0.0;
    int witness_family = -1;
};

}  // namespace qlab
