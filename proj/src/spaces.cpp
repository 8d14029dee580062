#include "qlab/spaces.hpp"

#include <cmath>
#include <stdexcept>

namespace qlab {

double NormedSpace::norm(const Coord& v) const {
    if (static_cast<int>(v.size()) != dim) throw std::invalid_argument("norm: dimension mismatch");
    if (p == kInfExponent) {
        double m = 0.0;
        for (const auto& c : v) m = std::max(m, std::fabs(c.to_double()));
        return m;
    }
    double sum = 0.0;
    for (const auto& c : v) sum += std::pow(std::fabs(c.to_double()), p);
    return std::pow(sum, 1.0 / p);
}

ExactScalar TrilinearForm::eval(const Coord& x1, const Coord& x2, const Coord& x3) const {
    if (static_cast<int>(x1.size()) != d1 || static_cast<int>(x2.size()) != d2 ||
        static_cast<int>(x3.size()) != d3)
        throw std::invalid_argument("TrilinearForm::eval: dimension mismatch");
    switch (kind) {
        case Kind::Scalar:
            return x1[0] * x2[0] * x3[0];
        case Kind::Duality: {
            ExactScalar dot;
            for (int i = 0; i < d1; ++i) dot += x1[i] * x2[i];
            return dot * x3[0];
        }
        case Kind::Tensor: {
            ExactScalar sum;
            for (int i = 0; i < d1; ++i)
                for (int j = 0; j < d2; ++j)
                    for (int k = 0; k < d3; ++k)
                        sum += tensor[(static_cast<size_t>(i) * d2 + j) * d3 + k] * x1[i] * x2[j] * x3[k];
            return sum;
        }
    }
    throw std::logic_error("TrilinearForm::eval: bad kind");
}

Coord TrilinearForm::induced(int slot, const Coord& x, const Coord& y) const {
    int dout = dim(slot);
    Coord out(dout);
    // Unit vectors in the open slot reproduce eval.
    Coord e(dout);
    for (int i = 0; i < dout; ++i) {
        for (int k = 0; k < dout; ++k) e[k] = ExactScalar(k == i ? 1 : 0);
        switch (slot) {
            case 1: out[i] = eval(e, x, y); break;
            case 2: out[i] = eval(x, e, y); break;
            case 3: out[i] = eval(x, y, e); break;
            default: throw std::invalid_argument("induced: slot must be 1..3");
        }
    }
    return out;
}

ExactScalar pair(const Coord& functional, const Coord& v) {
    if (functional.size() != v.size()) throw std::invalid_argument("pair: dimension mismatch");
    ExactScalar sum;
    for (size_t i = 0; i < v.size(); ++i) sum += functional[i] * v[i];
    return sum;
}

}  // namespace qlab
