#include "qlab/dyadic_core.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace qlab {

StepFunction conditional_expectation(const StepFunction& f, int scale) {
    if (scale < -f.resolution())
        return f;  // finer than the cells: f already constant there
    StepFunction out(-scale, f.support_bound(), f.dim(), f.space_tag());
    std::set<long long> blocks;
    int shift = scale + f.resolution();
    for (const auto& [i, v] : f.cells()) blocks.insert(i >> shift);
    for (long long b : blocks)
        out.set_cell(b, f.average(DyadicInterval{b, scale}));
    return out;
}

ExactScalar dyadic_maximal(const StepFunction& f, long long cell) {
    if (f.dim() != 1) throw std::invalid_argument("dyadic_maximal: scalar input required");
    for (const auto& [i, v] : f.cells())
        if (v[0].sign() < 0)
            throw std::domain_error("dyadic_maximal: negative values");
    DyadicInterval I = f.cell_interval(cell);
    ExactScalar best = f.average(I)[0];
    while (I.log_len < f.support_bound()) {
        I = I.parent();
        ExactScalar a = f.average(I)[0];
        if (best < a) best = a;
    }
    return best;
}

double lp_norm(const StepFunction& f, double p, const NormedSpace& space) {
    double h = std::ldexp(1.0, -f.resolution());
    if (p == kInfExponent) {
        double m = 0.0;
        for (const auto& [i, v] : f.cells()) m = std::max(m, space.norm(v));
        return m;
    }
    double sum = 0.0;
    for (const auto& [i, v] : f.cells()) sum += h * std::pow(space.norm(v), p);
    return std::pow(sum, 1.0 / p);
}

ExactScalar l2_norm_sq_exact(const StepFunction& f) {
    ExactScalar sum;
    ExactScalar h(DyadicRational::pow2(-f.resolution()));
    for (const auto& [i, v] : f.cells())
        for (const auto& c : v) sum += c.squared() * h;
    return sum;
}

double bmo_norm(const StepFunction& f, double p, const NormedSpace& space) {
    if (f.is_zero()) return 0.0;
    // Candidate intervals: ancestors of support cells, all scales down to the
    // resolution. Off-support intervals contribute 0.
    std::set<DyadicInterval> candidates;
    for (const auto& [i, v] : f.cells()) {
        DyadicInterval I = f.cell_interval(i);
        candidates.insert(I);
        while (I.log_len < f.support_bound()) {
            I = I.parent();
            candidates.insert(I);
        }
    }
    // Also sub-intervals of the support cells are constant there, oscillation 0.
    double h = std::ldexp(1.0, -f.resolution());
    double best = 0.0;
    for (const auto& I : candidates) {
        Coord avg = f.average(I);
        double navg = space.norm(avg);
        long long ncells = 1LL << (I.log_len + f.resolution());
        long long nonzero = 0;
        double sum = 0.0;
        for (const auto& [i, v] : f.cells()) {
            if (!I.contains(f.cell_interval(i))) continue;
            ++nonzero;
            Coord diff(v.size());
            for (size_t d = 0; d < v.size(); ++d) diff[d] = v[d] - avg[d];
            sum += h * std::pow(space.norm(diff), p);
        }
        sum += h * (ncells - nonzero) * std::pow(navg, p);
        double val = std::pow(std::ldexp(sum, -I.log_len), 1.0 / p);
        best = std::max(best, val);
    }
    return best;
}

}  // namespace qlab
