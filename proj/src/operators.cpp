#include "qlab/operators.hpp"

#include "qlab/sizes.hpp"
#include "qlab/walsh.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

namespace qlab {

DyadicInterval select_half(const DyadicInterval& I, HalfSel s) {
    switch (s) {
        case HalfSel::Whole: return I;
        case HalfSel::Left: return I.left_child();
        case HalfSel::Right: return I.right_child();
    }
    throw std::logic_error("select_half: bad selector");
}

StepFunction haar_shift(const HaarShiftSpec& spec, const StepFunction& f) {
    StepFunction out(f.resolution(), f.support_bound(), f.dim(), f.space_tag());
    for (const auto& I : spec.intervals) {
        StepFunction ha = haar_function(select_half(I, spec.a));
        StepFunction hb = haar_function(select_half(I, spec.b));
        Coord c = inner_product(f, hb);
        bool zero = true;
        for (const auto& x : c) if (!x.is_zero()) { zero = false; break; }
        if (zero) continue;
        StepFunction term(ha.resolution(), ha.support_bound(), f.dim(), f.space_tag());
        for (const auto& [i, hv] : ha.cells()) {
            Coord val(f.dim());
            for (int d = 0; d < f.dim(); ++d) val[d] = c[d] * hv[0];
            term.set_cell(i, std::move(val));
        }
        out = out + term;
    }
    return out;
}

StepFunction walsh_shift(int m, const std::vector<DyadicInterval>& intervals,
                         const StepFunction& f) {
    if (m < 1 || m > 3) throw std::invalid_argument("walsh_shift: m must be 1..3");
    StepFunction out(f.resolution(), f.support_bound(), f.dim(), f.space_tag());
    for (const auto& I : intervals) {
        StepFunction w = wave_packet(Tile{I, m}, PacketNorm::L2);
        Coord c = inner_product(f, w);
        StepFunction term(w.resolution(), w.support_bound(), f.dim(), f.space_tag());
        for (const auto& [i, wv] : w.cells()) {
            Coord val(f.dim());
            for (int d = 0; d < f.dim(); ++d) val[d] = c[d] * wv[0];
            term.set_cell(i, std::move(val));
        }
        out = out + term;
    }
    return out;
}

StepFunction walsh_shift_expanded(int m, const std::vector<DyadicInterval>& intervals,
                                  const StepFunction& f) {
    if (m < 1 || m > 3) throw std::invalid_argument("walsh_shift_expanded: m must be 1..3");
    if (m == 1) return haar_shift({HalfSel::Whole, HalfSel::Whole, intervals}, f);
    // w_{I,2} = (h_{Il}+h_{Ir})/sqrt2, w_{I,3} = (h_{Il}-h_{Ir})/sqrt2, so the
    // projection expands into four half-half shifts with weight 1/2.
    ExactScalar half(DyadicRational(BigInt(1), 1));
    StepFunction out(f.resolution(), f.support_bound(), f.dim(), f.space_tag());
    for (HalfSel a : {HalfSel::Left, HalfSel::Right})
        for (HalfSel b : {HalfSel::Left, HalfSel::Right}) {
            int sgn = 1;
            if (m == 3) {
                if (a == HalfSel::Right) sgn = -sgn;
                if (b == HalfSel::Right) sgn = -sgn;
            }
            StepFunction s = haar_shift({a, b, intervals}, f);
            out = out + s.scaled(sgn > 0 ? half : ExactScalar() - half);
        }
    return out;
}

LambdaResult lambda_form(const QuartileCollection& collection, const TrilinearForm& Pi,
                         const StepFunction& f1, const StepFunction& f2, const StepFunction& f3,
                         bool absolute, bool want_terms) {
    if (f1.dim() != Pi.d1 || f2.dim() != Pi.d2 || f3.dim() != Pi.d3)
        throw std::invalid_argument("lambda_form: space mismatch");
    PacketCache pc;
    LambdaResult result;
    for (const auto& P : collection.members) {
        LambdaTerm t;
        t.quartile = P;
        t.c1 = inner_product(f1, pc.l2(P.child(1)));
        t.c2 = inner_product(f2, pc.l2(P.child(2)));
        t.c3 = inner_product(f3, pc.l2(P.child(3)));
        t.value = ExactScalar::sqrt_pow2(-P.time.log_len) * Pi.eval(t.c1, t.c2, t.c3);
        result.total += absolute ? t.value.abs() : t.value;
        if (want_terms) result.terms.push_back(std::move(t));
    }
    return result;
}

StepFunction bilinear_B(const QuartileCollection& collection, const TrilinearForm& Pi,
                        int slot, const StepFunction& f, const StepFunction& g) {
    if (slot < 1 || slot > 3) throw std::invalid_argument("bilinear_B: slot must be 1..3");
    int others[2], k = 0;
    for (int v = 1; v <= 3; ++v)
        if (v != slot) others[k++] = v;
    if (f.dim() != Pi.dim(others[0]) || g.dim() != Pi.dim(others[1]))
        throw std::invalid_argument("bilinear_B: space mismatch");
    PacketCache pc;
    StepFunction out(f.resolution(), std::max(f.support_bound(), g.support_bound()),
                     Pi.dim(slot));
    for (const auto& P : collection.members) {
        Coord cf = inner_product(f, pc.l2(P.child(others[0])));
        Coord cg = inner_product(g, pc.l2(P.child(others[1])));
        Coord functional = Pi.induced(slot, cf, cg);
        bool zero = true;
        for (const auto& x : functional) if (!x.is_zero()) { zero = false; break; }
        if (zero) continue;
        ExactScalar scale = ExactScalar::sqrt_pow2(-P.time.log_len);
        const StepFunction& w = pc.l2(P.child(slot));
        StepFunction term(w.resolution(), w.support_bound(), Pi.dim(slot));
        for (const auto& [i, wv] : w.cells()) {
            Coord val(functional.size());
            for (size_t d = 0; d < functional.size(); ++d)
                val[d] = functional[d] * wv[0] * scale;
            term.set_cell(i, std::move(val));
        }
        out = out + term;
    }
    return out;
}

ConvergenceReport convergence_oracle(const DyadicInterval& J1, const DyadicInterval& J2,
                                     const DyadicInterval& J3, const Grid& grid) {
    const DyadicInterval J[3] = {J1, J2, J3};
    ConvergenceReport rep;
    rep.bound = J1.length();
    for (int i = 1; i < 3; ++i)
        if (J[i].length() < rep.bound) rep.bound = J[i].length();

    PacketCache pc;
    StepFunction ind[3];
    for (int i = 0; i < 3; ++i) {
        ind[i] = StepFunction(std::max(0, -J[i].log_len), grid.K, 1);
        long long first = J[i].pos << (ind[i].resolution() + J[i].log_len);
        long long count = 1LL << (ind[i].resolution() + J[i].log_len);
        for (long long c = 0; c < count; ++c) ind[i].set_cell(first + c, {ExactScalar(1)});
    }

    int jmin = std::max({J1.log_len, J2.log_len, J3.log_len}) + 1;
    for (int j = jmin; j <= grid.K; ++j) {
        DyadicInterval I = J1.ancestor(j);
        bool ok = true;
        for (int i = 1; i < 3; ++i)
            if (!I.contains(J[i])) ok = false;
        if (!ok) continue;
        // A term with f_i = 1_{J_i} can be nonzero only when the child
        // frequencies stay below |I|/|J_i|: 4n+i < 2^{j - log|J_i|}.
        for (long long n = 0; n < (1LL << (grid.N + j)); ++n) {
            bool pass = true;
            for (int i = 0; i < 3; ++i) {
                int e = j - J[i].log_len;
                if (e >= 63 || 4 * n + (i + 1) < (1LL << e)) continue;
                pass = false;
                break;
            }
            if (!pass) break;  // conditions are monotone in n
            Quartile P{I, n};
            rep.contributing.push_back(P);
            ExactScalar v = ExactScalar::sqrt_pow2(-j);
            for (int i = 0; i < 3; ++i)
                v *= inner_product(ind[i], pc.l2(P.child(i + 1)))[0];
            rep.abs_sum += v.abs();
        }
    }
    return rep;
}

MomentReport randomized_projection_moment(const Tree& t, int v, const StepFunction& f,
                                          double p, int n_roots, const MomentMode& mode,
                                          const NormedSpace& space) {
    if (n_roots < 1) throw std::invalid_argument("randomized_projection_moment: n_roots >= 1");
    size_t m = t.members.size();
    if (mode.exact && m > 12)
        throw std::invalid_argument("randomized_projection_moment: exact mode capped at 12 members");
    PacketCache pc;
    int dim = f.dim();

    // Per-member coefficient <f, w_{P_v}> and indicator weight |I_P|^{-1/2}.
    std::vector<std::vector<double>> coef(m, std::vector<double>(dim));
    std::vector<double> weight(m);
    int res = 0;
    for (size_t i = 0; i < m; ++i) {
        Coord c = inner_product(f, pc.l2(t.members[i].child(v)));
        for (int d = 0; d < dim; ++d) coef[i][d] = c[d].to_double();
        weight[i] = std::pow(std::ldexp(1.0, t.members[i].time.log_len), -0.5);
        res = std::max(res, -t.members[i].time.log_len);
    }
    res = std::max(res, -t.top.time.log_len);

    long long first = t.top.time.pos << (res + t.top.time.log_len);
    long long ncells = 1LL << (res + t.top.time.log_len);
    double h = std::ldexp(1.0, -res);

    std::vector<std::vector<size_t>> cell_members(ncells);
    for (long long c = 0; c < ncells; ++c)
        for (size_t i = 0; i < m; ++i)
            if (t.members[i].time.contains(DyadicInterval{first + c, -res}))
                cell_members[c].push_back(i);

    std::vector<std::complex<double>> roots(n_roots);
    for (int r = 0; r < n_roots; ++r)
        roots[r] = std::polar(1.0, 2.0 * M_PI * r / n_roots);

    auto instance = [&](const std::vector<int>& signs) {
        double integral = 0.0;
        std::vector<std::complex<double>> val(dim);
        for (long long c = 0; c < ncells; ++c) {
            if (cell_members[c].empty()) continue;
            std::fill(val.begin(), val.end(), std::complex<double>(0.0));
            for (size_t i : cell_members[c])
                for (int d = 0; d < dim; ++d)
                    val[d] += roots[signs[i]] * (coef[i][d] * weight[i]);
            double nrm;
            if (space.p == kInfExponent) {
                nrm = 0.0;
                for (int d = 0; d < dim; ++d) nrm = std::max(nrm, std::abs(val[d]));
            } else {
                nrm = 0.0;
                for (int d = 0; d < dim; ++d) nrm += std::pow(std::abs(val[d]), space.p);
                nrm = std::pow(nrm, 1.0 / space.p);
            }
            integral += h * std::pow(nrm, p);
        }
        return integral;
    };

    double expectation = 0.0;
    std::vector<int> signs(m, 0);
    if (mode.exact) {
        long long total = 1;
        for (size_t i = 0; i < m; ++i) total *= n_roots;
        for (long long pattern = 0; pattern < total; ++pattern) {
            long long x = pattern;
            for (size_t i = 0; i < m; ++i) { signs[i] = static_cast<int>(x % n_roots); x /= n_roots; }
            expectation += instance(signs);
        }
        expectation /= static_cast<double>(total);
    } else {
        std::mt19937_64 rng(mode.seed);
        for (int s = 0; s < mode.samples; ++s) {
            for (size_t i = 0; i < m; ++i) signs[i] = static_cast<int>(rng() % n_roots);
            expectation += instance(signs);
        }
        expectation /= static_cast<double>(mode.samples);
    }

    MomentReport rep;
    rep.moment = std::pow(expectation, 1.0 / p);

    QuartileCollection coll;
    for (const auto& q : t.members) coll.insert(q);
    Grid g{std::max(0, t.top.time.log_len), res};
    SizeReport sr = size(coll, v, p, f, space, g, SizeMethod::FullTreeSup, &pc);
    rep.size_bound = sr.value * std::pow(std::ldexp(1.0, t.top.time.log_len), 1.0 / p);
    rep.ratio = rep.size_bound > 0.0 ? rep.moment / rep.size_bound : 0.0;
    return rep;
}

}  // namespace qlab
