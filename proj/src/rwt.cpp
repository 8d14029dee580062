#include "qlab/rwt.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qlab {

namespace {

DyadicRational measure(const StepFunction& ind) {
    DyadicRational m;
    DyadicRational h = DyadicRational::pow2(-ind.resolution());
    for (const auto& [i, v] : ind.cells()) {
        if (!(v[0] == ExactScalar(1)))
            throw std::invalid_argument("measure: not an indicator function");
        m += h;
    }
    return m;
}

}  // namespace

ExceptionalSetResult exceptional_set(const StepFunction& E1, const StepFunction& E2,
                                     const StepFunction& E3) {
    const StepFunction* E[3] = {&E1, &E2, &E3};
    ExceptionalSetResult out;
    for (int v = 0; v < 3; ++v) {
        if (E[v]->dim() != 1) throw std::invalid_argument("exceptional_set: scalar sets required");
        out.measures[v] = measure(*E[v]);
        if (out.measures[v].is_zero()) throw std::invalid_argument("exceptional_set: empty set");
    }
    out.tau = 1;
    for (int v = 1; v < 3; ++v)
        if (out.measures[out.tau - 1] < out.measures[v]) out.tau = v + 1;

    int res = std::max({E1.resolution(), E2.resolution(), E3.resolution()});
    int K = std::max({E1.support_bound(), E2.support_bound(), E3.support_bound()});
    StepFunction Ev[3];
    for (int v = 0; v < 3; ++v) Ev[v] = E[v]->refined(res).with_support_bound(K);

    const DyadicRational& mtau = out.measures[out.tau - 1];
    out.F = StepFunction(res, K, 1);
    long long ncells = 1LL << (K + res);
    for (long long c = 0; c < ncells; ++c) {
        bool in = false;
        for (int v = 0; v < 3 && !in; ++v) {
            // M 1_{E_v}(c) > 8 |E_v| / |E_tau|, cross-multiplied to stay exact.
            ExactScalar M = dyadic_maximal(Ev[v], c);
            if (out.measures[v].scaled(3) < M.a * mtau) in = true;
        }
        if (in) out.F.set_cell(c, {ExactScalar(1)});
    }
    out.f_measure = measure(out.F);
    if (mtau < out.f_measure.scaled(1))
        throw std::logic_error("exceptional_set: |F| > |E_tau|/2");
    return out;
}

namespace {

bool interval_inside(const StepFunction& ind, const DyadicInterval& I) {
    Coord total = ind.integral_over(I);
    return total[0] == ExactScalar(DyadicRational(I.length()));
}

}  // namespace

RwtAboveReport rwt_above(const QuartileCollection& P, const TrilinearForm& Pi,
                         const std::array<const StepFunction*, 3>& E,
                         const std::array<double, 3>& alpha, const std::array<double, 3>& q,
                         const std::array<const StepFunction*, 3>& f,
                         const std::array<NormedSpace, 3>& spaces, const Grid& grid) {
    double asum = 0.0;
    for (int v = 0; v < 3; ++v) {
        if (!(alpha[v] > 0.0 && alpha[v] < 1.0 / q[v])) {
            std::ostringstream os;
            os << "rwt_above: alpha_" << v + 1 << " = " << alpha[v] << " outside (0, 1/q_"
               << v + 1 << ")";
            throw std::invalid_argument(os.str());
        }
        asum += alpha[v];
    }
    if (std::fabs(asum - 1.0) > 1e-12)
        throw std::invalid_argument("rwt_above: alpha does not sum to 1");

    ExceptionalSetResult ex = exceptional_set(*E[0], *E[1], *E[2]);
    RwtAboveReport rep;
    rep.tau = ex.tau;
    rep.measures = ex.measures;
    rep.f_measure = ex.f_measure;
    rep.F = ex.F;

    // |f_v| <= 1_{E'_v} cellwise; E'_tau = E_tau \ F.
    for (int v = 0; v < 3; ++v) {
        int res = std::max({f[v]->resolution(), E[v]->resolution(), ex.F.resolution()});
        StepFunction fr = f[v]->refined(res);
        StepFunction er = E[v]->refined(res);
        StepFunction Fr = ex.F.refined(res);
        for (const auto& [i, val] : fr.cells()) {
            bool allowed = !er.value_at_cell(i)[0].is_zero();
            if (v + 1 == ex.tau && !Fr.value_at_cell(i)[0].is_zero()) allowed = false;
            if (!allowed || spaces[v].norm(val) > 1.0 + 1e-9) {
                std::ostringstream os;
                os << "rwt_above: f_" << v + 1 << " not dominated by 1_{E'_" << v + 1
                   << "} at cell " << i << " (resolution " << res << ")";
                throw std::invalid_argument(os.str());
            }
        }
    }

    QuartileCollection dropped, kept;
    for (const auto& p : P.members)
        (interval_inside(ex.F, p.time) ? dropped : kept).insert(p);
    rep.dropped_count = dropped.size();
    LambdaResult dl = lambda_form(dropped, Pi, *f[0], *f[1], *f[2], /*absolute=*/false);
    rep.dropped_vanish = dl.total.is_zero();

    rep.lambda_abs = lambda_form(kept, Pi, *f[0], *f[1], *f[2], /*absolute=*/true).total.to_double();
    rep.bound = 1.0;
    for (int v = 0; v < 3; ++v) rep.bound *= std::pow(rep.measures[v].to_double(), alpha[v]);
    rep.ratio = rep.bound > 0.0 ? rep.lambda_abs / rep.bound : 0.0;

    rep.decomp = full_decomposition(kept, f, q, spaces, grid);
    double mtau = rep.measures[ex.tau - 1].to_double();
    for (const auto& [n, lvl] : rep.decomp.levels) {
        double prod = 1.0;
        for (int v = 0; v < 3; ++v)
            prod *= std::min(rep.measures[v].to_double() / mtau,
                             std::pow(2.0, n / q[v]) * rep.decomp.norms[v]);
        rep.level_bounds[n] = std::ldexp(prod, -n);
        rep.skeleton_total += rep.level_bounds[n];
    }

    PacketCache pc;
    for (int v = 0; v < 3; ++v) {
        double s =
            size(kept, v + 1, q[v], *f[v], spaces[v], grid, SizeMethod::FullTreeSup, &pc).value;
        double ref = rep.measures[v].to_double() / mtau;
        rep.size_constants[v] = ref > 0.0 ? s / ref : 0.0;
    }
    return rep;
}

RwtBelowReport rwt_below_diagnostics(const std::array<double, 3>& measures,
                                     const std::array<double, 3>& q,
                                     const std::array<double, 3>& beta, double eps) {
    RwtBelowReport rep;
    rep.eps = eps;
    double rho = 1.0 / q[0] + 1.0 / q[1] + 1.0 / q[2] - 1.0;
    if (rho <= 0.0) throw std::invalid_argument("rwt_below_diagnostics: rho <= 0");
    for (double m : measures)
        if (!(m > 0.0)) throw std::invalid_argument("rwt_below_diagnostics: empty set");

    int tau = 0;
    for (int v = 1; v < 3; ++v)
        if (measures[v] > measures[tau]) tau = v;
    int o1 = (tau + 1) % 3, o2 = (tau + 2) % 3;
    double mt = measures[tau];
    auto key = [&](int v) { return std::pow(measures[v] / mt, q[v] - 1.0); };
    int a = key(o1) >= key(o2) ? o1 : o2;
    int b = a == o1 ? o2 : o1;
    rep.tau = tau + 1;
    rep.a = a + 1;
    rep.b = b + 1;

    for (int v = 0; v < 3; ++v) rep.d[v] = std::pow(mt / measures[v], q[v] - 1.0) * mt;
    rep.hypothesis_ok = rep.d[b] >= rep.d[a] * (1.0 - 1e-12) &&
                        rep.d[a] >= rep.d[tau] * (1.0 - 1e-12) &&
                        std::fabs(rep.d[tau] - mt) <= 1e-12 * mt;

    auto term = [&](int n) {
        double prod = std::ldexp(1.0, n);
        for (int v = 0; v < 3; ++v)
            prod *= std::min(measures[v] / mt,
                             std::pow(2.0, -static_cast<double>(n) / q[v]) *
                                 std::pow(measures[v], 1.0 / q[v]));
        return prod;
    };
    auto floor_log2 = [](double x) { return static_cast<int>(std::floor(std::log2(x) + 1e-12)); };
    int ntau = floor_log2(rep.d[tau]), na = floor_log2(rep.d[a]), nb = floor_log2(rep.d[b]);

    for (int n = ntau; n > ntau - 256; --n) rep.sum_I += term(n);
    for (int n = ntau + 1; n <= na; ++n) rep.sum_II += term(n);
    for (int n = na + 1; n <= nb; ++n) rep.sum_III += term(n);
    for (int n = nb + 1; n < nb + 4096; ++n) {
        double t = term(n);
        rep.sum_IV += t;
        if (t < 1e-18 * rep.sum_IV) break;
    }
    rep.total = rep.sum_I + rep.sum_II + rep.sum_III + rep.sum_IV;

    rep.closed_I = measures[a] * measures[b] / mt;
    rep.min_ab = std::min(measures[a], measures[b]);
    rep.ratio_I = rep.closed_I > 0.0 ? rep.sum_I / rep.closed_I : 0.0;

    double qa = q[a], qb = q[b], qt = q[tau];
    rep.closed_II = (measures[a] / mt) * (measures[b] / mt) * std::pow(mt, 1.0 / qt) *
                    std::pow(rep.d[a], 1.0 - 1.0 / qt);
    rep.ratio_II = rep.closed_II > 0.0 ? rep.sum_II / rep.closed_II : 0.0;

    rep.log_branch = std::fabs(1.0 / qa + 1.0 / qt - 1.0) <= 1e-12;
    double head = (measures[b] / mt) * std::pow(measures[a], 1.0 / qa) * std::pow(mt, 1.0 / qt);
    if (rep.log_branch) {
        rep.closed_III_IV =
            head * std::max(1.0, std::log2(rep.d[b] / rep.d[a])) +
            std::pow(measures[a], 1.0 / qa) * std::pow(measures[b], 1.0 / qb) *
                std::pow(mt, 1.0 / qt) * std::pow(rep.d[b], 1.0 - 1.0 / qa - 1.0 / qb - 1.0 / qt);
    } else {
        rep.closed_III_IV =
            head * std::pow(rep.d[b], 1.0 - 1.0 / qa - 1.0 / qt) +
            std::pow(measures[a], 1.0 / qa) * std::pow(measures[b], 1.0 / qb) *
                std::pow(mt, 1.0 / qt) * std::pow(rep.d[b], 1.0 - 1.0 / qa - 1.0 / qb - 1.0 / qt);
    }
    rep.ratio_III_IV =
        rep.closed_III_IV > 0.0 ? (rep.sum_III + rep.sum_IV) / rep.closed_III_IV : 0.0;

    rep.beta_bound = 1.0;
    for (int v = 0; v < 3; ++v) rep.beta_bound *= std::pow(measures[v], beta[v]);
    rep.ratio_beta = rep.beta_bound > 0.0 ? rep.total / rep.beta_bound : 0.0;

    double bb = beta[b], ba = beta[a];
    rep.beta_conditions_ok =
        bb < 1.0 && bb / (qb - 1.0) <= rho + 1.0 / (qb * (qb - 1.0)) + 1e-12 &&
        bb / (qb - 1.0) + ba / (qa - 1.0) <=
            rho + 1.0 / (qb * (qb - 1.0)) + 1.0 / (qa * (qa - 1.0)) + 1e-12;
    return rep;
}

HexagonRegion hexagon(double q1, double q2, double q3) {
    HexagonRegion h;
    h.q = {q1, q2, q3};
    for (double qq : h.q)
        if (qq < 2.0) throw std::invalid_argument("hexagon: quartile types are >= 2");
    h.rho = 1.0 / q1 + 1.0 / q2 + 1.0 / q3 - 1.0;
    if (h.rho <= 0.0) throw std::invalid_argument("hexagon: rho <= 0");
    double r = h.rho;
    h.vertices[0].beta = {1.0 / q1 - r * q3, 1.0 / q2, 1.0 / q3 + r * q3 - r};          // A
    h.vertices[1].beta = {1.0 / q1, 1.0 / q2 - r * q3, 1.0 / q3 + r * q3 - r};          // B
    h.vertices[2].beta = {1.0 / q1 + r * q1 - r, 1.0 / q2 - r * q1, 1.0 / q3};          // C
    h.vertices[3].beta = {1.0 / q1 + r * q1 - r, 1.0 / q2, 1.0 / q3 - r * q1};          // D
    h.vertices[4].beta = {1.0 / q1, 1.0 / q2 + r * q2 - r, 1.0 / q3 - r * q2};          // E
    h.vertices[5].beta = {1.0 / q1 - r * q2, 1.0 / q2 + r * q2 - r, 1.0 / q3};          // F
    return h;
}

bool HexagonRegion::contains(const ExponentTriple& t, bool alt_pairwise) const {
    double sum = t.beta[0] + t.beta[1] + t.beta[2];
    if (std::fabs(sum - 1.0) > 1e-12) return false;
    for (int v = 0; v < 3; ++v) {
        double qv = q[v], bv = t.beta[v];
        if (!(bv < 1.0)) return false;
        if (!(bv / (qv - 1.0) < rho + 1.0 / (qv * (qv - 1.0)))) return false;
        for (int u = 0; u < 3; ++u) {
            if (u == v) continue;
            double qu = q[u], bu = t.beta[u];
            double rhs = alt_pairwise ? rho + 2.0 / (qu * (qu - 1.0))
                                      : rho + 1.0 / (qv * (qv - 1.0)) + 1.0 / (qu * (qu - 1.0));
            if (!(bv / (qv - 1.0) + bu / (qu - 1.0) < rhs)) return false;
        }
    }
    return true;
}

Classification classify_estimate(const HexagonRegion& region, const ExponentTriple& beta,
                                 bool alt_pairwise) {
    Classification c;
    if (!region.contains(beta, alt_pairwise)) return c;
    int nonpos = -1;
    for (int v = 0; v < 3; ++v)
        if (beta.beta[v] <= 0.0) {
            if (nonpos >= 0) return c;  // at most one nonpositive exponent inside
            nonpos = v;
        }
    if (nonpos < 0) {
        c.kind = Classification::Kind::Strong;
        for (int v = 0; v < 3; ++v) c.p[v] = 1.0 / beta.beta[v];
    } else {
        c.kind = Classification::Kind::Bilinear;
        c.slot = nonpos + 1;
        c.target = 1.0 / (1.0 - beta.beta[nonpos]);
        for (int v = 0; v < 3; ++v) c.p[v] = v == nonpos ? 0.0 : 1.0 / beta.beta[v];
    }
    return c;
}

DualityExampleRegion duality_example_region(double q) {
    if (!(q > 2.0 && q < 4.0))
        throw std::invalid_argument("duality_example_region: q must lie in (2,4)");
    DualityExampleRegion r;
    r.q = q;
    r.r_lo = 2.0 / (5.0 - q);
    r.r_hi = q / (q - 2.0);
    r.p_min = 1.0 / ((5.0 - q) / 2.0 - 1.0 / q);
    r.extra_condition = q >= 3.0;
    r.extra_lhs = (q * q - 3.0 * q + 1.0) / q;
    return r;
}

bool DualityExampleRegion::admissible(double p1, double p2) const {
    double inv_r = 1.0 / p1 + 1.0 / p2;
    if (!(p1 > p_min && p2 > p_min)) return false;
    if (!(inv_r > 1.0 / r_hi && inv_r < 1.0 / r_lo)) return false;
    if (extra_condition) {
        double m = std::min((q - 1.0) / p1 + (q - 2.0) / p2, (q - 2.0) / p1 + (q - 1.0) / p2);
        if (!(extra_lhs < m)) return false;
    }
    return true;
}

}  // namespace qlab
