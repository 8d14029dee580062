#pragma once

#include "qlab/decomp.hpp"

#include <array>
#include <map>
#include <string>

namespace qlab {

struct ExceptionalSetResult {
    StepFunction F;  // indicator of the exceptional set
    int tau = 1;     // index (1..3) of the set with maximal measure
    std::array<DyadicRational, 3> measures;
    DyadicRational f_measure;
};

/// F = union over v of {M 1_{E_v} > 8 |E_v|/|E_tau|}, with exact
/// cross-multiplied comparisons; asserts |F| <= |E_tau|/2.
ExceptionalSetResult exceptional_set(const StepFunction& E1, const StepFunction& E2,
                                     const StepFunction& E3);

struct RwtAboveReport {
    StepFunction F;  // indicator of the exceptional set
    int tau = 1;
    std::array<DyadicRational, 3> measures;
    DyadicRational f_measure;
    size_t dropped_count = 0;
    bool dropped_vanish = false;  // dropped Lambda-terms sum to exact zero
    double lambda_abs = 0.0;
    double bound = 0.0;  // prod |E_v|^{alpha_v}
    double ratio = 0.0;
    std::map<int, double> level_bounds;  // 2^{-n} prod_v min(|E_v|/|E_tau|, 2^{n/q_v}||f_v||)
    double skeleton_total = 0.0;
    std::array<double, 3> size_constants{};  // size_v(kept) / (|E_v|/|E_tau|)
    DecompositionResult decomp;
};

RwtAboveReport rwt_above(const QuartileCollection& P, const TrilinearForm& Pi,
                         const std::array<const StepFunction*, 3>& E,
                         const std::array<double, 3>& alpha, const std::array<double, 3>& q,
                         const std::array<const StepFunction*, 3>& f,
                         const std::array<NormedSpace, 3>& spaces, const Grid& grid);

struct RwtBelowReport {
    int tau = 1, a = 2, b = 3;  // relabeled indices into the input triple
    std::array<double, 3> d{};  // d_v in the original indexing
    bool hypothesis_ok = false;
    bool log_branch = false;  // 1/q_a + 1/q_tau == 1
    double eps = 0.01;
    double sum_I = 0.0, sum_II = 0.0, sum_III = 0.0, sum_IV = 0.0;
    double total = 0.0;       // direct evaluation of the full min-series
    double closed_I = 0.0;    // |E_a||E_b|/|E_tau|
    double min_ab = 0.0;      // min(|E_a|, |E_b|)
    double closed_II = 0.0;   // leading closed form for II
    double closed_III_IV = 0.0;
    double beta_bound = 0.0;  // prod |E_v|^{beta_v}
    bool beta_conditions_ok = false;
    double ratio_I = 0.0, ratio_II = 0.0, ratio_III_IV = 0.0, ratio_beta = 0.0;
};

/// Evaluates the four-way split of sum_n 2^n prod_v min(|E_v|/|E_tau|,
/// 2^{-n/q_v}|E_v|^{1/q_v}) at the breakpoints d_tau <= d_a <= d_b, after
/// relabeling the triple so the ordering hypothesis holds.
RwtBelowReport rwt_below_diagnostics(const std::array<double, 3>& measures,
                                     const std::array<double, 3>& q,
                                     const std::array<double, 3>& beta, double eps = 0.01);

struct ExponentTriple {
    std::array<double, 3> beta{};
};

struct HexagonRegion {
    std::array<double, 3> q{};
    double rho = 0.0;
    std::array<ExponentTriple, 6> vertices;  // A..F

    /// Open-region membership via the pairwise corollary conditions.
    /// alt_pairwise uses the variant pairwise bound with the q_u term doubled.
    bool contains(const ExponentTriple& beta, bool alt_pairwise = false) const;
};

HexagonRegion hexagon(double q1, double q2, double q3);

struct Classification {
    enum class Kind { Strong, Bilinear, Outside } kind = Kind::Outside;
    std::array<double, 3> p{};  // strong exponents 1/beta_v
    int slot = 0;               // bilinear slot (beta_slot <= 0)
    double target = 0.0;        // 1/(1 - beta_slot)
};

Classification classify_estimate(const HexagonRegion& region, const ExponentTriple& beta,
                                 bool alt_pairwise = false);

struct DualityExampleRegion {
    double q = 0.0;
    double r_lo = 0.0, r_hi = 0.0;  // open interval for r
    double p_min = 0.0;             // p_1, p_2 in (p_min, inf]
    bool extra_condition = false;   // active for 3 <= q < 4
    double extra_lhs = 0.0;         // (q^2 - 3q + 1)/q

    bool admissible(double p1, double p2) const;
};

DualityExampleRegion duality_example_region(double q);

}  // namespace qlab
