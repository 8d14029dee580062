#pragma once

#include "qlab/phase_plane.hpp"
#include "qlab/spaces.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace qlab {

enum class HalfSel { Whole, Left, Right };

DyadicInterval select_half(const DyadicInterval& I, HalfSel s);

struct HaarShiftSpec {
    HalfSel a = HalfSel::Whole;
    HalfSel b = HalfSel::Whole;
    std::vector<DyadicInterval> intervals;
};

/// sum_{I in J} h_{I_a} <h_{I_b}, f>, exact.
StepFunction haar_shift(const HaarShiftSpec& spec, const StepFunction& f);

/// sum_{I in J} w_{I,m} <w_{I,m}, f>, m in {1,2,3}, computed directly.
StepFunction walsh_shift(int m, const std::vector<DyadicInterval>& intervals,
                         const StepFunction& f);

/// Same operator expanded into Haar shifts via
/// w_{I,2} = (h_{I_l}+h_{I_r})/sqrt2, w_{I,3} = (h_{I_l}-h_{I_r})/sqrt2.
StepFunction walsh_shift_expanded(int m, const std::vector<DyadicInterval>& intervals,
                                  const StepFunction& f);

struct LambdaTerm {
    Quartile quartile;
    Coord c1, c2, c3;   // the three wave-packet pairings
    ExactScalar value;  // |I_P|^{-1/2} * Pi(c1, c2, c3)
};

struct LambdaResult {
    ExactScalar total;
    std::vector<LambdaTerm> terms;  // in quartile-sorted order when requested
};

/// Trilinear form over a finite collection; absolute applies |.| per term.
LambdaResult lambda_form(const QuartileCollection& collection, const TrilinearForm& Pi,
                         const StepFunction& f1, const StepFunction& f2, const StepFunction& f3,
                         bool absolute, bool want_terms = false);

/// B_j: pairs the two given functions in the other slots, outputs a
/// dual-space-valued step function; <f_j, B_j> reproduces lambda_form.
StepFunction bilinear_B(const QuartileCollection& collection, const TrilinearForm& Pi,
                        int slot, const StepFunction& f, const StepFunction& g);

struct ConvergenceReport {
    std::vector<Quartile> contributing;
    ExactScalar abs_sum;
    DyadicRational bound;  // min_i |J_i|
};

/// Absolute-convergence oracle for f_i = 1_{J_i}: enumerates the quartiles
/// passing the support/frequency characterization, sums |terms| exactly.
ConvergenceReport convergence_oracle(const DyadicInterval& J1, const DyadicInterval& J2,
                                     const DyadicInterval& J3, const Grid& grid);

struct MomentMode {
    bool exact = true;
    std::uint64_t seed = 0;
    int samples = 4096;
};

struct MomentReport {
    double moment = 0.0;
    double size_bound = 0.0;  // size_{v,p}(T) * |I_T|^{1/p}
    double ratio = 0.0;
};

/// (int_{I_T} E|sum_P eta_P <f, w_{P_v}> 1_{I_P}/|I_P|^{1/2}|^p)^{1/p} with
/// eta_P uniform independent N-th roots of unity. Exact mode enumerates all
/// sign patterns (capped at 12 members).
MomentReport randomized_projection_moment(const Tree& t, int v, const StepFunction& f,
                                          double p, int n_roots, const MomentMode& mode,
                                          const NormedSpace& space);

}  // namespace qlab
