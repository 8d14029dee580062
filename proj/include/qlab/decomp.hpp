#pragma once

#include "qlab/operators.hpp"
#include "qlab/sizes.hpp"

#include <array>
#include <map>
#include <vector>

namespace qlab {

struct ConvexCorrection {
    StepFunction g;
    std::vector<DyadicInterval> exceptional;
    std::vector<DyadicInterval> bad;
};

/// Given a convex interval family with |<f>_J| <= lambda on every member,
/// builds g with <g>_J = <f>_J exactly and ||g||_inf <= 3 lambda.
ConvexCorrection convex_correction(const std::vector<DyadicInterval>& family,
                                   const StepFunction& f, double lambda,
                                   const NormedSpace& space);

struct TreeLemmaReport {
    double lambda_abs = 0.0;  // |Lambda_T|(f1,f2,f3)
    double denom = 0.0;       // |I_T| * prod_v size_{v,q_v}
    double ratio = 0.0;
    bool degenerate = false;  // all pairings vanish
};

TreeLemmaReport tree_lemma_check(const Tree& t, const TrilinearForm& Pi,
                                 const std::array<const StepFunction*, 3>& f,
                                 const std::array<double, 3>& q,
                                 const std::array<NormedSpace, 3>& spaces, const Grid& grid);

struct SizeLemmaResult {
    std::vector<Tree> trees;  // selection order; kind = the u of each extraction
    QuartileCollection residual;
    double energy = 0.0;     // size_{v,q}(P) before extraction
    double threshold = 0.0;  // energy * 2^{-1/q}
    double top_length_sum = 0.0;
    double counting_ratio = 0.0;  // top_length_sum * energy^q / ||f||_q^q
};

/// Greedy tree extraction: repeatedly removes maximal trees whose u-part
/// exceeds the Delta_u threshold, iterating u = 0..3 (skipping v) in order.
/// Ties on the extreme frequency center break lexicographically on
/// (time position, time scale).
SizeLemmaResult size_lemma_extract(const QuartileCollection& P, int v, double q,
                                   const StepFunction& f, const NormedSpace& space,
                                   const Grid& grid);

struct DecompositionLevel {
    std::vector<Tree> trees;
    double top_length_sum = 0.0;
    double counting_constant = 0.0;  // top_length_sum * 2^n
};

struct DecompositionResult {
    int n_start = 0;
    std::map<int, DecompositionLevel> levels;  // keyed by level n (descending)
    QuartileCollection residual;
    std::array<double, 3> norms{};  // ||f_v||_{q_v}
};

/// Multi-level decomposition: levels n from the smallest n with
/// size_v <= 2^{n/q_v} ||f_v|| for all v, extracting per slot until the
/// residual pairs to zero exactly against every packet.
DecompositionResult full_decomposition(const QuartileCollection& P,
                                       const std::array<const StepFunction*, 3>& f,
                                       const std::array<double, 3>& q,
                                       const std::array<NormedSpace, 3>& spaces,
                                       const Grid& grid);

struct DecompositionCheck {
    bool partition_ok = false;
    bool trees_convex = false;
    bool residual_convex = false;
    bool sizes_ok = false;     // size_v(T_{n,j}) <= 2^{n/q_v} ||f_v|| (1e-9 rel)
    bool residual_zero = false;  // every pairing vanishes exactly
    bool ok() const {
        return partition_ok && trees_convex && residual_convex && sizes_ok && residual_zero;
    }
};

DecompositionCheck verify_decomposition(const DecompositionResult& result,
                                        const QuartileCollection& P,
                                        const std::array<const StepFunction*, 3>& f,
                                        const std::array<double, 3>& q,
                                        const std::array<NormedSpace, 3>& spaces,
                                        const Grid& grid);

}  // namespace qlab
