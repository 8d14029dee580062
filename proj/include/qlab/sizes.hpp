#pragma once

#include "qlab/dyadic_core.hpp"
#include "qlab/phase_plane.hpp"

#include <vector>

namespace qlab {

enum class SizeMethod { FullTreeSup, ExhaustiveSubsets };

struct SizeReport {
    int v = 1;
    double p = 2.0;
    double value = 0.0;
    Tree witness;  // realizing tree (kind = the u of the sup)
    SizeMethod method = SizeMethod::FullTreeSup;
};

/// sum_{P in members} <f, w_{P_v}> w_{P_v}, exact.
StepFunction tree_sum(const std::vector<Quartile>& members, int v, const StepFunction& f,
                      PacketCache* cache = nullptr);

/// Pairings <f, w_{P_v}> for a set of quartiles, computed once.
std::map<Quartile, Coord> pairing_coefficients(const std::vector<Quartile>& members, int v,
                                               const StepFunction& f, PacketCache* cache = nullptr);

/// Candidate tops: grid quartiles T with at least one member <=_u T.
std::vector<Quartile> candidate_tops(const QuartileCollection& c, int u, const Grid& grid);

/// (v,p)-size of the collection w.r.t. f: sup over u-trees (u != v) of the
/// normalized tree-sum L^p norm. FullTreeSup ranges over complete trees under
/// candidate tops; ExhaustiveSubsets (<= 12 members) additionally over subsets.
SizeReport size(const QuartileCollection& c, int v, double p, const StepFunction& f,
                const NormedSpace& space, const Grid& grid,
                SizeMethod method = SizeMethod::FullTreeSup, PacketCache* cache = nullptr);

/// Delta_u(T) = (|I_T|^{-1} int |sum_{P in T_u} <f,w_{P_v}> w_{P_v}|^q)^{1/q}.
double delta_u(const Tree& t, int u, int v, double q, const StepFunction& f,
               const NormedSpace& space, PacketCache* cache = nullptr);

struct SizeEquivalenceRow {
    double p = 0.0;
    double value = 0.0;
};

/// size_{v,p} for each p in p_list plus pairwise ratios (ratio[i][j] =
/// value_i / value_j, 0 when degenerate).
struct SizeEquivalenceReport {
    std::vector<SizeEquivalenceRow> rows;
    std::vector<std::vector<double>> ratios;
};

SizeEquivalenceReport size_equivalence_report(const QuartileCollection& c, int v,
                                              const StepFunction& f, const NormedSpace& space,
                                              const Grid& grid, const std::vector<double>& p_list);

/// Empirical quartile-type probe: over (v,u)-good families, the worst ratio of
/// (sum_T ||sum_{P in T} <f, w_{P_u}> w_{P_u}||_q^q)^{1/q} against ||f||_q.
QuartileTypeEstimate estimate_quartile_type(const NormedSpace& space, double q,
                                            const std::vector<std::vector<Tree>>& families,
                                            int v, int u, const StepFunction& f);

}  // namespace qlab
