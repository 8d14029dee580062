#pragma once

#include "qlab/dyadic_core.hpp"
#include "qlab/phase_plane_types.hpp"
#include "qlab/walsh.hpp"

#include <array>
#include <vector>

namespace qlab {

/// Tile/quartile order: P <= P' iff I_P inside I_P' and omega_P' inside omega_P.
bool leq(const DyadicInterval& time, const DyadicInterval& freq,
         const DyadicInterval& time2, const DyadicInterval& freq2);
bool leq(const Tile& a, const Tile& b);
bool leq(const Quartile& a, const Quartile& b);

/// P <=_v P' iff P_v <= P'_v.
bool leq_v(const Quartile& a, const Quartile& b, int v);

/// Splits a tree into the four parts T_v = {P : P <=_v top}; a member may
/// appear in several parts, and must appear in at least one.
std::array<Tree, 4> split_tree(const Tree& t);

bool is_convex(const QuartileCollection& c);

/// Smallest convex superset: closes under order-betweenness.
QuartileCollection convexify(const QuartileCollection& c);

/// Quartiles P with P' <= P <= P'' (both bounds included).
std::vector<Quartile> quartiles_between(const Quartile& lo, const Quartile& hi);

/// Wave packet factorization over a u-tree: w_{P_v} = eps * w_{T_u}^inf * w_{I_P, m}
/// with m = u XOR v (digitwise mod 2). The identity is exact on the grid.
struct Factorization {
    int eps = 1;
    int m = 0;
};
Factorization factorize_wave_packet(const Tree& t, const Quartile& p, int v);

/// (v,u)-good family: all trees are v-trees and u-tiles of members of
/// distinct trees are pairwise disjoint.
bool is_good_family(const std::vector<Tree>& trees, int v, int u);

/// All quartiles of the bounded grid: time in [0, 2^K), |I| >= 2^-N,
/// frequency support inside [0, 2^{N+2}).
std::vector<Quartile> grid_quartiles(const Grid& grid);
bool in_grid(const Quartile& q, const Grid& grid);

}  // namespace qlab
