#pragma once

#include "qlab/dyadic_core.hpp"
#include "qlab/phase_plane.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace qlab {

/// Deterministic generator: all draws go through rng() % n so that a seed
/// pins the entire corpus across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : rng_(seed) {}

    std::uint64_t next(std::uint64_t n) { return rng_() % n; }
    int range(int lo, int hi) { return lo + static_cast<int>(next(hi - lo + 1)); }
    bool flip() { return next(2) == 1; }

private:
    std::mt19937_64 rng_;
};

Quartile random_quartile(Rng& rng, const Grid& grid);

QuartileCollection random_collection(Rng& rng, const Grid& grid, int count);

/// Random collection closed under convexification; regenerated with fewer
/// seeds if the closure exceeds max_size.
QuartileCollection random_convex_collection(Rng& rng, const Grid& grid, int count, int max_size);

/// Random u-tree: random top plus a sample of the quartiles <=_u top.
Tree random_u_tree(Rng& rng, const Grid& grid, int u, int max_members);

/// Convex tree: convexification of a u-tree sample together with its top.
Tree random_convex_tree(Rng& rng, const Grid& grid, int max_members);

/// (v,u)-good family: tops with pairwise disjoint time intervals, members
/// <=_v their tops.
std::vector<Tree> random_good_family(Rng& rng, const Grid& grid, int v, int u, int n_trees,
                                     int max_members);

/// Scalar-or-vector step function with small dyadic cell values; never zero.
StepFunction random_step_function(Rng& rng, const Grid& grid, int dim);

/// Indicator of a nonempty random union of grid cells.
StepFunction random_dyadic_set(Rng& rng, const Grid& grid);

/// Random interval inside the grid.
DyadicInterval random_interval(Rng& rng, const Grid& grid);

/// Convex family of dyadic intervals: random members closed under taking
/// intermediate ancestors.
std::vector<DyadicInterval> random_convex_interval_family(Rng& rng, const Grid& grid, int count);

}  // namespace qlab
