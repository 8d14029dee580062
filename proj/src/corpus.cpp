#include "qlab/corpus.hpp"

#include <algorithm>
#include <set>

namespace qlab {

Quartile random_quartile(Rng& rng, const Grid& grid) {
    int j = rng.range(-grid.N, grid.K);
    long long pos = static_cast<long long>(rng.next(1ULL << (grid.K - j)));
    long long freq = static_cast<long long>(rng.next(1ULL << (grid.N + j)));
    return {DyadicInterval{pos, j}, freq};
}

QuartileCollection random_collection(Rng& rng, const Grid& grid, int count) {
    QuartileCollection c;
    for (int i = 0; i < count; ++i) c.insert(random_quartile(rng, grid));
    return c;
}

QuartileCollection random_convex_collection(Rng& rng, const Grid& grid, int count, int max_size) {
    for (int seeds = count; seeds >= 1; --seeds) {
        QuartileCollection c = convexify(random_collection(rng, grid, seeds));
        if (static_cast<int>(c.size()) <= max_size) return c;
    }
    QuartileCollection c;
    c.insert(random_quartile(rng, grid));
    return c;
}

Tree random_u_tree(Rng& rng, const Grid& grid, int u, int max_members) {
    Tree t;
    t.kind = u;
    t.top = random_quartile(rng, grid);
    std::vector<Quartile> below;
    for (const auto& p : grid_quartiles(grid))
        if (leq_v(p, t.top, u)) below.push_back(p);
    std::set<Quartile> chosen;
    int want = 1 + static_cast<int>(rng.next(max_members));
    for (int i = 0; i < want; ++i) chosen.insert(below[rng.next(below.size())]);
    t.members.assign(chosen.begin(), chosen.end());
    return t;
}

Tree random_convex_tree(Rng& rng, const Grid& grid, int max_members) {
    int u = static_cast<int>(rng.next(4));
    Tree t = random_u_tree(rng, grid, u, max_members);
    QuartileCollection c;
    for (const auto& p : t.members) c.insert(p);
    c.insert(t.top);
    c = convexify(c);
    t.members = c.members;
    t.kind.reset();  // convexification can leave the u-relation
    return t;
}

std::vector<Tree> random_good_family(Rng& rng, const Grid& grid, int v, int u, int n_trees,
                                     int max_members) {
    // Tops at unit scale with distinct positions: member time intervals of
    // distinct trees are then disjoint, so all their tiles are.
    n_trees = std::min<long long>(n_trees, 1LL << grid.K);
    std::set<long long> positions;
    while (static_cast<int>(positions.size()) < n_trees)
        positions.insert(static_cast<long long>(rng.next(1ULL << grid.K)));
    std::vector<Tree> family;
    for (long long pos : positions) {
        Tree t;
        t.kind = v;
        t.top = {DyadicInterval{pos, 0}, static_cast<long long>(rng.next(1ULL << grid.N))};
        std::vector<Quartile> below;
        for (int j = -grid.N; j <= 0; ++j)
            for (long long tp = pos << -j; tp < (pos + 1) << -j; ++tp)
                for (long long fq = 0; fq < (1LL << (grid.N + j)); ++fq) {
                    Quartile p{DyadicInterval{tp, j}, fq};
                    if (leq_v(p, t.top, v)) below.push_back(p);
                }
        std::set<Quartile> chosen;
        int want = 1 + static_cast<int>(rng.next(max_members));
        for (int i = 0; i < want; ++i) chosen.insert(below[rng.next(below.size())]);
        t.members.assign(chosen.begin(), chosen.end());
        family.push_back(std::move(t));
    }
    return family;
}

StepFunction random_step_function(Rng& rng, const Grid& grid, int dim) {
    StepFunction f(grid.N, grid.K, dim);
    for (long long c = 0; c < f.cell_count(); ++c) {
        if (rng.next(2) == 0) continue;
        Coord v(dim);
        for (int d = 0; d < dim; ++d) {
            long long num = static_cast<long long>(rng.next(17)) - 8;
            int scale = static_cast<int>(rng.next(4));
            v[d] = ExactScalar(DyadicRational(BigInt(num), scale));
        }
        f.set_cell(c, std::move(v));
    }
    if (f.is_zero()) f.set_cell(0, Coord(dim, ExactScalar(1)));
    return f;
}

StepFunction random_dyadic_set(Rng& rng, const Grid& grid) {
    StepFunction f(grid.N, grid.K, 1);
    for (long long c = 0; c < f.cell_count(); ++c)
        if (rng.next(2) == 1) f.set_cell(c, {ExactScalar(1)});
    if (f.is_zero()) f.set_cell(static_cast<long long>(rng.next(f.cell_count())), {ExactScalar(1)});
    return f;
}

DyadicInterval random_interval(Rng& rng, const Grid& grid) {
    int j = rng.range(-grid.N, grid.K);
    return {static_cast<long long>(rng.next(1ULL << (grid.K - j))), j};
}

std::vector<DyadicInterval> random_convex_interval_family(Rng& rng, const Grid& grid, int count) {
    std::set<DyadicInterval> fam;
    for (int i = 0; i < count; ++i) fam.insert(random_interval(rng, grid));
    // Close under intermediate ancestors between nested members.
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<DyadicInterval> add;
        for (const auto& lo : fam)
            for (const auto& hi : fam) {
                if (!(lo.log_len < hi.log_len && hi.contains(lo))) continue;
                DyadicInterval I = lo.parent();
                while (I.log_len < hi.log_len) {
                    if (!fam.count(I)) add.push_back(I);
                    I = I.parent();
                }
            }
        for (const auto& I : add)
            if (fam.insert(I).second) changed = true;
    }
    return {fam.begin(), fam.end()};
}

}  // namespace qlab
