#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qlab/decomp.hpp"
#include "util.hpp"

using namespace qlab;
using namespace qlab::testutil;

namespace {

const NormedSpace kScalar{1, 2.0};

/// The u-part of an extracted tree, for goodness checks.
Tree u_part(const Tree& t, int u) {
    Tree out;
    out.top = t.top;
    out.kind = u;
    for (const auto& p : t.members)
        if (leq_v(p, t.top, u)) out.members.push_back(p);
    return out;
}

}  // namespace

TEST_CASE("convex correction: family closed under children leaves f unchanged") {
    Grid grid{1, 2};
    std::vector<DyadicInterval> fam;
    for (int j = 1; j >= -grid.N; --j)
        for (long long pos = 0; pos < (1LL << (grid.K - j)); ++pos) fam.push_back({pos, j});
    Rng rng(151);
    StepFunction f = random_step_function(rng, grid, 1);
    double lambda = 0.0;
    for (const auto& J : fam) lambda = std::max(lambda, kScalar.norm(f.average(J)));
    auto cc = convex_correction(fam, f, lambda, kScalar);
    CHECK(cc.bad.empty());
    CHECK(cc.g == f);
}

TEST_CASE("convex correction: single root interval averages out") {
    StepFunction f = indicator({0, -1}, 1, 0);  // 1_{[0,1/2)} on [0,1)
    auto cc = convex_correction({{0, 0}}, f, 0.5, kScalar);
    ExactScalar half(DyadicRational(BigInt(1), 1));
    CHECK(cc.g == indicator({0, 0}, 0, 0).scaled(half));
    CHECK(cc.exceptional.size() == 1);
    CHECK(cc.bad.size() == 2);
    CHECK_THROWS(convex_correction({{0, 0}}, f, 0.25, kScalar));  // precondition fails
}

TEST_CASE("convex correction: exact averages and the 3-lambda bound on random families") {
    Rng rng(157);
    Grid grid{2, 3};
    for (int it = 0; it < 40; ++it) {
        auto fam = random_convex_interval_family(rng, grid, 1 + (int)rng.next(5));
        StepFunction f = random_step_function(rng, grid, 1);
        double lambda = 0.0;
        for (const auto& J : fam) lambda = std::max(lambda, kScalar.norm(f.average(J)));
        auto cc = convex_correction(fam, f, lambda, kScalar);
        for (const auto& J : fam) {
            Coord gf = cc.g.average(J), ff = f.average(J);
            CHECK((gf[0] - ff[0]).is_zero());
        }
        CHECK(lp_norm(cc.g, kInfExponent, kScalar) <= 3.0 * lambda + 1e-12);
    }
    CHECK_THROWS(convex_correction({}, StepFunction(0, 0, 1), 1.0, kScalar));
}

TEST_CASE("tree lemma: unit quartile ratio 1 and degenerate zero input") {
    Quartile P{{0, 0}, 0};
    Tree t;
    t.top = P;
    t.members = {P};
    StepFunction w1 = wave_packet(P.child(1), PacketNorm::L2);
    StepFunction w2 = wave_packet(P.child(2), PacketNorm::L2);
    StepFunction w3 = wave_packet(P.child(3), PacketNorm::L2);
    Grid grid{1, 2};
    auto rep = tree_lemma_check(t, TrilinearForm::scalar(), {&w1, &w2, &w3}, {2.0, 2.0, 2.0},
                                {kScalar, kScalar, kScalar}, grid);
    CHECK(!rep.degenerate);
    CHECK(close(rep.ratio, 1.0));

    StepFunction z(0, 1, 1);
    auto zero = tree_lemma_check(t, TrilinearForm::scalar(), {&z, &w2, &w3}, {2.0, 2.0, 2.0},
                                 {kScalar, kScalar, kScalar}, grid);
    CHECK(zero.degenerate);
    CHECK(zero.lambda_abs == 0.0);
    CHECK(zero.ratio == 0.0);
}

TEST_CASE("tree lemma: finite ratios on random convex trees") {
    Rng rng(163);
    Grid grid{2, 2};
    for (int it = 0; it < 15; ++it) {
        Tree t = random_convex_tree(rng, grid, 5);
        StepFunction f1 = random_step_function(rng, grid, 1);
        StepFunction f2 = random_step_function(rng, grid, 1);
        StepFunction f3 = random_step_function(rng, grid, 1);
        auto rep = tree_lemma_check(t, TrilinearForm::scalar(), {&f1, &f2, &f3}, {2.0, 2.0, 2.0},
                                    {kScalar, kScalar, kScalar}, grid);
        if (!rep.degenerate) CHECK(std::isfinite(rep.ratio));
    }
}

TEST_CASE("size lemma extraction: orthogonal input extracts nothing") {
    Grid grid{1, 2};
    QuartileCollection c;
    c.insert({{0, 0}, 0});
    StepFunction f = indicator({1, 0}, 0, 1);
    auto res = size_lemma_extract(c, 1, 2.0, f, kScalar, grid);
    CHECK(res.trees.empty());
    CHECK(res.residual.members == c.members);
    CHECK(res.energy == 0.0);
}

TEST_CASE("size lemma extraction: a loud full u-tree is extracted") {
    Grid grid{1, 2};
    Quartile P{{0, 0}, 0};
    QuartileCollection c = convexify([&] {
        QuartileCollection x;
        x.insert(P);
        x.insert({{0, -1}, 0});
        return x;
    }());
    StepFunction f = wave_packet(P.child(1), PacketNorm::L2);
    auto res = size_lemma_extract(c, 1, 2.0, f, kScalar, grid);
    CHECK(!res.trees.empty());
    CHECK(res.energy > 0.0);
    size_t extracted = 0;
    for (const auto& t : res.trees) extracted += t.members.size();
    CHECK(extracted + res.residual.size() == c.size());
}

TEST_CASE("size lemma extraction: post-conditions on random convex collections") {
    Rng rng(167);
    Grid grid{2, 2};
    for (int it = 0; it < 12; ++it) {
        QuartileCollection P = random_convex_collection(rng, grid, 5, 40);
        StepFunction f = random_step_function(rng, grid, 1);
        int v = 1 + (int)rng.next(3);
        auto res = size_lemma_extract(P, v, 2.0, f, kScalar, grid);

        // Set-exact partition.
        QuartileCollection seen = res.residual;
        size_t total = res.residual.size();
        for (const auto& t : res.trees) {
            total += t.members.size();
            for (const auto& p : t.members) {
                CHECK(!seen.contains(p));
                seen.insert(p);
            }
        }
        CHECK(total == P.size());
        CHECK(seen.members == P.members);

        // Convexity of every piece.
        for (const auto& t : res.trees) {
            QuartileCollection tc;
            for (const auto& p : t.members) tc.insert(p);
            CHECK(is_convex(tc));
        }
        CHECK(is_convex(res.residual));

        // (a) residual threshold property.
        PacketCache pc;
        for (int u = 0; u < 4; ++u) {
            if (u == v) continue;
            for (const auto& top : candidate_tops(res.residual, u, grid)) {
                std::vector<Quartile> part;
                for (const auto& q : res.residual.members)
                    if (leq_v(q, top, u)) part.push_back(q);
                double d = lp_norm(tree_sum(part, v, f, &pc), 2.0, kScalar) *
                           std::pow(std::ldexp(1.0, -top.time.log_len), 0.5);
                CHECK(d <= res.threshold * (1.0 + 1e-9) + 1e-12);
            }
        }

        // (b) goodness of the mod-2 scale-split u-part families.
        for (int u = 0; u < 4; ++u) {
            if (u == v) continue;
            for (int par = 0; par < 2; ++par) {
                std::vector<Tree> fam;
                for (const auto& t : res.trees)
                    if (t.kind == u && (((t.top.time.log_len % 2) + 2) % 2) == par)
                        fam.push_back(u_part(t, u));
                CHECK(is_good_family(fam, u, v));
            }
        }

        // (c) counting ratio is finite and consistent.
        if (res.energy > 0.0) CHECK(std::isfinite(res.counting_ratio));
    }
}

TEST_CASE("full decomposition: empty, single quartile, verified random runs") {
    Grid grid{1, 2};
    std::array<double, 3> q{2.0, 2.0, 2.0};
    std::array<NormedSpace, 3> sp{kScalar, kScalar, kScalar};

    QuartileCollection empty;
    StepFunction z(0, grid.K, 1);
    auto er = full_decomposition(empty, {&z, &z, &z}, q, sp, grid);
    CHECK(er.levels.empty());
    CHECK(er.residual.empty());

    Quartile P{{0, 0}, 0};
    QuartileCollection one;
    one.insert(P);
    StepFunction w1 = wave_packet(P.child(1), PacketNorm::L2).with_support_bound(grid.K);
    StepFunction w2 = wave_packet(P.child(2), PacketNorm::L2).with_support_bound(grid.K);
    StepFunction w3 = wave_packet(P.child(3), PacketNorm::L2).with_support_bound(grid.K);
    auto sr = full_decomposition(one, {&w1, &w2, &w3}, q, sp, grid);
    CHECK(sr.levels.size() == 1);
    CHECK(sr.levels.begin()->second.trees.size() == 1);
    CHECK(sr.residual.empty());
    auto check = verify_decomposition(sr, one, {&w1, &w2, &w3}, q, sp, grid);
    CHECK(check.ok());

    Rng rng(173);
    for (int it = 0; it < 8; ++it) {
        QuartileCollection P2 = random_convex_collection(rng, grid, 4, 25);
        StepFunction f1 = random_step_function(rng, grid, 1);
        StepFunction f2 = random_step_function(rng, grid, 1);
        StepFunction f3 = random_step_function(rng, grid, 1);
        auto res = full_decomposition(P2, {&f1, &f2, &f3}, q, sp, grid);
        auto chk = verify_decomposition(res, P2, {&f1, &f2, &f3}, q, sp, grid);
        CHECK(chk.partition_ok);
        CHECK(chk.trees_convex);
        CHECK(chk.residual_convex);
        CHECK(chk.sizes_ok);
        CHECK(chk.residual_zero);
    }
}
