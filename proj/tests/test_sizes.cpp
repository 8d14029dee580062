#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qlab/sizes.hpp"
#include "util.hpp"

using namespace qlab;
using namespace qlab::testutil;

TEST_CASE("tree sum: empty, singleton reproduction, factorized dual path") {
    StepFunction z(0, 0, 1);
    CHECK(tree_sum({}, 1, z).is_zero());

    Quartile P{{0, 0}, 0};
    StepFunction w2 = wave_packet(P.child(2), PacketNorm::L2);
    CHECK(tree_sum({P}, 2, w2) == w2);

    // On a u-tree: sum <f, w_{P_v}> w_{P_v} = w_{T_u}^inf * sum <f w_{T_u}^inf, w_{I_P,m}> w_{I_P,m}.
    Rng rng(113);
    Grid grid{2, 3};
    for (int it = 0; it < 20; ++it) {
        int u = (int)rng.next(4);
        Tree t = random_u_tree(rng, grid, u, 5);
        StepFunction f = random_step_function(rng, grid, 1);
        StepFunction top_inf = wave_packet(t.top.child(u), PacketNorm::LInf);
        StepFunction g = f.times(top_inf);
        for (int v = 0; v < 4; ++v) {
            int m = u ^ v;
            StepFunction rhs(f.resolution(), f.support_bound(), 1);
            for (const auto& p : t.members) {
                StepFunction wm = wave_packet(Tile{p.time, m}, PacketNorm::L2);
                rhs = rhs + wm.scaled(inner_product(g, wm)[0]);
            }
            CHECK(tree_sum(t.members, v, f) == rhs.times(top_inf));
        }
    }
}

TEST_CASE("size: singleton with the Linf packet is 1 for every p") {
    Quartile P{{0, 0}, 0};
    QuartileCollection c;
    c.insert(P);
    Grid grid{1, 2};
    NormedSpace s{1, 2.0};
    StepFunction f = wave_packet(P.child(1), PacketNorm::LInf);
    for (double p : {1.0, 2.0, 3.0, 7.5}) {
        auto rep = size(c, 1, p, f, s, grid);
        CHECK(close(rep.value, 1.0));
    }
}

TEST_CASE("size: orthogonal function gives zero") {
    Quartile P{{0, 0}, 0};
    QuartileCollection c;
    c.insert(P);
    Grid grid{1, 3};
    NormedSpace s{1, 2.0};
    StepFunction f = indicator({1, 0}, 0, 1);  // supported off I_P
    CHECK(size(c, 1, 2.0, f, s, grid).value == 0.0);
}

TEST_CASE("size: p = 2 Parseval oracle on scalar collections") {
    Rng rng(127);
    Grid grid{2, 2};
    NormedSpace s{1, 2.0};
    PacketCache pc;
    for (int it = 0; it < 10; ++it) {
        QuartileCollection c = random_collection(rng, grid, 6);
        StepFunction f = random_step_function(rng, grid, 1);
        auto rep = size(c, 1, 2.0, f, s, grid);
        double best = 0.0;
        for (int u = 0; u < 4; ++u) {
            if (u == 1) continue;
            for (const auto& top : candidate_tops(c, u, grid)) {
                ExactScalar ss;
                for (const auto& q : c.members)
                    if (leq_v(q, top, u)) ss += inner_product(f, pc.l2(q.child(1)))[0].squared();
                best = std::max(best,
                                std::sqrt(ss.to_double() * std::ldexp(1.0, -top.time.log_len)));
            }
        }
        CHECK(close(rep.value, best, 1e-9));
    }
}

TEST_CASE("delta_u: domination by size and full-u-tree cross check") {
    Rng rng(131);
    Grid grid{2, 2};
    NormedSpace s{1, 2.0};
    for (int it = 0; it < 15; ++it) {
        int u = (int)rng.next(4);
        int v = (u + 1 + (int)rng.next(3)) % 4;
        Tree t = random_u_tree(rng, grid, u, 5);
        QuartileCollection c;
        for (const auto& p : t.members) c.insert(p);
        StepFunction f = random_step_function(rng, grid, 1);
        double d = delta_u(t, u, v, 2.0, f, s);
        double sz = size(c, v, 2.0, f, s, grid).value;
        CHECK(d <= sz + 1e-9);
    }
    CHECK_THROWS(delta_u(Tree{}, 1, 1, 2.0, StepFunction(0, 0, 1), s));
}

TEST_CASE("size: monotone in the collection, homogeneous in f") {
    Rng rng(137);
    Grid grid{2, 2};
    NormedSpace s{1, 2.0};
    for (int it = 0; it < 10; ++it) {
        QuartileCollection big = random_collection(rng, grid, 8);
        QuartileCollection small;
        for (size_t i = 0; i < big.members.size(); i += 2) small.insert(big.members[i]);
        StepFunction f = random_step_function(rng, grid, 1);
        double sb = size(big, 2, 2.0, f, s, grid).value;
        double ss = size(small, 2, 2.0, f, s, grid).value;
        CHECK(ss <= sb + 1e-9);
        double s3 = size(big, 2, 2.0, f.scaled(ExactScalar(3)), s, grid).value;
        CHECK(close(s3, 3.0 * sb, 1e-9));
    }
}

TEST_CASE("exhaustive subsets dominate the full-tree sup; scalar p=2 agreement") {
    Rng rng(139);
    Grid grid{1, 2};
    NormedSpace s{1, 2.0};
    for (int it = 0; it < 10; ++it) {
        QuartileCollection c = random_collection(rng, grid, 5);
        StepFunction f = random_step_function(rng, grid, 1);
        auto full = size(c, 1, 2.0, f, s, grid, SizeMethod::FullTreeSup);
        auto exh = size(c, 1, 2.0, f, s, grid, SizeMethod::ExhaustiveSubsets);
        CHECK(exh.value >= full.value - 1e-12);
        CHECK(close(exh.value, full.value, 1e-9));  // orthogonality at p = 2
    }
    QuartileCollection big = random_collection(rng, Grid{2, 3}, 40);
    if (big.size() > 12)
        CHECK_THROWS(size(big, 1, 2.0, StepFunction(3, 2, 1), s, Grid{2, 3},
                          SizeMethod::ExhaustiveSubsets));
}

TEST_CASE("size equivalence report: scaling invariance and single-quartile equality") {
    Rng rng(149);
    Grid grid{1, 2};
    NormedSpace s{1, 2.0};
    std::vector<double> ps{1.0, 2.0, 4.0};
    QuartileCollection c = random_collection(rng, grid, 5);
    StepFunction f = random_step_function(rng, grid, 1);
    auto r1 = size_equivalence_report(c, 1, f, s, grid, ps);
    auto r2 = size_equivalence_report(c, 1, f.scaled(ExactScalar(2)), s, grid, ps);
    for (size_t i = 0; i < ps.size(); ++i)
        for (size_t j = 0; j < ps.size(); ++j)
            CHECK(close(r1.ratios[i][j], r2.ratios[i][j], 1e-9));

    // A single quartile: the packet has constant modulus, all sizes agree.
    QuartileCollection one;
    one.insert({{0, 0}, 0});
    StepFunction g = wave_packet(Quartile{{0, 0}, 0}.child(1), PacketNorm::L2);
    auto r3 = size_equivalence_report(one, 1, g, s, grid, ps);
    for (size_t i = 1; i < ps.size(); ++i) CHECK(close(r3.rows[i].value, r3.rows[0].value, 1e-9));
}
