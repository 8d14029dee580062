#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "util.hpp"

using namespace qlab;
using namespace qlab::testutil;

TEST_CASE("DyadicRational canonical form and arithmetic") {
    DyadicRational x(BigInt(4), 2);  // 4/4 = 1
    CHECK(x.numerator() == 1);
    CHECK(x.scale() == 0);
    CHECK(DyadicRational(BigInt(0), 5) == DyadicRational());

    DyadicRational a(BigInt(3), 3), b(BigInt(1), 2);  // 3/8 + 1/4 = 5/8
    CHECK((a + b) == DyadicRational(BigInt(5), 3));
    CHECK((a * b) == DyadicRational(BigInt(3), 5));
    CHECK((a - a).is_zero());
    CHECK(a < b + b);
    CHECK(a.scaled(3) == DyadicRational(3));
    CHECK(DyadicRational(BigInt(-3), 3).to_decimal_string() == "-0.375");
    CHECK(DyadicRational(7).to_decimal_string() == "7");
    CHECK(DyadicRational(BigInt(1), 4).to_decimal_string() == "0.0625");
}

TEST_CASE("ExactScalar ring, sign, sqrt powers") {
    ExactScalar s2 = ExactScalar::sqrt_pow2(1);
    CHECK(s2 * s2 == ExactScalar(2));
    ExactScalar inv = ExactScalar::sqrt_pow2(-1);
    CHECK(s2 * inv == ExactScalar(1));
    CHECK(ExactScalar::sqrt_pow2(-3) * ExactScalar::sqrt_pow2(3) == ExactScalar(1));

    ExactScalar x = ExactScalar(1) - s2;  // 1 - sqrt2 < 0
    CHECK(x.sign() == -1);
    CHECK(x.abs().sign() == 1);
    CHECK((s2 - ExactScalar(1)).sign() == 1);
    CHECK(ExactScalar().sign() == 0);
    CHECK(close(s2.to_double(), std::sqrt(2.0)));
}

TEST_CASE("DyadicInterval relations") {
    DyadicInterval I{3, -1};  // [3/2, 2)
    CHECK(I.parent() == DyadicInterval{1, 0});
    CHECK(I.parent().left_child() == DyadicInterval{2, -1});
    CHECK(I.parent().right_child() == I);
    CHECK(I.sibling() == DyadicInterval{2, -1});
    CHECK(I.ancestor(1) == DyadicInterval{0, 1});
    CHECK(DyadicInterval{0, 1}.contains(I));
    CHECK(!I.contains(DyadicInterval{0, 1}));
    CHECK(I.contains(DyadicRational(BigInt(3), 1)));   // 1.5
    CHECK(!I.contains(DyadicRational(BigInt(1), 0)));  // 1.0
    CHECK(I.length() == DyadicRational(BigInt(1), 1));
}

TEST_CASE("average: indicator, half overlap, cancellation") {
    StepFunction f = indicator({0, 0}, 1, 1);
    CHECK(f.average({0, 0})[0] == ExactScalar(1));

    StepFunction g = indicator({0, -1}, 1, 1);  // 1_{[0,1/2)}
    CHECK(g.average({0, 0})[0] == ExactScalar(DyadicRational(BigInt(1), 1)));

    StepFunction h = indicator({0, 0}, 1, 1) - indicator({1, 0}, 1, 1);
    CHECK(h.average({0, 1})[0].is_zero());
}

TEST_CASE("average splits into children exactly") {
    Rng rng(11);
    Grid grid{2, 3};
    for (int it = 0; it < 20; ++it) {
        StepFunction f = random_step_function(rng, grid, 2);
        for (int j = 1 - grid.N; j <= grid.K; ++j)
            for (long long pos = 0; pos < (1LL << (grid.K - j)); ++pos) {
                DyadicInterval I{pos, j};
                Coord a = f.average(I), l = f.average(I.left_child()), r = f.average(I.right_child());
                for (int d = 0; d < 2; ++d) {
                    ExactScalar half(DyadicRational(BigInt(1), 1));
                    CHECK((l[d] + r[d]) * half == a[d]);
                }
            }
    }
}

TEST_CASE("conditional expectation: idempotence, scale 0 example, composition") {
    StepFunction g = indicator({0, -1}, 1, 1);
    StepFunction e0 = conditional_expectation(g, 0);
    CHECK(e0 == indicator({0, 0}, 1, 1).scaled(ExactScalar(DyadicRational(BigInt(1), 1))));

    Rng rng(7);
    Grid grid{2, 3};
    for (int it = 0; it < 10; ++it) {
        StepFunction f = random_step_function(rng, grid, 1);
        CHECK(conditional_expectation(f, -f.resolution()) == f);
        for (int j = -grid.N; j <= grid.K; ++j)
            for (int j2 = -grid.N; j2 <= grid.K; ++j2) {
                StepFunction lhs = conditional_expectation(conditional_expectation(f, j2), j);
                StepFunction rhs = conditional_expectation(f, std::max(j, j2));
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("dyadic maximal: ancestors and monotonicity") {
    StepFunction f = indicator({0, 0}, 0, 2);  // 1_{[0,1)} on [0,4)
    CHECK(dyadic_maximal(f, 0) == ExactScalar(1));
    CHECK(dyadic_maximal(f, 1) == ExactScalar(DyadicRational(BigInt(1), 1)));
    CHECK(dyadic_maximal(f, 2) == ExactScalar(DyadicRational(BigInt(1), 2)));
    CHECK(dyadic_maximal(f, 3) == ExactScalar(DyadicRational(BigInt(1), 2)));

    Rng rng(3);
    Grid grid{2, 2};
    for (int it = 0; it < 10; ++it) {
        StepFunction a = random_dyadic_set(rng, grid);
        StepFunction b = a + random_dyadic_set(rng, grid);  // b >= a pointwise
        for (long long c = 0; c < a.cell_count(); ++c)
            CHECK(!(dyadic_maximal(b, c) < dyadic_maximal(a, c)));
    }
    CHECK_THROWS(dyadic_maximal(indicator({0, 0}, 0, 1).scaled(ExactScalar(-1)), 0));
}

TEST_CASE("dyadic maximal weak (1,1) with constant 1, exact") {
    Rng rng(19);
    Grid grid{3, 2};
    for (int it = 0; it < 25; ++it) {
        StepFunction E = random_dyadic_set(rng, grid);
        DyadicRational measE;
        DyadicRational h = DyadicRational::pow2(-E.resolution());
        for (const auto& [i, v] : E.cells()) measE += h;
        DyadicRational lambda(BigInt(1 + (long long)rng.next(7)), 1 + (int)rng.next(3));
        DyadicRational level;  // |{M 1_E > lambda}|
        for (long long c = 0; c < E.cell_count(); ++c)
            if (ExactScalar(lambda) < dyadic_maximal(E, c)) level += h;
        CHECK(!(measE < level * lambda));
    }
}

TEST_CASE("bmo norm: constant, Haar, Jensen") {
    NormedSpace s{1, 2.0};
    StepFunction c = indicator({0, 1}, 0, 1);
    CHECK(bmo_norm(c, 2.0, s) == 0.0);

    StepFunction h = haar_function({0, 0});
    CHECK(close(bmo_norm(h, 2.0, s), 1.0));

    Rng rng(5);
    Grid grid{2, 2};
    for (int it = 0; it < 10; ++it) {
        StepFunction f = random_step_function(rng, grid, 1);
        CHECK(bmo_norm(f, 1.0, s) <= bmo_norm(f, 2.0, s) + 1e-9);
    }
}

TEST_CASE("lp norm: indicator, packet, homogeneity, sup norm") {
    NormedSpace s{1, 2.0};
    CHECK(close(lp_norm(indicator({0, 0}, 0, 1), 7.0, s), 1.0));

    Rng rng(23);
    for (int it = 0; it < 10; ++it) {
        int j = rng.range(-3, 2);
        long long pos = (long long)rng.next(j < 2 ? (1ULL << (2 - j)) : 1);
        long long n = (long long)rng.next(1ULL << (3 + j));
        StepFunction w = wave_packet(Tile{{pos, j}, n}, PacketNorm::L2);
        CHECK(close(lp_norm(w, 2.0, s), 1.0));
        CHECK(l2_norm_sq_exact(w) == ExactScalar(1));
    }

    Grid grid{2, 2};
    for (int it = 0; it < 10; ++it) {
        StepFunction f = random_step_function(rng, grid, 1);
        for (double p : {1.0, 2.0, 3.5, kInfExponent})
            CHECK(close(lp_norm(f.scaled(ExactScalar(2)), p, s), 2.0 * lp_norm(f, p, s)));
    }
}
