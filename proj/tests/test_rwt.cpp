#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qlab/rwt.hpp"
#include "util.hpp"

using namespace qlab;
using namespace qlab::testutil;

namespace {

const NormedSpace kScalar{1, 2.0};

StepFunction set_minus(const StepFunction& E, const StepFunction& F) {
    int res = std::max(E.resolution(), F.resolution());
    StepFunction e = E.refined(res), f = F.refined(res);
    StepFunction out(res, E.support_bound(), 1);
    for (const auto& [i, v] : e.cells())
        if (f.value_at_cell(i)[0].is_zero()) out.set_cell(i, v);
    return out;
}

}  // namespace

TEST_CASE("exceptional set: equal sets, tau choice, measure bounds") {
    StepFunction I01 = indicator({0, 0}, 0, 1);
    auto r = exceptional_set(I01, I01, I01);
    CHECK(r.tau == 1);
    CHECK(r.F.is_zero());
    CHECK(r.measures[0] == DyadicRational(1));

    StepFunction big = indicator({0, 1}, 0, 1);
    auto r2 = exceptional_set(I01, big, I01);
    CHECK(r2.tau == 2);

    Rng rng(179);
    Grid grid{2, 3};
    for (int it = 0; it < 25; ++it) {
        StepFunction E1 = random_dyadic_set(rng, grid);
        StepFunction E2 = random_dyadic_set(rng, grid);
        StepFunction E3 = random_dyadic_set(rng, grid);
        auto rr = exceptional_set(E1, E2, E3);
        const DyadicRational& mtau = rr.measures[rr.tau - 1];
        for (int v = 0; v < 3; ++v) CHECK(!(mtau < rr.measures[v]));
        // |F| <= 3 |E_tau| / 8 exactly (weak (1,1) with constant 1, three sets).
        CHECK(!(DyadicRational(3) * mtau < rr.f_measure.scaled(3)));
    }
    CHECK_THROWS(exceptional_set(StepFunction(0, 1, 1), I01, I01));
}

TEST_CASE("rwt above: dropped terms vanish, finite ratio, precondition checks") {
    Rng rng(181);
    Grid grid{2, 2};
    std::array<double, 3> alpha{1.0 / 3, 1.0 / 3, 1.0 / 3}, q{2.0, 2.0, 2.0};
    std::array<NormedSpace, 3> sp{kScalar, kScalar, kScalar};
    TrilinearForm Pi = TrilinearForm::scalar();
    for (int it = 0; it < 6; ++it) {
        StepFunction E1 = random_dyadic_set(rng, grid);
        StepFunction E2 = random_dyadic_set(rng, grid);
        StepFunction E3 = random_dyadic_set(rng, grid);
        auto ex = exceptional_set(E1, E2, E3);
        const StepFunction* E[3] = {&E1, &E2, &E3};
        StepFunction f[3];
        for (int v = 0; v < 3; ++v)
            f[v] = (v + 1 == ex.tau) ? set_minus(*E[v], ex.F) : *E[v];
        QuartileCollection P = random_convex_collection(rng, grid, 4, 30);
        auto rep = rwt_above(P, Pi, {&E1, &E2, &E3}, alpha, q, {&f[0], &f[1], &f[2]}, sp, grid);
        CHECK(rep.dropped_vanish);
        CHECK(std::isfinite(rep.ratio));
        CHECK(rep.bound > 0.0);
        CHECK(rep.skeleton_total >= 0.0);
        for (const auto& [n, b] : rep.level_bounds) CHECK(std::isfinite(b));
    }

    StepFunction I01 = indicator({0, 0}, 0, 2);
    QuartileCollection one;
    one.insert({{0, 0}, 0});
    CHECK_THROWS(rwt_above(one, Pi, {&I01, &I01, &I01}, {0.6, 0.2, 0.2}, q,
                           {&I01, &I01, &I01}, sp, grid));  // alpha_1 >= 1/q_1
    StepFunction toobig = I01.scaled(ExactScalar(2));
    CHECK_THROWS(rwt_above(one, Pi, {&I01, &I01, &I01}, alpha, q,
                           {&toobig, &I01, &I01}, sp, grid));  // not dominated
}

TEST_CASE("rwt below: degenerate equal sets and the d-value split") {
    auto eq = rwt_below_diagnostics({1.0, 1.0, 1.0}, {2.0, 2.0, 2.0},
                                    {1.0 / 3, 1.0 / 3, 1.0 / 3});
    CHECK(eq.hypothesis_ok);
    CHECK(eq.sum_II == 0.0);
    CHECK(eq.sum_III == 0.0);
    CHECK(close(eq.d[0], 1.0));
    CHECK(close(eq.d[1], 1.0));
    CHECK(close(eq.d[2], 1.0));

    auto r = rwt_below_diagnostics({1.0, 0.25, 0.0625}, {2.0, 2.0, 2.0},
                                   {1.0 / 3, 1.0 / 3, 1.0 / 3});
    CHECK(r.tau == 1);
    CHECK(r.hypothesis_ok);
    CHECK(r.log_branch);  // q_a = q_tau = 2
    CHECK(close(r.d[0], 1.0));
    CHECK(close(r.d[1], 4.0));
    CHECK(close(r.d[2], 16.0));

    // Direct evaluation of the full series agrees with the four-way split.
    double direct = 0.0;
    for (int n = -300; n <= 80; ++n) {
        double prod = std::ldexp(1.0, n);
        double m[3] = {1.0, 0.25, 0.0625};
        for (int v = 0; v < 3; ++v)
            prod *= std::min(m[v], std::pow(2.0, -n / 2.0) * std::pow(m[v], 0.5));
        direct += prod;
    }
    CHECK(close(r.total, direct, 1e-9));
    CHECK(r.ratio_I <= 2.0 + 1e-9);  // geometric series: sum_I = 2 closed_I here
    CHECK(std::isfinite(r.ratio_II));
    CHECK(std::isfinite(r.ratio_III_IV));
    CHECK(r.beta_conditions_ok);
    CHECK_THROWS(rwt_below_diagnostics({1.0, 1.0, 1.0}, {4.0, 4.0, 4.0},
                                       {1.0 / 3, 1.0 / 3, 1.0 / 3}));  // rho <= 0
}

TEST_CASE("hexagon: vertex line equations, symmetric example, membership") {
    auto h = hexagon(2.0, 2.0, 2.0);
    CHECK(close(h.rho, 0.5, 1e-12));
    CHECK(close(h.vertices[0].beta[0], -0.5, 1e-12));  // A
    CHECK(close(h.vertices[0].beta[1], 0.5, 1e-12));
    CHECK(close(h.vertices[0].beta[2], 1.0, 1e-12));
    CHECK(close(h.vertices[2].beta[0], 1.0, 1e-12));  // C
    CHECK(close(h.vertices[2].beta[1], -0.5, 1e-12));
    CHECK(close(h.vertices[2].beta[2], 0.5, 1e-12));

    // Each vertex lies on its two defining lines: a side beta_v = 1/q_v and a
    // restriction beta_v = 1/q_v + (q_v - 1) rho.
    for (double q1 : {2.0, 2.5})
        for (double q2 : {2.0, 3.0}) {
            double q3 = 2.0;
            auto hx = hexagon(q1, q2, q3);
            auto side = [&](int i, int v) {
                CHECK(std::fabs(hx.vertices[i].beta[v] - 1.0 / hx.q[v]) <= 1e-12);
            };
            auto restr = [&](int i, int v) {
                CHECK(std::fabs(hx.vertices[i].beta[v] - 1.0 / hx.q[v] -
                                (hx.q[v] - 1.0) * hx.rho) <= 1e-12);
            };
            side(0, 1), restr(0, 2);  // A
            side(1, 0), restr(1, 2);  // B
            side(2, 2), restr(2, 0);  // C
            side(3, 1), restr(3, 0);  // D
            side(4, 0), restr(4, 1);  // E
            side(5, 2), restr(5, 1);  // F
            for (int i = 0; i < 6; ++i)
                CHECK(std::fabs(hx.vertices[i].beta[0] + hx.vertices[i].beta[1] +
                                hx.vertices[i].beta[2] - 1.0) <= 1e-12);
        }

    CHECK(h.contains({{1.0 / 3, 1.0 / 3, 1.0 / 3}}));
    CHECK(!h.contains({{0.0, 0.0, 1.0}}));        // on the closure boundary
    CHECK(!h.contains({{0.25, 0.25, 0.25}}));     // sum != 1
    CHECK(!h.contains({{-1.0, 1.0, 1.0}}));
    CHECK_THROWS(hexagon(4.0, 4.0, 4.0));  // rho <= 0

    // Membership invariant under simultaneous permutation of (beta, q).
    auto h23 = hexagon(2.0, 3.0, 2.5);
    auto h32 = hexagon(3.0, 2.0, 2.5);
    Rng rng(191);
    for (int it = 0; it < 200; ++it) {
        double b1 = ((int)rng.next(41) - 20) / 20.0;
        double b2 = ((int)rng.next(41) - 20) / 20.0;
        ExponentTriple t{{b1, b2, 1.0 - b1 - b2}};
        ExponentTriple tp{{b2, b1, 1.0 - b1 - b2}};
        CHECK(h23.contains(t) == h32.contains(tp));
    }

    // The local triangle {0 < beta_v < 1/q_v} sits inside the region.
    for (int it = 0; it < 200; ++it) {
        double b1 = 0.5 * (1 + (int)rng.next(9)) / 10.0;
        double b2 = 0.5 * (1 + (int)rng.next(9)) / 10.0;
        double b3 = 1.0 - b1 - b2;
        if (!(b3 > 0.0 && b3 < 0.5)) continue;
        CHECK(h.contains({{b1, b2, b3}}));
    }
}

TEST_CASE("classification: strong, bilinear, outside") {
    auto h = hexagon(2.0, 2.0, 2.0);
    auto strong = classify_estimate(h, {{1.0 / 3, 1.0 / 3, 1.0 / 3}});
    CHECK(strong.kind == Classification::Kind::Strong);
    CHECK(close(strong.p[0], 3.0));
    CHECK(close(strong.p[1], 3.0));
    CHECK(close(strong.p[2], 3.0));

    auto bil = classify_estimate(h, {{5.0 / 8, 5.0 / 8, -0.25}});
    CHECK(bil.kind == Classification::Kind::Bilinear);
    CHECK(bil.slot == 3);
    CHECK(close(bil.target, 0.8));

    auto out = classify_estimate(h, {{0.0, 0.0, 1.0}});
    CHECK(out.kind == Classification::Kind::Outside);
}

TEST_CASE("duality example region") {
    auto r = duality_example_region(2.5);
    CHECK(close(r.r_lo, 0.8, 1e-12));
    CHECK(close(r.r_hi, 5.0, 1e-12));
    CHECK(r.extra_condition == false);

    auto r3 = duality_example_region(3.0);
    CHECK(r3.extra_condition);
    CHECK(close(r3.extra_lhs, 1.0 / 3.0, 1e-12));

    auto r39 = duality_example_region(3.9);
    CHECK(r39.r_lo < r39.r_hi);
    CHECK(close(duality_example_region(3.99).r_lo, 2.0 / 1.01, 1e-9));
    CHECK_THROWS(duality_example_region(2.0));
    CHECK_THROWS(duality_example_region(4.0));
}

TEST_CASE("duality example agrees with the hexagon image") {
    for (double q : {2.2, 2.5, 2.8}) {
        auto reg = duality_example_region(q);
        auto hx = hexagon(q, q, 2.0);
        int checked = 0;
        for (double p1 = 1.05; p1 < 30.0; p1 *= 1.35)
            for (double p2 = 1.05; p2 < 30.0; p2 *= 1.35) {
                ExponentTriple b{{1.0 / p1, 1.0 / p2, 1.0 - 1.0 / p1 - 1.0 / p2}};
                CHECK(reg.admissible(p1, p2) == hx.contains(b));
                ++checked;
            }
        CHECK(checked > 0);
    }
}
