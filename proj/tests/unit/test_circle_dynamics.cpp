#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fibrecontact/circle_dynamics.hpp"
#include "fibrecontact/hyperbolic.hpp"
#include "oracles/oracles.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace fibrecontact;
using namespace fibrecontact::circle;
using hyperbolic::Isometry2H;

namespace {

LiftedCircleMap to_map(const oracle::PL& p) {
    std::vector<Breakpoint> b;
    for (std::size_t i = 0; i < p.t.size(); ++i) b.push_back({p.t[i], p.v[i]});
    return LiftedCircleMap::piecewise_linear(b);
}

Rational q(long a, long b = 1) { return make_rational(a, b); }

LiftedCircleMap center_rotation(double turns) {
    return LiftedCircleMap::moebius(Isometry2H::rotation_about_center(2 * std::numbers::pi * turns));
}

}  // namespace

TEST_CASE("compose") {
    auto f = LiftedCircleMap::piecewise_linear({{q(0), q(1, 4)}, {q(1, 2), q(3, 5)}});
    auto id = LiftedCircleMap::identity();
    for (int k = 0; k < 20; ++k) {
        Rational t = q(k, 13);
        CHECK(compose(id, f).eval_exact(t) == f.eval_exact(t));
    }
    auto s = compose(LiftedCircleMap::translation(q(1, 3)), LiftedCircleMap::translation(q(2, 5)));
    CHECK(s.breakpoints().size() == 1);
    CHECK(s.eval_exact(q(0)) == q(11, 15));

    SUBCASE("flattened PL composite agrees with the word form") {
        std::mt19937_64 rng(11);
        for (int trial = 0; trial < 20; ++trial) {
            auto a = to_map(oracle::random_pl(rng)), b = to_map(oracle::random_pl(rng));
            auto flat = compose(a, b);
            auto word = LiftedCircleMap::word({{share(a), 1}, {share(b), 1}});
            REQUIRE(flat.kind() == LiftedCircleMap::Kind::PiecewiseLinear);
            for (int k = 0; k < 50; ++k) {
                Rational t = q(k * 37 % 1000 - 500, 257);
                CHECK(flat.eval_exact(t) == a.eval_exact(b.eval_exact(t)));
                CHECK(std::abs(flat(to_double(t)) - word(to_double(t))) < 1e-12);
            }
        }
    }
}

TEST_CASE("invert") {
    auto t = invert(LiftedCircleMap::translation(q(2, 7)));
    CHECK(t.eval_exact(q(0)) == q(-2, 7));

    auto f = LiftedCircleMap::piecewise_linear({{q(0), q(1, 4)}, {q(1, 2), q(3, 5)}});
    auto g = invert(f);
    for (int k = -30; k < 30; ++k) {
        Rational x = q(k, 11);
        CHECK(g.eval_exact(f.eval_exact(x)) == x);
        CHECK(f.eval_exact(g.eval_exact(x)) == x);
    }

    auto m = LiftedCircleMap::moebius(Isometry2H::from_disk({1.3, 0.2}, {0.4, -0.7}), 2);
    auto mi = invert(m);
    CHECK(mi.kind() == LiftedCircleMap::Kind::MoebiusBoundaryLift);
    for (int k = 0; k < 100; ++k) {
        double x = -1.5 + 0.031 * k;
        CHECK(std::abs(mi(m(x)) - x) <= 1e-12);
    }
}

TEST_CASE("displacement") {
    CHECK(sup_displacement(LiftedCircleMap::translation(q(5, 3))).exact() == q(5, 3));
    CHECK(sup_displacement(LiftedCircleMap::identity()).exact() == 0);
    CHECK(inf_displacement(LiftedCircleMap::translation(q(-2, 9))).exact() == q(-2, 9));

    SUBCASE("exact values against a breakpoint scan") {
        std::mt19937_64 rng(5);
        for (int trial = 0; trial < 200; ++trial) {
            auto p = oracle::random_pl(rng);
            auto f = to_map(p);
            CHECK(sup_displacement(f).exact() == oracle::sup_displacement(p));
            // inf over one period of f(t) - t, attained at a breakpoint
            mpq_class lo = p.v[0] - p.t[0];
            for (std::size_t i = 0; i < p.t.size(); ++i) lo = std::min(lo, mpq_class(p.v[i] - p.t[i]));
            CHECK(inf_displacement(f).exact() == lo);
            CHECK(inf_displacement(f).exact() <= sup_displacement(f).exact());
        }
    }

    SUBCASE("Wood subadditivity on random pairs") {
        std::mt19937_64 rng(99);
        int violations = 0;
        for (int trial = 0; trial < 500; ++trial) {
            auto pf = oracle::random_pl(rng), pg = oracle::random_pl(rng);
            auto hf = oracle::sup_displacement(pf), hg = oracle::sup_displacement(pg);
            auto hfg = oracle::sup_displacement_of_composite(pf, pg);
            CHECK(sup_displacement(compose(to_map(pf), to_map(pg))).exact() == hfg);
            if (!(hfg <= hf + hg && hf + hg <= hfg + 1)) ++violations;
        }
        CHECK(violations == 0);
    }

    SUBCASE("Moebius sup is numerical") {
        auto r = center_rotation(0.125);
        auto s = sup_displacement(r);
        CHECK_FALSE(s.is_exact());
        CHECK(std::abs(std::abs(s.to_double()) - 0.125) < 1e-9);
    }
}

TEST_CASE("translation number") {
    auto est = translation_number(LiftedCircleMap::translation(q(3, 7)), 100);
    REQUIRE(est.exact_value.has_value());
    CHECK(*est.exact_value == q(3, 7));
    CHECK(est.value == doctest::Approx(3.0 / 7.0).epsilon(1e-15));
    CHECK(est.error_bound == doctest::Approx(0.01));

    auto a = share(center_rotation(0.1)), b = share(center_rotation(0.27));
    auto rel = commutator(a, b);
    CHECK(std::abs(translation_number(rel, 1000).value) <= 1e-3 + 1e-9);

    for (double theta : {0.05, 0.2, 0.375}) {
        auto r = center_rotation(theta);
        auto e = translation_number(r, 10000);
        CHECK(std::abs(std::abs(e.value) - theta) <= e.error_bound);
    }

    CHECK_THROWS(translation_number(LiftedCircleMap::identity(), 0));
}

TEST_CASE("relators") {
    std::vector<MapRef> ids(4, share(LiftedCircleMap::identity()));
    auto r = evaluate_relator(ids);
    for (int k = 0; k < 10; ++k) CHECK(r(0.1 * k) == doctest::Approx(0.1 * k));

    std::vector<MapRef> tr{share(LiftedCircleMap::translation(q(1, 3))), share(LiftedCircleMap::translation(q(3, 4)))};
    auto rt = evaluate_relator(tr);
    REQUIRE(rt.flatten().has_value());
    CHECK(rt.flatten()->eval_exact(q(1, 5)) == q(1, 5));

    std::vector<MapRef> three(3, share(LiftedCircleMap::identity()));
    CHECK_THROWS_AS(evaluate_relator(three), OddMapCount);
    CHECK_THROWS_AS(evaluate_relator(std::vector<MapRef>{}), OddMapCount);
}

TEST_CASE("Wood bound check") {
    std::vector<MapRef> rot{share(center_rotation(0.1)), share(center_rotation(0.3))};
    auto ok = wood_bound_check(rot, 256);
    CHECK(ok.holds);
    CHECK(ok.genus == 1);

    auto poly = hyperbolic::build_symmetric_polygon(2, hyperbolic::radius_for_area(2, 3 * std::numbers::pi));
    std::vector<MapRef> pairs;
    for (const auto& iso : hyperbolic::side_pairings(poly)) pairs.push_back(share(hyperbolic::boundary_lift(iso)));
    CHECK(wood_bound_check(pairs, 512).holds);

    auto synthetic = LiftedCircleMap::word({{share(LiftedCircleMap::translation(q(5))), 1}});
    auto bad = wood_bound_check(synthetic, 2, 64);
    CHECK_FALSE(bad.holds);
    REQUIRE(bad.witness.has_value());
    CHECK(*bad.witness == 0.0);
    CHECK(bad.max_displacement == doctest::Approx(5));
}

TEST_CASE("Euler number from sections") {
    auto k = LiftedCircleMap::translation(q(1, 3));
    CHECK(euler_from_sections(k, k) == 0);

    std::vector<MapRef> rot{share(center_rotation(0.1)), share(center_rotation(0.3))};
    auto fk = evaluate_relator(rot);
    CHECK(euler_from_sections(LiftedCircleMap::translation(q(-3)), fk) == -3);

    auto bent = LiftedCircleMap::piecewise_linear({{q(0), q(0)}, {q(1, 2), q(3, 4)}});
    CHECK_THROWS_AS(euler_from_sections(bent, LiftedCircleMap::identity()), NonConstantDifference);
    CHECK_THROWS_AS(euler_from_sections(LiftedCircleMap::translation(q(1, 2)), LiftedCircleMap::identity()),
                    NonIntegerDifference);
}

TEST_CASE("property: equivariance and monotonicity") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-3, 3);
    std::vector<LiftedCircleMap> maps;
    for (int i = 0; i < 10; ++i) maps.push_back(to_map(oracle::random_pl(rng)));
    maps.push_back(LiftedCircleMap::moebius(Isometry2H::from_disk({1.1, 0.3}, {0.2, 0.4})));
    maps.push_back(center_rotation(0.3));
    for (const auto& f : maps) {
        for (int k = 0; k < 100; ++k) {
            double t = u(rng);
            CHECK(std::abs(f(t + 1) - f(t) - 1) <= 1e-12);
            double s = t + 1e-3 + std::abs(u(rng));
            CHECK(f(t) < f(s));
        }
        if (f.kind() == LiftedCircleMap::Kind::PiecewiseLinear)
            for (int k = 0; k < 20; ++k) {
                Rational t = q(k * 7 - 60, 17);
                CHECK(f.eval_exact(t + 1) == f.eval_exact(t) + 1);
            }
    }
}

TEST_CASE("property: translation number under conjugation and shift") {
    std::mt19937_64 rng(77);
    const std::size_t n = 2000;
    for (int trial = 0; trial < 25; ++trial) {
        auto f = to_map(oracle::random_pl(rng, 4, 32));
        auto g = to_map(oracle::random_pl(rng, 4, 32));
        auto rf = translation_number(f, n, 256);
        auto conj = LiftedCircleMap::word({{share(g), 1}, {share(f), 1}, {share(g), -1}});
        auto rc = translation_number(conj, n, 256);
        CHECK(std::abs(rc.value - rf.value) <= 2 * std::max(rc.error_bound, rf.error_bound));
        auto shifted = compose(f, LiftedCircleMap::translation(q(1)));
        auto rs = translation_number(shifted, n, 256);
        CHECK(std::abs(rs.value - rf.value - 1) <= rf.error_bound + rs.error_bound);
    }
}
