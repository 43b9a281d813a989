#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fibrecontact/hyperbolic.hpp"
#include "oracles/oracles.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace fibrecontact;
using namespace fibrecontact::hyperbolic;

namespace {

const double kPi = std::numbers::pi;

double gap(const HPoint& a, const HPoint& b) { return std::abs(a.z() - b.z()); }

HPoint random_point(std::mt19937_64& rng, double max_radius = 0.9) {
    std::uniform_real_distribution<double> r(0, max_radius), a(0, 2 * kPi);
    return HPoint::from_complex(std::polar(r(rng), a(rng)));
}

Isometry2H random_isometry(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> a(0, 2 * kPi);
    return Isometry2H::rotation_about(random_point(rng), a(rng)) * Isometry2H::moving_to_origin(random_point(rng));
}

/// Residuals of the four vertex conditions for pair index i (1-based).
double pairing_residual(const SymmetricPolygon& poly, const std::vector<Isometry2H>& phi) {
    double worst = 0;
    for (int i = 1; i <= poly.genus(); ++i) {
        const auto& odd = phi[2 * i - 2];
        const auto& even = phi[2 * i - 1];
        worst = std::max(worst, gap(odd.apply(poly.vertex(4 * i - 1)), poly.vertex(4 * i - 2)));
        worst = std::max(worst, gap(odd.apply(poly.vertex(4 * i)), poly.vertex(4 * i - 3)));
        worst = std::max(worst, gap(even.apply(poly.vertex(4 * i - 2)), poly.vertex(4 * i + 1)));
        worst = std::max(worst, gap(even.apply(poly.vertex(4 * i - 1)), poly.vertex(4 * i)));
    }
    return worst;
}

}  // namespace

TEST_CASE("isometries") {
    auto r = Isometry2H::rotation_about_center(0.7);
    CHECK(std::abs(r.det() - 1) <= 1e-12);
    CHECK(r.type() == IsometryType::Elliptic);
    CHECK(Isometry2H::identity().type() == IsometryType::Parabolic);
    CHECK(Isometry2H(2, 0, 0, 0.5).type() == IsometryType::Hyperbolic);
    CHECK(Isometry2H(1, 1, 0, 1).type() == IsometryType::Parabolic);
    CHECK(std::string(to_string(IsometryType::Elliptic)) == "elliptic");
    CHECK_THROWS_AS(HPoint(1, 0), InvalidPoint);
    CHECK_THROWS(Isometry2H(1, 2, 3, 4));

    std::mt19937_64 rng(1);
    for (int k = 0; k < 20; ++k) {
        auto g = random_isometry(rng), h = random_isometry(rng);
        CHECK(std::abs((g * h).det() - 1) <= 1e-10);
        CHECK((g * g.inverse()).distance(Isometry2H::identity()) <= 1e-10);
        auto p = random_point(rng);
        CHECK(gap((g * h).apply(p), g.apply(h.apply(p))) <= 1e-12);
    }
}

TEST_CASE("hdistance") {
    HPoint o(0, 0);
    CHECK(hdistance(o, o) == 0);
    for (double r : {0.1, 0.5, 0.9, 0.99}) {
        HPoint p(r, 0);
        CHECK(hdistance(o, p) == doctest::Approx(2 * std::atanh(r)).epsilon(1e-14));
        CHECK(std::abs(hdistance(o, p) - oracle::radial_distance_by_integration(r, 200000)) <= 1e-7 * hdistance(o, p));
    }
    std::mt19937_64 rng(2);
    for (int k = 0; k < 100; ++k) {
        auto p = random_point(rng), q = random_point(rng), s = random_point(rng);
        auto g = random_isometry(rng);
        CHECK(std::abs(hdistance(g.apply(p), g.apply(q)) - hdistance(p, q)) <= 1e-10);
        CHECK(hdistance(p, q) == doctest::Approx(hdistance(q, p)));
        CHECK(hdistance(p, s) <= hdistance(p, q) + hdistance(q, s) + 1e-12);
        CHECK(hdistance(p, q) == doctest::Approx(oracle::distance(p.z(), q.z())).epsilon(1e-10));
    }
}

TEST_CASE("symmetric polygons") {
    auto sq = build_symmetric_polygon(1, 1.0);
    CHECK(sq.size() == 4);
    for (int k = 1; k <= 4; ++k) CHECK(hdistance(sq.vertex(k), sq.vertex(k + 1)) == doctest::Approx(sq.side_length()));

    auto oct = build_symmetric_polygon(2, 2.0);
    CHECK(oct.size() == 8);
    for (int i = 1; i <= 2; ++i) {
        CHECK(std::abs(hdistance(oct.vertex(4 * i - 3), oct.vertex(4 * i - 2)) -
                       hdistance(oct.vertex(4 * i - 1), oct.vertex(4 * i))) <= 1e-10);
        CHECK(std::abs(hdistance(oct.vertex(4 * i - 2), oct.vertex(4 * i - 1)) -
                       hdistance(oct.vertex(4 * i), oct.vertex(4 * i + 1))) <= 1e-10);
    }
    for (int k = 1; k <= 8; ++k) CHECK(hdistance(HPoint(0, 0), oct.vertex(k)) == doctest::Approx(2.0));

    CHECK(polygon_area(build_symmetric_polygon(3, 1e-4)) < 1e-7);
    for (double R : {0.1, 1.0, 3.0, 10.0}) {
        double a = polygon_area(build_symmetric_polygon(1, R));
        CHECK(a > 0);
        CHECK(a < 2 * kPi);
    }
}

TEST_CASE("property: Gauss-Bonnet against a fan triangulation") {
    for (int g : {1, 2, 3})
        for (double R : {0.5, 1.0, 2.0}) {
            auto poly = build_symmetric_polygon(g, R);
            double fan = oracle::fan_triangulated_area(oracle::regular_polygon(g, R));
            CHECK(std::abs(polygon_area(poly) - fan) <= 1e-9);
        }
}

TEST_CASE("radius for area") {
    double R = radius_for_area(2, 4 * kPi);
    CHECK(std::isfinite(R));
    CHECK(std::abs(polygon_area(build_symmetric_polygon(2, R)) - 4 * kPi) <= 1e-9);
    CHECK(radius_for_area(2, 1e-6) < 0.01);
    CHECK_THROWS_AS(radius_for_area(2, 6 * kPi), AreaOutOfRange);
    CHECK_THROWS_AS(radius_for_area(1, 0), AreaOutOfRange);
    CHECK_THROWS_AS(radius_for_area(1, -1), AreaOutOfRange);
    for (int g : {1, 2, 3})
        for (double R : {0.3, 0.5, 1.0, 2.0, 3.5}) {
            double a = polygon_area(build_symmetric_polygon(g, R));
            CHECK(std::abs(radius_for_area(g, a) - R) <= 1e-8);
        }
}

TEST_CASE("isometry from segments") {
    HPoint A(0.1, 0.2), B(-0.3, 0.4);
    CHECK(isometry_from_segments(A, B, A, B).distance(Isometry2H::identity()) <= 1e-10);
    auto rot = Isometry2H::rotation_about_center(1.1);
    auto phi = isometry_from_segments(A, B, rot.apply(A), rot.apply(B));
    CHECK(phi.distance(rot) <= 1e-10);
    CHECK_THROWS_AS(isometry_from_segments(A, B, A, HPoint(0.8, 0)), LengthMismatch);

    std::mt19937_64 rng(3);
    for (int k = 0; k < 30; ++k) {
        auto g = random_isometry(rng);
        auto p = random_point(rng), q = random_point(rng);
        auto h = isometry_from_segments(p, q, g.apply(p), g.apply(q));
        CHECK(gap(h.apply(p), g.apply(p)) <= 1e-10);
        CHECK(gap(h.apply(q), g.apply(q)) <= 1e-10);
    }
}

TEST_CASE("side pairings") {
    auto sq = build_symmetric_polygon(1, 1.0);
    auto phi = side_pairings(sq);
    REQUIRE(phi.size() == 2);
    CHECK(pairing_residual(sq, phi) <= 1e-9);

    auto oct = build_symmetric_polygon(2, radius_for_area(2, 5 * kPi));
    auto phi2 = side_pairings(oct);
    REQUIRE(phi2.size() == 4);
    CHECK(pairing_residual(oct, phi2) <= 1e-9);

    for (const auto& f : side_pairings(build_symmetric_polygon(2, 1e-5))) {
        CHECK(f.type() == IsometryType::Elliptic);
        CHECK(std::abs(f.apply(HPoint(0, 0)).z()) <= 1e-4);
    }

    std::mt19937_64 rng(6);
    for (const auto& f : phi2)
        for (int k = 0; k < 100; ++k) {
            auto p = random_point(rng, 0.7), q = random_point(rng, 0.7);
            CHECK(std::abs(hdistance(f.apply(p), f.apply(q)) - hdistance(p, q)) <= 1e-9);
        }
}

TEST_CASE("commutator products") {
    std::vector<Isometry2H> rot{Isometry2H::rotation_about_center(0.3), Isometry2H::rotation_about_center(1.2)};
    CHECK(std::abs(std::abs(commutator_product(rot).trace()) - 2) <= 1e-12);

    auto id = commutator_product(side_pairings(build_symmetric_polygon(2, radius_for_area(2, 4 * kPi))));
    CHECK(std::min(id.distance(Isometry2H::identity()),
                   id.distance(Isometry2H(-1, 0, 0, -1))) <= 1e-6);
    auto quarter = commutator_product(side_pairings(build_symmetric_polygon(2, radius_for_area(2, 5 * kPi))));
    CHECK(std::abs(quarter.trace()) <= 1e-6);

    for (int g : {1, 2, 3})
        for (double frac : {0.1, 0.35, 0.6, 0.85}) {
            double area = frac * (4 * g - 2) * kPi;
            auto c = commutator_product(side_pairings(build_symmetric_polygon(g, radius_for_area(g, area))));
            double expect = 2 * std::abs(std::cos(((4 * g - 2) * kPi - area) / 2));
            CHECK(std::abs(std::abs(c.trace()) - expect) <= 1e-6);
        }
}

TEST_CASE("boundary lifts") {
    auto id = boundary_lift(Isometry2H::identity());
    for (int k = 0; k < 10; ++k) CHECK(id(0.1 * k) == doctest::Approx(0.1 * k).epsilon(1e-14));
    for (double theta : {0.1, 0.25, 0.4}) {
        auto f = boundary_lift(Isometry2H::rotation_about_center(2 * kPi * theta));
        auto est = circle::translation_number(f, 5000);
        CHECK(std::abs(std::abs(est.value) - theta) <= est.error_bound);
        CHECK(f(0.0) >= 0);
        CHECK(f(0.0) < 1);
    }
    auto hyp = boundary_lift(Isometry2H(3, 0, 0, 1.0 / 3));
    auto est = circle::translation_number(hyp, 5000);
    CHECK(std::abs(est.value) <= est.error_bound);
}

TEST_CASE("holonomy translation number") {
    auto small = holonomy_translation_number(2, 1e-4, 1000);
    CHECK(std::abs(small.rotation.value) <= 1e-4 + small.rotation.error_bound);

    for (double area : {kPi, 4 * kPi}) {
        auto h = holonomy_translation_number(2, area, 100000);
        CHECK(std::abs(std::abs(h.rotation.value) - area / (2 * kPi)) <= 1e-5 + 1e-6);
    }
    CHECK_THROWS_AS(holonomy_translation_number(2, 6 * kPi, 10), AreaOutOfRange);
}

TEST_CASE("property: rotation sweep and lift independence") {
    const int g = 2;
    for (double area = kPi / 2; area < (4 * g - 2) * kPi; area += kPi / 2) {
        auto h = holonomy_translation_number(g, area, 20000);
        CHECK(std::abs(std::abs(h.rotation.value) - area / (2 * kPi)) <= 1.0 / 20000 + 1e-6);
    }

    auto poly = build_symmetric_polygon(g, radius_for_area(g, 3 * kPi));
    std::vector<circle::MapRef> lifts, shifted;
    for (const auto& f : side_pairings(poly)) lifts.push_back(circle::share(boundary_lift(f)));
    shifted = lifts;
    shifted[1] = circle::share(
        circle::compose(*lifts[1], circle::LiftedCircleMap::translation(make_rational(1))));
    auto r1 = circle::evaluate_relator(lifts), r2 = circle::evaluate_relator(shifted);
    for (int k = 0; k < 100; ++k) {
        double t = -1 + 0.023 * k;
        CHECK(std::abs(r1(t) - r2(t)) <= 1e-9);
    }
}
