#include "fibrecontact/circle_dynamics.hpp"
#include "fibrecontact/classify.hpp"
#include "fibrecontact/formcalc/forms.hpp"
#include "fibrecontact/formcalc/library.hpp"
#include "fibrecontact/hyperbolic.hpp"
#include "fibrecontact/multicurve.hpp"
#include "oracles/oracles.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace fibrecontact;

namespace {

const double kPi = std::numbers::pi;

struct Verdict {
    bool pass = true;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

nlohmann::json golden(const std::string& name) {
    std::ifstream in(std::string(FC_TEST_DATA) + "/golden/" + name);
    if (!in) throw std::runtime_error("missing golden file " + name);
    return nlohmann::json::parse(in);
}

const std::vector<double> kSweep{kPi / 2, kPi, 2 * kPi, 4 * kPi, 5 * kPi};

Verdict criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    const std::size_t n = 100000;
    double worst = 0;
    for (double area : kSweep) {
        auto h = hyperbolic::holonomy_translation_number(2, area, n);
        worst = std::max(worst, std::abs(std::abs(h.rotation.value) - area / (2 * kPi)));
    }
    double secs = seconds_since(t0);
    double tol = 1.0 / static_cast<double>(n) + 1e-5;
    return {worst <= tol && secs < 60, fmt("max residual %.3g (tol %.3g), %.2f s", worst, tol, secs)};
}

Verdict criterion2() {
    double worst = 0;
    for (double area : kSweep) {
        auto poly = hyperbolic::build_symmetric_polygon(2, hyperbolic::radius_for_area(2, area));
        auto c = hyperbolic::commutator_product(hyperbolic::side_pairings(poly));
        worst = std::max(worst, std::abs(std::abs(c.trace()) - 2 * std::abs(std::cos((6 * kPi - area) / 2))));
    }
    auto poly = hyperbolic::build_symmetric_polygon(2, hyperbolic::radius_for_area(2, 4 * kPi));
    auto c = hyperbolic::commutator_product(hyperbolic::side_pairings(poly));
    double id = std::min(c.distance(hyperbolic::Isometry2H::identity()),
                         c.distance(hyperbolic::Isometry2H(-1, 0, 0, -1)));
    return {worst <= 1e-5 && id <= 1e-5, fmt("max trace error %.3g, distance to identity at 4pi %.3g", worst, id)};
}

Verdict criterion3() {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20240601);
    auto to_map = [](const oracle::PL& p) {
        std::vector<circle::Breakpoint> b;
        for (std::size_t i = 0; i < p.t.size(); ++i) b.push_back({p.t[i], p.v[i]});
        return circle::LiftedCircleMap::piecewise_linear(b);
    };
    int violations = 0, disagreements = 0;
    for (int trial = 0; trial < 500; ++trial) {
        auto pf = oracle::random_pl(rng, 6, 96), pg = oracle::random_pl(rng, 6, 96);
        auto f = to_map(pf), g = to_map(pg);
        Rational hf = circle::sup_displacement(f).exact();
        Rational hg = circle::sup_displacement(g).exact();
        Rational hfg = circle::sup_displacement(circle::compose(f, g)).exact();
        if (hfg != oracle::sup_displacement_of_composite(pf, pg) || hf != oracle::sup_displacement(pf)) ++disagreements;
        if (!(hfg <= hf + hg && hf + hg <= hfg + 1)) ++violations;
    }
    double secs = seconds_since(t0);
    return {violations == 0 && disagreements == 0 && secs < 10,
            fmt("%.0f violations, %.0f oracle disagreements, %.2f s", violations, disagreements, secs)};
}

Verdict criterion4() {
    double worst_area = 0, worst_radius = 0;
    for (int g : {1, 2, 3})
        for (double R : {0.5, 1.0, 2.0}) {
            double area = hyperbolic::polygon_area(hyperbolic::build_symmetric_polygon(g, R));
            worst_area = std::max(worst_area,
                                  std::abs(area - oracle::fan_triangulated_area(oracle::regular_polygon(g, R))));
            worst_radius = std::max(worst_radius, std::abs(hyperbolic::radius_for_area(g, area) - R));
        }
    return {worst_area <= 1e-9 && worst_radius <= 1e-8,
            fmt("area vs triangulation %.3g, radius round trip %.3g", worst_area, worst_radius)};
}

Verdict criterion5() {
    using namespace formcalc;
    int entries = 0, mixed = 0, mismatched = 0;
    for (const auto& e : model_library()) {
        if (e.form.chart.dim() != 3) continue;
        ++entries;
        auto rep = contact_sign(e.form, 64);
        if (rep.sign == ContactSign::Mixed) ++mixed;
        if (!e.expected || rep.sign != *e.expected) ++mismatched;
    }
    auto zeta = zeta_form();
    double worst = 0;
    int points = 0;
    for (int k = 0; k <= 270; ++k) {
        double r = 0.05 + 1.35 * k / 270.0;
        if (std::abs(r - 1) < 1e-3) continue;  // the kernel contains the z-direction at r = 1
        worst = std::max(worst, std::abs(characteristic_slope_on_torus(zeta, r).slope - slope_formula(r)));
        ++points;
    }
    return {entries >= 10 && mixed == 0 && mismatched == 0 && worst <= 1e-9,
            fmt("%.0f entries, %.0f mixed, ", entries, mixed) + fmt("%.0f mismatched; slope error %.3g", mismatched, worst) +
                fmt(" over %.0f radii", points)};
}

Verdict criterion6() {
    using namespace formcalc;
    double worst = 0, min_ratio = 1e300;
    for (long n : {1, 2, 3}) {
        auto xi = xi_form(n);
        auto pulled = pullback(xi.chart, bennequin_embedding(n), dz_plus_p_dtheta());
        auto m = kernel_match(pulled, xi, sample_points(xi.chart, 1000, 100 + n));
        worst = std::max(worst, m.max_direction_error);
        min_ratio = std::min(min_ratio, m.min_ratio);
    }
    int positive = 0, total = 0;
    for (auto [p, q] : {std::pair{-4L, 15L}, {1L, 2L}})
        for (int sgn : {1, -1}) {
            ++total;
            auto pulled = pullback(psi_chart(), psi_map(p, q, sgn), zeta_form());
            if (contact_sign(pulled, 32).sign == ContactSign::Positive) ++positive;
        }
    return {worst <= 1e-8 && min_ratio > 0 && positive == total,
            fmt("kernel error %.3g, min ratio %.3g, ", worst, min_ratio) +
                fmt("%.0f/%.0f psi pullbacks positive", positive, total)};
}

Verdict criterion7() {
    std::vector<Rational> times;
    for (long k = 0; k < 10; ++k) times.push_back(make_rational(3 * k - 7, 11));
    auto h = formcalc::hopf_invariance_check(times);
    return {h.holds && h.max_error <= 1e-12 && h.times == 10, fmt("max error %.3g at %.0f times", h.max_error, h.times)};
}

Verdict criterion8() {
    auto t0 = std::chrono::steady_clock::now();
    int bad_orbits = 0;
    for (long g : {1, 2})
        for (long n = 1; n <= 8; ++n)
            if (classify::cohomology_orbit_count(g, n) != oracle::divisor_count_by_enumeration(n)) ++bad_orbits;
    int bad_rows = 0, rows = 0;
    for (const auto& row : golden("classification.json")) {
        ++rows;
        long chi = row["chi_s"], e = row["euler"];
        bool ok = classify::transverse_exists(chi, e) == row["transverse"].get<bool>() &&
                  classify::flat_exists(chi, e) == row["flat"].get<bool>() &&
                  classify::confoliation_bound(chi, e) == row["confoliation"].get<bool>() &&
                  classify::virtually_overtwisted_bound(chi, e) == row["vot"].get<long>();
        auto d = classify::tangent_exists(chi, e);
        ok = ok && (row["tangent"].is_null() ? !d.has_value() : d == row["tangent"].get<long>());
        const auto& spec = row["spectrum"];
        if (spec.is_null()) {
            ok = ok && !(chi <= 0 && classify::transverse_exists(chi, e));
        } else {
            auto s = classify::transverse_enrollment_spectrum(chi, e);
            ok = ok && (spec.is_string() ? s.all : s.values == spec.get<std::vector<long>>());
        }
        if (!ok) ++bad_rows;
    }
    double secs = seconds_since(t0);
    return {bad_orbits == 0 && bad_rows == 0 && rows == 52 && secs < 30,
            fmt("%.0f orbit mismatches, %.0f/52 golden rows wrong, ", bad_orbits, bad_rows) + fmt("%.2f s", secs)};
}

Verdict criterion9() {
    int pairs = 0, bad = 0;
    std::vector<multicurve::TorusCurve> curves;
    for (long p = -5; p <= 5; ++p)
        for (long q = -5; q <= 5; ++q)
            if (std::gcd(p, q) == 1) curves.emplace_back(p, q);
    for (const auto& a : curves)
        for (const auto& b : curves) {
            ++pairs;
            if (multicurve::torus_intersection(a, b) != oracle::torus_crossings(a.p(), a.q(), b.p(), b.q())) ++bad;
        }
    return {bad == 0, fmt("%.0f mismatches over %.0f pairs", bad, pairs)};
}

Verdict criterion10() {
    int bad = 0, cases = 0;
    for (const auto& row : golden("tightness.json")) {
        ++cases;
        auto d = multicurve::parse_decomposition(row["decomposition"].get<std::string>());
        if (multicurve::to_string(multicurve::universal_tightness(d, row["euler"].get<long>())) !=
            row["expected"].get<std::string>())
            ++bad;
        if (multicurve::convex_neighborhood_tight(d) != row["convex_tight"].get<bool>()) ++bad;
    }
    return {bad == 0 && cases == 12, fmt("%.0f mismatches over %.0f cases", bad, cases)};
}

}  // namespace

int main() {
    std::vector<std::function<Verdict()>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                  criterion6, criterion7, criterion8, criterion9, criterion10};
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i]();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        if (!v.pass) ++failures;
        std::printf("criterion %zu: %s (%s)\n", i + 1, v.pass ? "PASS" : "FAIL", v.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
