#include "fibrecontact/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fibrecontact::hyperbolic {

namespace {
constexpr double kPi = std::numbers::pi;
}

double hdistance(const HPoint& p, const HPoint& q) {
    Complex a = p.z(), b = q.z();
    double r = std::abs(a - b) / std::abs(1.0 - std::conj(a) * b);
    return 2.0 * std::atanh(std::min(r, 1.0));
}

const HPoint& SymmetricPolygon::vertex(int k) const {
    int n = static_cast<int>(vertices_.size());
    int i = ((k - 1) % n + n) % n;
    return vertices_[static_cast<std::size_t>(i)];
}

double SymmetricPolygon::side_length() const {
    double n = static_cast<double>(vertices_.size());
    double ch = std::cosh(radius_);
    double sh = std::sinh(radius_);
    return std::acosh(ch * ch - sh * sh * std::cos(2.0 * kPi / n));
}

double SymmetricPolygon::interior_angle() const {
    // Base angle of the isosceles triangle (centre, s_k, s_{k+1}); law of cosines.
    double side = side_length();
    double cos_base = std::cosh(radius_) * (std::cosh(side) - 1.0) / (std::sinh(radius_) * std::sinh(side));
    return 2.0 * std::acos(std::clamp(cos_base, -1.0, 1.0));
}

SymmetricPolygon build_symmetric_polygon(int genus, double radius) {
    if (genus < 1) throw std::invalid_argument("polygon genus must be >= 1");
    if (!(radius > 0) || !std::isfinite(radius)) throw std::invalid_argument("circumradius must be positive");
    SymmetricPolygon poly;
    poly.genus_ = genus;
    poly.radius_ = radius;
    int n = 4 * genus;
    double rho = std::tanh(radius / 2.0);
    for (int k = 0; k < n; ++k) {
        double theta = -2.0 * kPi * k / n;
        poly.vertices_.emplace_back(rho * std::cos(theta), rho * std::sin(theta));
    }
    return poly;
}

double polygon_area(const SymmetricPolygon& poly) {
    double n = static_cast<double>(poly.size());
    return (n - 2.0) * kPi - n * poly.interior_angle();
}

double radius_for_area(int genus, double area) {
    if (genus < 1) throw std::invalid_argument("polygon genus must be >= 1");
    double cap = (4.0 * genus - 2.0) * kPi;
    if (!(area > 0) || !(area < cap))
        throw AreaOutOfRange("area " + std::to_string(area) + " is outside (0, " + std::to_string(cap) + ")");
    double lo = 0.0, hi = 1.0;
    while (polygon_area(build_symmetric_polygon(genus, hi)) < area) {
        lo = hi;
        hi *= 2.0;
        if (hi > 80.0) throw AreaOutOfRange("area too close to the ideal limit");
    }
    for (int it = 0; it < 200 && hi - lo > 0; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (polygon_area(build_symmetric_polygon(genus, mid)) < area)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

// Isometry sending p to the origin and q onto the positive real axis.
Isometry2H normalize_segment(const HPoint& p, const HPoint& q) {
    auto to0 = Isometry2H::moving_to_origin(p);
    Complex q1 = to0.apply_disk(q.z());
    return Isometry2H::rotation_about_center(-std::arg(q1)) * to0;
}

}  // namespace

Isometry2H isometry_from_segments(const HPoint& A, const HPoint& B, const HPoint& A2, const HPoint& B2,
                                  double tol) {
    double l1 = hdistance(A, B), l2 = hdistance(A2, B2);
    if (std::abs(l1 - l2) > tol)
        throw LengthMismatch("segment lengths differ: " + std::to_string(l1) + " vs " + std::to_string(l2));
    if (l1 == 0.0) {
        // Degenerate segments: translate A onto A2.
        return Isometry2H::moving_to_origin(A2).inverse() * Isometry2H::moving_to_origin(A);
    }
    return normalize_segment(A2, B2).inverse() * normalize_segment(A, B);
}

std::vector<Isometry2H> side_pairings(const SymmetricPolygon& poly) {
    std::vector<Isometry2H> out;
    for (int i = 1; i <= poly.genus(); ++i) {
        const auto& s = [&](int k) -> const HPoint& { return poly.vertex(k); };
        out.push_back(isometry_from_segments(s(4 * i - 1), s(4 * i), s(4 * i - 2), s(4 * i - 3)));
        out.push_back(isometry_from_segments(s(4 * i - 2), s(4 * i - 1), s(4 * i + 1), s(4 * i)));
    }
    return out;
}

Isometry2H commutator_product(const std::vector<Isometry2H>& pairings) {
    if (pairings.empty() || pairings.size() % 2 != 0)
        throw std::invalid_argument("commutator product needs a positive even number of isometries");
    Isometry2H acc;
    for (std::size_t i = 0; i < pairings.size(); i += 2) {
        const auto& a = pairings[i];
        const auto& b = pairings[i + 1];
        acc = acc * (a * b * a.inverse() * b.inverse());
    }
    return acc;
}

circle::LiftedCircleMap boundary_lift(const Isometry2H& iso) { return circle::LiftedCircleMap::moebius(iso, 0); }

HolonomyResult holonomy_translation_number(int genus, double area, std::size_t iterations) {
    HolonomyResult out;
    out.radius = radius_for_area(genus, area);
    auto poly = build_symmetric_polygon(genus, out.radius);
    out.area = polygon_area(poly);
    auto pairings = side_pairings(poly);
    out.commutator_trace = commutator_product(pairings).trace();
    std::vector<circle::MapRef> lifts;
    for (const auto& p : pairings) lifts.push_back(circle::share(boundary_lift(p)));
    auto relator = circle::evaluate_relator(lifts);
    out.rotation = circle::translation_number(relator, iterations);
    return out;
}

}  // namespace fibrecontact::hyperbolic
