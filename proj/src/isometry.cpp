#include "fibrecontact/isometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fibrecontact::hyperbolic {

HPoint::HPoint(double x, double y) : x_(x), y_(y) {
    if (!(std::isfinite(x) && std::isfinite(y)) || x * x + y * y >= 1.0)
        throw InvalidPoint("point (" + std::to_string(x) + ", " + std::to_string(y) +
                           ") is not inside the unit disk");
}

const char* to_string(IsometryType t) {
    switch (t) {
        case IsometryType::Elliptic: return "elliptic";
        case IsometryType::Parabolic: return "parabolic";
        case IsometryType::Hyperbolic: return "hyperbolic";
    }
    return "unknown";
}

Isometry2H::Isometry2H(double a, double b, double c, double d) {
    double det = a * d - b * c;
    if (!(det > 0) || !std::isfinite(det))
        throw std::invalid_argument("isometry matrix must have positive determinant");
    double s = 1.0 / std::sqrt(det);
    a_ = a * s;
    b_ = b * s;
    c_ = c * s;
    d_ = d * s;
}

Isometry2H Isometry2H::from_disk(Complex alpha, Complex beta) {
    return {alpha.real() + beta.real(), alpha.imag() - beta.imag(),
            -alpha.imag() - beta.imag(), alpha.real() - beta.real()};
}

Isometry2H Isometry2H::rotation_about_center(double angle) {
    return from_disk(std::polar(1.0, angle / 2), 0.0);
}

Isometry2H Isometry2H::moving_to_origin(const HPoint& p) {
    double s = 1.0 / std::sqrt(1.0 - std::norm(p.z()));
    return from_disk(s, -p.z() * s);
}

Isometry2H Isometry2H::rotation_about(const HPoint& center, double angle) {
    auto to0 = moving_to_origin(center);
    return to0.inverse() * rotation_about_center(angle) * to0;
}

IsometryType Isometry2H::type(double tol) const {
    double t = std::abs(trace());
    if (std::abs(t - 2.0) <= tol) return IsometryType::Parabolic;
    return t < 2.0 ? IsometryType::Elliptic : IsometryType::Hyperbolic;
}

Complex Isometry2H::apply_disk(Complex z) const {
    Complex al = alpha(), be = beta();
    return (al * z + be) / (std::conj(be) * z + std::conj(al));
}

HPoint Isometry2H::apply(const HPoint& p) const {
    Complex w = apply_disk(p.z());
    // Rounding can push an image a hair outside the disk; pull it back.
    double n = std::abs(w);
    if (n >= 1.0) w *= std::nextafter(1.0, 0.0) / n;
    return HPoint::from_complex(w);
}

Isometry2H operator*(const Isometry2H& f, const Isometry2H& g) {
    return {f.a_ * g.a_ + f.b_ * g.c_, f.a_ * g.b_ + f.b_ * g.d_,
            f.c_ * g.a_ + f.d_ * g.c_, f.c_ * g.b_ + f.d_ * g.d_};
}

double Isometry2H::distance(const Isometry2H& o) const {
    auto dist = [&](double s) {
        return std::max({std::abs(a_ - s * o.a_), std::abs(b_ - s * o.b_),
                         std::abs(c_ - s * o.c_), std::abs(d_ - s * o.d_)});
    };
    return std::min(dist(1.0), dist(-1.0));
}

}  // namespace fibrecontact::hyperbolic
