#pragma once

#include "fibrecontact/rational.hpp"

#include <complex>

namespace fibrecontact::hyperbolic {

using Complex = std::complex<double>;

/// A point of the Poincare disk.
class HPoint {
public:
    /// Throws InvalidPoint unless x^2 + y^2 < 1.
    HPoint(double x, double y);
    static HPoint from_complex(Complex z) { return {z.real(), z.imag()}; }

    double x() const { return x_; }
    double y() const { return y_; }
    Complex z() const { return {x_, y_}; }

private:
    double x_, y_;
};

class InvalidPoint : public Error {
public:
    using Error::Error;
};

enum class IsometryType { Elliptic, Parabolic, Hyperbolic };

const char* to_string(IsometryType t);

/// An element of PSL2(R), stored as a real unimodular matrix acting on the
/// upper half-plane. On the disk it acts through the Cayley transform
/// z -> (z - i)/(z + i), i.e. as z -> (alpha z + beta)/(conj(beta) z + conj(alpha))
/// with alpha = ((a+d) + i(b-c))/2 and beta = ((a-d) - i(b+c))/2.
class Isometry2H {
public:
    Isometry2H() = default;
    /// Rescales by 1/sqrt(ad - bc); throws std::invalid_argument when ad - bc <= 0.
    Isometry2H(double a, double b, double c, double d);

    static Isometry2H identity() { return {}; }
    /// The SU(1,1) pair (alpha, beta), |alpha|^2 - |beta|^2 > 0.
    static Isometry2H from_disk(Complex alpha, Complex beta);
    /// Rotation of the disk about its center by `angle` radians.
    static Isometry2H rotation_about_center(double angle);
    /// Rotation by `angle` about an arbitrary point of the disk.
    static Isometry2H rotation_about(const HPoint& center, double angle);
    /// Disk automorphism z -> (z - p)/(1 - conj(p) z).
    static Isometry2H moving_to_origin(const HPoint& p);

    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }
    double d() const { return d_; }
    double det() const { return a_ * d_ - b_ * c_; }
    double trace() const { return a_ + d_; }

    Complex alpha() const { return {(a_ + d_) / 2, (b_ - c_) / 2}; }
    Complex beta() const { return {(a_ - d_) / 2, -(b_ + c_) / 2}; }

    /// Classification by |trace| against 2 with absolute tolerance `tol`.
    IsometryType type(double tol = 1e-9) const;

    Complex apply_disk(Complex z) const;
    HPoint apply(const HPoint& p) const;

    Isometry2H inverse() const { return {d_, -b_, -c_, a_}; }
    friend Isometry2H operator*(const Isometry2H& f, const Isometry2H& g);

    /// Max entrywise distance in PSL2, i.e. minimized over the sign of `other`.
    double distance(const Isometry2H& other) const;

private:
    double a_ = 1, b_ = 0, c_ = 0, d_ = 1;
};

}  // namespace fibrecontact::hyperbolic
