#pragma once

// Existence, counting and bound formulas for contact structures on circle
// bundles over closed orientable surfaces.

#include "fibrecontact/rational.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fibrecontact::classify {

class InvalidInput : public Error {
public:
    using Error::Error;
};
class PreconditionViolated : public Error {
public:
    using Error::Error;
};
class ScaleExceeded : public Error {
public:
    using Error::Error;
};

/// Euler characteristic of the base and Euler number of the bundle.
struct BundleData {
    long chi_s = 0;
    long euler = 0;
    /// Throws InvalidInput unless chi_s is even and at most 2.
    void validate() const;
    long genus() const { return (2 - chi_s) / 2; }
};

/// Rational with denominator 1 or 2.
class EnrollmentValue {
public:
    EnrollmentValue() = default;
    EnrollmentValue(long n) : value_(n) {}
    /// Throws InvalidInput when the reduced denominator is not 1 or 2.
    explicit EnrollmentValue(const Rational& r);
    static EnrollmentValue half(long numerator) { return EnrollmentValue(make_rational(numerator, 2)); }

    const Rational& value() const { return value_; }
    bool is_integer() const { return value_.get_den() == 1; }
    std::string str() const { return to_string(value_); }
    friend bool operator==(const EnrollmentValue& a, const EnrollmentValue& b) { return a.value_ == b.value_; }

private:
    Rational value_{0};
};

bool transverse_exists(long chi_s, long euler);
bool flat_exists(long chi_s, long euler);
bool confoliation_bound(long chi_s, long euler);

/// Transverse existence transfers from e_source to e_target iff e_target <= e_source.
bool surgery_monotone(long chi_s, long e_source, long e_target);

/// Smallest d > 0 with d * euler = -2 chi_s.
std::optional<long> tangent_exists(long chi_s, long euler);

struct EnrollmentSpectrum {
    bool all = false;         // every n >= 1 (the torus case)
    std::vector<long> values;  // n with enrollment -n realizable, sorted
    bool contains(long n) const;
};

/// {1} together with the n > 0 solving n * euler = -chi_s. Throws
/// PreconditionViolated when chi_s > 0 or no transverse structure exists.
EnrollmentSpectrum transverse_enrollment_spectrum(long chi_s, long euler);

/// -2 for euler = -1, -1 for euler < -1. Throws PreconditionViolated for euler >= 0.
EnrollmentValue sphere_enrollment(long euler);

/// -d/2 for a Legendrian fibration covering with degree d > 0.
EnrollmentValue legendrian_fibration_enrollment(long d);

/// Number of divisors of n > 0.
long count_tangent_conjugacy_classes(long n);

/// The n > 0 with n * euler = -chi_s when it is unique.
std::optional<long> critical_enrollment(long chi_s, long euler);

/// Orbits of (Z/n)^{2g} under a generating set of symplectic transvections.
/// Throws ScaleExceeded unless 1 <= g <= 2 and 1 <= n <= 12.
long cohomology_orbit_count(long genus, long n);

/// gcd of the entries and n.
long morphism_image_divisor(const std::vector<long>& vec, long n);

long virtually_overtwisted_bound(long chi_s, long euler);

struct BoundarySlope {
    long n = 1;
    long numerator = 0;  // second homology coordinate n * euler + chi_s - 1
    Rational mu;         // numerator / n
};
BoundarySlope boundary_slope(long n, long euler, long chi_s);

/// The pair (2e, 2 chi_s), defined up to a global sign.
struct WhitneyClass {
    Rational fibre;
    long base = 0;
};
WhitneyClass whitney_singular_class(const EnrollmentValue& e, long chi_s);

EnrollmentValue enrollment_connect_sum(const EnrollmentValue& e0, long tb1);
EnrollmentValue lift_enrollment_over_sphere(const EnrollmentValue& e, long euler);
EnrollmentValue tb_vs_enrollment_unit_euler(long tb, int sign);

using TwistVector = std::vector<long>;
/// Index-wise equality. Throws InvalidInput on length mismatch or odd length.
bool tangent_isotopy_equal(const TwistVector& a, const TwistVector& b);

}  // namespace fibrecontact::classify
