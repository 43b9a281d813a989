#include "fibrecontact/classify.hpp"

#include <algorithm>
#include <numeric>

namespace fibrecontact::classify {

void BundleData::validate() const {
    if (chi_s % 2 != 0) throw InvalidInput("the Euler characteristic of a closed orientable surface is even");
    if (chi_s > 2) throw InvalidInput("the Euler characteristic of a closed orientable surface is at most 2");
}

EnrollmentValue::EnrollmentValue(const Rational& r) : value_(r) {
    value_.canonicalize();
    if (value_.get_den() != 1 && value_.get_den() != 2)
        throw InvalidInput("enrollment " + to_string(value_) + " is not a half-integer");
}

bool transverse_exists(long chi_s, long euler) {
    BundleData{chi_s, euler}.validate();
    return chi_s <= 0 ? euler <= -chi_s : euler < 0;
}

bool flat_exists(long chi_s, long euler) {
    BundleData{chi_s, euler}.validate();
    return std::abs(euler) <= std::max(0L, -chi_s);
}

bool confoliation_bound(long chi_s, long euler) {
    BundleData{chi_s, euler}.validate();
    return euler <= std::max(0L, -chi_s);
}

bool surgery_monotone(long chi_s, long e_source, long e_target) {
    BundleData{chi_s, e_source}.validate();
    return e_target <= e_source;
}

std::optional<long> tangent_exists(long chi_s, long euler) {
    BundleData{chi_s, euler}.validate();
    long rhs = -2 * chi_s;
    if (euler == 0) return rhs == 0 ? std::optional<long>(1) : std::nullopt;
    if (rhs % euler != 0) return std::nullopt;
    long d = rhs / euler;
    if (d <= 0) return std::nullopt;
    return d;
}

bool EnrollmentSpectrum::contains(long n) const {
    if (n <= 0) return false;
    return all || std::binary_search(values.begin(), values.end(), n);
}

std::optional<long> critical_enrollment(long chi_s, long euler) {
    if (euler == 0) return std::nullopt;
    if ((-chi_s) % euler != 0) return std::nullopt;
    long n = -chi_s / euler;
    if (n <= 0) return std::nullopt;
    return n;
}

EnrollmentSpectrum transverse_enrollment_spectrum(long chi_s, long euler) {
    BundleData{chi_s, euler}.validate();
    if (chi_s > 0) throw PreconditionViolated("the enrollment spectrum needs chi(S) <= 0");
    if (!transverse_exists(chi_s, euler)) throw PreconditionViolated("no transverse contact structure exists");
    EnrollmentSpectrum s;
    if (chi_s == 0 && euler == 0) {
        s.all = true;
        return s;
    }
    s.values.push_back(1);
    if (auto n = critical_enrollment(chi_s, euler); n && *n != 1) s.values.push_back(*n);
    std::sort(s.values.begin(), s.values.end());
    return s;
}

EnrollmentValue sphere_enrollment(long euler) {
    if (euler >= 0) throw PreconditionViolated("no transverse contact structure over the sphere with euler >= 0");
    return euler == -1 ? EnrollmentValue(-2) : EnrollmentValue(-1);
}

EnrollmentValue legendrian_fibration_enrollment(long d) {
    if (d <= 0) throw InvalidInput("covering degree must be positive");
    return EnrollmentValue::half(-d);
}

long count_tangent_conjugacy_classes(long n) {
    if (n <= 0) throw InvalidInput("n must be positive");
    long count = 0;
    for (long k = 1; k * k <= n; ++k)
        if (n % k == 0) count += (k * k == n) ? 1 : 2;
    return count;
}

namespace {

long mod(long a, long n) { return ((a % n) + n) % n; }

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

// Coordinates (a_1, b_1, ..., a_g, b_g); omega(x, y) = sum x_a y_b - x_b y_a.
long omega(const std::vector<long>& x, const std::vector<long>& y) {
    long s = 0;
    for (std::size_t i = 0; i + 1 < x.size(); i += 2) s += x[i] * y[i + 1] - x[i + 1] * y[i];
    return s;
}

}  // namespace

long cohomology_orbit_count(long genus, long n) {
    if (genus < 1 || genus > 2 || n < 1 || n > 12)
        throw ScaleExceeded("orbit enumeration is limited to genus 1..2 and n <= 12");
    std::size_t dim = static_cast<std::size_t>(2 * genus);
    std::size_t size = 1;
    for (std::size_t i = 0; i < dim; ++i) size *= static_cast<std::size_t>(n);

    auto decode = [&](std::size_t code) {
        std::vector<long> x(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            x[i] = static_cast<long>(code % n);
            code /= n;
        }
        return x;
    };
    auto encode = [&](const std::vector<long>& x) {
        std::size_t code = 0;
        for (std::size_t i = dim; i-- > 0;) code = code * n + static_cast<std::size_t>(mod(x[i], n));
        return code;
    };

    // Transvections along the basis vectors; for genus 2 the block swap and a
    // transvection along a_1 + a_2 couple the two handles.
    std::vector<std::vector<long>> directions;
    for (std::size_t i = 0; i < dim; ++i) {
        std::vector<long> v(dim, 0);
        v[i] = 1;
        directions.push_back(v);
    }
    if (genus == 2) directions.push_back({1, 0, 1, 0});

    UnionFind uf(size);
    for (std::size_t code = 0; code < size; ++code) {
        auto x = decode(code);
        for (const auto& v : directions) {
            long w = omega(x, v);
            std::vector<long> y(dim);
            for (std::size_t i = 0; i < dim; ++i) y[i] = x[i] + w * v[i];
            uf.unite(code, encode(y));
        }
        if (genus == 2) uf.unite(code, encode({x[2], x[3], x[0], x[1]}));
    }
    long orbits = 0;
    for (std::size_t code = 0; code < size; ++code)
        if (uf.find(code) == code) ++orbits;
    return orbits;
}

long morphism_image_divisor(const std::vector<long>& vec, long n) {
    if (n <= 0) throw InvalidInput("n must be positive");
    long d = n;
    for (long v : vec) d = std::gcd(d, mod(v, n));
    return d;
}

long virtually_overtwisted_bound(long chi_s, long euler) {
    BundleData{chi_s, euler}.validate();
    long base = std::max(0L, -chi_s - euler - 1);
    return euler > 0 ? 1 + base : base;
}

BoundarySlope boundary_slope(long n, long euler, long chi_s) {
    if (n <= 0) throw InvalidInput("n must be positive");
    BoundarySlope s;
    s.n = n;
    s.numerator = n * euler + chi_s - 1;
    s.mu = make_rational(s.numerator, n);
    return s;
}

WhitneyClass whitney_singular_class(const EnrollmentValue& e, long chi_s) {
    return {Rational(2 * e.value()), 2 * chi_s};
}

EnrollmentValue enrollment_connect_sum(const EnrollmentValue& e0, long tb1) {
    return EnrollmentValue(Rational(e0.value() + tb1 + 1));
}

EnrollmentValue lift_enrollment_over_sphere(const EnrollmentValue& e, long euler) {
    if (euler == 0) throw InvalidInput("the lift needs a nonzero Euler number");
    return EnrollmentValue(Rational(std::abs(euler) * e.value()));
}

EnrollmentValue tb_vs_enrollment_unit_euler(long tb, int sign) {
    if (sign != 1 && sign != -1) throw InvalidInput("sign must be +1 or -1");
    return EnrollmentValue(tb + sign);
}

bool tangent_isotopy_equal(const TwistVector& a, const TwistVector& b) {
    if (a.size() != b.size()) throw InvalidInput("twist vectors of different lengths");
    if (a.size() % 2 != 0) throw InvalidInput("twist vectors have even length 2g");
    return a == b;
}

}  // namespace fibrecontact::classify
