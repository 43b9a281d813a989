#pragma once

// Differential 1-forms on coordinate charts: exterior derivative, the contact
// condition, pullbacks and characteristic slopes on tori.

#include "fibrecontact/formcalc/expr.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fibrecontact::formcalc {

class SyntaxError : public Error {
public:
    SyntaxError(const std::string& what, std::size_t offset)
        : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

class UnknownVariable : public Error {
public:
    UnknownVariable(const std::string& name, std::size_t offset)
        : Error("unknown variable '" + name + "' at offset " + std::to_string(offset)), name_(name), offset_(offset) {}
    const std::string& name() const { return name_; }
    std::size_t offset() const { return offset_; }

private:
    std::string name_;
    std::size_t offset_;
};

class InvalidChart : public Error {
public:
    using Error::Error;
};
class DimensionMismatch : public Error {
public:
    using Error::Error;
};
class DegenerateKernel : public Error {
public:
    using Error::Error;
};
class SlopeOutOfRange : public Error {
public:
    using Error::Error;
};

/// Points with |expr| < eps are removed from the chart.
struct Exclusion {
    Expr expr;
    double eps = 1e-3;
};

struct Chart {
    std::vector<std::string> names;
    std::vector<std::pair<double, double>> ranges;
    std::vector<bool> periodic;
    std::vector<Exclusion> exclusions;

    std::size_t dim() const { return names.size(); }
    std::optional<std::size_t> index_of(std::string_view name) const;
    bool excluded(std::span<const double> point) const;
    /// Throws InvalidChart on bad dimension, empty ranges, duplicate or reserved names, eps <= 0.
    void validate() const;
};

/// Chart with the given names, ranges and no periodicity or exclusions.
Chart make_chart(std::vector<std::string> names, std::vector<std::pair<double, double>> ranges);

struct OneForm {
    Chart chart;
    std::vector<Expr> coeffs;  // coefficient of d(names[i])
};

/// Antisymmetric table: at(i, j) is the coefficient of dx_i ^ dx_j for i < j.
class TwoForm {
public:
    explicit TwoForm(std::size_t dim);
    std::size_t dim() const { return dim_; }
    const Expr& at(std::size_t i, std::size_t j) const;
    void set(std::size_t i, std::size_t j, Expr e);

private:
    std::size_t dim_;
    std::vector<Expr> upper_;
    std::size_t slot(std::size_t i, std::size_t j) const;
};

TwoForm exterior_derivative(const OneForm& alpha);

/// The function c with alpha ^ d alpha = c dx_1 ^ dx_2 ^ dx_3. Throws DimensionMismatch off dimension 3.
Expr contact_coefficient(const OneForm& alpha);

enum class ContactSign { Positive, Negative, Mixed };
std::string to_string(ContactSign s);
ContactSign parse_contact_sign(std::string_view text);

struct ContactReport {
    ContactSign sign = ContactSign::Mixed;
    double min_abs = 0;
    std::vector<std::vector<double>> witnesses;  // Mixed only, at most 8
    std::size_t samples = 0;
};

inline constexpr double kContactTolerance = 1e-12;

/// Samples the contact coefficient on a per_axis^3 grid (periodic axes omit
/// their right endpoint, excluded points are skipped) and refines by 2 around
/// samples with |c| < 10 * tolerance.
ContactReport contact_sign(const OneForm& alpha, std::size_t per_axis = 64, double tolerance = kContactTolerance);

/// Pulls alpha back along `map`, whose i-th entry expresses target coordinate
/// i over `source`. Throws DimensionMismatch when the sizes disagree.
OneForm pullback(const Chart& source, std::span<const Expr> map, const OneForm& alpha);

/// Composition of maps: entry i of the result is f_i(g).
std::vector<Expr> compose_maps(std::span<const Expr> f, std::span<const Expr> g);

/// Uniform deterministic samples of the chart minus exclusions.
std::vector<std::vector<double>> sample_points(const Chart& chart, std::size_t count, std::uint64_t seed);

/// Largest |a - b| over the sample points.
double max_difference(const Expr& a, const Expr& b, std::span<const std::vector<double>> points);

/// Numeric equality at `count` random points.
bool numerically_equal(const Expr& a, const Expr& b, const Chart& chart, std::size_t count = 1000,
                       double tol = 1e-10, std::uint64_t seed = 1);
bool numerically_equal(const OneForm& a, const OneForm& b, std::size_t count = 1000, double tol = 1e-10,
                       std::uint64_t seed = 1);

struct KernelMatch {
    double max_direction_error = 0;  // max |a/|a| - b/|b||
    double min_ratio = 0;            // min <a,b>/|a|^2, positive when the coorientations agree
};

/// Compares the coefficient vectors of two forms on the same chart pointwise.
KernelMatch kernel_match(const OneForm& a, const OneForm& b, std::span<const std::vector<double>> points);

struct SlopeReport {
    double slope = 0;   // dz/dtheta of the kernel on the torus, averaged
    double spread = 0;  // max - min over the samples
};

/// Kernel slope on the torus {r = const}. Throws DegenerateKernel when the dz
/// coefficient vanishes on the torus.
SlopeReport characteristic_slope_on_torus(const OneForm& alpha, double r, std::string_view r_name = "r",
                                          std::string_view theta_name = "theta", std::string_view z_name = "z",
                                          std::size_t samples = 32);

/// r^2 / (r^4 - 1).
double slope_formula(double r);

/// The r > 0 with slope_formula(r) = p/q. Throws SlopeOutOfRange for p = 0,
/// q <= 0 or non-coprime input.
double r_of_slope(long p, long q);

std::string to_text(const OneForm& alpha);

}  // namespace fibrecontact::formcalc
