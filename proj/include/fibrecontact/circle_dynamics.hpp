#pragma once

// Lifts to R of orientation-preserving circle homeomorphisms: maps f with
// f(t + 1) = f(t) + 1. Piecewise-linear lifts are exact over the rationals,
// lifts of disk automorphisms are evaluated in binary64, and words in either
// kind are evaluated right to left.

#include "fibrecontact/isometry.hpp"
#include "fibrecontact/rational.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace fibrecontact::circle {

class InvalidMap : public Error {
public:
    using Error::Error;
};
class NonConstantDifference : public Error {
public:
    using Error::Error;
};
class NonIntegerDifference : public Error {
public:
    using Error::Error;
};
class OddMapCount : public Error {
public:
    using Error::Error;
};

/// Either an exact rational or a binary64 approximation.
class Scalar {
public:
    Scalar(Rational exact) : exact_(std::move(exact)), approx_(fibrecontact::to_double(*exact_)) {}
    Scalar(double approx) : approx_(approx) {}

    bool is_exact() const { return exact_.has_value(); }
    const Rational& exact() const { return exact_.value(); }
    double to_double() const { return approx_; }

private:
    std::optional<Rational> exact_;
    double approx_;
};

struct Breakpoint {
    Rational t;
    Rational value;
};

class LiftedCircleMap;
using MapRef = std::shared_ptr<const LiftedCircleMap>;

struct WordLetter {
    MapRef map;
    int exponent = 1;  // +1 or -1
};

class LiftedCircleMap {
public:
    enum class Kind { PiecewiseLinear, MoebiusBoundaryLift, Word };

    /// The identity lift.
    LiftedCircleMap();

    static LiftedCircleMap identity() { return {}; }
    static LiftedCircleMap translation(const Rational& c);

    /// Breakpoints (t, f(t)) with t in [0,1), any order. The map is the
    /// periodic piecewise-linear interpolation; it must be strictly increasing
    /// across the wrap, i.e. max value < min value + 1 in breakpoint order.
    static LiftedCircleMap piecewise_linear(std::vector<Breakpoint> breakpoints);

    /// Canonical lift (f(0) in [0,1)) of the boundary action of `iso`, shifted
    /// by `winding`.
    static LiftedCircleMap moebius(const hyperbolic::Isometry2H& iso, long winding = 0);

    /// The composite letters[0] o letters[1] o ... (nested words are flattened).
    static LiftedCircleMap word(std::vector<WordLetter> letters);

    Kind kind() const { return kind_; }

    /// Normalized breakpoints, the first at t = 0. Empty unless PL.
    const std::vector<Breakpoint>& breakpoints() const { return breakpoints_; }
    const hyperbolic::Isometry2H& isometry() const { return iso_; }
    long winding() const { return winding_; }
    const std::vector<WordLetter>& letters() const { return letters_; }

    /// True for PL maps and for words whose letters are all exact.
    bool is_exact() const;

    double operator()(double t) const;
    /// Exact evaluation; throws InvalidMap unless is_exact().
    Rational eval_exact(const Rational& t) const;

    /// A PL map equal to this one when is_exact(), otherwise nullopt.
    std::optional<LiftedCircleMap> flatten() const;

private:
    Kind kind_ = Kind::PiecewiseLinear;
    std::vector<Breakpoint> breakpoints_;
    hyperbolic::Isometry2H iso_;
    long winding_ = 0;
    double lift_offset_ = 0;  // integer offset making the base lift canonical
    std::vector<WordLetter> letters_;
    std::vector<MapRef> resolved_;  // letters with exponent -1 replaced by inverses
    std::vector<double> bt_, bv_;   // binary64 copies of the breakpoints

    double moebius_base(double t) const;
    friend LiftedCircleMap invert(const LiftedCircleMap& f);
};

MapRef share(LiftedCircleMap f);

/// f o g. PL o PL is flattened to an exact PL map, anything else becomes a word.
LiftedCircleMap compose(const LiftedCircleMap& f, const LiftedCircleMap& g);

/// The inverse lift: exact for PL, inverse matrix with the matching integer
/// shift for Moebius lifts, reversed word otherwise.
LiftedCircleMap invert(const LiftedCircleMap& f);

/// sup over t in [0,1] of f(t) - t. Exact for exact maps (the maximum of a PL
/// map's displacement sits at a breakpoint); otherwise a grid scan of `grid`
/// points refined by golden-section search around the best sample.
Scalar sup_displacement(const LiftedCircleMap& f, std::size_t grid = 4096);

/// inf over t of f(t) - t, computed as -sup_displacement(invert(f)).
Scalar inf_displacement(const LiftedCircleMap& f, std::size_t grid = 4096);

struct TranslationNumberEstimate {
    double value = 0;
    double error_bound = 0;
    std::size_t iterations = 0;
    /// Present when the orbit was iterated exactly.
    std::optional<Rational> exact_value;
};

/// f^N(0)/N. The translation number lies within error_bound = 1/N + slack,
/// where slack is 0 for exact iteration and accounts for rounding otherwise.
/// Exact maps are iterated over the rationals while the orbit point stays
/// below `exact_bit_limit` bits, then the iteration continues in binary64.
TranslationNumberEstimate translation_number(const LiftedCircleMap& f, std::size_t iterations,
                                             std::size_t exact_bit_limit = 4096);

/// [a, b] = a o b o a^-1 o b^-1.
LiftedCircleMap commutator(const MapRef& a, const MapRef& b);

/// prod_{i=1..g} [f_{2i-1}, f_{2i}], composed left to right. Throws
/// OddMapCount unless maps has a positive even length.
LiftedCircleMap evaluate_relator(std::span<const MapRef> maps);

struct WoodCheck {
    bool holds = true;
    int genus = 0;
    std::optional<double> witness;  // first grid point violating the bound
    double min_displacement = 0;
    double max_displacement = 0;
};

/// Checks -2g <= relator(t) - t <= 2g on t = k/grid, k = 0..grid-1.
WoodCheck wood_bound_check(std::span<const MapRef> maps, std::size_t grid = 1024);

/// Same test applied to an already evaluated relator of the given genus.
WoodCheck wood_bound_check(const LiftedCircleMap& relator, int genus, std::size_t grid = 1024);

/// fD - fK must be constant (spread <= tol over `grid` points of [0,1)) and
/// within tol of an integer, which is returned.
long euler_from_sections(const LiftedCircleMap& fD, const LiftedCircleMap& fK,
                         std::size_t grid = 1024, double tol = 1e-9);

}  // namespace fibrecontact::circle
