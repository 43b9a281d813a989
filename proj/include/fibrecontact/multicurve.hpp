#pragma once

// Multicurves on closed surfaces, encoded by how the complementary pieces are
// glued, and the tightness criteria that read them.

#include "fibrecontact/rational.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fibrecontact::multicurve {

class InvalidDecomposition : public Error {
public:
    using Error::Error;
};
class ScaleExceeded : public Error {
public:
    using Error::Error;
};
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct Piece {
    std::string id;
    long genus = 0;
    long boundaries = 1;
    bool is_disk() const { return genus == 0 && boundaries == 1; }
    long euler_characteristic() const { return 2 - 2 * genus - boundaries; }
};

/// Boundary slot `slot` (1-based) of piece `piece` (index into pieces).
struct CurveEnd {
    std::size_t piece = 0;
    long slot = 1;
};

struct Curve {
    std::string id;
    CurveEnd a, b;
};

struct SurfaceDecomposition {
    long ambient_chi = 0;
    bool ambient_sphere = false;
    std::vector<Piece> pieces;
    std::vector<Curve> curves;

    bool has_disk() const;
    bool curves_empty() const { return curves.empty(); }
    bool curves_connected() const { return curves.size() == 1; }
};

struct Validation {
    bool valid = true;
    std::string diagnostic;  // first violation, empty when valid
};

/// Checks the Euler characteristic sum, slot usage, connectivity and the
/// ambient surface data.
Validation validate(const SurfaceDecomposition& dec);

/// Throws InvalidDecomposition with the diagnostic when invalid.
void require_valid(const SurfaceDecomposition& dec);

/// No component is null-homotopic: no disk piece, and on the sphere no curves at all.
bool is_essential(const SurfaceDecomposition& dec);

enum class Tightness { UniversallyTight, NotUniversallyTight, OvertwistedCertificate };
std::string to_string(Tightness t);

/// Universal tightness of the invariant structure with dividing set given by
/// the decomposition over a bundle with Euler number `euler`.
/// OvertwistedCertificate when a disk piece exists and either the curves are
/// disconnected or euler violates the tight inequality.
Tightness universal_tightness(const SurfaceDecomposition& dec, long euler);

/// Tightness of a homogeneous neighbourhood of a convex surface.
bool convex_neighborhood_tight(const SurfaceDecomposition& dec);

/// A decomposition together with its canonical form under relabelling of
/// pieces with equal (genus, boundaries) and of boundary slots.
class MulticurveClass {
public:
    /// Throws InvalidDecomposition, or ScaleExceeded beyond 8 pieces.
    explicit MulticurveClass(SurfaceDecomposition dec);
    const SurfaceDecomposition& decomposition() const { return dec_; }
    const std::vector<long>& canonical_form() const { return canonical_; }
    friend bool operator==(const MulticurveClass& a, const MulticurveClass& b) {
        return a.canonical_ == b.canonical_;
    }

private:
    SurfaceDecomposition dec_;
    std::vector<long> canonical_;
};

bool isotopy_equal(const MulticurveClass& a, const MulticurveClass& b);

/// Primitive homology class on the torus, identified with its negation.
class TorusCurve {
public:
    /// Throws InvalidDecomposition unless gcd(|p|, |q|) = 1.
    TorusCurve(long p, long q);
    long p() const { return p_; }
    long q() const { return q_; }
    friend bool operator==(const TorusCurve& a, const TorusCurve& b) { return a.p_ == b.p_ && a.q_ == b.q_; }

private:
    long p_, q_;
};

/// |p q' - q p'|.
long torus_intersection(const TorusCurve& a, const TorusCurve& b);

struct TorusDividingSet {
    long components = 2;  // even, positive
    TorusCurve slope{0, 1};
    void validate() const;
};

/// -(1/2) * components * i(slope, c).
Rational bennequin_semilocal_bound(const TorusDividingSet& gamma, const TorusCurve& c);

/// deg + n - 1.
long tb_from_degree(long degree, long n);

/// Reads the line format
///   surface chi=<int> sphere=<bool>
///   piece <id> genus=<g> boundaries=<b>
///   curve <id> <pieceA>.<slot> <pieceB>.<slot>
/// Blank lines and lines starting with '#' are skipped. The result is not validated.
SurfaceDecomposition parse_decomposition(std::string_view text);

std::string to_text(const SurfaceDecomposition& dec);

}  // namespace fibrecontact::multicurve
