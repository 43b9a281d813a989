#pragma once

// Regular hyperbolic 4g-gons in the Poincare disk, their side pairings, and
// the lifted holonomy of the commutator relation.

#include "fibrecontact/circle_dynamics.hpp"
#include "fibrecontact/isometry.hpp"

#include <cstddef>
#include <vector>

namespace fibrecontact::hyperbolic {

class AreaOutOfRange : public Error {
public:
    using Error::Error;
};
class LengthMismatch : public Error {
public:
    using Error::Error;
};

/// Hyperbolic distance in the disk model.
double hdistance(const HPoint& p, const HPoint& q);

/// Regular 4g-gon centred at the origin. Vertex k (1-based) sits at polar angle
/// -2 pi (k-1) / 4g, so vertices are numbered clockwise.
class SymmetricPolygon {
public:
    int genus() const { return genus_; }
    double circumradius() const { return radius_; }
    const std::vector<HPoint>& vertices() const { return vertices_; }
    /// 1-based, cyclic: vertex(4g + 1) == vertex(1).
    const HPoint& vertex(int k) const;
    std::size_t size() const { return vertices_.size(); }

    double side_length() const;
    /// Interior angle at every vertex, from the isosceles centre triangles.
    double interior_angle() const;

private:
    friend SymmetricPolygon build_symmetric_polygon(int genus, double radius);
    int genus_ = 1;
    double radius_ = 0;
    std::vector<HPoint> vertices_;
};

/// Throws std::invalid_argument unless genus >= 1 and radius > 0.
SymmetricPolygon build_symmetric_polygon(int genus, double radius);

/// (4g - 2) pi minus the interior angle sum.
double polygon_area(const SymmetricPolygon& poly);

/// Circumradius whose polygon has the given area, by bisection. Throws
/// AreaOutOfRange unless 0 < area < (4g - 2) pi.
double radius_for_area(int genus, double area);

/// The orientation-preserving isometry taking A to A2 and B to B2. Throws
/// LengthMismatch when the segments differ in length by more than `tol`.
Isometry2H isometry_from_segments(const HPoint& A, const HPoint& B, const HPoint& A2, const HPoint& B2,
                                  double tol = 1e-9);

/// phi_{2i-1} maps (s_{4i-1}, s_{4i}) to (s_{4i-2}, s_{4i-3}) and
/// phi_{2i} maps (s_{4i-2}, s_{4i-1}) to (s_{4i+1}, s_{4i}): the inverse of the
/// gluing of [s_{4i-3}, s_{4i-2}] onto [s_{4i}, s_{4i-1}], and the gluing of
/// [s_{4i-2}, s_{4i-1}] onto [s_{4i+1}, s_{4i}].
std::vector<Isometry2H> side_pairings(const SymmetricPolygon& poly);

/// prod_{i=1..g} [phi_{2i-1}, phi_{2i}] with [a, b] = a b a^-1 b^-1.
Isometry2H commutator_product(const std::vector<Isometry2H>& pairings);

/// Canonical lift of the boundary action (value at 0 in [0,1)).
circle::LiftedCircleMap boundary_lift(const Isometry2H& iso);

struct HolonomyResult {
    double radius = 0;
    double area = 0;
    double commutator_trace = 0;
    circle::TranslationNumberEstimate rotation;
};

/// Builds the polygon of the requested area, lifts its side pairings
/// canonically and estimates the translation number of the lifted relator.
HolonomyResult holonomy_translation_number(int genus, double area, std::size_t iterations);

}  // namespace fibrecontact::hyperbolic
