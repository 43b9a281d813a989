#pragma once

// Catalogue of explicit contact forms and the maps relating them.

#include "fibrecontact/formcalc/parser.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fibrecontact::formcalc {

struct ModelEntry {
    std::string name;
    std::string document;  // form-file text the entry was parsed from
    OneForm form;
    std::optional<ContactSign> expected;  // none for 4-dimensional entries
    std::optional<Rational> enrollment;   // enrollment around the fibres, when known
    std::string note;
};

const std::vector<ModelEntry>& model_library();
const ModelEntry& model_entry(std::string_view name);

/// cos(2 n pi x) dy - sin(2 n pi x) dt on (x, y, t) in [0,1] x [-1,1] x [-1,1], x periodic.
OneForm xi_form(long n);

/// dz + p dtheta on (p, theta, z).
OneForm dz_plus_p_dtheta();

/// (1 - r^4) dz + r^2 dtheta on (r, theta, z), r in [0.05, 1.4], theta and z periodic.
OneForm zeta_form();

/// (x, y, t) -> (p, theta, z) = (n (s y + c t), 2 pi x, c y - s t) with
/// c = cos(2 n pi x), s = sin(2 n pi x); source chart as in xi_form.
std::vector<Expr> bennequin_embedding(long n);

/// Source chart (a, s, t) of the psi maps: a in [0.01, a_max], s and t periodic.
Chart psi_chart(double a_max = 0.45);

/// (a, s, t) -> (r, theta, z) = (2 a R (1 + sign (a/q) cos(q s - p t)),
/// s + (a/q) sin(2 (q s - p t)), t), with R = r_of_slope(p, q) and sign = +-1.
std::vector<Expr> psi_map(long p, long q, int sign);

/// x1 dy1 - y1 dx1 + x2 dy2 - y2 dx2 on (x1, y1, x2, y2) in [-1,1]^4.
OneForm hopf_form();

/// Rotation by 2 pi t in the first complex coordinate and by +-2 pi t in the second.
std::vector<Expr> hopf_rotation(const Rational& t, int sign);

struct HopfCheck {
    bool holds = false;
    double max_error = 0;
    std::size_t times = 0;
};

/// Pulls the 4-dimensional form back under both rotation families at the given
/// times and compares coefficients at sample points with tolerance 1e-12.
HopfCheck hopf_invariance_check(const std::vector<Rational>& times, std::size_t points = 200);

}  // namespace fibrecontact::formcalc
