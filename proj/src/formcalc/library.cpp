#include "fibrecontact/formcalc/library.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fibrecontact::formcalc {

namespace {

ModelEntry entry(std::string name, std::string document, std::optional<Rational> enrollment = std::nullopt,
                 std::string note = {}) {
    auto doc = parse_form_document(document);
    ModelEntry e;
    e.name = std::move(name);
    e.document = std::move(document);
    e.form = std::move(doc.form);
    e.expected = doc.expected;
    e.enrollment = std::move(enrollment);
    e.note = std::move(note);
    return e;
}

std::vector<ModelEntry> build_library() {
    std::vector<ModelEntry> lib;
    lib.push_back(entry("dtheta - u dx",
                        "chart y:[-2,2] x:[-2,2] theta:[0,2*pi]; periodic theta; form dtheta - (-y)*dx; expect positive",
                        std::nullopt, "u = -y; contact exactly where the y-derivative of u is negative"));
    lib.push_back(entry("rotating plane field",
                        "chart x:[-2,2] y:[-2,2] t:[0,1]; periodic t; param n=2; "
                        "form cos(2*n*pi*t)*dx - sin(2*n*pi*t)*dy; expect positive",
                        Rational(-2), "n = 2; enrollment -n around the fibres"));
    lib.push_back(entry("dividing model",
                        "chart x:[0,2] y:[-1,1] t:[-1,1]; periodic x; param n=1; "
                        "form cos(n*pi*x)*dy - sin(n*pi*x)*dt; expect positive"));
    lib.push_back(entry("zeta",
                        "chart r:[0.05,1.4] theta:[0,2*pi] z:[0,2*pi]; periodic theta z; exclude r<1e-3; "
                        "form (1-r^4)*dz + r^2*dtheta; expect positive",
                        std::nullopt, "characteristic slope r^2/(r^4-1) on the torus of radius r"));
    lib.push_back(entry("standard", "chart x:[-2,2] y:[-2,2] z:[-2,2]; form dz - y*dx; expect positive"));
    lib.push_back(entry("knot neighbourhood",
                        "chart r:[0.05,2] theta:[0,2*pi] t:[-1,1]; periodic theta; exclude r<1e-3; "
                        "form dt + r^2*dtheta; expect positive"));
    lib.push_back(entry("symmetric standard", "chart x:[-2,2] y:[-2,2] z:[-2,2]; form dz + x*dy - y*dx; expect positive",
                        std::nullopt, "invariant under (x, y, z) -> (e^s x, e^s y, e^{2s} z) up to scale"));
    lib.push_back(entry("twisted product",
                        "chart x1:[-2,2] x2:[-2,2] theta:[0,2*pi]; periodic theta; param m=1; "
                        "form cos(m*theta)*dx1 - sin(m*theta)*dx2; expect positive"));
    lib.push_back(entry("jet space",
                        "chart p:[-2,2] theta:[0,2*pi] z:[-2,2]; periodic theta; form dz + p*dtheta; expect positive",
                        std::nullopt, "negative in the chart order (theta, p, z)"));
    lib.push_back(entry("xi_n",
                        "chart x:[0,1] y:[-1,1] t:[-1,1]; periodic x; param n=1; "
                        "form cos(2*n*pi*x)*dy - sin(2*n*pi*x)*dt; expect positive"));
    lib.push_back(entry("sphere", "chart x1:[-1,1] y1:[-1,1] x2:[-1,1] y2:[-1,1]; form x1*dy1 - y1*dx1 + x2*dy2 - y2*dx2",
                        std::nullopt, "restricts to the standard structure on the unit sphere"));
    return lib;
}

Expr c(long v) { return Expr::constant(v); }
Expr c(const Rational& v) { return Expr::constant(v); }
Expr v(std::size_t i) { return Expr::var(i); }

}  // namespace

const std::vector<ModelEntry>& model_library() {
    static const std::vector<ModelEntry> lib = build_library();
    return lib;
}

const ModelEntry& model_entry(std::string_view name) {
    const auto& lib = model_library();
    auto it = std::find_if(lib.begin(), lib.end(), [&](const ModelEntry& e) { return e.name == name; });
    if (it == lib.end()) throw Error("no library entry named '" + std::string(name) + "'");
    return *it;
}

OneForm xi_form(long n) {
    Params params{{"n", Rational(n)}};
    Chart chart = parse_chart_header("chart x:[0,1] y:[-1,1] t:[-1,1]; periodic x");
    return parse_form("cos(2*n*pi*x)*dy - sin(2*n*pi*x)*dt", chart, params);
}

OneForm dz_plus_p_dtheta() { return model_entry("jet space").form; }

OneForm zeta_form() { return model_entry("zeta").form; }

std::vector<Expr> bennequin_embedding(long n) {
    // Source coordinates (x, y, t) = (0, 1, 2).
    Expr angle = simplify_mul(simplify_mul(c(2 * n), Expr::pi()), v(0));
    Expr co = Expr::cos(angle), si = Expr::sin(angle);
    Expr p = simplify_mul(c(n), simplify_add(simplify_mul(si, v(1)), simplify_mul(co, v(2))));
    Expr theta = simplify_mul(simplify_mul(c(2), Expr::pi()), v(0));
    Expr z = simplify_sub(simplify_mul(co, v(1)), simplify_mul(si, v(2)));
    return {p, theta, z};
}

Chart psi_chart(double a_max) {
    Chart chart = make_chart({"a", "s", "t"}, {{0.01, a_max}, {0.0, 2 * std::numbers::pi}, {0.0, 2 * std::numbers::pi}});
    chart.periodic = {false, true, true};
    return chart;
}

std::vector<Expr> psi_map(long p, long q, int sign) {
    if (q <= 0) throw SlopeOutOfRange("denominator must be positive");
    Rational R(r_of_slope(p, q));
    // Source coordinates (a, s, t) = (0, 1, 2).
    Expr phase = simplify_sub(simplify_mul(c(q), v(1)), simplify_mul(c(p), v(2)));
    Expr a_over_q = simplify_div(v(0), c(q));
    Expr bump = simplify_mul(a_over_q, Expr::cos(phase));
    Expr r = simplify_mul(simplify_mul(c(Rational(2) * R), v(0)),
                          sign > 0 ? simplify_add(c(1), bump) : simplify_sub(c(1), bump));
    Expr theta = simplify_add(v(1), simplify_mul(a_over_q, Expr::sin(simplify_mul(c(2), phase))));
    return {r, theta, v(2)};
}

OneForm hopf_form() { return model_entry("sphere").form; }

std::vector<Expr> hopf_rotation(const Rational& t, int sign) {
    // Coordinates (x1, y1, x2, y2) = (0, 1, 2, 3).
    Expr angle = simplify_mul(c(Rational(2) * t), Expr::pi());
    Expr co = simplify(Expr::cos(angle)), si = simplify(Expr::sin(angle));
    Expr s2 = sign > 0 ? si : simplify_neg(si);
    return {simplify_sub(simplify_mul(co, v(0)), simplify_mul(si, v(1))),
            simplify_add(simplify_mul(si, v(0)), simplify_mul(co, v(1))),
            simplify_sub(simplify_mul(co, v(2)), simplify_mul(s2, v(3))),
            simplify_add(simplify_mul(s2, v(2)), simplify_mul(co, v(3)))};
}

HopfCheck hopf_invariance_check(const std::vector<Rational>& times, std::size_t points) {
    OneForm form = hopf_form();
    auto pts = sample_points(form.chart, points, 7);
    HopfCheck out;
    for (const auto& t : times) {
        for (int sign : {+1, -1}) {
            auto map = hopf_rotation(t, sign);
            OneForm pb = pullback(form.chart, map, form);
            for (std::size_t i = 0; i < form.coeffs.size(); ++i)
                out.max_error = std::max(out.max_error, max_difference(pb.coeffs[i], form.coeffs[i], pts));
        }
        ++out.times;
    }
    out.holds = out.max_error <= 1e-12;
    return out;
}

}  // namespace fibrecontact::formcalc
