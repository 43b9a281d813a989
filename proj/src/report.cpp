#include "fibrecontact/report.hpp"

#include "fibrecontact/classify.hpp"
#include "fibrecontact/formcalc/library.hpp"
#include "fibrecontact/hyperbolic.hpp"
#include "fibrecontact/multicurve.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

namespace fibrecontact::report {

using Json = nlohmann::ordered_json;

double round12(double x) {
    if (!std::isfinite(x)) return x;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    double r = std::strtod(buf, nullptr);
    return r == 0.0 ? 0.0 : r;  // no negative zero
}

namespace {

// Validation failures: the input was well-formed but the data is rejected.
class Rejected : public Error {
public:
    Rejected(std::string kind, const std::string& what) : Error(what), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

// Usage errors detected after flag parsing.
class BadArgument : public Error {
public:
    BadArgument(std::string kind, const std::string& what) : Error(what), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

Json num(double x) { return round12(x); }

Json envelope(const std::string& command, Json inputs, Json outputs) {
    Json j;
    j["command"] = command;
    j["inputs"] = std::move(inputs);
    j["outputs"] = std::move(outputs);
    j["version"] = kVersion;
    j["deterministic"] = true;
    return j;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw BadArgument("FileNotFound", "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Accepts numbers and closed expressions such as "4*pi" or "pi/2".
double parse_real(const std::string& text, const std::string& flag) {
    try {
        formcalc::Expr e = formcalc::parse_expr(text, {});
        return e.eval({});
    } catch (const Error& ex) {
        throw BadArgument("InvalidArgument", flag + ": " + ex.what());
    }
}

Json classify_outputs(long chi_s, long euler) {
    using namespace classify;
    BundleData{chi_s, euler}.validate();
    Json o;
    o["genus"] = BundleData{chi_s, euler}.genus();
    o["transverse_exists"] = transverse_exists(chi_s, euler);
    o["flat_exists"] = flat_exists(chi_s, euler);
    o["confoliation_ok"] = confoliation_bound(chi_s, euler);
    auto d = tangent_exists(chi_s, euler);
    o["tangent_degree"] = d ? Json(*d) : Json(nullptr);

    std::vector<long> slope_ns{1};
    if (chi_s > 0) {
        o["route"] = "sphere";
        o["enrollment_spectrum"] = nullptr;
        o["conjugacy_classes"] = nullptr;
        o["sphere_enrollment"] = euler < 0 ? Json(sphere_enrollment(euler).str()) : Json(nullptr);
    } else if (!transverse_exists(chi_s, euler)) {
        o["route"] = "general";
        o["enrollment_spectrum"] = nullptr;
        o["conjugacy_classes"] = nullptr;
    } else {
        o["route"] = "general";
        auto spec = transverse_enrollment_spectrum(chi_s, euler);
        if (spec.all) {
            o["enrollment_spectrum"] = "all n >= 1";
            o["conjugacy_classes"] = nullptr;
        } else {
            o["enrollment_spectrum"] = spec.values;
            slope_ns = spec.values;
            auto n = critical_enrollment(chi_s, euler);
            o["conjugacy_classes"] = n ? Json(count_tangent_conjugacy_classes(*n)) : Json(nullptr);
        }
    }
    o["vot_bound"] = virtually_overtwisted_bound(chi_s, euler);
    Json slopes = Json::array();
    for (long n : slope_ns) {
        auto s = boundary_slope(n, euler, chi_s);
        slopes.push_back({{"n", s.n}, {"class", {s.n, s.numerator}}, {"mu", to_string(s.mu)}});
    }
    o["boundary_slope"] = slopes;
    if (d) {
        auto w = whitney_singular_class(legendrian_fibration_enrollment(*d), chi_s);
        o["whitney_class"] = {{"sign", "+-"}, {"class", {to_string(w.fibre), std::to_string(w.base)}}};
    } else {
        o["whitney_class"] = nullptr;
    }
    return o;
}

Json polygon_outputs(int genus, double area) {
    double radius = hyperbolic::radius_for_area(genus, area);
    auto poly = hyperbolic::build_symmetric_polygon(genus, radius);
    Json o;
    o["radius"] = num(radius);
    o["area"] = num(hyperbolic::polygon_area(poly));
    o["side_length"] = num(poly.side_length());
    o["interior_angle"] = num(poly.interior_angle());
    Json verts = Json::array();
    for (const auto& v : poly.vertices()) verts.push_back({num(v.x()), num(v.y())});
    o["vertices"] = verts;
    Json pairs = Json::array();
    for (const auto& p : hyperbolic::side_pairings(poly))
        pairs.push_back({{"matrix", {num(p.a()), num(p.b()), num(p.c()), num(p.d())}},
                         {"trace", num(p.trace())},
                         {"type", hyperbolic::to_string(p.type())}});
    o["side_pairings"] = pairs;
    return o;
}

Json holonomy_outputs(int genus, double area, std::size_t iters) {
    auto h = hyperbolic::holonomy_translation_number(genus, area, iters);
    double pi = std::numbers::pi;
    double expected_trace = 2.0 * std::abs(std::cos(((4.0 * genus - 2.0) * pi - area) / 2.0));
    Json o;
    o["radius"] = num(h.radius);
    o["area"] = num(h.area);
    o["commutator_trace"] = num(h.commutator_trace);
    o["expected_abs_trace"] = num(expected_trace);
    o["rotation_number"] = num(h.rotation.value);
    o["abs_rotation_number"] = num(std::abs(h.rotation.value));
    o["area_over_2pi"] = num(area / (2.0 * pi));
    o["residual"] = num(std::abs(std::abs(h.rotation.value) - area / (2.0 * pi)));
    o["error_bound"] = num(h.rotation.error_bound);
    o["iterations"] = h.rotation.iterations;
    return o;
}

Json form_outputs(const std::string& name, const formcalc::OneForm& form, std::optional<formcalc::ContactSign> expected,
                  std::size_t grid, bool& all_match) {
    Json o;
    o["name"] = name;
    o["form"] = formcalc::to_text(form);
    o["chart"] = form.chart.names;
    if (form.chart.dim() != 3) {
        o["sign"] = nullptr;
        o["note"] = "contact sign is defined for 3-dimensional charts";
        return o;
    }
    auto rep = formcalc::contact_sign(form, grid);
    o["contact_coefficient"] = formcalc::to_text(formcalc::contact_coefficient(form), form.chart.names);
    o["sign"] = formcalc::to_string(rep.sign);
    o["min_abs"] = num(rep.min_abs);
    o["samples"] = rep.samples;
    Json w = Json::array();
    for (const auto& p : rep.witnesses) {
        Json pt = Json::array();
        for (double x : p) pt.push_back(num(x));
        w.push_back(pt);
    }
    o["witnesses"] = w;
    if (expected) {
        o["expected"] = formcalc::to_string(*expected);
        bool match = *expected == rep.sign;
        o["matches"] = match;
        all_match = all_match && match;
    }
    return o;
}

Json multicurve_outputs(const multicurve::SurfaceDecomposition& dec, std::optional<long> euler) {
    using namespace multicurve;
    Json o;
    o["pieces"] = dec.pieces.size();
    o["curves"] = dec.curves.size();
    o["has_disk"] = dec.has_disk();
    o["essential"] = is_essential(dec);
    o["convex_neighborhood_tight"] = convex_neighborhood_tight(dec);
    if (euler) o["universal_tightness"] = to_string(universal_tightness(dec, *euler));
    return o;
}

multicurve::SurfaceDecomposition load_decomposition(const std::string& path) {
    auto dec = multicurve::parse_decomposition(read_file(path));
    auto v = multicurve::validate(dec);
    if (!v.valid) throw Rejected("InvalidDecomposition", path + ": " + v.diagnostic);
    return dec;
}

Json error_object(const std::string& kind, const std::string& message) {
    return Json{{"error", {{"kind", kind}, {"message", message}}}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Contact structures on circle bundles: formulas, holonomy and form checks", "fibrecontact"};
    app.require_subcommand(1);

    long chi_s = 0, euler = 0;
    auto* cmd_classify = app.add_subcommand("classify", "existence, spectrum and bound formulas");
    cmd_classify->add_option("--chi-s", chi_s, "Euler characteristic of the base")->required();
    cmd_classify->add_option("--euler", euler, "Euler number of the bundle")->required();

    int genus = 2;
    std::string area_text;
    std::size_t iters = 100000;
    auto* cmd_holonomy = app.add_subcommand("holonomy", "translation number of the lifted commutator relation");
    cmd_holonomy->add_option("--genus", genus)->required();
    cmd_holonomy->add_option("--area", area_text, "polygon area, e.g. 4*pi")->required();
    cmd_holonomy->add_option("--iters", iters, "iterations of the relator")->check(CLI::PositiveNumber);

    auto* cmd_polygon = app.add_subcommand("polygon", "regular 4g-gon of a given area and its side pairings");
    cmd_polygon->add_option("--genus", genus)->required();
    cmd_polygon->add_option("--area", area_text)->required();

    std::string form_file, entry;
    bool library = false;
    std::size_t grid = 64;
    auto* cmd_forms = app.add_subcommand("forms", "contact sign of a form file or of the model library");
    auto* opt_file = cmd_forms->add_option("--form-file", form_file, "form document");
    auto* opt_lib = cmd_forms->add_flag("--library", library, "sweep the model library");
    opt_file->excludes(opt_lib);
    cmd_forms->add_option("--entry", entry, "single library entry")->needs(opt_lib);
    cmd_forms->add_option("--grid", grid, "samples per axis")->check(CLI::Range(2, 512));

    std::string mc_file, mc_compare;
    std::optional<long> mc_euler;
    auto* cmd_multicurve = app.add_subcommand("multicurve", "tightness criteria for a decomposition file");
    cmd_multicurve->add_option("--file", mc_file)->required();
    cmd_multicurve->add_option("--compare", mc_compare, "second decomposition for isotopy comparison");
    cmd_multicurve->add_option("--euler", mc_euler, "Euler number for the universal tightness criterion");

    long cov_genus = 1, cov_n = 1;
    auto* cmd_covers = app.add_subcommand("covers", "orbits of H^1(S; Z/n) under the symplectic group");
    cmd_covers->add_option("--genus", cov_genus)->required();
    cmd_covers->add_option("--n", cov_n)->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Success;
    } catch (const CLI::ParseError& e) {
        out << error_object("UsageError", e.what()).dump(2) << "\n";
        err << "fibrecontact: " << e.what() << "\n";
        return UsageError;
    }

    try {
        Json report;
        int code = Success;
        if (*cmd_classify) {
            try {
                report = envelope("classify", {{"chi_s", chi_s}, {"euler", euler}}, classify_outputs(chi_s, euler));
            } catch (const classify::InvalidInput& e) {
                throw BadArgument("InvalidInput", e.what());
            }
        } else if (*cmd_holonomy || *cmd_polygon) {
            double area = parse_real(area_text, "--area");
            Json inputs{{"genus", genus}, {"area", num(area)}};
            try {
                if (*cmd_holonomy) {
                    inputs["iters"] = iters;
                    report = envelope("holonomy", inputs, holonomy_outputs(genus, area, iters));
                } else {
                    report = envelope("polygon", inputs, polygon_outputs(genus, area));
                }
            } catch (const hyperbolic::AreaOutOfRange& e) {
                throw BadArgument("AreaOutOfRange", e.what());
            } catch (const std::invalid_argument& e) {
                throw BadArgument("InvalidArgument", e.what());
            }
        } else if (*cmd_forms) {
            if (form_file.empty() && !library) throw BadArgument("UsageError", "forms needs --form-file or --library");
            Json results = Json::array();
            bool all_match = true;
            Json inputs{{"grid", grid}};
            if (library) {
                inputs["library"] = true;
                if (!entry.empty()) inputs["entry"] = entry;
                for (const auto& e : formcalc::model_library()) {
                    if (!entry.empty() && e.name != entry) continue;
                    Json r = form_outputs(e.name, e.form, e.expected, grid, all_match);
                    if (e.enrollment) r["enrollment"] = to_string(*e.enrollment);
                    if (!e.note.empty()) r["note"] = e.note;
                    results.push_back(r);
                }
                if (results.empty()) throw BadArgument("UnknownEntry", "no library entry named '" + entry + "'");
            } else {
                inputs["form_file"] = form_file;
                std::string text = read_file(form_file);
                formcalc::FormDocument doc;
                try {
                    doc = formcalc::parse_form_document(text);
                } catch (const formcalc::SyntaxError& e) {
                    throw Rejected("SyntaxError", e.what());
                } catch (const formcalc::UnknownVariable& e) {
                    throw Rejected("UnknownVariable", e.what());
                } catch (const formcalc::InvalidChart& e) {
                    throw Rejected("InvalidChart", e.what());
                }
                results.push_back(form_outputs(form_file, doc.form, doc.expected, grid, all_match));
            }
            report = envelope("forms", inputs, {{"results", results}, {"all_match", all_match}});
            if (!all_match) code = ValidationFailure;
        } else if (*cmd_multicurve) {
            Json inputs{{"file", mc_file}};
            multicurve::SurfaceDecomposition a;
            try {
                a = load_decomposition(mc_file);
            } catch (const multicurve::ParseError& e) {
                throw Rejected("ParseError", mc_file + ": " + e.what());
            }
            Json outputs = multicurve_outputs(a, mc_euler);
            if (mc_euler) inputs["euler"] = *mc_euler;
            if (!mc_compare.empty()) {
                inputs["compare"] = mc_compare;
                multicurve::SurfaceDecomposition b;
                try {
                    b = load_decomposition(mc_compare);
                } catch (const multicurve::ParseError& e) {
                    throw Rejected("ParseError", mc_compare + ": " + e.what());
                }
                try {
                    outputs["equal"] = multicurve::isotopy_equal(multicurve::MulticurveClass(a),
                                                                 multicurve::MulticurveClass(b));
                } catch (const multicurve::ScaleExceeded& e) {
                    throw BadArgument("ScaleExceeded", e.what());
                }
            }
            report = envelope("multicurve", inputs, outputs);
        } else if (*cmd_covers) {
            long orbits = 0;
            try {
                orbits = classify::cohomology_orbit_count(cov_genus, cov_n);
            } catch (const classify::ScaleExceeded& e) {
                throw BadArgument("ScaleExceeded", e.what());
            }
            long tau = classify::count_tangent_conjugacy_classes(cov_n);
            std::vector<long> divisors;
            for (long d = 1; d <= cov_n; ++d)
                if (cov_n % d == 0) divisors.push_back(d);
            report = envelope("covers", {{"genus", cov_genus}, {"n", cov_n}},
                              {{"orbit_count", orbits}, {"divisor_count", tau}, {"divisors", divisors},
                               {"agrees", orbits == tau}});
            if (orbits != tau) code = ValidationFailure;
        }
        out << report.dump(2) << "\n";
        return code;
    } catch (const BadArgument& e) {
        out << error_object(e.kind(), e.what()).dump(2) << "\n";
        err << "fibrecontact: " << e.what() << "\n";
        return UsageError;
    } catch (const Rejected& e) {
        out << error_object(e.kind(), e.what()).dump(2) << "\n";
        err << "fibrecontact: " << e.what() << "\n";
        return ValidationFailure;
    } catch (const std::exception& e) {
        out << error_object("Error", e.what()).dump(2) << "\n";
        err << "fibrecontact: " << e.what() << "\n";
        return ValidationFailure;
    }
}

}  // namespace fibrecontact::report
