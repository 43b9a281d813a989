#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fibrecontact/report.hpp"

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

using fibrecontact::report::run;
using Json = nlohmann::json;

namespace {

struct Outcome {
    int code;
    Json json;
    std::string text;
};

Outcome call(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run(args, out, err);
    return {code, Json::parse(out.str()), out.str()};
}

std::string data(const std::string& name) { return std::string(FC_TEST_DATA) + "/data/" + name; }

}  // namespace

TEST_CASE("classify") {
    auto r = call({"classify", "--chi-s", "-2", "--euler", "1"});
    REQUIRE(r.code == 0);
    const auto& o = r.json["outputs"];
    CHECK(r.json["command"] == "classify");
    CHECK(r.json["deterministic"] == true);
    CHECK(o["genus"] == 2);
    CHECK(o["transverse_exists"] == true);
    CHECK(o["tangent_degree"] == 4);
    CHECK(o["enrollment_spectrum"] == Json::array({1, 2}));
    CHECK(o["conjugacy_classes"] == 2);
    CHECK(o["whitney_class"]["class"] == Json::array({"-4", "-4"}));
    for (const char* key : {"transverse_exists", "flat_exists", "confoliation_ok", "tangent_degree",
                            "enrollment_spectrum", "conjugacy_classes", "vot_bound", "boundary_slope",
                            "whitney_class"})
        CHECK(o.contains(key));

    auto torus = call({"classify", "--chi-s", "0", "--euler", "0"});
    CHECK(torus.json["outputs"]["enrollment_spectrum"] == "all n >= 1");

    auto sphere = call({"classify", "--chi-s", "2", "--euler", "-1"});
    CHECK(sphere.json["outputs"]["route"] == "sphere");
    CHECK(sphere.json["outputs"]["sphere_enrollment"] == "-2");

    CHECK(call({"classify", "--chi-s", "3", "--euler", "0"}).code == 2);
    CHECK(call({"classify", "--chi-s", "-2"}).code == 2);
}

TEST_CASE("holonomy") {
    auto r = call({"holonomy", "--genus", "2", "--area", "4*pi", "--iters", "100000"});
    REQUIRE(r.code == 0);
    CHECK(std::abs(r.json["outputs"]["abs_rotation_number"].get<double>() - 2) <= 1e-5 + 1e-6);
    auto tiny = call({"holonomy", "--genus", "2", "--area", "1e-6", "--iters", "1000"});
    REQUIRE(tiny.code == 0);
    CHECK(tiny.json["outputs"]["abs_rotation_number"].get<double>() <= 1e-3);
    auto out = call({"holonomy", "--genus", "2", "--area", "6*pi"});
    CHECK(out.code == 2);
    CHECK(out.json["error"]["kind"] == "AreaOutOfRange");
}

TEST_CASE("polygon") {
    auto r = call({"polygon", "--genus", "1", "--area", "pi/2"});
    REQUIRE(r.code == 0);
    CHECK(r.json["outputs"]["vertices"].size() == 4);
    CHECK(r.json["outputs"]["side_pairings"].size() == 2);
}

TEST_CASE("forms") {
    auto lib = call({"forms", "--library"});
    REQUIRE(lib.code == 0);
    CHECK(lib.json["outputs"]["all_match"] == true);
    for (const auto& e : lib.json["outputs"]["results"])
        if (e.contains("sign")) CHECK(e["sign"] != "Mixed");

    auto file = call({"forms", "--form-file", data("zeta.form"), "--grid", "32"});
    REQUIRE(file.code == 0);
    CHECK(file.json["outputs"]["results"][0]["sign"] == "Positive");

    CHECK(call({"forms", "--form-file", data("wrong_expectation.form"), "--grid", "16"}).code == 1);
    auto broken = call({"forms", "--form-file", data("broken.form")});
    CHECK(broken.code == 1);
    CHECK(broken.json["error"]["kind"] == "SyntaxError");
    CHECK(call({"forms", "--form-file", data("missing.form")}).code == 2);
}

TEST_CASE("multicurve") {
    auto same = call({"multicurve", "--file", data("torus_two_annuli.txt"), "--compare",
                      data("torus_two_annuli_relabeled.txt")});
    REQUIRE(same.code == 0);
    CHECK(same.json["outputs"]["equal"] == true);
    auto diff = call({"multicurve", "--file", data("torus_two_annuli.txt"), "--compare",
                      data("torus_four_annuli.txt")});
    CHECK(diff.json["outputs"]["equal"] == false);
    auto s = call({"multicurve", "--file", data("sphere_two_disks.txt"), "--euler", "0"});
    CHECK(s.json["outputs"]["universal_tightness"] == "UniversallyTight");
    CHECK(call({"multicurve", "--file", data("genus2_bad_euler.txt")}).code == 1);
}

TEST_CASE("covers") {
    auto r = call({"covers", "--genus", "2", "--n", "6"});
    REQUIRE(r.code == 0);
    CHECK(r.json["outputs"]["orbit_count"] == 4);
    CHECK(r.json["outputs"]["agrees"] == true);
    CHECK(call({"covers", "--genus", "3", "--n", "2"}).code == 2);
}

TEST_CASE("usage errors and determinism") {
    CHECK(call({}).code == 2);
    CHECK(call({"nonsense"}).code == 2);
    CHECK(call({"classify", "--chi-s", "x", "--euler", "0"}).code == 2);
    auto a = call({"holonomy", "--genus", "2", "--area", "pi", "--iters", "5000"});
    auto b = call({"holonomy", "--genus", "2", "--area", "pi", "--iters", "5000"});
    CHECK(a.text == b.text);
}
