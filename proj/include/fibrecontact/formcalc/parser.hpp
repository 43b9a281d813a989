#pragma once

#include "fibrecontact/formcalc/forms.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fibrecontact::formcalc {

using Params = std::map<std::string, Rational, std::less<>>;

/// Parses an expression over `names`. Parameters are substituted as constants.
Expr parse_expr(std::string_view text, std::span<const std::string> names, const Params& params = {});

/// Parses `term (('+'|'-') term)*` with terms `coeff '*' dNAME` or `dNAME`.
OneForm parse_form(std::string_view text, const Chart& chart, const Params& params = {});

/// A chart header, a form and an optional expected sign, e.g.
///   chart x:[-2,2] y:[-2,2] z:[-2,2]; periodic z; exclude x<1e-3; param n=2;
///   form dz - y*dx; expect positive;
struct FormDocument {
    Chart chart;
    Params params;
    OneForm form;
    std::optional<ContactSign> expected;
};

FormDocument parse_form_document(std::string_view text);

/// Parses only the `chart`, `periodic`, `exclude` and `param` statements.
Chart parse_chart_header(std::string_view text, Params* params = nullptr);

}  // namespace fibrecontact::formcalc
