#include "fibrecontact/formcalc/parser.hpp"

#include <algorithm>
#include <cctype>

namespace fibrecontact::formcalc {

namespace {

enum class Tok { Number, Ident, Symbol, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t offset;
};

Rational number_value(const Token& t) {
    try {
        return parse_rational(t.text);
    } catch (const std::exception& e) {
        throw SyntaxError(e.what(), t.offset);
    }
}

bool is_reserved(std::string_view s) { return s == "pi" || s == "sin" || s == "cos" || s == "exp"; }

std::vector<Token> lex(std::string_view text, std::size_t base) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto digit = [&](std::size_t k) { return k < text.size() && std::isdigit(static_cast<unsigned char>(text[k])); };
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (digit(i) || (c == '.' && digit(i + 1))) {
            while (digit(i)) ++i;
            if (i < text.size() && text[i] == '.') {
                ++i;
                while (digit(i)) ++i;
            }
            if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
                std::size_t k = i + 1;
                if (k < text.size() && (text[k] == '+' || text[k] == '-')) ++k;
                if (digit(k)) {
                    i = k;
                    while (digit(i)) ++i;
                }
            }
            out.push_back({Tok::Number, std::string(text.substr(start, i - start)), base + start});
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
            out.push_back({Tok::Ident, std::string(text.substr(start, i - start)), base + start});
        } else if (std::string_view("+-*/^()[],:<=").find(c) != std::string_view::npos) {
            out.push_back({Tok::Symbol, std::string(1, c), base + start});
            ++i;
        } else {
            throw SyntaxError(std::string("unexpected character '") + c + "'", base + start);
        }
    }
    out.push_back({Tok::End, "", base + text.size()});
    return out;
}

class Parser {
public:
    Parser(std::string_view text, std::size_t base, std::span<const std::string> names, const Params& params)
        : toks_(lex(text, base)), names_(names), params_(params) {}

    const Token& peek() const { return toks_[pos_]; }
    bool at_symbol(char c) const { return peek().kind == Tok::Symbol && peek().text[0] == c; }
    bool at_end() const { return peek().kind == Tok::End; }
    const Token& take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    void expect(char c) {
        if (!at_symbol(c)) throw SyntaxError(std::string("expected '") + c + "'", peek().offset);
        take();
    }
    void expect_end() {
        if (!at_end()) throw SyntaxError("unexpected '" + peek().text + "'", peek().offset);
    }

    std::optional<std::size_t> var_index(std::string_view name) const {
        auto it = std::find(names_.begin(), names_.end(), name);
        if (it == names_.end()) return std::nullopt;
        return static_cast<std::size_t>(it - names_.begin());
    }

    // Index of the coordinate whose differential the identifier denotes.
    std::optional<std::size_t> basis_index(const Token& t) const {
        if (t.kind != Tok::Ident || t.text.size() < 2 || t.text[0] != 'd') return std::nullopt;
        if (var_index(t.text) || params_.count(t.text) || is_reserved(t.text)) return std::nullopt;
        return var_index(std::string_view(t.text).substr(1));
    }

    Expr expr() {
        Expr e = term();
        while (at_symbol('+') || at_symbol('-')) {
            bool minus = take().text[0] == '-';
            Expr r = term();
            e = minus ? Expr::add(e, negate(r)) : Expr::add(e, r);
        }
        return e;
    }

    Expr term() {
        Expr e = unary();
        while (at_symbol('*') || at_symbol('/')) {
            bool div = take().text[0] == '/';
            Expr r = unary();
            e = div ? divide(e, r) : Expr::mul(e, r);
        }
        return e;
    }

    Expr unary() {
        if (at_symbol('-')) {
            take();
            return negate(unary());
        }
        return power();
    }

    Expr power() {
        Expr base = primary();
        if (!at_symbol('^')) return base;
        take();
        bool neg = false;
        if (at_symbol('-')) {
            take();
            neg = true;
        }
        const Token& t = take();
        Rational k;
        if (t.kind == Tok::Number) {
            k = number_value(t);
        } else if (t.kind == Tok::Ident && params_.count(t.text)) {
            k = params_.find(t.text)->second;
        } else {
            throw SyntaxError("expected an integer exponent", t.offset);
        }
        if (k.get_den() != 1 || !k.get_num().fits_slong_p())
            throw SyntaxError("exponent must be an integer", t.offset);
        long n = k.get_num().get_si();
        return Expr::pow(base, neg ? -n : n);
    }

    Expr primary() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Number:
                take();
                return Expr::constant(number_value(t));
            case Tok::Ident: {
                take();
                if (auto i = var_index(t.text)) return Expr::var(*i);
                if (auto it = params_.find(t.text); it != params_.end()) return Expr::constant(it->second);
                if (t.text == "pi") return Expr::pi();
                if (t.text == "sin" || t.text == "cos" || t.text == "exp") {
                    expect('(');
                    Expr a = expr();
                    expect(')');
                    if (t.text == "sin") return Expr::sin(a);
                    if (t.text == "cos") return Expr::cos(a);
                    return Expr::exp(a);
                }
                if (basis_index(t)) throw SyntaxError("differential '" + t.text + "' inside a coefficient", t.offset);
                throw UnknownVariable(t.text, t.offset);
            }
            case Tok::Symbol:
                if (t.text[0] == '(') {
                    take();
                    Expr e = expr();
                    expect(')');
                    return e;
                }
                throw SyntaxError("unexpected '" + t.text + "'", t.offset);
            case Tok::End: break;
        }
        throw SyntaxError("unexpected end of input", t.offset);
    }

    // form := ['-'] fterm (('+'|'-') fterm)*
    std::vector<Expr> form(std::size_t dim) {
        std::vector<Expr> coeffs(dim, Expr::constant(0));
        std::vector<bool> seen(dim, false);
        bool minus = false;
        if (at_symbol('-')) {
            take();
            minus = true;
        }
        for (;;) {
            auto [c, i] = form_term();
            if (minus) c = negate(c);
            coeffs[i] = seen[i] ? Expr::add(coeffs[i], c) : c;
            seen[i] = true;
            if (at_symbol('+') || at_symbol('-')) {
                minus = take().text[0] == '-';
                continue;
            }
            if (at_end()) break;
            throw SyntaxError("the differential must be the last factor of a term", peek().offset);
        }
        return coeffs;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::span<const std::string> names_;
    const Params& params_;

    static Expr negate(const Expr& e) { return e.is_const() ? Expr::constant(-e.value()) : Expr::neg(e); }
    static Expr divide(const Expr& a, const Expr& b) {
        if (a.is_const() && b.is_const() && b.value() != 0) return Expr::constant(a.value() / b.value());
        return Expr::div(a, b);
    }

    std::pair<Expr, std::size_t> form_term() {
        std::size_t start = peek().offset;
        std::optional<Expr> coeff;
        for (;;) {
            if (auto i = basis_index(peek())) {
                take();
                return {coeff ? *coeff : Expr::constant(1), *i};
            }
            Expr f = power();
            coeff = coeff ? Expr::mul(*coeff, f) : f;
            while (at_symbol('/')) {
                take();
                coeff = divide(*coeff, power());
            }
            if (at_symbol('*')) {
                take();
                continue;
            }
            throw SyntaxError("term without a differential", start);
        }
    }
};

// Splits on ';' keeping each statement's offset in the full text.
std::vector<std::pair<std::string_view, std::size_t>> statements(std::string_view text) {
    std::vector<std::pair<std::string_view, std::size_t>> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == ';' || text[i] == '\n') {
            auto s = text.substr(start, i - start);
            std::size_t lead = 0;
            while (lead < s.size() && std::isspace(static_cast<unsigned char>(s[lead]))) ++lead;
            s.remove_prefix(lead);
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
            if (!s.empty() && s[0] != '#') out.emplace_back(s, start + lead);
            start = i + 1;
        }
    }
    return out;
}

std::pair<std::string_view, std::string_view> keyword(std::string_view stmt) {
    std::size_t i = 0;
    while (i < stmt.size() && !std::isspace(static_cast<unsigned char>(stmt[i]))) ++i;
    auto rest = stmt.substr(i);
    while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest[0]))) rest.remove_prefix(1);
    return {stmt.substr(0, i), rest};
}

double constant_value(Parser& p) {
    Expr e = p.expr();
    if (e.arity() != 0) throw InvalidChart("chart bounds must be constant");
    return e.eval({});
}

struct HeaderState {
    Chart chart;
    Params params;
    bool have_chart = false;
};

// Returns false when the statement is not a header statement.
bool header_statement(std::string_view kw, std::string_view rest, std::size_t offset, HeaderState& st) {
    std::size_t rest_offset = offset + (rest.data() - kw.data());
    if (kw == "chart") {
        if (st.have_chart) throw SyntaxError("duplicate chart declaration", offset);
        static const std::vector<std::string> none;
        Parser p(rest, rest_offset, none, st.params);
        Chart c;
        while (!p.at_end()) {
            const Token& name = p.take();
            if (name.kind != Tok::Ident) throw SyntaxError("expected a coordinate name", name.offset);
            p.expect(':');
            p.expect('[');
            double lo = constant_value(p);
            p.expect(',');
            double hi = constant_value(p);
            p.expect(']');
            c.names.push_back(name.text);
            c.ranges.emplace_back(lo, hi);
            c.periodic.push_back(false);
        }
        st.chart = std::move(c);
        st.have_chart = true;
        return true;
    }
    if (kw == "periodic") {
        if (!st.have_chart) throw SyntaxError("'periodic' before 'chart'", offset);
        Parser p(rest, rest_offset, {}, st.params);
        while (!p.at_end()) {
            const Token& t = p.take();
            auto i = st.chart.index_of(t.text);
            if (t.kind != Tok::Ident || !i) throw UnknownVariable(t.text, t.offset);
            st.chart.periodic[*i] = true;
            if (p.at_symbol(',')) p.take();
        }
        return true;
    }
    if (kw == "exclude") {
        if (!st.have_chart) throw SyntaxError("'exclude' before 'chart'", offset);
        Parser p(rest, rest_offset, st.chart.names, st.params);
        Exclusion ex;
        ex.expr = p.expr();
        p.expect('<');
        ex.eps = constant_value(p);
        p.expect_end();
        st.chart.exclusions.push_back(std::move(ex));
        return true;
    }
    if (kw == "param") {
        Parser p(rest, rest_offset, {}, st.params);
        const Token& name = p.take();
        if (name.kind != Tok::Ident || is_reserved(name.text)) throw SyntaxError("expected a parameter name", name.offset);
        p.expect('=');
        Expr v = p.expr();
        p.expect_end();
        if (!v.is_const()) throw SyntaxError("parameter values must be rational", name.offset);
        st.params[name.text] = v.value();
        return true;
    }
    return false;
}

}  // namespace

Expr parse_expr(std::string_view text, std::span<const std::string> names, const Params& params) {
    Parser p(text, 0, names, params);
    Expr e = p.expr();
    p.expect_end();
    return e;
}

OneForm parse_form(std::string_view text, const Chart& chart, const Params& params) {
    chart.validate();
    Parser p(text, 0, chart.names, params);
    OneForm out{chart, p.form(chart.dim())};
    return out;
}

Chart parse_chart_header(std::string_view text, Params* params) {
    HeaderState st;
    for (auto [stmt, offset] : statements(text)) {
        auto [kw, rest] = keyword(stmt);
        if (!header_statement(kw, rest, offset, st) && kw != "form" && kw != "expect")
            throw SyntaxError("unknown statement '" + std::string(kw) + "'", offset);
    }
    if (!st.have_chart) throw SyntaxError("missing chart declaration", 0);
    st.chart.validate();
    if (params) *params = st.params;
    return st.chart;
}

FormDocument parse_form_document(std::string_view text) {
    HeaderState st;
    std::optional<std::pair<std::string_view, std::size_t>> form_text;
    std::optional<ContactSign> expected;
    for (auto [stmt, offset] : statements(text)) {
        auto [kw, rest] = keyword(stmt);
        if (header_statement(kw, rest, offset, st)) continue;
        if (kw == "form") {
            if (form_text) throw SyntaxError("duplicate form statement", offset);
            form_text.emplace(rest, offset + (rest.data() - stmt.data()));
        } else if (kw == "expect") {
            try {
                expected = parse_contact_sign(rest);
            } catch (const Error&) {
                throw SyntaxError("expected positive, negative or mixed", offset);
            }
        } else {
            throw SyntaxError("unknown statement '" + std::string(kw) + "'", offset);
        }
    }
    if (!st.have_chart) throw SyntaxError("missing chart declaration", 0);
    if (!form_text) throw SyntaxError("missing form statement", text.size());
    st.chart.validate();
    Parser p(form_text->first, form_text->second, st.chart.names, st.params);
    FormDocument doc;
    doc.form = OneForm{st.chart, p.form(st.chart.dim())};
    doc.chart = st.chart;
    doc.params = st.params;
    doc.expected = expected;
    return doc;
}

}  // namespace fibrecontact::formcalc
