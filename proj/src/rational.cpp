#include "fibrecontact/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace fibrecontact {

Rational make_rational(long p, long q) {
    if (q == 0) throw std::domain_error("rational with zero denominator");
    Rational r(p, q);
    r.canonicalize();
    return r;
}

namespace {

mpz_class pow10(unsigned long k) {
    mpz_class z;
    mpz_ui_pow_ui(z.get_mpz_t(), 10, k);
    return z;
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    auto bad = [&] { return std::invalid_argument("not a rational literal: '" + std::string(text) + "'"); };

    Rational value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) throw bad();
        mpz_class n{std::string(num), 10}, d{std::string(den), 10};
        if (d == 0) throw std::invalid_argument("rational with zero denominator");
        value = Rational(n, d);
    } else {
        std::string_view mantissa = s;
        long exponent = 0;
        if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
            mantissa = s.substr(0, e);
            auto exp_text = s.substr(e + 1);
            bool exp_negative = false;
            if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
                exp_negative = exp_text.front() == '-';
                exp_text.remove_prefix(1);
            }
            if (!all_digits(exp_text) || exp_text.size() > 6) throw bad();
            exponent = std::stol(std::string(exp_text));
            if (exp_negative) exponent = -exponent;
        }
        auto dot = mantissa.find('.');
        std::string digits;
        long scale = 0;
        if (dot == std::string_view::npos) {
            digits = std::string(mantissa);
        } else {
            auto whole = mantissa.substr(0, dot), part = mantissa.substr(dot + 1);
            if (whole.empty() && part.empty()) throw bad();
            digits = std::string(whole) + std::string(part);
            scale = static_cast<long>(part.size());
        }
        if (!all_digits(digits)) throw bad();
        long shift = exponent - scale;
        mpz_class n(digits, 10);
        if (shift >= 0)
            value = Rational(n * pow10(static_cast<unsigned long>(shift)), 1);
        else
            value = Rational(n, pow10(static_cast<unsigned long>(-shift)));
    }
    value.canonicalize();
    return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

double to_double(const Rational& r) { return r.get_d(); }

mpz_class floor_of(const Rational& r) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

Rational frac(const Rational& r) { return r - Rational(floor_of(r)); }

std::size_t bit_size(const Rational& r) {
    return mpz_sizeinbase(r.get_num_mpz_t(), 2) + mpz_sizeinbase(r.get_den_mpz_t(), 2);
}

}  // namespace fibrecontact
