#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace fibrecontact {

using Rational = mpq_class;

/// Base of every error the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Builds p/q in canonical form. Throws std::domain_error on q == 0.
Rational make_rational(long p, long q = 1);

/// Parses "p", "p/q", or a decimal literal such as "-0.05" or "1e-3" exactly.
Rational parse_rational(std::string_view text);

/// "p" when the denominator is 1, otherwise "p/q".
std::string to_string(const Rational& r);

double to_double(const Rational& r);

/// Largest integer not exceeding r.
mpz_class floor_of(const Rational& r);

/// r - floor(r), in [0, 1).
Rational frac(const Rational& r);

/// Total bit length of numerator and denominator.
std::size_t bit_size(const Rational& r);

}  // namespace fibrecontact
