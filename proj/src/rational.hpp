#ifndef CLICKSTATE_RATIONAL_HPP
#define CLICKSTATE_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>

namespace clickstate {

// All counts are arbitrary-precision integers and all ratios exact
// rationals; nothing in the core ever rounds through floating point.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Raised when an input violates a documented invariant or precondition.
/// The message names the violated invariant; the CLI forwards it verbatim.
class invariant_violation : public std::runtime_error {
public:
    explicit invariant_violation(const std::string& what) : std::runtime_error(what) {}
};

inline Integer num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer den(const Rational& r) { return boost::multiprecision::denominator(r); }

/// Floor of a rational (denominator is always positive in cpp_rational).
inline Integer rational_floor(const Rational& r) {
    Integer q = num(r) / den(r);
    if (num(r) < 0 && q * den(r) != num(r)) --q;
    return q;
}

/// Round half up: floor(r + 1/2).
inline Integer round_half_up(const Rational& r) { return rational_floor(r + Rational(1, 2)); }

inline bool is_integer(const Rational& r) { return den(r) == 1; }

/// Renders in lowest terms, "p/q" or plain "p" when q == 1.
std::string to_string(const Rational& r);

/// Parses "p", "p/q", or decimal "0.25" into an exact rational.
Rational parse_rational(const std::string& text);

double to_double(const Rational& r);

/// Nearest rational to x with denominator exactly `bound` (bound >= 1).
Rational nearest_rational(double x, const Integer& bound);

} // namespace clickstate

#endif
