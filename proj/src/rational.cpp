#include "rational.hpp"

#include <cmath>
#include <sstream>

namespace clickstate {

std::string to_string(const Rational& r) {
    std::ostringstream out;
    out << num(r);
    if (den(r) != 1) out << '/' << den(r);
    return out.str();
}

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw invariant_violation("empty rational literal");
    auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            Integer n(text.substr(0, slash));
            Integer d(text.substr(slash + 1));
            if (d == 0) throw invariant_violation("rational with zero denominator: " + text);
            return Rational(n, d);
        }
        auto dot = text.find('.');
        if (dot != std::string::npos) {
            std::string digits = text.substr(0, dot) + text.substr(dot + 1);
            std::size_t frac_len = text.size() - dot - 1;
            if (frac_len == 0 || digits.empty()) throw invariant_violation("malformed decimal: " + text);
            Integer n(digits);
            Integer d = 1;
            for (std::size_t i = 0; i < frac_len; ++i) d *= 10;
            return Rational(n, d);
        }
        return Rational(Integer(text));
    } catch (const std::runtime_error&) {
        throw invariant_violation("malformed rational literal: " + text);
    }
}

double to_double(const Rational& r) { return static_cast<double>(r); }

Rational nearest_rational(double x, const Integer& bound) {
    if (bound < 1) throw invariant_violation("denominator bound must be >= 1");
    if (!std::isfinite(x)) throw invariant_violation("cannot rationalize a non-finite value");
    double scaled = x * static_cast<double>(bound);
    Integer n(static_cast<long long>(std::llround(scaled)));
    return Rational(n, bound);
}

} // namespace clickstate
