#ifndef PIVCAT_RATIONAL_HPP
#define PIVCAT_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>
#include <stdexcept>
#include <string>

namespace pivcat {

/// Exact rational scalar used throughout the library.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Parses "p", "-p" or "p/q" into an exact rational.
inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(BigInt(s));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rat(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("invalid rational literal: '" + s + "'");
    }
}

/// Formats a rational as "p" or "p/q" in lowest terms.
inline std::string format_rat(const Rat& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << '/' << denominator(r);
    return os.str();
}

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

}  // namespace pivcat

#endif
