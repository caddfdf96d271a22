#ifndef MHV_RATIONAL_HPP
#define MHV_RATIONAL_HPP

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace mhv {

/// Exact rational scalar. GMP keeps every value canonical (positive
/// denominator, reduced), so equality is structural.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

/// Parses "p", "-p" or "p/q" (q > 0). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

/// Always "p/q", including "0/1" and "3/1"; used by the JSON encodings.
std::string to_pq_string(const Rational& q);

inline bool is_zero(const Rational& q) { return q.is_zero(); }

}  // namespace mhv

#endif  // MHV_RATIONAL_HPP
