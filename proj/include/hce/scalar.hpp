/**
 * Exact scalar types shared by every module: arbitrary-precision rationals
 * and integers (GMP-backed), plus the dense Eigen matrix aliases built on
 * them.  All arithmetic in this project is exact; no floating point.
 */

#ifndef HCE_SCALAR_HPP
#define HCE_SCALAR_HPP

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace hce {

using Rational = boost::multiprecision::mpq_rational;
using Integer  = boost::multiprecision::mpz_int;
using Index    = Eigen::Index;

using QMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using QVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using IMatrix = Eigen::Matrix<Integer, Eigen::Dynamic, Eigen::Dynamic>;
using IVector = Eigen::Matrix<Integer, Eigen::Dynamic, 1>;

/** Raised when an input document cannot be read or decoded. */
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** Raised when a parsed value violates a domain invariant. */
struct InvariantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/**
 * Parse an exact rational from "p/q" or "p" notation.
 *
 * @param text Decimal integer numerator, optionally followed by '/' and a
 *             nonzero decimal denominator.  Whitespace is not accepted.
 * @returns The rational in lowest terms with positive denominator.
 */
Rational parseRational(const std::string& text);

/** Render a rational as "p/q", or "p" when the denominator is 1. */
std::string formatRational(const Rational& value);

inline Integer numerator(const Rational& q)   { return Integer(boost::multiprecision::numerator(q)); }
inline Integer denominator(const Rational& q) { return Integer(boost::multiprecision::denominator(q)); }

}  // namespace hce

#endif  // HCE_SCALAR_HPP
