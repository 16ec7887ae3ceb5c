#ifndef NETCUT_RATIONAL_H_
#define NETCUT_RATIONAL_H_

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace netcut {

using Rational = mpq_class;

// "p/q" or "p" in lowest terms.
std::string to_string(const Rational& r);

// Accepts integers, "p/q" and finite decimals such as "-2.75" or "1e-3".
Rational parse_rational(std::string_view text);

// Exact binary value of a finite double.
Rational rational_from_double(double v);

inline double to_double(const Rational& r) { return r.get_d(); }

}  // namespace netcut

#endif  // NETCUT_RATIONAL_H_
