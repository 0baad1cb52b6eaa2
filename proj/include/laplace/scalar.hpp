#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace laplace {

/// Exact rational, always in lowest terms with positive denominator.
using Scalar = mpq_class;
using Integer = mpz_class;

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Scalar& s);

/// Parses "p" or "p/q" (optional leading '-'); throws DomainError on bad input
/// or zero denominator.
Scalar parse_scalar(std::string_view text);

Integer binomial(unsigned n, unsigned k);
Integer factorial(unsigned n);

} // namespace laplace
