#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace mld1 {

using Int = mpz_class;
using Rat = mpq_class;

// "p/q" in lowest terms with positive denominator; "p" when q == 1.
std::string to_string(const Rat& q);
std::string to_string(const Int& z);

// Accepts an optionally negated integer or integer/integer pair, e.g. "7",
// "-3", "7/2". Rejects anything else, including a zero denominator.
// The result is in lowest terms.
std::optional<Rat> parse_rational(std::string_view text);
std::optional<long> parse_long(std::string_view text);

Int binomial(unsigned long n, unsigned long k);

}  // namespace mld1
