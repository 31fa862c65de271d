#include "mld1/rational.hpp"

#include <cctype>
#include <charconv>

namespace mld1 {
namespace {

bool is_integer_token(std::string_view s) {
  if (!s.empty() && s.front() == '-') s.remove_prefix(1);
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

}  // namespace

std::string to_string(const Rat& q) { return q.get_str(); }

std::string to_string(const Int& z) { return z.get_str(); }

std::optional<Rat> parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  if (!is_integer_token(num)) return std::nullopt;
  if (slash == std::string_view::npos) {
    return Rat(Int(std::string(num)));
  }
  std::string_view den = text.substr(slash + 1);
  if (!is_integer_token(den) || den.front() == '-') return std::nullopt;
  Int d{std::string(den)};
  if (d == 0) return std::nullopt;
  Rat q{Int{std::string(num)}, d};
  q.canonicalize();
  return q;
}

std::optional<long> parse_long(std::string_view text) {
  long value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) return std::nullopt;
  return value;
}

Int binomial(unsigned long n, unsigned long k) {
  Int result;
  if (k > n) return 0;
  mpz_bin_uiui(result.get_mpz_t(), n, k);
  return result;
}

}  // namespace mld1
