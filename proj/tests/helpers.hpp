#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include "mld1/rational.hpp"

inline std::string read_fixture(const std::string& name) {
  std::string path = std::string(MLD1_FIXTURES_DIR) + "/" + name;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("missing fixture " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Deterministic generator so property tests fail reproducibly.
inline std::mt19937& test_rng() {
  static std::mt19937 rng(20240719);
  return rng;
}

// mpq_class(a, b) skips canonicalization and comparisons then misbehave,
// so random fractions must go through here.
inline mld1::Rat frac(long num, long den) {
  mld1::Rat r(num, den);
  r.canonicalize();
  return r;
}
