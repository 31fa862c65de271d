#include "mld1/io.hpp"

#include <sstream>

#include "mld1/errors.hpp"

namespace mld1 {
namespace {

// Lines with comments stripped, blank lines dropped.
std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream probe(line);
    std::string tok;
    if (probe >> tok) lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> tokens_of(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) toks.push_back(tok);
  return toks;
}

int parse_exponent(const std::string& tok, const std::string& what) {
  auto value = parse_long(tok);
  if (!value || *value < 0) {
    throw InputError("bad " + what + " '" + tok + "'");
  }
  return static_cast<int>(*value);
}

std::string affine_coefficient(const Rat& constant, const Rat& slope) {
  if (slope == 0) return to_string(constant);
  std::string c_part = slope == 1 ? "c" : slope == -1 ? "-c"
                                        : to_string(slope) + "c";
  if (constant == 0) return c_part;
  if (slope > 0) return to_string(constant) + "+" + c_part;
  return to_string(constant) + c_part;
}

}  // namespace

ModelText parse_model_text(const std::string& text) {
  std::vector<std::string> lines = data_lines(text);
  if (lines.empty()) throw InputError("empty model text");

  std::vector<std::string> head = tokens_of(lines[0]);
  if (head.size() != 2) {
    throw InputError("expected the header line 'n d'");
  }
  ModelText mt;
  mt.n = parse_exponent(head[0], "state count n");
  mt.d = parse_exponent(head[1], "degree d");

  if (static_cast<int>(lines.size()) != mt.n + 2) {
    throw InputError("expected " + std::to_string(mt.n + 1) +
                     " entry lines after the header, got " +
                     std::to_string(lines.size() - 1));
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::vector<std::string> toks = tokens_of(lines[i]);
    if (toks.size() != 3) {
      throw InputError("expected 'nu mu coefficient', got '" + lines[i] + "'");
    }
    Entry e;
    e.p.nu = parse_exponent(toks[0], "exponent");
    e.p.mu = parse_exponent(toks[1], "exponent");
    auto c = parse_rational(toks[2]);
    if (!c) throw InputError("bad coefficient '" + toks[2] + "'");
    e.c = *c;
    mt.entries.push_back(std::move(e));
  }
  return mt;
}

Model parse_model(const std::string& text) {
  ModelText mt = parse_model_text(text);
  Model m = Model::from_entries(std::move(mt.entries));
  if (m.degree() != mt.d) {
    throw ContractError("header says degree " + std::to_string(mt.d) +
                        " but the entries have degree " +
                        std::to_string(m.degree()));
  }
  return m;
}

std::string format_model(const Model& m) {
  std::ostringstream out;
  out << m.n() << ' ' << m.degree() << '\n';
  for (const Entry& e : m.entries()) {
    out << e.p.nu << ' ' << e.p.mu << ' ' << to_string(e.c) << '\n';
  }
  return out.str();
}

std::vector<Pair> parse_support(const std::string& text) {
  std::vector<Pair> support;
  std::istringstream in(text);
  std::string chunk;
  while (std::getline(in, chunk, ';')) {
    auto comma = chunk.find(',');
    if (comma == std::string::npos) {
      throw InputError("expected 'nu,mu' pairs separated by ';', got '" +
                       chunk + "'");
    }
    auto nu = parse_long(chunk.substr(0, comma));
    auto mu = parse_long(chunk.substr(comma + 1));
    if (!nu || !mu || *nu < 0 || *mu < 0) {
      throw InputError("bad support point '" + chunk + "'");
    }
    support.push_back({static_cast<int>(*nu), static_cast<int>(*mu)});
  }
  if (support.empty()) throw InputError("empty support");
  return support;
}

std::vector<Rat> parse_counts(const std::string& text) {
  std::vector<Rat> counts;
  std::istringstream in(text);
  std::string chunk;
  while (std::getline(in, chunk, ',')) {
    auto c = parse_rational(chunk);
    if (!c) throw InputError("bad count '" + chunk + "'");
    counts.push_back(*c);
  }
  if (counts.empty()) throw InputError("empty counts");
  return counts;
}

std::string format_catalog(const Catalog& cat) {
  std::ostringstream out;
  out << "# n=" << cat.n << " d=" << cat.d << ": " << cat.count
      << " models, " << cat.swap_classes << " swap classes\n";
  for (std::size_t i = 0; i < cat.models.size(); ++i) {
    if (i > 0) out << "---\n";
    out << format_model(cat.models[i]);
  }
  return out.str();
}

std::string format_family(const Family& fam) {
  std::ostringstream out;
  out << "# n=" << fam.n() << " d=" << fam.degree()
      << ", one parameter 0 < c < 1\n";
  for (const Family::Term& t : fam.terms()) {
    out << t.p.nu << ' ' << t.p.mu << ' '
        << affine_coefficient(t.constant, t.slope) << '\n';
  }
  return out.str();
}

std::string format_table(const TableCheck& check) {
  const auto& reference = reference_counts();
  std::ostringstream out;
  bool all_pass = true;
  for (int n = 1; n <= check.max_n; ++n) {
    for (int d = n; d <= 2 * n - 1; ++d) {
      std::uint64_t got = check.counts[n - 1][d - n];
      std::uint64_t want = reference[n - 1][d - n];
      bool pass = got == want;
      all_pass = all_pass && pass;
      out << "n=" << n << " d=" << d << ": " << got << " (reference " << want
          << ") " << (pass ? "PASS" : "FAIL") << '\n';
    }
  }
  if (!check.detail.empty()) {
    out << check.detail << '\n';
  } else if (all_pass && check.ok) {
    out << "all cells match\n";
  }
  return out.str();
}

std::string format_recursive(const RecursiveCheck& check) {
  std::ostringstream out;
  out << "n=" << check.n << ": sharp counts";
  for (std::size_t k = 0; k < check.sharp_counts.size(); ++k) {
    out << (k == 0 ? " a1=" : " a" + std::to_string(k + 1) + "=")
        << check.sharp_counts[k];
  }
  out << '\n';
  out << "bound " << check.bound << ", actual " << check.actual
      << ", equality: " << (check.equality ? "yes" : "no") << '\n';
  if (!check.ok) out << "bound violated: " << check.detail << '\n';
  return out.str();
}

}  // namespace mld1
