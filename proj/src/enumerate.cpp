#include "mld1/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <thread>
#include <utility>

#include "mld1/diagram.hpp"
#include "mld1/errors.hpp"
#include "mld1/io.hpp"
#include "mld1/linsolve.hpp"

namespace mld1 {
namespace {

// Non-origin lattice points with grade <= d in canonical order.
std::vector<Pair> lattice_points(int d) {
  std::vector<Pair> pts;
  for (int g = 1; g <= d; ++g) {
    for (int mu = 0; mu <= g; ++mu) pts.push_back({g - mu, mu});
  }
  return pts;
}

// One row of the shared column-space echelon. Rows are immutable once
// built, so branches share them and descending copies only the pointer
// list.
struct EchelonRow {
  int pivot;
  std::vector<Int> v;
};
using RowPtr = std::shared_ptr<const EchelonRow>;

// The expansion-matrix column of p, length rows.
std::vector<Int> column_of(Pair p, int rows) {
  std::vector<Int> col(rows);
  for (int k = 0; k <= p.mu; ++k) {
    Int c = binomial(p.mu, k);
    col[p.nu + k] = (k % 2 == 0) ? c : -c;
  }
  return col;
}

// Fraction-free reduction of col against the echelon; empty result means
// the column is dependent on what is already there.
std::optional<EchelonRow> reduce_column(const std::vector<RowPtr>& rows,
                                        std::vector<Int> col) {
  for (const RowPtr& row : rows) {
    const Int& lead = row->v[row->pivot];
    Int hit = col[row->pivot];
    if (hit == 0) continue;
    for (std::size_t j = 0; j < col.size(); ++j) {
      col[j] = lead * col[j] - hit * row->v[j];
    }
  }
  int pivot = -1;
  Int content = 0;
  for (std::size_t j = 0; j < col.size(); ++j) {
    if (col[j] != 0) {
      if (pivot < 0) pivot = static_cast<int>(j);
      content = gcd(content, col[j]);
    }
  }
  if (pivot < 0) return std::nullopt;
  if (col[pivot] < 0) content = -content;
  for (Int& x : col) x /= content;
  return EchelonRow{pivot, std::move(col)};
}

struct SlotResult {
  std::uint64_t count = 0;
  std::uint64_t swap_classes = 0;
  std::vector<Model> models;
};

struct CellSearch {
  int n;
  int d;
  bool collect;
  Prunes prunes;
  bool sharp_cell;  // prunes.sharp applies: d = 2n-1
  std::vector<Pair> pts;
  // Per-index suffix availability, so a branch knows whether the points
  // still ahead can supply a grade-d point or an axis anchor.
  std::vector<bool> suffix_top;
  std::vector<bool> suffix_nu0;
  std::vector<bool> suffix_mu0;
  std::atomic<std::uint64_t>* nodes;
  std::uint64_t budget;

  void tick() const {
    if (nodes->fetch_add(1, std::memory_order_relaxed) + 1 > budget) {
      throw BudgetError("node budget exhausted at n=" + std::to_string(n) +
                        " d=" + std::to_string(d));
    }
  }

  void leaf(const std::vector<Pair>& chosen, bool has_top,
            SlotResult& out) const {
    if (!has_top) return;  // the cell wants degree exactly d
    if (sharp_cell && !sharp_support_ok(chosen, d)) return;
    SolveResult res = solve_exact(expansion_matrix(chosen, d), unit_rhs(d));
    if (res.kind != SolveKind::Unique) return;
    for (const Rat& c : res.solution) {
      if (c <= 0) return;
    }
    out.count += 1;
    std::vector<Pair> mirror;
    mirror.reserve(chosen.size());
    for (Pair p : chosen) mirror.push_back(swapped(p));
    std::sort(mirror.begin(), mirror.end(), GradedLess{});
    if (!std::lexicographical_compare(mirror.begin(), mirror.end(),
                                      chosen.begin(), chosen.end(),
                                      GradedLess{})) {
      out.swap_classes += 1;  // the class representative
    }
    if (collect) {
      std::vector<Entry> entries;
      for (std::size_t i = 0; i < chosen.size(); ++i) {
        entries.push_back({chosen[i], res.solution[i]});
      }
      out.models.push_back(Model::from_entries(std::move(entries)));
    }
  }

  // Walks every extension of `chosen` using indices in [from, until), then
  // [*, total) below; `rows` is the echelon of the chosen columns.
  void search(std::vector<Pair>& chosen, const std::vector<RowPtr>& rows,
              int from, int until, bool has_top, bool has_nu0, bool has_mu0,
              SlotResult& out) const {
    const int total = static_cast<int>(pts.size());
    const int need = n + 1 - static_cast<int>(chosen.size());
    if (need == 0) {
      leaf(chosen, has_top, out);
      return;
    }
    int last = until;
    if (prunes.feasible) last = std::min(last, total - need + 1);
    for (int idx = from; idx < last; ++idx) {
      tick();
      if (prunes.feasible && !has_top && !suffix_top[idx]) break;
      if (prunes.anchors && !has_nu0 && !suffix_nu0[idx]) break;
      if (prunes.anchors && !has_mu0 && !suffix_mu0[idx]) break;
      Pair p = pts[idx];
      if (sharp_cell && !sharp_point_ok(p, chosen, idx)) continue;
      std::vector<RowPtr> grown;
      if (prunes.rank) {
        auto reduced = reduce_column(rows, column_of(p, d + 1));
        if (!reduced) continue;  // dependent columns never solve uniquely
        grown = rows;
        auto at = std::find_if(grown.begin(), grown.end(),
                               [&](const RowPtr& r) {
                                 return r->pivot > reduced->pivot;
                               });
        grown.insert(at, std::make_shared<const EchelonRow>(
                             std::move(*reduced)));
      }
      chosen.push_back(p);
      search(chosen, prunes.rank ? grown : rows, idx + 1, total,
             has_top || grade(p) == d, has_nu0 || p.nu == 0,
             has_mu0 || p.mu == 0, out);
      chosen.pop_back();
    }
  }

  // Point-level necessities of the sharp support filter, applied while
  // the support is still partial.
  bool sharp_point_ok(Pair p, const std::vector<Pair>& chosen,
                      int idx) const {
    if (grade(p) == d && p.nu != 0 && p.mu != 0) return false;
    if (grade(p) == d - 1 && p.nu % 2 == 0) return false;
    if (p.mu == 0 && p.nu > 0 && p.nu < d) {
      if (std::find(chosen.begin(), chosen.end(), Pair{0, p.nu}) !=
          chosen.end()) {
        return false;
      }
    }
    if (p.nu == 0 && p.mu > 0 && p.mu < d) {
      if (std::find(chosen.begin(), chosen.end(), Pair{p.mu, 0}) !=
          chosen.end()) {
        return false;
      }
    }
    // Once the walk is past (d, 0) it must already hold it.
    const int corner_index = static_cast<int>(pts.size()) - (d + 1);
    if (idx > corner_index &&
        std::find(chosen.begin(), chosen.end(), Pair{d, 0}) == chosen.end() &&
        p != Pair{d, 0}) {
      return false;
    }
    return true;
  }
};

}  // namespace

Catalog enumerate_models(const SearchSpec& spec) {
  if (spec.n < 1 || spec.d < 1) throw InputError("need n >= 1 and d >= 1");
  if (spec.node_budget == 0) throw InputError("node budget must be positive");

  Catalog cat;
  cat.n = spec.n;
  cat.d = spec.d;
  if (spec.prunes.window && (spec.d < spec.n || spec.d > 2 * spec.n - 1)) {
    return cat;
  }

  CellSearch cell;
  cell.n = spec.n;
  cell.d = spec.d;
  cell.collect = spec.collect;
  cell.prunes = spec.prunes;
  cell.sharp_cell = spec.prunes.sharp && spec.d == 2 * spec.n - 1;
  cell.pts = lattice_points(spec.d);
  const int total = static_cast<int>(cell.pts.size());
  if (total < spec.n + 1) return cat;

  cell.suffix_top.assign(total + 1, false);
  cell.suffix_nu0.assign(total + 1, false);
  cell.suffix_mu0.assign(total + 1, false);
  for (int i = total - 1; i >= 0; --i) {
    Pair p = cell.pts[i];
    cell.suffix_top[i] = cell.suffix_top[i + 1] || grade(p) == spec.d;
    cell.suffix_nu0[i] = cell.suffix_nu0[i + 1] || p.nu == 0;
    cell.suffix_mu0[i] = cell.suffix_mu0[i + 1] || p.mu == 0;
  }

  std::atomic<std::uint64_t> nodes{0};
  cell.nodes = &nodes;
  cell.budget = spec.node_budget;

  // Each slot owns the supports whose smallest point has that index;
  // canonical output order is then slot order, however the slots are
  // scheduled.
  std::vector<SlotResult> slots(total);
  std::atomic<int> next_slot{0};
  std::vector<std::exception_ptr> troubles;
  std::mutex trouble_lock;

  auto run = [&]() {
    try {
      while (true) {
        int slot = next_slot.fetch_add(1);
        if (slot >= total) break;
        std::vector<Pair> chosen;
        cell.search(chosen, {}, slot, slot + 1, false, false, false,
                    slots[slot]);
      }
    } catch (...) {
      std::lock_guard<std::mutex> hold(trouble_lock);
      troubles.push_back(std::current_exception());
    }
  };

  int workers = std::clamp(spec.workers, 1, 256);
  if (workers == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
    for (std::thread& t : pool) t.join();
  }
  if (!troubles.empty()) std::rethrow_exception(troubles.front());

  for (SlotResult& slot : slots) {
    cat.count += slot.count;
    cat.swap_classes += slot.swap_classes;
    for (Model& m : slot.models) cat.models.push_back(std::move(m));
  }
  return cat;
}

const std::vector<std::vector<std::uint64_t>>& reference_counts() {
  static const std::vector<std::vector<std::uint64_t>> table = {
      {1},
      {3, 1},
      {12, 4, 2},
      {82, 38, 10, 4},
      {602, 254, 88, 24, 2},
      {6710, 2421, 643, 198, 32, 4},
      {83906, 23285, 6445, 1442, 332, 56, 8},
  };
  return table;
}

TableCheck verify_table(int max_n, int workers, std::uint64_t node_budget) {
  if (max_n < 1 || max_n > 7) {
    throw InputError("reference counts cover 1 <= n <= 7");
  }
  TableCheck check;
  check.max_n = max_n;
  check.ok = true;
  const auto& reference = reference_counts();
  for (int n = 1; n <= max_n; ++n) {
    check.counts.emplace_back();
    for (int d = n; d <= 2 * n - 1; ++d) {
      SearchSpec spec;
      spec.n = n;
      spec.d = d;
      spec.collect = false;
      spec.workers = workers;
      spec.node_budget = node_budget;
      Catalog cat = enumerate_models(spec);
      check.counts.back().push_back(cat.count);
      if (cat.count != reference[n - 1][d - n] && check.detail.empty()) {
        check.ok = false;
        check.detail = "cell n=" + std::to_string(n) + " d=" +
                       std::to_string(d) + ": counted " +
                       std::to_string(cat.count) + ", reference " +
                       std::to_string(reference[n - 1][d - n]);
      }
    }
  }
  // A few cells outside the window, searched for real (the shortcut off)
  // to confirm nothing lives there.
  for (int n = 1; n <= std::min(max_n, 3); ++n) {
    for (int d : {n - 1, 2 * n}) {
      if (d < 1) continue;
      SearchSpec spec;
      spec.n = n;
      spec.d = d;
      spec.collect = false;
      spec.workers = workers;
      spec.node_budget = node_budget;
      spec.prunes.window = false;
      Catalog cat = enumerate_models(spec);
      if (cat.count != 0 && check.detail.empty()) {
        check.ok = false;
        check.detail = "out-of-window cell n=" + std::to_string(n) + " d=" +
                       std::to_string(d) + " is not empty";
      }
    }
  }
  return check;
}

RecursiveCheck verify_recursive(int n, int workers) {
  if (n < 2) throw InputError("the composition bound needs n >= 2");
  RecursiveCheck check;
  check.n = n;
  for (int k = 1; k < n; ++k) {
    SearchSpec spec;
    spec.n = k;
    spec.d = 2 * k - 1;
    spec.collect = false;
    spec.workers = workers;
    Catalog cat = enumerate_models(spec);
    check.sharp_counts.push_back(cat.count);
  }
  for (int k = 1; k < n; ++k) {
    check.bound += 2 * check.sharp_counts[k - 1] * check.sharp_counts[n - k - 1];
  }
  SearchSpec spec;
  spec.n = n;
  spec.d = 2 * n - 2;
  spec.collect = false;
  spec.workers = workers;
  check.actual = enumerate_models(spec).count;
  check.ok = check.actual >= check.bound;
  check.equality = check.actual == check.bound;
  if (!check.ok) {
    check.detail = "almost-sharp count " + std::to_string(check.actual) +
                   " is below the bound " + std::to_string(check.bound);
  }
  return check;
}

CatalogProperties catalog_properties(const Catalog& cat) {
  CatalogProperties props;
  if (cat.models.size() != cat.count) {
    props.detail = "catalog was counted without collecting its models";
    return props;
  }
  std::set<std::string> formatted;
  for (const Model& m : cat.models) {
    formatted.insert(format_model(m));
  }
  if (formatted.size() != cat.models.size()) {
    props.detail = "catalog members are not pairwise distinct";
    return props;
  }
  for (std::size_t i = 0; i < cat.models.size(); ++i) {
    const Model& m = cat.models[i];
    std::string where = "member " + std::to_string(i);
    if (m.n() != cat.n || m.degree() != cat.d) {
      props.detail = where + " does not live in the cell";
      return props;
    }
    if (i > 0) {
      std::vector<Pair> prev = cat.models[i - 1].support();
      std::vector<Pair> here = m.support();
      if (!std::lexicographical_compare(prev.begin(), prev.end(),
                                        here.begin(), here.end(),
                                        GradedLess{})) {
        props.detail = where + " is out of canonical order";
        return props;
      }
    }
    SupportSolve solve = solve_scalings(m.support());
    if (!solve.report.fundamental) {
      props.detail = where + " does not solve uniquely";
      return props;
    }
    if (solve.model->entries() != m.entries()) {
      props.detail = where + " disagrees with its solved scalings";
      return props;
    }
    StructureReport structure = check_structure(m);
    if (!structure.ok) {
      props.detail = where + ": " + structure.detail;
      return props;
    }
    if (cat.d == 2 * cat.n - 1 && !sharp_support_ok(m.support(), cat.d)) {
      props.detail = where + " violates the sharp support filter";
      return props;
    }
    if (formatted.find(format_model(m.swap_states())) == formatted.end()) {
      props.detail = where + "'s swap image is missing from the catalog";
      return props;
    }
    props.checked += 1;
  }
  props.ok = true;
  return props;
}

}  // namespace mld1
