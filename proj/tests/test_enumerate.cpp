#include "mld1/enumerate.hpp"

#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "mld1/errors.hpp"
#include "mld1/io.hpp"

using namespace mld1;

namespace {

Catalog run(int n, int d, Prunes prunes = {}, int workers = 1) {
  SearchSpec spec;
  spec.n = n;
  spec.d = d;
  spec.prunes = prunes;
  spec.workers = workers;
  return enumerate_models(spec);
}

}  // namespace

TEST_CASE("small cells have the reference counts") {
  CHECK(run(1, 1).count == 1);
  CHECK(run(2, 2).count == 3);
  CHECK(run(2, 3).count == 1);
  CHECK(run(3, 3).count == 12);
  CHECK(run(3, 4).count == 4);
  CHECK(run(3, 5).count == 2);
  CHECK(run(4, 4).count == 82);
  CHECK(run(4, 5).count == 38);
  CHECK(run(4, 6).count == 10);
  CHECK(run(4, 7).count == 4);
}

TEST_CASE("cells outside the degree window are empty") {
  CHECK(run(2, 1).count == 0);
  CHECK(run(2, 4).count == 0);
  CHECK(run(3, 6).count == 0);
  // the same cells stay empty when searched for real
  Prunes honest;
  honest.window = false;
  CHECK(run(2, 1, honest).count == 0);
  CHECK(run(2, 4, honest).count == 0);
}

TEST_CASE("every cut agrees with the unpruned walk up to three states") {
  for (int n = 1; n <= 3; ++n) {
    for (int d = n; d <= 2 * n - 1; ++d) {
      Catalog fast = run(n, d);
      Catalog slow = run(n, d, Prunes::all_off());
      CHECK(fast.count == slow.count);
      CHECK(format_catalog(fast) == format_catalog(slow));
    }
  }
}

TEST_CASE("single cuts switched off do not change the degree-5 cell") {
  Catalog fast = run(4, 5);
  for (int which = 0; which < 5; ++which) {
    Prunes p;
    (which == 0   ? p.window
     : which == 1 ? p.anchors
     : which == 2 ? p.sharp
     : which == 3 ? p.rank
                  : p.feasible) = false;
    Catalog probe = run(4, 5, p);
    CHECK(probe.count == fast.count);
    CHECK(format_catalog(probe) == format_catalog(fast));
  }
}

TEST_CASE("worker count never changes the catalog bytes") {
  std::string one = format_catalog(run(4, 5, {}, 1));
  CHECK(format_catalog(run(4, 5, {}, 2)) == one);
  CHECK(format_catalog(run(4, 5, {}, 8)) == one);
}

TEST_CASE("swap classes count orbits under the coordinate swap") {
  Catalog cat = run(3, 3);
  CHECK(cat.count == 12);
  CHECK(cat.swap_classes == 7);
  // count = 2 * classes - (members fixed by the swap)
  std::uint64_t fixed = 0;
  for (const Model& m : cat.models) {
    if (m.swap_states().entries() == m.entries()) ++fixed;
  }
  CHECK(cat.count + fixed == 2 * cat.swap_classes);
}

TEST_CASE("the degree-3 cell is exactly the stored list up to swap") {
  std::set<std::string> want;
  std::istringstream lines(read_fixture("cell_3_3_polynomials.txt"));
  std::string line;
  while (std::getline(lines, line)) {
    if (!line.empty()) want.insert(line);
  }
  REQUIRE(want.size() == 7);

  Catalog cat = run(3, 3);
  std::set<std::string> got;
  std::uint64_t listed = 0;
  for (const Model& m : cat.models) {
    std::string f = to_string(m.f());
    got.insert(f);
    if (want.count(f)) {
      ++listed;
    } else {
      // not listed itself, so its mirror must be
      CHECK(want.count(to_string(m.swap_states().f())) == 1);
    }
  }
  CHECK(got.size() == 12);
  CHECK(listed == 7);
}

TEST_CASE("count-only search reports the same numbers") {
  Catalog full = run(4, 6);
  std::uint64_t fixed = 0;
  for (const Model& m : full.models) {
    if (m.swap_states().entries() == m.entries()) ++fixed;
  }
  CHECK(full.count + fixed == 2 * full.swap_classes);

  SearchSpec spec;
  spec.n = 4;
  spec.d = 6;
  spec.collect = false;
  Catalog bare = enumerate_models(spec);
  CHECK(bare.count == full.count);
  CHECK(bare.swap_classes == full.swap_classes);
  CHECK(bare.models.empty());
}

TEST_CASE("a starved node budget stops the search") {
  SearchSpec spec;
  spec.n = 3;
  spec.d = 3;
  spec.node_budget = 10;
  CHECK_THROWS_WITH_AS(enumerate_models(spec),
                       "node budget exhausted at n=3 d=3", BudgetError);
}

TEST_CASE("catalog members satisfy every documented invariant") {
  const std::vector<std::pair<int, int>> cells{{3, 3}, {3, 5}, {4, 6}, {4, 7}};
  for (auto [n, d] : cells) {
    Catalog cat = run(n, d);
    CatalogProperties props = catalog_properties(cat);
    INFO("cell n=", n, " d=", d, ": ", props.detail);
    CHECK(props.ok);
    CHECK(props.checked == cat.count);
  }
}

TEST_CASE("catalog properties notice a forged count") {
  Catalog cat = run(2, 2);
  cat.count = 5;
  CHECK_FALSE(catalog_properties(cat).ok);
}

TEST_CASE("the census through four states matches the reference") {
  TableCheck check = verify_table(4);
  CHECK(check.ok);
  CHECK(check.detail.empty());
  REQUIRE(check.counts.size() == 4);
  CHECK(check.counts[2] == std::vector<std::uint64_t>{12, 4, 2});
  CHECK(check.counts[3] == std::vector<std::uint64_t>{82, 38, 10, 4});
  CHECK(check.counts == std::vector<std::vector<std::uint64_t>>(
                            reference_counts().begin(),
                            reference_counts().begin() + 4));
}

TEST_CASE("the composition bound is attained at small n") {
  RecursiveCheck three = verify_recursive(3);
  CHECK(three.ok);
  CHECK(three.equality);
  CHECK(three.bound == 4);
  CHECK(three.actual == 4);
  CHECK(three.sharp_counts == std::vector<std::uint64_t>{1, 1});

  RecursiveCheck four = verify_recursive(4);
  CHECK(four.ok);
  CHECK(four.equality);
  CHECK(four.bound == 10);
  CHECK(four.actual == 10);
  CHECK(four.sharp_counts == std::vector<std::uint64_t>{1, 1, 2});
}

TEST_CASE("nonsense search parameters are rejected") {
  SearchSpec spec;
  spec.n = 0;
  CHECK_THROWS_AS(enumerate_models(spec), InputError);
  spec.n = 2;
  spec.d = 0;
  CHECK_THROWS_AS(enumerate_models(spec), InputError);
  spec.d = 2;
  spec.node_budget = 0;
  CHECK_THROWS_AS(enumerate_models(spec), InputError);
  CHECK_THROWS_AS(verify_table(0), InputError);
  CHECK_THROWS_AS(verify_table(8), InputError);
  CHECK_THROWS_AS(verify_recursive(1), InputError);
}
