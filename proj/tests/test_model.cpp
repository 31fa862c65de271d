#include "mld1/model.hpp"

#include <random>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "mld1/errors.hpp"

using namespace mld1;

namespace {

std::vector<Rat> random_counts(std::size_t size) {
  std::uniform_int_distribution<int> count(0, 20);
  std::vector<Rat> u(size);
  bool all_zero = true;
  for (Rat& v : u) {
    v = count(test_rng());
    if (v != 0) all_zero = false;
  }
  if (all_zero) u[0] = 1;
  return u;
}

}  // namespace

TEST_CASE("binomial model carries the binomial coefficients") {
  for (int n = 1; n <= 6; ++n) {
    Model b = binomial_model(n);
    CHECK(b.n() == n);
    CHECK(b.degree() == n);
    REQUIRE(b.entries().size() == static_cast<std::size_t>(n + 1));
    for (const Entry& e : b.entries()) {
      CHECK(grade(e.p) == n);
      CHECK(e.c == Rat(binomial(n, e.p.nu)));
    }
  }
  CHECK_THROWS_AS(binomial_model(0), InputError);
}

TEST_CASE("geometric model counts tries until the first success") {
  for (int n = 1; n <= 6; ++n) {
    Model g = geometric_model(n);
    CHECK(g.n() == n);
    CHECK(g.degree() == n);
    for (const Entry& e : g.entries()) CHECK(e.c == 1);
    CHECK(g.coeff({1, n - 1}) == 1);
    CHECK(g.coeff({0, n}) == 1);
    CHECK(solve_scalings(g.support()).report.fundamental);
  }
}

TEST_CASE("sharp model hits degree 2n-1 with a unit top corner") {
  for (int n = 1; n <= 5; ++n) {
    Model s = sharp_model(n);
    CHECK(s.n() == n);
    CHECK(s.degree() == 2 * n - 1);
    CHECK(s.coeff({2 * n - 1, 0}) == 1);
    CHECK(solve_scalings(s.support()).report.fundamental);
  }
  Model s2 = sharp_model(2);
  CHECK(s2.coeff({1, 1}) == 3);
  CHECK(s2.coeff({0, 3}) == 1);
  Model s3 = sharp_model(3);
  CHECK(s3.coeff({2, 1}) == 5);
  CHECK(s3.coeff({1, 3}) == 5);
  CHECK(s3.coeff({0, 5}) == 1);
}

TEST_CASE("sharp model of one state pair is the coin flip") {
  CHECK(sharp_model(1).entries() == binomial_model(1).entries());
}

TEST_CASE("model laws are enforced") {
  // duplicate pair
  CHECK_THROWS_AS(Model::from_entries(
                      {{{1, 0}, Rat(1, 2)}, {{1, 0}, Rat(1, 2)}}),
                  ContractError);
  // origin in the support
  CHECK_THROWS_AS(Model::from_entries({{{0, 0}, 1}, {{1, 0}, 1}}),
                  ContractError);
  // negative exponent
  CHECK_THROWS_AS(Model::from_entries({{{-1, 1}, 1}, {{0, 1}, 1}}),
                  ContractError);
  // nonpositive coefficient
  CHECK_THROWS_AS(Model::from_entries({{{1, 0}, 0}, {{0, 1}, 1}}),
                  ContractError);
  CHECK_THROWS_AS(Model::from_entries({{{1, 0}, -1}, {{0, 1}, 2}}),
                  ContractError);
  // does not sum to one on the line
  CHECK_THROWS_AS(Model::from_entries({{{1, 0}, 1}, {{0, 1}, 2}}),
                  ContractError);
  CHECK_THROWS_AS(Model::from_entries({{{2, 0}, 1}, {{0, 1}, 1}}),
                  ContractError);
}

TEST_CASE("entries are kept in canonical order regardless of input order") {
  Model m = Model::from_entries({{{0, 3}, 1}, {{3, 0}, 1}, {{1, 1}, 3}});
  REQUIRE(m.entries().size() == 3);
  CHECK(m.entries()[0].p == Pair{1, 1});
  CHECK(m.entries()[1].p == Pair{3, 0});
  CHECK(m.entries()[2].p == Pair{0, 3});
  CHECK(m.coeff({1, 1}) == 3);
  CHECK(m.coeff({9, 9}) == 0);
}

TEST_CASE("swap exchanges t and 1-t") {
  Model s = sharp_model(2);
  Model w = s.swap_states();
  CHECK(w.coeff({0, 3}) == 1);
  CHECK(w.coeff({1, 1}) == 3);
  CHECK(w.coeff({3, 0}) == 1);
  CHECK(w.swap_states().entries() == s.entries());
  Model g = geometric_model(3);
  CHECK(g.swap_states().coeff({0, 1}) == 1);
  CHECK(g.swap_states().coeff({3, 0}) == 1);
}

TEST_CASE("solve_scalings recovers the one-parameter-family witness") {
  SupportSolve fam =
      solve_scalings({{1, 1}, {0, 3}, {3, 0}, {3, 1}, {4, 0}});
  CHECK(fam.report.has_model);
  CHECK(!fam.report.fundamental);
  CHECK(fam.report.rank == 4);
  CHECK(fam.report.nullity == 1);
  REQUIRE(fam.model.has_value());
  CHECK(fam.model->n() == 4);
}

TEST_CASE("solve_scalings classifies hopeless supports") {
  // t + t^2 can never be constant.
  SupportSolve none = solve_scalings({{1, 0}, {2, 0}});
  CHECK(!none.report.has_model);
  CHECK(!none.report.fundamental);
  // unique solution but with a negative coefficient: t^2, (1-t)^2 alone
  // force 2t(1-t) to be missing.
  SupportSolve negative = solve_scalings({{2, 0}, {0, 2}});
  CHECK(!negative.report.has_model);
  CHECK(negative.report.nullity == 0);
}

TEST_CASE("solve_scalings validates its input") {
  CHECK_THROWS_AS(solve_scalings({{1, 0}, {1, 0}}), InputError);
  CHECK_THROWS_AS(solve_scalings({{0, 0}, {1, 0}}), InputError);
  CHECK_THROWS_AS(solve_scalings({{-1, 0}, {1, 0}}), InputError);
  CHECK_THROWS_AS(solve_scalings({}), InputError);
}

TEST_CASE("composition grafts the second model onto the top corner") {
  Model c = compose(sharp_model(2), binomial_model(2));
  CHECK(c.n() == 4);
  CHECK(c.degree() == 5);
  CHECK(c.coeff({0, 3}) == 1);
  CHECK(c.coeff({1, 1}) == 3);
  CHECK(c.coeff({3, 2}) == 1);
  CHECK(c.coeff({4, 1}) == 2);
  CHECK(c.coeff({5, 0}) == 1);
  CHECK(c.entries().size() == 5);
  CHECK(solve_scalings(c.support()).report.fundamental);
}

TEST_CASE("composition demands a unit coefficient at the top corner") {
  // geometric_model(2) has no (2,0) entry at all
  CHECK_THROWS_AS(compose(geometric_model(2), binomial_model(1)),
                  ContractError);
  // binomial_model(2) holds 2 at (1,1): compose_at is the right tool
  Model via_at = compose_at(binomial_model(2), binomial_model(1), {1, 1});
  CHECK(via_at.coeff({1, 1}) == 1);
  CHECK(via_at.coeff({2, 1}) == 1);
  CHECK(via_at.coeff({1, 2}) == 1);
  CHECK(via_at.n() == 4);
  CHECK(via_at.degree() == 3);
  // grafting away from the top corner drops the degree below the window
  // (5 states need degree 4), so the scalings cannot be unique
  SupportSolve away = solve_scalings(via_at.support());
  CHECK_FALSE(away.report.fundamental);
  CHECK(away.report.nullity >= 1);
  // but not with less than one unit of mass available
  CHECK_THROWS_AS(compose_at(sharp_model(2), binomial_model(1), {2, 0}),
                  ContractError);
}

TEST_CASE("composition of fundamentals stays fundamental across a sample") {
  Model pieces[] = {binomial_model(1), binomial_model(2), sharp_model(2),
                    geometric_model(2)};
  for (const Model& a : {binomial_model(2), sharp_model(2), sharp_model(3)}) {
    for (const Model& b : pieces) {
      if (a.coeff({a.degree(), 0}) != 1) continue;
      Model c = compose(a, b);
      CHECK(c.n() == a.n() + b.n());
      CHECK(c.degree() == a.degree() + b.degree());
      CHECK(solve_scalings(c.support()).report.fundamental);
    }
  }
}

TEST_CASE("unsplitting moves mass toward the origin") {
  Model b = binomial_model(7);
  Model step1 = unsplit(b, {5, 1}, 7);
  CHECK(step1.coeff({6, 1}) == 0);
  CHECK(step1.coeff({5, 2}) == 14);
  CHECK(step1.coeff({5, 1}) == 7);
  Model step2 = unsplit(step1, {3, 3}, 21);
  Model step3 = unsplit(step2, {1, 5}, 7);
  CHECK(step3.degree() == 7);
  CHECK(step3.coeff({3, 3}) == 21);
  CHECK(step3.coeff({1, 6}) == 0);
  CHECK(step3.coeff({2, 5}) == 14);
  // still a model: from_entries inside unsplit re-validated the identity
  CHECK(step3.entries().size() == 9);
  CHECK(step3.n() == 8);
}

TEST_CASE("unsplitting needs enough mass on both split points") {
  CHECK_THROWS_AS(unsplit(binomial_model(2), {1, 0}, 2), ContractError);
  CHECK_THROWS_AS(unsplit(binomial_model(2), {1, 0}, Rat(-1)), ContractError);
  CHECK_THROWS_AS(unsplit(binomial_model(1), {0, 0}, Rat(1, 2)),
                  ContractError);
}

TEST_CASE("unsplitting a polynomial leaves line values unchanged") {
  Poly f = binomial_model(4).f();
  Poly g = unsplit(f, {2, 1}, Rat(3, 2));
  Rat x(2, 7), y(5, 7);
  CHECK(g.eval(x, y) == f.eval(x, y));
  CHECK(g.coeff({2, 1}) == binomial_model(4).coeff({2, 1}) + Rat(3, 2));
}

TEST_CASE("maximum likelihood matches the closed form") {
  Model s = sharp_model(2);  // entries (1,1), (3,0), (0,3)
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Rat> u = random_counts(3);
    // the closed form indexes the support as (3,0), (1,1), (0,3)
    Rat a = u[1], b = u[0], c = u[2];
    Rat expect = (3 * a + b) / (3 * a + 2 * b + 3 * c);
    CHECK(mle(s, u) == expect);
  }
}

TEST_CASE("maximum likelihood is exact on every model of a catalog row") {
  for (const Model& m : {binomial_model(3), geometric_model(4),
                         sharp_model(3), compose(sharp_model(2),
                                                 binomial_model(2))}) {
    std::vector<Rat> u = random_counts(m.entries().size());
    Rat t = mle(m, u);
    // stationarity: sum u_i (nu_i - (nu_i + mu_i) t) = 0
    Rat residual = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      Pair p = m.entries()[i].p;
      residual += u[i] * (Rat(p.nu) - Rat(grade(p)) * t);
    }
    CHECK(residual == 0);
  }
}

TEST_CASE("maximum likelihood validates the counts") {
  Model s = sharp_model(2);
  CHECK_THROWS_AS(mle(s, {Rat(1), Rat(1)}), InputError);
  CHECK_THROWS_AS(mle(s, {Rat(0), Rat(0), Rat(0)}), InputError);
  CHECK_THROWS_AS(mle(s, {Rat(-1), Rat(1), Rat(1)}), InputError);
}

TEST_CASE("one-parameter family instantiates to models with one support") {
  Family fam = one_parameter_family(4, 4);
  CHECK(fam.n() == 4);
  CHECK(fam.degree() == 4);
  std::vector<Pair> support = fam.support();
  REQUIRE(support.size() == 5);
  CHECK(support == std::vector<Pair>{{1, 1}, {3, 0}, {0, 3}, {4, 0}, {3, 1}});
  Model quarter = fam.instantiate(Rat(1, 4));
  Model half = fam.instantiate(Rat(1, 2));
  Model three_quarters = fam.instantiate(Rat(3, 4));
  CHECK(quarter.support() == support);
  CHECK(half.support() == support);
  CHECK(three_quarters.support() == support);
  CHECK(quarter.coeff({4, 0}) == Rat(1, 4));
  CHECK(quarter.coeff({3, 0}) == Rat(3, 4));
  CHECK(half.coeff({3, 1}) == Rat(1, 2));
  SupportSolve solve = solve_scalings(support);
  CHECK(solve.report.nullity == 1);
  CHECK(!solve.report.fundamental);
}

TEST_CASE("one-parameter family rejects parameters outside (0,1)") {
  Family fam = one_parameter_family(4, 4);
  CHECK_THROWS_AS(fam.instantiate(0), InputError);
  CHECK_THROWS_AS(fam.instantiate(1), InputError);
  CHECK_THROWS_AS(fam.instantiate(Rat(5, 4)), InputError);
  CHECK_THROWS_AS(fam.instantiate(Rat(-1, 2)), InputError);
}

TEST_CASE("one-parameter family exists exactly for n <= d <= 2n-4") {
  CHECK_THROWS_AS(one_parameter_family(3, 3), InputError);
  CHECK_THROWS_AS(one_parameter_family(4, 5), InputError);
  CHECK_THROWS_AS(one_parameter_family(4, 3), InputError);
  for (int n = 4; n <= 6; ++n) {
    for (int d = n; d <= 2 * n - 4; ++d) {
      Family fam = one_parameter_family(n, d);
      CHECK(fam.n() == n);
      CHECK(fam.degree() == d);
      Model member = fam.instantiate(Rat(2, 5));
      CHECK(member.n() == n);
      CHECK(member.degree() == d);
      CHECK(solve_scalings(fam.support()).report.nullity >= 1);
    }
  }
}

TEST_CASE("multi-parameter view agrees with the one-dimensional estimator") {
  for (const Model& m :
       {sharp_model(2), binomial_model(3), geometric_model(4)}) {
    MultiModel lifted = MultiModel::lift(m);
    CHECK(lifted.r() == 1);
    CHECK(lifted.states() == m.n() + 1);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Rat> u = random_counts(m.entries().size());
      std::vector<Rat> multi = mle(lifted, u);
      REQUIRE(multi.size() == 1);
      CHECK(multi[0] == mle(m, u));
    }
  }
}

TEST_CASE("two-parameter trinomial estimates are the empirical fractions") {
  // (t1 + t2 + (1-t1-t2))^2 expanded into six states.
  MultiModel tri = MultiModel::from_entries(
      2,
      {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}},
      {1, 1, 1, 2, 2, 2});
  CHECK(tri.r() == 2);
  CHECK(tri.states() == 6);
  std::vector<Rat> u{3, 1, 2, 0, 4, 2};
  std::vector<Rat> t = mle(tri, u);
  REQUIRE(t.size() == 2);
  // U_1 = 2*3 + 0 + 4 = 10, U_2 = 2*1 + 0 + 2 = 4, total mass 2*12
  CHECK(t[0] == Rat(5, 12));
  CHECK(t[1] == Rat(1, 6));
}

TEST_CASE("multi-parameter models validate the sum-to-one identity") {
  CHECK_THROWS_AS(
      MultiModel::from_entries(2, {{1, 0, 0}, {0, 1, 0}}, {1, 1}),
      ContractError);
  CHECK_THROWS_AS(MultiModel::from_entries(1, {{1, 0}, {0}}, {1, 1}),
                  InputError);
}
