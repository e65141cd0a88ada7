#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "nilcount/counting.hpp"

using namespace nilcount;

namespace {

// Independent subspace-count oracle over GF(2): vectors are bitmasks, a
// 2-dimensional subspace is identified by its set of nonzero elements.
std::size_t brute_two_dim_subspaces_f2(unsigned ambient_bits) {
  const unsigned space = 1u << ambient_bits;
  std::set<std::vector<unsigned>> subspaces;
  for (unsigned v1 = 1; v1 < space; ++v1)
    for (unsigned v2 = 1; v2 < space; ++v2) {
      if (v2 == v1) continue;
      std::vector<unsigned> elems{v1, v2, v1 ^ v2};
      std::sort(elems.begin(), elems.end());
      subspaces.insert(elems);
    }
  return subspaces.size();
}

}  // namespace

TEST_CASE("q-binomial values") {
  CHECK(q_binomial(5, 0, 3) == 1);
  CHECK(q_binomial(2, 1, 2) == 3);
  CHECK(q_binomial(4, 2, 2) == BigCount(brute_two_dim_subspaces_f2(4)));
  CHECK(q_binomial(4, 2, 2) == 35);
  CHECK_THROWS_WITH_AS(q_binomial(2, 3, 2), doctest::Contains("OutOfRange"), Error);
  CHECK_THROWS_AS(q_binomial(2, 1, 1), Error);
}

TEST_CASE("q-binomial symmetry and integrality") {
  for (std::uint64_t q : {2, 3, 4, 5})
    for (unsigned m = 0; m <= 10; ++m)
      for (unsigned r = 0; r <= m; ++r) {
        const BigCount lhs = q_binomial(m, r, q);
        CHECK(lhs == q_binomial(m, m - r, q));
        CHECK(lhs >= 1);
      }
}

TEST_CASE("DAG count sequence") {
  const std::uint64_t expected[] = {1, 1, 3, 25, 543, 29281, 3781503};
  for (unsigned n = 0; n <= 6; ++n) CHECK(dag_count_formula(n) == BigCount(expected[n]));
}

TEST_CASE("eventually constant counts") {
  CHECK(eventually_constant_formula(1, 1) == 1);
  CHECK(eventually_constant_formula(2, 1) == 2);
  CHECK(eventually_constant_formula(2, 2) == 12);
  CHECK(eventually_constant_formula(3, 3) == 405);
}

TEST_CASE("tree counts") {
  CHECK(trees_formulas(1, 1).cayley == 1);
  CHECK(trees_formulas(2, 1).cayley == 1);
  CHECK(trees_formulas(3, 1).cayley == 3);
  CHECK(trees_formulas(5, 1).cayley == 125);
  CHECK(trees_formulas(2, 2).bipartite == 4);
  CHECK(trees_formulas(3, 3).bipartite == 81);
}

TEST_CASE("nilpotent pair formulas") {
  CHECK(nilpairs_sum_formula(2, 0, 5) == 1);
  CHECK(nilpairs_closed_formula(2, 0, 5) == 1);
  CHECK(nilpairs_closed_formula(5, 0, 0) == 1);
  CHECK(nilpairs_sum_formula(2, 1, 2) == 10);  // q^(n-1) (q^n + q - 1) at q = 2, n = 2
  CHECK(nilpairs_closed_formula(2, 1, 2) == 10);
  CHECK(nilpairs_closed_formula(3, 1, 2) == 33);
  CHECK(nilpairs_closed_formula(2, 1, 1) == 3);
  CHECK(nilpairs_closed_formula(2, 2, 2) == 112);
  CHECK_THROWS_WITH_AS(nilpairs_sum_formula(6, 1, 1), doctest::Contains("NotAPrimePower"), Error);

  // m = 3 closed form specializes to q^(5n-3) (q^n + q^3 - 1)
  for (std::uint64_t q : {2, 3})
    for (unsigned n = 1; n <= 6; ++n)
      CHECK(nilpairs_closed_formula(q, 3, n) ==
            big_pow(q, 5ull * n - 3) * (big_pow(q, n) + big_pow(q, 3) - 1));
}

TEST_CASE("rank sum equals closed form across the sweep grid") {
  for (std::uint64_t q : {2, 3, 4, 5})
    for (unsigned m = 0; m <= 8; ++m)
      for (unsigned n = 0; n <= 8; ++n) CHECK(nilpairs_sum_formula(q, m, n) == nilpairs_closed_formula(q, m, n));
}

TEST_CASE("rank-count partition") {
  CHECK(rank_maps_formula(2, 2, 2, 2) == 6);
  CHECK(rank_maps_formula(2, 2, 3, 1) == 21);
  CHECK(rank_maps_formula(3, 4, 4, 0) == 1);
  for (std::uint64_t q : {2, 3})
    for (unsigned m = 0; m <= 6; ++m)
      for (unsigned n = 0; n <= 6; ++n) CHECK(rank_partition_holds(q, m, n));
}

TEST_CASE("balanced-triple formula and the length partition") {
  for (std::uint64_t q : {2, 3})
    for (unsigned m = 0; m <= 5; ++m)
      for (unsigned n = 0; n <= 5; ++n) {
        CHECK(balanced_triple_formula(q, m, n, 0) == nilpairs_closed_formula(q, m, n));
        CHECK(length_partition_holds(q, m, n));
      }
  // the n = 2 partition spelled out: sum over lengths is q^(4m)
  for (std::uint64_t q : {2, 3})
    for (unsigned m = 2; m <= 5; ++m) {
      BigCount sum = 0;
      for (unsigned ell = 0; ell <= 2; ++ell) sum += balanced_triple_formula(q, m, 2, ell);
      CHECK(sum == big_pow(q, 4ull * m));
    }
  CHECK_THROWS_WITH_AS(balanced_triple_formula(2, 2, 3, 3), doctest::Contains("OutOfRange"), Error);
}

TEST_CASE("probabilities are exact reduced rationals") {
  CHECK(eventually_constant_probability(2, 2) == Rational(3, 4));
  CHECK(eventually_constant_probability(3, 3) == Rational(5, 9));
  CHECK(nilpotent_pair_probability(2, 1, 1) == Rational(3, 4));
  CHECK(nilpotent_pair_probability(2, 0, 4) == 1);
  CHECK(balanced_given_nilpotent_probability(2, 2, 2) == Rational(4, 7));

  // closed form over the full pair space gives the same rational
  for (std::uint64_t q : {2, 3})
    for (unsigned m = 0; m <= 4; ++m)
      for (unsigned n = 0; n <= 4; ++n)
        CHECK(nilpotent_pair_probability(q, m, n) ==
              Rational(nilpairs_closed_formula(q, m, n), big_pow(q, 2ull * m * n)));
}

TEST_CASE("limit audit") {
  SUBCASE("q = 2, m = 1 residual is exactly 2^-n / 2") {
    const LimitAuditReport report = limit_audit(2, 1, 12);
    CHECK(report.all_ok);
    for (const auto& row : report.rows)
      CHECK(row.fixed_m_residual == Rational(1, big_pow(2, row.n)) * Rational(1, 2));
  }

  SUBCASE("diagonal value is exactly 2^(1-n) - 2^(-2n)") {
    const LimitAuditReport report = limit_audit(2, 1, 10);
    for (const auto& row : report.rows)
      CHECK(row.diagonal_value ==
            Rational(2, big_pow(2, row.n)) - Rational(1, big_pow(2, 2ull * row.n)));
  }

  SUBCASE("residuals shrink at least geometrically") {
    for (std::uint64_t q : {2, 3})
      for (unsigned m = 1; m <= 3; ++m) {
        const LimitAuditReport report = limit_audit(q, m, 30);
        CHECK(report.all_ok);
        for (std::size_t i = 1; i < report.rows.size(); ++i)
          CHECK(report.rows[i].fixed_m_residual <=
                report.rows[i - 1].fixed_m_residual * Rational(1, q));
      }
  }

  SUBCASE("parameter validation") {
    CHECK_THROWS_AS(limit_audit(2, 0, 5), Error);
    CHECK_THROWS_AS(limit_audit(2, 3, 2), Error);
    CHECK_THROWS_AS(limit_audit(6, 1, 5), Error);
  }
}
