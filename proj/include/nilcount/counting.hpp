#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <vector>

#include "nilcount/errors.hpp"

namespace nilcount {

// Arbitrary-precision exact values; no floating point enters any identity.
using BigCount = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigCount big_pow(const BigCount& base, std::uint64_t exp);
BigCount binomial(std::uint64_t n, std::uint64_t k);

// Number of r-dimensional subspaces of GF(q)^m. OutOfRange unless
// 0 <= r <= m and q >= 2. The empty product at r = 0 gives 1.
BigCount q_binomial(unsigned m, unsigned r, std::uint64_t q);

// Labeled DAG counts a_n: a_0 = 1 and
// a_n = sum_{k=1..n} (-1)^(k-1) C(n,k) 2^(k(n-k)) a_{n-k}.
BigCount dag_count_formula(unsigned n);

// m^(n-1) n^(m-1) (m+n-1) eventually constant pairs of maps between sets of
// sizes m and n.
BigCount eventually_constant_formula(std::uint64_t m, std::uint64_t n);

struct TreesFormulas {
  BigCount cayley;     // labeled unrooted trees on m vertices, m^(m-2)
  BigCount bipartite;  // spanning trees of K(m,n), m^(n-1) n^(m-1)
};
TreesFormulas trees_formulas(std::uint64_t m, std::uint64_t n);

// Number of rank r maps GF(q)^m -> GF(q)^n.
BigCount rank_maps_formula(std::uint64_t q, unsigned m, unsigned n, unsigned r);

// Nilpotent-pair count as the rank sum
// sum_r [m r]_q [n r]_q q^(mn-r) prod_{i<r}(q^r - q^i)
// and as the closed form q^(2mn-m-n) (q^m + q^n - 1); the two agree for every
// prime power q. Both reduce to 1 when m or n is 0.
BigCount nilpairs_sum_formula(std::uint64_t q, unsigned m, unsigned n);
BigCount nilpairs_closed_formula(std::uint64_t q, unsigned m, unsigned n);

// Nilpotent pairs carrying a balanced vector of length ell:
// prod_{i<ell}(q^m - q^i) prod_{j<ell}(q^n - q^j) q^(ell(m-ell)) q^(ell(n-ell))
// times the nilpotent-pair count at (m-ell, n-ell).
BigCount balanced_triple_formula(std::uint64_t q, unsigned m, unsigned n, unsigned ell);

bool rank_partition_holds(std::uint64_t q, unsigned m, unsigned n);    // sum_r = q^(mn)
bool length_partition_holds(std::uint64_t q, unsigned m, unsigned n);  // sum_ell = q^(2mn)

// Exact reduced probabilities.
Rational eventually_constant_probability(std::uint64_t m, std::uint64_t n);        // (m+n-1)/(mn)
Rational nilpotent_pair_probability(std::uint64_t q, unsigned m, unsigned n);      // q^-m + q^-n - q^-m-n
Rational balanced_given_nilpotent_probability(std::uint64_t q, unsigned m, unsigned n);  // q^n/(q^m+q^n-1)

// Exact algebraic audit of the two limit statements: with m fixed,
// prob(q,m,n) - q^-m equals q^-n (1 - q^-m) (positive, strictly decreasing),
// and on the diagonal prob(q,n,n) equals 2 q^-n - q^-2n (strictly decreasing
// to 0). Requires m >= 1 and n_max >= m.
struct LimitAuditRow {
  unsigned n;
  Rational fixed_m_residual;
  bool fixed_m_identity_ok;
  Rational diagonal_value;
  bool diagonal_identity_ok;
};

struct LimitAuditReport {
  std::uint64_t q = 0;
  unsigned m = 0;
  unsigned n_max = 0;
  bool residuals_positive = false;
  bool residuals_decreasing = false;
  bool diagonal_decreasing = false;
  bool all_ok = false;
  std::vector<LimitAuditRow> rows;
};

LimitAuditReport limit_audit(std::uint64_t q, unsigned m, unsigned n_max);

}  // namespace nilcount
