#include "nilcount/counting.hpp"

#include <algorithm>
#include <string>

#include "nilcount/field.hpp"

namespace nilcount {

namespace {

void require_prime_power(std::uint64_t q) {
  if (!is_prime_power(q))
    fail(errc::not_a_prime_power, "formula parameter q = " + std::to_string(q) + " is not a prime power");
}

// prod_{i=0..r-1} (q^a - q^i); the empty product at r = 0 is 1
BigCount falling_q_product(std::uint64_t q, unsigned a, unsigned r) {
  BigCount result = 1;
  const BigCount qa = big_pow(q, a);
  BigCount qi = 1;
  for (unsigned i = 0; i < r; ++i) {
    result *= qa - qi;
    qi *= q;
  }
  return result;
}

}  // namespace

BigCount big_pow(const BigCount& base, std::uint64_t exp) {
  BigCount result = 1;
  BigCount b = base;
  while (exp > 0) {
    if (exp & 1) result *= b;
    b *= b;
    exp >>= 1;
  }
  return result;
}

BigCount binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigCount result = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    result *= n - i;
    result /= i + 1;
  }
  return result;
}

BigCount q_binomial(unsigned m, unsigned r, std::uint64_t q) {
  if (q < 2) fail(errc::out_of_range, "q-binomial needs q >= 2");
  if (r > m) fail(errc::out_of_range, "q-binomial needs 0 <= r <= m");
  const BigCount num = falling_q_product(q, m, r);
  const BigCount den = falling_q_product(q, r, r);
  return num / den;  // exact: the quotient counts subspaces
}

BigCount dag_count_formula(unsigned n) {
  std::vector<BigCount> a(n + 1);
  a[0] = 1;
  for (unsigned i = 1; i <= n; ++i) {
    BigCount acc = 0;
    for (unsigned k = 1; k <= i; ++k) {
      const BigCount term = binomial(i, k) * big_pow(2, static_cast<std::uint64_t>(k) * (i - k)) * a[i - k];
      if (k % 2 == 1)
        acc += term;
      else
        acc -= term;
    }
    a[i] = acc;
  }
  return a[n];
}

BigCount eventually_constant_formula(std::uint64_t m, std::uint64_t n) {
  if (m < 1 || n < 1) fail(errc::out_of_range, "set sizes must be positive");
  return big_pow(m, n - 1) * big_pow(n, m - 1) * (BigCount(m) + n - 1);
}

TreesFormulas trees_formulas(std::uint64_t m, std::uint64_t n) {
  if (m < 1 || n < 1) fail(errc::out_of_range, "vertex counts must be positive");
  TreesFormulas out;
  out.cayley = m <= 2 ? BigCount(1) : big_pow(m, m - 2);
  out.bipartite = big_pow(m, n - 1) * big_pow(n, m - 1);
  return out;
}

BigCount rank_maps_formula(std::uint64_t q, unsigned m, unsigned n, unsigned r) {
  require_prime_power(q);
  if (r > m || r > n) fail(errc::out_of_range, "rank exceeds min(m, n)");
  return q_binomial(m, r, q) * q_binomial(n, r, q) * falling_q_product(q, r, r);
}

BigCount nilpairs_sum_formula(std::uint64_t q, unsigned m, unsigned n) {
  require_prime_power(q);
  const unsigned rmax = std::min(m, n);
  BigCount acc = 0;
  for (unsigned r = 0; r <= rmax; ++r) {
    acc += q_binomial(m, r, q) * q_binomial(n, r, q) *
           big_pow(q, static_cast<std::uint64_t>(m) * n - r) * falling_q_product(q, r, r);
  }
  return acc;
}

BigCount nilpairs_closed_formula(std::uint64_t q, unsigned m, unsigned n) {
  require_prime_power(q);
  if (m == 0 || n == 0) return 1;
  const std::uint64_t exp = 2ull * m * n - m - n;
  return big_pow(q, exp) * (big_pow(q, m) + big_pow(q, n) - 1);
}

BigCount balanced_triple_formula(std::uint64_t q, unsigned m, unsigned n, unsigned ell) {
  require_prime_power(q);
  if (ell > m || ell > n) fail(errc::out_of_range, "balanced length exceeds min(m, n)");
  return falling_q_product(q, m, ell) * falling_q_product(q, n, ell) *
         big_pow(q, static_cast<std::uint64_t>(ell) * (m - ell)) *
         big_pow(q, static_cast<std::uint64_t>(ell) * (n - ell)) *
         nilpairs_closed_formula(q, m - ell, n - ell);
}

bool rank_partition_holds(std::uint64_t q, unsigned m, unsigned n) {
  BigCount acc = 0;
  for (unsigned r = 0; r <= std::min(m, n); ++r) acc += rank_maps_formula(q, m, n, r);
  return acc == big_pow(q, static_cast<std::uint64_t>(m) * n);
}

bool length_partition_holds(std::uint64_t q, unsigned m, unsigned n) {
  BigCount acc = 0;
  for (unsigned ell = 0; ell <= std::min(m, n); ++ell) acc += balanced_triple_formula(q, m, n, ell);
  return acc == big_pow(q, 2ull * m * n);
}

Rational eventually_constant_probability(std::uint64_t m, std::uint64_t n) {
  if (m < 1 || n < 1) fail(errc::out_of_range, "set sizes must be positive");
  return Rational(BigCount(m) + n - 1, BigCount(m) * n);
}

Rational nilpotent_pair_probability(std::uint64_t q, unsigned m, unsigned n) {
  require_prime_power(q);
  return Rational(big_pow(q, m) + big_pow(q, n) - 1, big_pow(q, static_cast<std::uint64_t>(m) + n));
}

Rational balanced_given_nilpotent_probability(std::uint64_t q, unsigned m, unsigned n) {
  require_prime_power(q);
  return Rational(big_pow(q, n), big_pow(q, m) + big_pow(q, n) - 1);
}

LimitAuditReport limit_audit(std::uint64_t q, unsigned m, unsigned n_max) {
  require_prime_power(q);
  if (m < 1) fail(errc::out_of_range, "limit audit needs m >= 1");
  if (n_max < m) fail(errc::out_of_range, "limit audit needs n_max >= m");

  LimitAuditReport report;
  report.q = q;
  report.m = m;
  report.n_max = n_max;
  report.residuals_positive = true;
  report.residuals_decreasing = true;
  report.diagonal_decreasing = true;

  const Rational q_inv_m = Rational(1, big_pow(q, m));
  bool identities_ok = true;
  Rational prev_residual;
  Rational prev_diagonal;
  for (unsigned n = m; n <= n_max; ++n) {
    LimitAuditRow row;
    row.n = n;
    row.fixed_m_residual = nilpotent_pair_probability(q, m, n) - q_inv_m;
    row.fixed_m_identity_ok = row.fixed_m_residual == Rational(1, big_pow(q, n)) * (1 - q_inv_m);
    row.diagonal_value = nilpotent_pair_probability(q, n, n);
    row.diagonal_identity_ok =
        row.diagonal_value == Rational(2, big_pow(q, n)) - Rational(1, big_pow(q, 2ull * n));
    identities_ok = identities_ok && row.fixed_m_identity_ok && row.diagonal_identity_ok;

    if (!(row.fixed_m_residual > 0)) report.residuals_positive = false;
    if (n > m) {
      if (!(row.fixed_m_residual < prev_residual)) report.residuals_decreasing = false;
      if (!(row.diagonal_value < prev_diagonal)) report.diagonal_decreasing = false;
    }
    prev_residual = row.fixed_m_residual;
    prev_diagonal = row.diagonal_value;
    report.rows.push_back(std::move(row));
  }
  report.all_ok = identities_ok && report.residuals_positive && report.residuals_decreasing &&
                  report.diagonal_decreasing;
  return report;
}

}  // namespace nilcount
