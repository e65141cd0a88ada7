#pragma once

#include <cstdint>
#include <iosfwd>

namespace nilcount {

inline constexpr int kSchemaVersion = 1;

// JSON-lines artifacts. Every emitter writes one header object carrying the
// schema version and the parameters, then one data row per witness, in a
// fixed sorted order: two runs with the same arguments produce identical
// bytes.

// Rows are bare matrices as arrays of 0/1 row arrays, ascending in row-major
// lexicographic order.
void emit_boolean_witnesses(std::size_t n, unsigned workers, std::ostream& out);

// One row per eventually constant pair: the pair, its spanning tree and the
// marked edge, vertices 1-indexed.
void emit_setpair_witnesses(std::size_t m, std::size_t n, std::ostream& out);

// One row per (nilpotent pair, balanced vector) triple with its image under
// theta, entries as canonical field indices.
void emit_theta_audit_rows(std::uint64_t q, unsigned m, unsigned n, std::ostream& out);

// CSV sweep over a (q, m, n) grid: every formula value plus one pass/fail
// column per identity. Returns true when every row passes. Non-prime-power
// q values in the range are skipped.
struct SweepRange {
  std::uint64_t q_lo = 2;
  std::uint64_t q_hi = 5;
  unsigned m_lo = 0;
  unsigned m_hi = 8;
  unsigned n_lo = 0;
  unsigned n_hi = 8;
};

bool emit_formula_sweep_csv(const SweepRange& range, std::ostream& out);

}  // namespace nilcount
