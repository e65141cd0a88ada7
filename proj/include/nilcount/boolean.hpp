#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "nilcount/counting.hpp"
#include "nilcount/errors.hpp"

namespace nilcount {

// Square matrix over the Boolean semiring {0,1 : 1+1 = 1}. Rows are
// bit-packed: bit c of row r holds entry (r, c). Supports n <= 32.
class BoolMatrix {
 public:
  explicit BoolMatrix(std::size_t n) : n_(n), rows_(n, 0) {
    if (n > 32) fail(errc::too_large, "BoolMatrix supports n <= 32");
  }

  std::size_t size() const noexcept { return n_; }
  bool get(std::size_t r, std::size_t c) const { return (rows_[r] >> c) & 1u; }
  void set(std::size_t r, std::size_t c, bool v) {
    if (v)
      rows_[r] |= (1u << c);
    else
      rows_[r] &= ~(1u << c);
  }
  std::uint32_t row_bits(std::size_t r) const { return rows_[r]; }

  bool is_zero() const;
  friend bool operator==(const BoolMatrix& a, const BoolMatrix& b) {
    return a.n_ == b.n_ && a.rows_ == b.rows_;
  }

  static BoolMatrix from_rows(const std::vector<std::vector<int>>& rows);

 private:
  std::size_t n_;
  std::vector<std::uint32_t> rows_;
};

// OR-of-ANDs product. Throws shape_mismatch on different sizes.
BoolMatrix operator*(const BoolMatrix& a, const BoolMatrix& b);

// True iff a^n = 0 over the Boolean semiring; computed by repeated squaring.
bool is_nilpotent(const BoolMatrix& a);

// Directed graph on vertices 0..n-1; edges are ordered pairs (source, target),
// kept sorted and deduplicated.
struct Digraph {
  std::size_t n = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
};

// Adjacency convention: entry (i, j) = 1 encodes the edge j -> i, so the
// column indexes the source and the row the target. The two maps are mutually
// inverse, and a matrix is nilpotent exactly when its digraph is acyclic.
Digraph to_digraph(const BoolMatrix& a);
BoolMatrix to_bool_matrix(const Digraph& g);

// Cycle detection by three-color depth-first search.
bool is_dag(const Digraph& g);

using BoolWitnessSink = std::function<void(const BoolMatrix&)>;

inline constexpr std::size_t kBooleanEnumerationCap = 5;

// Scans all 2^(n^2) Boolean matrices and counts the nilpotent ones,
// optionally streaming each witness (in ascending row-major order) to the
// sink. Throws too_large above the cap; the scan cost is 2^(n^2).
BigCount enumerate_boolean_nilpotent(std::size_t n, unsigned workers = 1,
                                     const BoolWitnessSink& sink = nullptr,
                                     std::size_t cap = kBooleanEnumerationCap);

}  // namespace nilcount
