#include "nilcount/boolean.hpp"

#include <algorithm>
#include <string>

#include "nilcount/parallel.hpp"

namespace nilcount {

bool BoolMatrix::is_zero() const {
  return std::all_of(rows_.begin(), rows_.end(), [](std::uint32_t r) { return r == 0; });
}

BoolMatrix BoolMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  BoolMatrix a(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.size()) fail(errc::shape_mismatch, "Boolean matrix literal must be square");
    for (std::size_t c = 0; c < rows[r].size(); ++c) a.set(r, c, rows[r][c] != 0);
  }
  return a;
}

BoolMatrix operator*(const BoolMatrix& a, const BoolMatrix& b) {
  if (a.size() != b.size()) fail(errc::shape_mismatch, "Boolean product needs equal sizes");
  const std::size_t n = a.size();
  BoolMatrix c(n);
  for (std::size_t r = 0; r < n; ++r) {
    std::uint32_t acc = 0;
    std::uint32_t arow = a.row_bits(r);
    while (arow != 0) {
      const unsigned j = static_cast<unsigned>(__builtin_ctz(arow));
      acc |= b.row_bits(j);
      arow &= arow - 1;
    }
    for (std::size_t col = 0; col < n; ++col)
      if ((acc >> col) & 1u) c.set(r, col, true);
  }
  return c;
}

bool is_nilpotent(const BoolMatrix& a) {
  const std::size_t n = a.size();
  if (n == 0) return true;
  BoolMatrix power = a;
  std::size_t e = 1;
  while (e < n) {
    power = power * power;
    e *= 2;
  }
  return power.is_zero();
}

Digraph to_digraph(const BoolMatrix& a) {
  Digraph g;
  g.n = a.size();
  for (std::uint32_t src = 0; src < g.n; ++src)
    for (std::uint32_t dst = 0; dst < g.n; ++dst)
      if (a.get(dst, src)) g.edges.emplace_back(src, dst);
  return g;
}

BoolMatrix to_bool_matrix(const Digraph& g) {
  BoolMatrix a(g.n);
  for (const auto& [src, dst] : g.edges) a.set(dst, src, true);
  return a;
}

bool is_dag(const Digraph& g) {
  std::vector<std::vector<std::uint32_t>> adj(g.n);
  for (const auto& [src, dst] : g.edges) adj[src].push_back(dst);

  enum : std::uint8_t { white, gray, black };
  std::vector<std::uint8_t> color(g.n, white);
  std::vector<std::pair<std::uint32_t, std::size_t>> stack;
  for (std::uint32_t start = 0; start < g.n; ++start) {
    if (color[start] != white) continue;
    color[start] = gray;
    stack.emplace_back(start, 0);
    while (!stack.empty()) {
      auto& [u, next] = stack.back();
      if (next < adj[u].size()) {
        const std::uint32_t v = adj[u][next++];
        if (color[v] == gray) return false;
        if (color[v] == white) {
          color[v] = gray;
          stack.emplace_back(v, 0);
        }
      } else {
        color[u] = black;
        stack.pop_back();
      }
    }
  }
  return true;
}

namespace {

struct ScanResult {
  std::uint64_t count = 0;
  std::vector<std::uint64_t> witnesses;
};

// Entry (r, c) of candidate `idx` is bit n^2-1-(r*n+c), so ascending idx
// enumerates matrices in ascending row-major lexicographic order.
BoolMatrix decode_candidate(std::size_t n, std::uint64_t idx) {
  BoolMatrix a(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      a.set(r, c, (idx >> (n * n - 1 - (r * n + c))) & 1u);
  return a;
}

}  // namespace

BigCount enumerate_boolean_nilpotent(std::size_t n, unsigned workers, const BoolWitnessSink& sink,
                                     std::size_t cap) {
  if (n < 1) fail(errc::out_of_range, "matrix size must be at least 1");
  if (n > cap)
    fail(errc::too_large, "n = " + std::to_string(n) + " exceeds the enumeration cap " + std::to_string(cap) +
                              " (scan cost 2^(n^2))");
  if (n > 7) fail(errc::too_large, "the 2^(n^2) index space does not fit 64 bits for n > 7");

  const unsigned bits = static_cast<unsigned>(n * n);
  const std::uint64_t space = 1ull << bits;
  const std::uint32_t row_mask = (1u << n) - 1;

  // reversal table: candidate rows come out with column 0 in the high bit
  std::vector<std::uint32_t> reversed(1u << n, 0);
  for (std::uint32_t v = 0; v < (1u << n); ++v) {
    std::uint32_t r = 0;
    for (std::size_t c = 0; c < n; ++c)
      if ((v >> (n - 1 - c)) & 1u) r |= 1u << c;
    reversed[v] = r;
  }

  const bool collect = static_cast<bool>(sink);
  auto scan_chunk = [&](std::uint64_t lo, std::uint64_t hi) {
    ScanResult result;
    std::uint32_t rows[32];
    std::uint32_t scratch[32];
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      bool diag_clear = true;
      for (std::size_t r = 0; r < n; ++r) {
        rows[r] = reversed[(idx >> (n * (n - 1 - r))) & row_mask];
        diag_clear = diag_clear && (((rows[r] >> r) & 1u) == 0);
      }
      if (!diag_clear) continue;  // nilpotent matrices have zero diagonal
      // square until the exponent reaches n
      std::size_t e = 1;
      while (e < n) {
        for (std::size_t r = 0; r < n; ++r) {
          std::uint32_t acc = 0;
          std::uint32_t arow = rows[r];
          while (arow != 0) {
            acc |= rows[__builtin_ctz(arow)];
            arow &= arow - 1;
          }
          scratch[r] = acc;
        }
        for (std::size_t r = 0; r < n; ++r) rows[r] = scratch[r];
        e *= 2;
      }
      std::uint32_t any = 0;
      for (std::size_t r = 0; r < n; ++r) any |= rows[r];
      if (any == 0) {
        ++result.count;
        if (collect) result.witnesses.push_back(idx);
      }
    }
    return result;
  };

  ScanResult total = parallel_reduce(
      0, space, workers, ScanResult{}, scan_chunk, [](ScanResult acc, ScanResult part) {
        acc.count += part.count;
        acc.witnesses.insert(acc.witnesses.end(), part.witnesses.begin(), part.witnesses.end());
        return acc;
      });

  if (sink)
    for (std::uint64_t idx : total.witnesses) sink(decode_candidate(n, idx));
  return BigCount(total.count);
}

}  // namespace nilcount
