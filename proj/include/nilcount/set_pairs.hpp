#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "nilcount/counting.hpp"
#include "nilcount/errors.hpp"

namespace nilcount {

// Pair of total maps f: X -> Y, g: Y -> X on X = {0..m-1}, Y = {0..n-1}.
struct SetPair {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<std::uint32_t> f;  // length m, values in [0, n)
  std::vector<std::uint32_t> g;  // length n, values in [0, m)

  auto operator<=>(const SetPair&) const = default;
};

// True iff (gf)^m is a constant map on X. The image chain of gf strictly
// shrinks until it stabilizes, so exponent m decides eventual constancy.
bool is_eventually_constant(const SetPair& p);

// Functional bipartite digraph of a pair: m red vertices for X, n black for
// Y, one outgoing edge per vertex.
struct BipartiteDigraph {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<std::uint32_t> edges_xy;  // x_i -> y_{edges_xy[i]}
  std::vector<std::uint32_t> edges_yx;  // y_j -> x_{edges_yx[j]}

  friend bool operator==(const BipartiteDigraph&, const BipartiteDigraph&) = default;
};

BipartiteDigraph gamma(const SetPair& p);

// Undirected edge {x_i, y_j} of K(m,n), stored by part indices.
struct TreeEdge {
  std::uint32_t x = 0;
  std::uint32_t y = 0;
  auto operator<=>(const TreeEdge&) const = default;
};

struct SpanningTree {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<TreeEdge> edges;  // sorted; m+n-1 entries

  friend bool operator==(const SpanningTree&, const SpanningTree&) = default;
};

struct MarkedTree {
  SpanningTree tree;
  TreeEdge marked;

  friend bool operator==(const MarkedTree&, const MarkedTree&) = default;
};

// Collapses the graph of an eventually constant pair to its underlying
// spanning tree of K(m,n); the doubled 2-cycle edge becomes the marked edge.
// Throws not_eventually_constant when the graph does not have exactly one
// cycle of length 2.
MarkedTree phi(const BipartiteDigraph& g);

// The unique eventually constant pair that phi(gamma(.)) maps to (t, e):
// both subtrees of t - e are oriented toward their endpoint of e and e is
// doubled into a 2-cycle. Throws edge_not_in_tree.
SetPair phi_preimage(const SpanningTree& t, TreeEdge e);

inline constexpr std::uint64_t kSetPairEnumerationCap = 100'000'000;

BigCount set_pair_space(std::size_t m, std::size_t n);  // n^m * m^n

// Brute-force count over all pairs; too_large when the pair space exceeds
// the cap.
BigCount enumerate_eventually_constant(std::size_t m, std::size_t n, unsigned workers = 1,
                                       std::uint64_t cap = kSetPairEnumerationCap);

// Spanning trees of K(m,n): exhaustive edge-subset filtering for m+n <= 9
// (the independent oracle), the closed form m^(n-1) n^(m-1) beyond.
BigCount spanning_trees_kmn(std::size_t m, std::size_t n);

// Visits all pairs in lexicographic (f, g) order.
void for_each_set_pair(std::size_t m, std::size_t n, const std::function<void(const SetPair&)>& fn);

}  // namespace nilcount
