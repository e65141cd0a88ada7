#include "nilcount/set_pairs.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "nilcount/parallel.hpp"

namespace nilcount {

namespace {

void validate(const SetPair& p) {
  if (p.m < 1 || p.n < 1) fail(errc::out_of_range, "set sizes must be positive");
  if (p.f.size() != p.m || p.g.size() != p.n) fail(errc::shape_mismatch, "map lengths do not match set sizes");
  for (auto v : p.f)
    if (v >= p.n) fail(errc::out_of_range, "f value outside Y");
  for (auto v : p.g)
    if (v >= p.m) fail(errc::out_of_range, "g value outside X");
}

bool composite_power_is_constant(const std::vector<std::uint32_t>& f, const std::vector<std::uint32_t>& g,
                                 std::size_t m) {
  // h = (gf)^m pointwise
  std::vector<std::uint32_t> h(m);
  for (std::size_t x = 0; x < m; ++x) h[x] = g[f[x]];
  std::vector<std::uint32_t> next(m);
  for (std::size_t step = 1; step < m; ++step) {
    for (std::size_t x = 0; x < m; ++x) next[x] = g[f[h[x]]];
    h.swap(next);
  }
  return std::all_of(h.begin(), h.end(), [&](std::uint32_t v) { return v == h[0]; });
}

}  // namespace

bool is_eventually_constant(const SetPair& p) {
  validate(p);
  return composite_power_is_constant(p.f, p.g, p.m);
}

BipartiteDigraph gamma(const SetPair& p) {
  validate(p);
  return BipartiteDigraph{p.m, p.n, p.f, p.g};
}

MarkedTree phi(const BipartiteDigraph& g) {
  if (g.edges_xy.size() != g.m || g.edges_yx.size() != g.n)
    fail(errc::shape_mismatch, "out-edge lists do not match the part sizes");
  for (auto v : g.edges_xy)
    if (v >= g.n) fail(errc::out_of_range, "edge target outside Y");
  for (auto v : g.edges_yx)
    if (v >= g.m) fail(errc::out_of_range, "edge target outside X");

  const std::size_t total = g.m + g.n;
  // vertices 0..m-1 are X, m..m+n-1 are Y
  auto succ = [&](std::size_t u) -> std::size_t {
    return u < g.m ? g.m + g.edges_xy[u] : g.edges_yx[u - g.m];
  };

  // functional-graph cycle detection with per-walk stamps
  std::vector<std::uint32_t> walk_id(total, 0);
  std::vector<std::uint32_t> walk_pos(total, 0);
  std::vector<std::vector<std::size_t>> cycles;
  std::uint32_t stamp = 0;
  for (std::size_t start = 0; start < total; ++start) {
    if (walk_id[start] != 0) continue;
    ++stamp;
    std::vector<std::size_t> walk;
    std::size_t u = start;
    while (walk_id[u] == 0) {
      walk_id[u] = stamp;
      walk_pos[u] = static_cast<std::uint32_t>(walk.size());
      walk.push_back(u);
      u = succ(u);
    }
    if (walk_id[u] == stamp)
      cycles.emplace_back(walk.begin() + walk_pos[u], walk.end());
  }

  if (cycles.size() != 1 || cycles.front().size() != 2)
    fail(errc::not_eventually_constant,
         "graph has " + std::to_string(cycles.size()) + " cycle(s); need exactly one 2-cycle");

  const std::size_t a = cycles.front()[0];
  const std::size_t b = cycles.front()[1];
  const std::size_t cx = a < g.m ? a : b;
  const std::size_t cy = a < g.m ? b : a;

  MarkedTree out;
  out.marked = TreeEdge{static_cast<std::uint32_t>(cx), static_cast<std::uint32_t>(cy - g.m)};
  out.tree.m = g.m;
  out.tree.n = g.n;
  for (std::uint32_t x = 0; x < g.m; ++x) out.tree.edges.push_back(TreeEdge{x, g.edges_xy[x]});
  for (std::uint32_t y = 0; y < g.n; ++y) out.tree.edges.push_back(TreeEdge{g.edges_yx[y], y});
  std::sort(out.tree.edges.begin(), out.tree.edges.end());
  out.tree.edges.erase(std::unique(out.tree.edges.begin(), out.tree.edges.end()), out.tree.edges.end());
  return out;
}

SetPair phi_preimage(const SpanningTree& t, TreeEdge e) {
  if (std::find(t.edges.begin(), t.edges.end(), e) == t.edges.end())
    fail(errc::edge_not_in_tree, "marked edge {x" + std::to_string(e.x + 1) + ", y" + std::to_string(e.y + 1) +
                                     "} is not an edge of the tree");

  const std::size_t total = t.m + t.n;
  std::vector<std::vector<std::size_t>> adj(total);
  for (const TreeEdge& edge : t.edges) {
    if (edge == e) continue;
    adj[edge.x].push_back(t.m + edge.y);
    adj[t.m + edge.y].push_back(edge.x);
  }

  SetPair p;
  p.m = t.m;
  p.n = t.n;
  p.f.assign(t.m, 0);
  p.g.assign(t.n, 0);

  // orient each component toward its endpoint of e, then double e
  auto orient_toward = [&](std::size_t root) {
    std::vector<std::size_t> queue{root};
    std::vector<bool> seen(total, false);
    seen[root] = true;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t u = queue[head];
      for (std::size_t v : adj[u]) {
        if (seen[v]) continue;
        seen[v] = true;
        if (v < t.m)
          p.f[v] = static_cast<std::uint32_t>(u - t.m);
        else
          p.g[v - t.m] = static_cast<std::uint32_t>(u);
        queue.push_back(v);
      }
    }
  };
  orient_toward(e.x);
  orient_toward(t.m + e.y);
  p.f[e.x] = e.y;
  p.g[e.y] = e.x;
  return p;
}

BigCount set_pair_space(std::size_t m, std::size_t n) {
  return big_pow(n, m) * big_pow(m, n);
}

BigCount enumerate_eventually_constant(std::size_t m, std::size_t n, unsigned workers, std::uint64_t cap) {
  if (m < 1 || n < 1) fail(errc::out_of_range, "set sizes must be positive");
  const BigCount space = set_pair_space(m, n);
  if (space > cap)
    fail(errc::too_large, "pair space n^m * m^n = " + space.str() + " exceeds the cap " + std::to_string(cap));
  if (space > BigCount(1) << 62) fail(errc::too_large, "pair space does not fit the 64-bit index");

  std::uint64_t f_space = 1;
  for (std::size_t i = 0; i < m; ++i) f_space *= n;

  auto scan_chunk = [&](std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint32_t> f(m), g(n, 0);
    std::uint64_t count = 0;
    for (std::uint64_t fi = lo; fi < hi; ++fi) {
      std::uint64_t rest = fi;
      for (std::size_t i = m; i-- > 0;) {  // big-endian digits: f[0] most significant
        f[i] = static_cast<std::uint32_t>(rest % n);
        rest /= n;
      }
      std::fill(g.begin(), g.end(), 0);
      while (true) {
        if (composite_power_is_constant(f, g, m)) ++count;
        std::size_t pos = n;
        while (pos > 0 && g[pos - 1] == m - 1) g[--pos] = 0;
        if (pos == 0) break;
        ++g[pos - 1];
      }
    }
    return count;
  };

  const std::uint64_t total = parallel_reduce(
      0, f_space, workers, std::uint64_t{0}, scan_chunk,
      [](std::uint64_t a, std::uint64_t b) { return a + b; });
  return BigCount(total);
}

BigCount spanning_trees_kmn(std::size_t m, std::size_t n) {
  if (m < 1 || n < 1) fail(errc::out_of_range, "part sizes must be positive");
  if (m + n > 9) return trees_formulas(m, n).bipartite;

  const std::size_t edge_count = m * n;  // edge id x*n + y
  const std::size_t pick = m + n - 1;
  if (pick > edge_count) return 0;  // only possible for m = n = 1 picking 1 of 1, never hit

  std::vector<std::size_t> choice(pick);
  std::iota(choice.begin(), choice.end(), 0);
  std::vector<std::size_t> parent(m + n);
  std::uint64_t count = 0;
  while (true) {
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    bool acyclic = true;
    for (std::size_t id : choice) {
      const std::size_t a = find(id / n);
      const std::size_t b = find(m + id % n);
      if (a == b) {
        acyclic = false;
        break;
      }
      parent[a] = b;
    }
    if (acyclic) ++count;  // m+n-1 acyclic edges on m+n vertices span

    // next lexicographic combination
    std::size_t i = pick;
    while (i > 0 && choice[i - 1] == edge_count - pick + i - 1) --i;
    if (i == 0) break;
    ++choice[i - 1];
    for (std::size_t j = i; j < pick; ++j) choice[j] = choice[j - 1] + 1;
  }
  return BigCount(count);
}

void for_each_set_pair(std::size_t m, std::size_t n, const std::function<void(const SetPair&)>& fn) {
  SetPair p;
  p.m = m;
  p.n = n;
  p.f.assign(m, 0);
  p.g.assign(n, 0);
  while (true) {
    fn(p);
    // odometer over the concatenated (f, g) digits, least significant last
    std::size_t pos = n;
    while (pos > 0 && p.g[pos - 1] == m - 1) p.g[--pos] = 0;
    if (pos > 0) {
      ++p.g[pos - 1];
      continue;
    }
    pos = m;
    while (pos > 0 && p.f[pos - 1] == n - 1) p.f[--pos] = 0;
    if (pos == 0) break;
    ++p.f[pos - 1];
  }
}

}  // namespace nilcount
