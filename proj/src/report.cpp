#include "nilcount/report.hpp"

#include <json.hpp>

#include <ostream>

#include "nilcount/boolean.hpp"
#include "nilcount/counting.hpp"
#include "nilcount/nilpotent_pairs.hpp"
#include "nilcount/set_pairs.hpp"

namespace nilcount {

namespace {

using nlohmann::json;

json header(const char* kind, json params) {
  return json{{"schema_version", kSchemaVersion}, {"kind", kind}, {"params", std::move(params)}};
}

json bool_matrix_rows(const BoolMatrix& a) {
  json rows = json::array();
  for (std::size_t r = 0; r < a.size(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < a.size(); ++c) row.push_back(a.get(r, c) ? 1 : 0);
    rows.push_back(std::move(row));
  }
  return rows;
}

json gf_matrix_rows(const GfMatrix& a) {
  json rows = json::array();
  for (std::size_t r = 0; r < a.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < a.cols(); ++c) row.push_back(a(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

void emit_boolean_witnesses(std::size_t n, unsigned workers, std::ostream& out) {
  out << header("boolean_witnesses", json{{"n", n}}).dump() << '\n';
  enumerate_boolean_nilpotent(n, workers, [&](const BoolMatrix& a) {
    out << bool_matrix_rows(a).dump() << '\n';
  });
}

void emit_setpair_witnesses(std::size_t m, std::size_t n, std::ostream& out) {
  out << header("setpair_witnesses", json{{"m", m}, {"n", n}}).dump() << '\n';
  for_each_set_pair(m, n, [&](const SetPair& p) {
    if (!is_eventually_constant(p)) return;
    const MarkedTree marked = phi(gamma(p));
    json row;
    json f = json::array();
    for (auto v : p.f) f.push_back(v + 1);
    json g = json::array();
    for (auto v : p.g) g.push_back(v + 1);
    json tree = json::array();
    for (const TreeEdge& e : marked.tree.edges) tree.push_back(json::array({e.x + 1, e.y + 1}));
    row["f"] = std::move(f);
    row["g"] = std::move(g);
    row["tree"] = std::move(tree);
    row["edge"] = json::array({marked.marked.x + 1, marked.marked.y + 1});
    out << row.dump() << '\n';
  });
}

void emit_theta_audit_rows(std::uint64_t q, unsigned m, unsigned n, std::ostream& out) {
  out << header("theta_audit", json{{"q", q}, {"m", m}, {"n", n}}).dump() << '\n';
  const FieldPtr field = make_field(static_cast<std::uint32_t>(q));
  for_each_linear_pair(field, m, n, [&](const LinearPair& pair) {
    const GfMatrix gf = pair.composite_on_v();
    if (!is_nilpotent(gf)) return;
    const GfMatrix fg = pair.composite_on_w();
    for_each_vector(field, m, [&](const GfVector& v) {
      const std::size_t a = cyclic_length(gf, v);
      if (a != 0 && cyclic_length(fg, mat_apply(pair.f, v)) != a) return;
      const LinearPair image = theta(NilpotentTriple{pair, v});
      json row;
      row["f"] = gf_matrix_rows(pair.f);
      row["g"] = gf_matrix_rows(pair.g);
      row["v"] = json(v);
      row["image_f"] = gf_matrix_rows(image.f);
      row["image_g"] = gf_matrix_rows(image.g);
      out << row.dump() << '\n';
    });
  });
}

bool emit_formula_sweep_csv(const SweepRange& range, std::ostream& out) {
  out << "schema_version,q,m,n,sum_formula,closed_formula,formulas_agree,rank_partition_ok,"
         "length_partition_ok\n";
  bool all_ok = true;
  for (std::uint64_t q = range.q_lo; q <= range.q_hi; ++q) {
    if (!is_prime_power(q)) continue;
    for (unsigned m = range.m_lo; m <= range.m_hi; ++m)
      for (unsigned n = range.n_lo; n <= range.n_hi; ++n) {
        const BigCount sum = nilpairs_sum_formula(q, m, n);
        const BigCount closed = nilpairs_closed_formula(q, m, n);
        const bool agree = sum == closed;
        const bool rank_ok = rank_partition_holds(q, m, n);
        const bool length_ok = length_partition_holds(q, m, n);
        all_ok = all_ok && agree && rank_ok && length_ok;
        out << kSchemaVersion << ',' << q << ',' << m << ',' << n << ',' << sum.str() << ','
            << closed.str() << ',' << (agree ? "pass" : "fail") << ',' << (rank_ok ? "pass" : "fail")
            << ',' << (length_ok ? "pass" : "fail") << '\n';
      }
  }
  return all_ok;
}

}  // namespace nilcount
