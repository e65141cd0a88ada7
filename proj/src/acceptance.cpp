#include "nilcount/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <tuple>
#include <utility>

#include "nilcount/boolean.hpp"
#include "nilcount/counting.hpp"
#include "nilcount/nilpotent_pairs.hpp"
#include "nilcount/set_pairs.hpp"

namespace nilcount {

namespace {

// Collects failure records; keeps the report readable when many tuples fail.
class Failures {
 public:
  void add(const std::string& record) {
    ++count_;
    if (count_ <= 4) {
      if (!text_.empty()) text_ += "; ";
      text_ += record;
    }
  }

  bool empty() const { return count_ == 0; }
  std::string text() const {
    if (count_ <= 4) return text_;
    return text_ + "; ... " + std::to_string(count_ - 4) + " more";
  }

 private:
  std::uint64_t count_ = 0;
  std::string text_;
};

std::string tree_key(const SpanningTree& t) {
  std::string key;
  for (const TreeEdge& e : t.edges) {
    key += std::to_string(e.x);
    key += ',';
    key += std::to_string(e.y);
    key += ';';
  }
  return key;
}

std::string marked_key(const MarkedTree& t) {
  return tree_key(t.tree) + "|" + std::to_string(t.marked.x) + "," + std::to_string(t.marked.y);
}

bool criterion_boolean_counts(unsigned workers, std::string& detail) {
  const std::uint64_t expected[] = {0, 1, 3, 25, 543, 29281};
  Failures failures;
  for (std::size_t n = 1; n <= 5; ++n) {
    const BigCount brute = enumerate_boolean_nilpotent(n, workers);
    const BigCount formula = dag_count_formula(static_cast<unsigned>(n));
    if (brute != formula || brute != BigCount(expected[n]))
      failures.add("n=" + std::to_string(n) + " brute=" + brute.str() + " formula=" + formula.str() +
                   " expected=" + std::to_string(expected[n]));
  }
  detail = failures.text();
  return failures.empty();
}

bool criterion_boolean_structure(unsigned workers, std::string& detail) {
  Failures failures;
  for (std::size_t n = 1; n <= 4; ++n) {
    enumerate_boolean_nilpotent(n, workers, [&](const BoolMatrix& a) {
      for (std::size_t i = 0; i < n; ++i) {
        if (a.get(i, i))
          failures.add("n=" + std::to_string(n) + " nonzero diagonal at " + std::to_string(i));
        for (std::size_t j = i + 1; j < n; ++j)
          if (a.get(i, j) && a.get(j, i))
            failures.add("n=" + std::to_string(n) + " symmetric 1s at (" + std::to_string(i) + "," +
                         std::to_string(j) + ")");
      }
    });
  }
  detail = failures.text();
  return failures.empty();
}

bool criterion_eventually_constant_counts(unsigned workers, std::string& detail) {
  Failures failures;
  for (std::size_t m = 1; m <= 4; ++m)
    for (std::size_t n = 1; n <= 4; ++n) {
      const BigCount brute = enumerate_eventually_constant(m, n, workers);
      const BigCount formula = eventually_constant_formula(m, n);
      if (brute != formula)
        failures.add("(m,n)=(" + std::to_string(m) + "," + std::to_string(n) + ") brute=" + brute.str() +
                     " formula=" + formula.str());
    }
  // values reported for the small cases
  const std::pair<std::pair<std::size_t, std::size_t>, std::uint64_t> pinned[] = {
      {{1, 1}, 1}, {{2, 1}, 2}, {{2, 2}, 12}, {{3, 3}, 405}};
  for (const auto& [mn, value] : pinned) {
    const BigCount brute = enumerate_eventually_constant(mn.first, mn.second, workers);
    if (brute != BigCount(value))
      failures.add("(m,n)=(" + std::to_string(mn.first) + "," + std::to_string(mn.second) + ") brute=" +
                   brute.str() + " pinned=" + std::to_string(value));
  }
  detail = failures.text();
  return failures.empty();
}

bool criterion_tree_bijection(unsigned, std::string& detail) {
  Failures failures;
  for (std::size_t m = 1; m <= 3; ++m)
    for (std::size_t n = 1; n <= 3; ++n) {
      std::map<std::string, SetPair> image;       // (tree, edge) -> pair
      std::map<std::string, std::size_t> by_tree;  // tree -> number of marked edges seen
      std::uint64_t total = 0;
      for_each_set_pair(m, n, [&](const SetPair& p) {
        if (!is_eventually_constant(p)) return;
        ++total;
        const MarkedTree marked = phi(gamma(p));
        const std::string key = marked_key(marked);
        if (!image.emplace(key, p).second)
          failures.add("(m,n)=(" + std::to_string(m) + "," + std::to_string(n) + ") phi(gamma) collision at " + key);
        ++by_tree[tree_key(marked.tree)];
        const SetPair back = phi_preimage(marked.tree, marked.marked);
        if (!(back == p))
          failures.add("(m,n)=(" + std::to_string(m) + "," + std::to_string(n) + ") preimage mismatch at " + key);
      });
      for (const auto& [key, edges] : by_tree)
        if (edges != m + n - 1)
          failures.add("(m,n)=(" + std::to_string(m) + "," + std::to_string(n) + ") tree " + key + " has " +
                       std::to_string(edges) + " preimages, want " + std::to_string(m + n - 1));
      const BigCount trees = spanning_trees_kmn(m, n);
      if (BigCount(by_tree.size()) != trees)
        failures.add("(m,n)=(" + std::to_string(m) + "," + std::to_string(n) + ") trees seen " +
                     std::to_string(by_tree.size()) + " vs oracle " + trees.str());
      if (BigCount(total) != trees * BigCount(m + n - 1))
        failures.add("(m,n)=(" + std::to_string(m) + "," + std::to_string(n) + ") pair total " +
                     std::to_string(total) + " vs trees*(m+n-1)");
    }
  for (std::size_t m = 1; m <= 5; ++m)
    for (std::size_t n = 1; m + n <= 6; ++n) {
      const BigCount oracle = spanning_trees_kmn(m, n);
      const BigCount formula = trees_formulas(m, n).bipartite;
      if (oracle != formula)
        failures.add("K(" + std::to_string(m) + "," + std::to_string(n) + ") oracle=" + oracle.str() +
                     " formula=" + formula.str());
    }
  detail = failures.text();
  return failures.empty();
}

bool criterion_nilpotent_pair_counts(unsigned workers, std::string& detail) {
  Failures failures;
  auto check = [&](std::uint64_t q, unsigned m, unsigned n) {
    const BigCount brute = enumerate_nilpotent_pairs(q, m, n, workers);
    const BigCount sum = nilpairs_sum_formula(q, m, n);
    const BigCount closed = nilpairs_closed_formula(q, m, n);
    if (brute != sum || brute != closed)
      failures.add("(q,m,n)=(" + std::to_string(q) + "," + std::to_string(m) + "," + std::to_string(n) +
                   ") brute=" + brute.str() + " sum=" + sum.str() + " closed=" + closed.str());
    return brute;
  };
  for (unsigned m = 0; m <= 3; ++m)
    for (unsigned n = 0; n <= 3; ++n) check(2, m, n);
  for (unsigned m = 0; m <= 5; ++m)
    for (unsigned n = 0; n <= 5; ++n)
      if (m * n <= 5) check(3, m, n);
  if (check(2, 1, 1) != 3) failures.add("(q,m,n)=(2,1,1) expected 3");
  if (check(2, 2, 2) != 112) failures.add("(q,m,n)=(2,2,2) expected 112");
  detail = failures.text();
  return failures.empty();
}

bool criterion_formula_sweep(unsigned, std::string& detail) {
  Failures failures;
  for (std::uint64_t q : {2, 3, 4, 5})
    for (unsigned m = 0; m <= 8; ++m)
      for (unsigned n = 0; n <= 8; ++n) {
        const BigCount sum = nilpairs_sum_formula(q, m, n);
        const BigCount closed = nilpairs_closed_formula(q, m, n);
        if (sum != closed)
          failures.add("(q,m,n)=(" + std::to_string(q) + "," + std::to_string(m) + "," + std::to_string(n) +
                       ") sum=" + sum.str() + " closed=" + closed.str());
      }
  for (std::uint64_t q : {2, 3})
    for (unsigned m = 0; m <= 6; ++m)
      for (unsigned n = 0; n <= 6; ++n)
        if (!rank_partition_holds(q, m, n))
          failures.add("rank partition fails at (q,m,n)=(" + std::to_string(q) + "," + std::to_string(m) +
                       "," + std::to_string(n) + ")");
  detail = failures.text();
  return failures.empty();
}

constexpr std::tuple<std::uint64_t, unsigned, unsigned> kThetaGrid[] = {
    {2, 1, 1}, {2, 1, 2}, {2, 2, 2}, {3, 1, 1}, {3, 1, 2}};

bool criterion_theta_bijection(unsigned workers, std::string& detail) {
  Failures failures;
  for (const auto& [q, m, n] : kThetaGrid) {
    const BigCount space = pair_space(q, m, n);
    const BigCount triples = enumerate_balanced_triples(q, m, n, std::nullopt, workers);
    if (triples != space)
      failures.add("(q,m,n)=(" + std::to_string(q) + "," + std::to_string(m) + "," + std::to_string(n) +
                   ") triples=" + triples.str() + " vs q^(2mn)=" + space.str());
    const ThetaAudit audit = audit_theta(q, m, n);
    if (!audit.injective || !audit.covers_hom_space || audit.triples != space)
      failures.add("(q,m,n)=(" + std::to_string(q) + "," + std::to_string(m) + "," + std::to_string(n) +
                   ") theta audit: triples=" + audit.triples.str() + " image=" + audit.image_size.str() +
                   " injective=" + (audit.injective ? "yes" : "no"));
  }
  detail = failures.text();
  return failures.empty();
}

bool criterion_length_partition(unsigned workers, std::string& detail) {
  Failures failures;
  for (const auto& [q, m, n] : kThetaGrid) {
    BigCount sum = 0;
    for (unsigned ell = 0; ell <= std::min(m, n); ++ell) {
      const BigCount slice = enumerate_balanced_triples(q, m, n, ell, workers);
      const BigCount formula = balanced_triple_formula(q, m, n, ell);
      if (slice != formula)
        failures.add("(q,m,n,l)=(" + std::to_string(q) + "," + std::to_string(m) + "," + std::to_string(n) +
                     "," + std::to_string(ell) + ") brute=" + slice.str() + " formula=" + formula.str());
      sum += slice;
    }
    const BigCount space = pair_space(q, m, n);
    if (sum != space)
      failures.add("(q,m,n)=(" + std::to_string(q) + "," + std::to_string(m) + "," + std::to_string(n) +
                   ") length sum=" + sum.str() + " vs q^(2mn)=" + space.str());
  }
  detail = failures.text();
  return failures.empty();
}

bool criterion_balanced_identities(unsigned, std::string& detail) {
  Failures failures;
  const FieldPtr field = make_field(2);
  const std::uint64_t q = 2;

  // per-pair kernel formula and the four balanced/unbalanced facts
  for (unsigned m = 0; m <= 2; ++m)
    for (unsigned n = 0; n <= 2; ++n) {
      for_each_linear_pair(field, m, n, [&](const LinearPair& pair) {
        if (!is_nilpotent_pair(pair)) return;
        const std::string at = "(q,m,n)=(2," + std::to_string(m) + "," + std::to_string(n) + ")";
        const BigCount direct = count_balanced_direct(pair);
        const BigCount viaKernel = balanced_count_kernel_formula(pair);
        if (direct != viaKernel)
          failures.add(at + " pair#" + std::to_string(linear_pair_index(pair)) + " direct=" + direct.str() +
                       " kernel=" + viaKernel.str());

        const GfMatrix gf = pair.composite_on_v();
        const LinearPair swapped = pair.swapped();
        for_each_vector(field, m, [&](const GfVector& v) {
          const BalancedClass cls = classify_vector(pair, v);
          // walk T[v] through coefficient tuples over the cyclic vectors
          std::vector<GfVector> cyclic;
          GfVector u = v;
          for (std::size_t i = 0; i < cls.a; ++i) {
            cyclic.push_back(u);
            u = mat_apply(gf, u);
          }
          std::uint64_t combos = 1;
          for (std::size_t i = 0; i < cls.a; ++i) combos *= q;
          for (std::uint64_t ci = 1; ci < combos; ++ci) {
            GfVector w(m, 0);
            std::uint64_t rest = ci;
            for (std::size_t i = 0; i < cls.a; ++i) {
              const GfElem coeff = static_cast<GfElem>(rest % q);
              rest /= q;
              for (unsigned r = 0; r < m; ++r)
                w[r] = field->add(w[r], field->mul(coeff, cyclic[i][r]));
            }
            const BalancedClass wc = classify_vector(pair, w);
            if (cls.tag == BalanceTag::balanced && wc.tag != BalanceTag::balanced)
              failures.add(at + " cyclic subspace of a balanced vector has an unbalanced member");
            const bool wz = std::all_of(w.begin(), w.end(), [](GfElem e) { return e == 0; });
            if (cls.tag == BalanceTag::unbalanced && !wz && wc.tag != BalanceTag::unbalanced)
              failures.add(at + " cyclic subspace of an unbalanced vector has a balanced nonzero member");
          }
          const GfVector fv = mat_apply(pair.f, v);
          const bool fv_zero = std::all_of(fv.begin(), fv.end(), [](GfElem e) { return e == 0; });
          if (cls.tag == BalanceTag::balanced && !fv_zero &&
              classify_vector(swapped, fv).tag != BalanceTag::unbalanced)
            failures.add(at + " image of a balanced vector with f(v) != 0 is not unbalanced");
          if (cls.tag == BalanceTag::unbalanced && classify_vector(swapped, fv).tag != BalanceTag::balanced)
            failures.add(at + " image of an unbalanced vector is not balanced");
        });
      });
    }

  // aggregate identities over all nilpotent pairs at fixed (m, n)
  const std::pair<unsigned, unsigned> grid[] = {{1, 1}, {1, 2}, {2, 2}};
  for (const auto& [m, n] : grid) {
    BigCount both_balanced = 0, both_unbalanced = 0, v_balanced_any_w = 0, any_v_w_balanced = 0;
    const BigCount qm = big_pow(q, m), qn = big_pow(q, n);
    for_each_linear_pair(field, m, n, [&](const LinearPair& pair) {
      if (!is_nilpotent_pair(pair)) return;
      const BigCount vb = count_balanced_direct(pair);
      const BigCount wb = count_balanced_direct(pair.swapped());
      const BigCount vu = qm - vb;
      const BigCount wu = qn - wb;
      both_balanced += vb * wb;
      both_unbalanced += vu * wu;
      v_balanced_any_w += vb * qn;
      any_v_w_balanced += qm * wb;
    });
    const BigCount space = pair_space(q, m, n);
    const std::string at = "(q,m,n)=(2," + std::to_string(m) + "," + std::to_string(n) + ")";
    if (v_balanced_any_w + any_v_w_balanced != space * (qm + qn))
      failures.add(at + " quadruple sum " + BigCount(v_balanced_any_w + any_v_w_balanced).str() +
                   " != q^(2mn)(q^m+q^n) = " + BigCount(space * (qm + qn)).str());
    if (both_balanced != both_unbalanced + space)
      failures.add(at + " balanced-balanced " + both_balanced.str() + " != unbalanced-unbalanced + q^(2mn) = " +
                   BigCount(both_unbalanced + space).str());
  }
  detail = failures.text();
  return failures.empty();
}

bool criterion_probabilities(unsigned workers, std::string& detail) {
  Failures failures;
  for (std::size_t m = 1; m <= 4; ++m)
    for (std::size_t n = 1; n <= 4; ++n) {
      const Rational observed(enumerate_eventually_constant(m, n, workers), set_pair_space(m, n));
      const Rational expected = eventually_constant_probability(m, n);
      if (observed != expected) {
        std::ostringstream os;
        os << "(m,n)=(" << m << "," << n << ") observed " << observed << " expected " << expected;
        failures.add(os.str());
      }
    }
  auto check_pair_probability = [&](std::uint64_t q, unsigned m, unsigned n) {
    const Rational observed(enumerate_nilpotent_pairs(q, m, n, workers), pair_space(q, m, n));
    const Rational expected = nilpotent_pair_probability(q, m, n);
    if (observed != expected) {
      std::ostringstream os;
      os << "(q,m,n)=(" << q << "," << m << "," << n << ") observed " << observed << " expected " << expected;
      failures.add(os.str());
    }
  };
  for (unsigned m = 0; m <= 3; ++m)
    for (unsigned n = 0; n <= 3; ++n) check_pair_probability(2, m, n);
  for (unsigned m = 0; m <= 5; ++m)
    for (unsigned n = 0; n <= 5; ++n)
      if (m * n <= 5) check_pair_probability(3, m, n);

  for (std::uint64_t q : {2, 3})
    for (unsigned m = 1; m <= 3; ++m) {
      const LimitAuditReport report = limit_audit(q, m, 30);
      if (!report.all_ok)
        failures.add("limit audit failed at (q,m)=(" + std::to_string(q) + "," + std::to_string(m) + ")");
    }
  detail = failures.text();
  return failures.empty();
}

}  // namespace

std::vector<CriterionResult> run_acceptance(unsigned workers, std::ostream* progress) {
  using Check = std::function<bool(unsigned, std::string&)>;
  const std::pair<std::string, Check> criteria[] = {
      {"boolean nilpotent counts match the DAG recurrence, n = 1..5", criterion_boolean_counts},
      {"boolean nilpotents have zero diagonal and one-sided antisymmetry, n <= 4", criterion_boolean_structure},
      {"eventually constant counts match m^(n-1) n^(m-1) (m+n-1), m,n <= 4", criterion_eventually_constant_counts},
      {"pair <-> (spanning tree, edge) bijection and tree counts", criterion_tree_bijection},
      {"nilpotent pair counts match the rank sum and the closed form", criterion_nilpotent_pair_counts},
      {"formula sweep: rank sum = closed form; rank counts partition q^(mn)", criterion_formula_sweep},
      {"balanced triples number q^(2mn) and theta is a bijection", criterion_theta_bijection},
      {"length slices match their formula and partition q^(2mn)", criterion_length_partition},
      {"balanced-vector identities: kernel formula, subspace facts, aggregates", criterion_balanced_identities},
      {"exact probabilities and limit residuals", criterion_probabilities},
  };

  std::vector<CriterionResult> results;
  int id = 0;
  for (const auto& [name, check] : criteria) {
    CriterionResult result;
    result.id = ++id;
    result.name = name;
    const auto start = std::chrono::steady_clock::now();
    try {
      result.pass = check(workers, result.detail);
    } catch (const std::exception& e) {
      result.pass = false;
      result.detail = std::string("exception: ") + e.what();
    }
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (progress) {
      (*progress) << "criterion " << result.id << " [" << (result.pass ? "PASS" : "FAIL") << "] "
                  << result.name << " (" << result.seconds << " s)";
      if (!result.pass) (*progress) << "\n    " << result.detail;
      (*progress) << std::endl;
    }
    results.push_back(std::move(result));
  }
  return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return !results.empty();
}

}  // namespace nilcount
