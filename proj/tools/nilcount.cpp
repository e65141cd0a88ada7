#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "nilcount/acceptance.hpp"
#include "nilcount/boolean.hpp"
#include "nilcount/counting.hpp"
#include "nilcount/matrix.hpp"
#include "nilcount/nilpotent_pairs.hpp"
#include "nilcount/parallel.hpp"
#include "nilcount/report.hpp"
#include "nilcount/set_pairs.hpp"

namespace {

using nilcount::BigCount;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

json to_json_count(const BigCount& value) {
  // JSON numbers are only exact up to 2^53; larger counts go out as strings
  if (value >= 0 && value <= BigCount(1ull << 53)) return json(value.convert_to<std::uint64_t>());
  return json(value.str());
}

void print_failure_record(const json& record) {
  json out = record;
  out["schema_version"] = nilcount::kSchemaVersion;
  out["status"] = "mismatch";
  std::cout << out.dump() << std::endl;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) nilcount::fail(nilcount::errc::io_error, "cannot open " + path + " for writing");
  return out;
}

// accepts "q=2..5,m=0..8,n=0..8"; single values allowed, e.g. "q=2"
nilcount::SweepRange parse_sweep(const std::string& text) {
  nilcount::SweepRange range;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string part = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    pos = comma == std::string::npos ? text.size() : comma + 1;

    const std::size_t eq = part.find('=');
    if (eq == std::string::npos || eq == 0) throw CLI::ValidationError("--sweep", "expected key=lo..hi in '" + part + "'");
    const std::string key = part.substr(0, eq);
    const std::string span = part.substr(eq + 1);
    const std::size_t dots = span.find("..");
    unsigned long lo = 0, hi = 0;
    try {
      if (dots == std::string::npos) {
        lo = hi = std::stoul(span);
      } else {
        lo = std::stoul(span.substr(0, dots));
        hi = std::stoul(span.substr(dots + 2));
      }
    } catch (const std::exception&) {
      throw CLI::ValidationError("--sweep", "cannot parse range '" + span + "'");
    }
    if (lo > hi) throw CLI::ValidationError("--sweep", "empty range in '" + part + "'");
    if (key == "q") {
      range.q_lo = lo;
      range.q_hi = hi;
    } else if (key == "m") {
      range.m_lo = static_cast<unsigned>(lo);
      range.m_hi = static_cast<unsigned>(hi);
    } else if (key == "n") {
      range.n_lo = static_cast<unsigned>(lo);
      range.n_hi = static_cast<unsigned>(hi);
    } else {
      throw CLI::ValidationError("--sweep", "unknown key '" + key + "'");
    }
  }
  return range;
}

int run_boolean(std::size_t n, unsigned workers, bool force, bool as_json, const std::string& emit_path) {
  const std::size_t cap = force ? 7 : nilcount::kBooleanEnumerationCap;
  if (force && n > nilcount::kBooleanEnumerationCap)
    std::cerr << "forced scan: 2^" << n * n << " = " << (1ull << (n * n)) << " matrices\n";
  const BigCount brute = nilcount::enumerate_boolean_nilpotent(n, workers, nullptr, cap);
  const BigCount formula = nilcount::dag_count_formula(static_cast<unsigned>(n));
  const bool agree = brute == formula;

  if (!emit_path.empty()) {
    auto out = open_output(emit_path);
    nilcount::emit_boolean_witnesses(n, workers, out);
  }

  if (as_json) {
    json out{{"schema_version", nilcount::kSchemaVersion}, {"subcommand", "boolean"},     {"n", n},
             {"brute_count", to_json_count(brute)},        {"formula", to_json_count(formula)},
             {"agree", agree}};
    std::cout << out.dump() << std::endl;
  } else {
    std::cout << brute.str() << " / formula " << formula.str() << " / " << (agree ? "OK" : "MISMATCH")
              << std::endl;
  }
  if (!agree)
    print_failure_record(json{{"subcommand", "boolean"}, {"n", n}, {"brute_count", to_json_count(brute)},
                              {"formula", to_json_count(formula)}});
  return agree ? kExitOk : kExitMismatch;
}

int run_setpairs(std::size_t m, std::size_t n, unsigned workers, bool force, bool as_json,
                 const std::string& witness_path) {
  const std::uint64_t cap = force ? (1ull << 62) : nilcount::kSetPairEnumerationCap;
  if (force) std::cerr << "forced scan: n^m * m^n = " << nilcount::set_pair_space(m, n).str() << " pairs\n";
  const BigCount brute = nilcount::enumerate_eventually_constant(m, n, workers, cap);
  const BigCount formula = nilcount::eventually_constant_formula(m, n);
  const bool agree = brute == formula;

  if (!witness_path.empty()) {
    auto out = open_output(witness_path);
    nilcount::emit_setpair_witnesses(m, n, out);
  }

  if (as_json) {
    json out{{"schema_version", nilcount::kSchemaVersion}, {"subcommand", "setpairs"},
             {"m", m},                                     {"n", n},
             {"brute_count", to_json_count(brute)},        {"formula", to_json_count(formula)},
             {"agree", agree}};
    std::cout << out.dump() << std::endl;
  } else {
    std::cout << brute.str() << " / formula " << formula.str() << " / " << (agree ? "OK" : "MISMATCH")
              << std::endl;
  }
  if (!agree)
    print_failure_record(json{{"subcommand", "setpairs"}, {"m", m}, {"n", n},
                              {"brute_count", to_json_count(brute)}, {"formula", to_json_count(formula)}});
  return agree ? kExitOk : kExitMismatch;
}

int run_nilpairs(std::uint64_t q, unsigned m, unsigned n, std::optional<unsigned> ell, bool audit,
                 unsigned workers, bool force, bool as_json, const std::string& emit_path) {
  const std::uint64_t cap = force ? (1ull << 62) : nilcount::kPairEnumerationCap;
  if (force) std::cerr << "forced scan: q^(2mn) = " << nilcount::pair_space(q, m, n).str() << " pairs\n";

  json out{{"schema_version", nilcount::kSchemaVersion}, {"subcommand", "nilpairs"},
           {"q", q},                                     {"m", m},
           {"n", n}};
  bool ok = true;
  json failure{{"subcommand", "nilpairs"}, {"q", q}, {"m", m}, {"n", n}};

  if (ell) {
    const BigCount brute = nilcount::enumerate_balanced_triples(q, m, n, ell, workers, cap);
    const BigCount formula = nilcount::balanced_triple_formula(q, m, n, *ell);
    ok = brute == formula;
    out["ell"] = *ell;
    out["brute_count"] = to_json_count(brute);
    out["slice_formula"] = to_json_count(formula);
    out["agree"] = ok;
    if (!ok) {
      failure["ell"] = *ell;
      failure["brute_count"] = to_json_count(brute);
      failure["slice_formula"] = to_json_count(formula);
    }
    if (!as_json)
      std::cout << brute.str() << " / formula " << formula.str() << " / " << (ok ? "OK" : "MISMATCH")
                << std::endl;
  } else {
    const BigCount brute = nilcount::enumerate_nilpotent_pairs(q, m, n, workers, cap);
    const BigCount sum = nilcount::nilpairs_sum_formula(q, m, n);
    const BigCount closed = nilcount::nilpairs_closed_formula(q, m, n);
    ok = brute == sum && brute == closed;
    out["brute_count"] = to_json_count(brute);
    out["sum_formula"] = to_json_count(sum);
    out["closed_formula"] = to_json_count(closed);
    out["agree"] = ok;
    if (!ok) {
      failure["brute_count"] = to_json_count(brute);
      failure["sum_formula"] = to_json_count(sum);
      failure["closed_formula"] = to_json_count(closed);
    }
    if (!as_json)
      std::cout << brute.str() << " / sum " << sum.str() << " / closed " << closed.str() << " / "
                << (ok ? "OK" : "MISMATCH") << std::endl;
  }

  if (audit) {
    const nilcount::ThetaAudit result = nilcount::audit_theta(q, m, n, cap);
    const bool audit_ok = result.injective && result.covers_hom_space;
    out["theta_triples"] = to_json_count(result.triples);
    out["theta_image"] = to_json_count(result.image_size);
    out["theta_bijective"] = audit_ok;
    if (!as_json)
      std::cout << "theta: " << result.triples.str() << " triples -> " << result.image_size.str()
                << " images / " << (audit_ok ? "bijective" : "NOT BIJECTIVE") << std::endl;
    if (!audit_ok) {
      failure["theta_triples"] = to_json_count(result.triples);
      failure["theta_image"] = to_json_count(result.image_size);
      ok = false;
    }
  }

  if (!emit_path.empty()) {
    auto file = open_output(emit_path);
    nilcount::emit_theta_audit_rows(q, m, n, file);
  }

  if (as_json) std::cout << out.dump() << std::endl;
  if (!ok) print_failure_record(failure);
  return ok ? kExitOk : kExitMismatch;
}

// Matrix literals come in as JSON arrays of row arrays of canonical element
// indices, e.g. '[[1,0],[0,1]]'.
nilcount::GfMatrix parse_matrix_literal(const nilcount::FieldPtr& field, const std::string& text,
                                        const std::string& flag) {
  json parsed;
  try {
    parsed = json::parse(text);
  } catch (const json::parse_error& e) {
    throw CLI::ValidationError(flag, std::string("not valid JSON: ") + e.what());
  }
  if (!parsed.is_array() || parsed.empty()) throw CLI::ValidationError(flag, "expected an array of row arrays");
  std::vector<std::vector<std::uint32_t>> rows;
  for (const json& row : parsed) {
    if (!row.is_array()) throw CLI::ValidationError(flag, "expected an array of row arrays");
    std::vector<std::uint32_t> entries;
    for (const json& cell : row) {
      if (!cell.is_number_unsigned()) throw CLI::ValidationError(flag, "entries must be canonical indices");
      entries.push_back(cell.get<std::uint32_t>());
    }
    rows.push_back(std::move(entries));
  }
  return nilcount::GfMatrix::from_rows(field, rows);
}

int inspect_pair(std::uint64_t q, const std::string& f_text, const std::string& g_text, bool as_json) {
  const nilcount::FieldPtr field = nilcount::make_field(static_cast<std::uint32_t>(q));
  const nilcount::LinearPair pair(parse_matrix_literal(field, f_text, "--f"),
                                  parse_matrix_literal(field, g_text, "--g"));
  const bool nilpotent = nilcount::is_nilpotent_pair(pair);
  const nilcount::FittingData fitting = nilcount::fitting_decompose(pair);

  json out{{"schema_version", nilcount::kSchemaVersion},
           {"subcommand", "nilpairs"},
           {"mode", "inspect"},
           {"q", q},
           {"m", pair.m},
           {"n", pair.n},
           {"nilpotent", nilpotent},
           {"fitting", json{{"dim_v_inv", fitting.basis_v_inv.size()},
                            {"dim_v_nil", fitting.basis_v_nil.size()},
                            {"dim_w_inv", fitting.basis_w_inv.size()},
                            {"dim_w_nil", fitting.basis_w_nil.size()}}}};
  bool ok = true;
  if (nilpotent) {
    const BigCount direct = nilcount::count_balanced_direct(pair);
    const BigCount via_kernel = nilcount::balanced_count_kernel_formula(pair);
    ok = direct == via_kernel;
    const nilcount::KernelProfile profile = nilcount::kernel_profile(pair);
    out["balanced_direct"] = to_json_count(direct);
    out["balanced_kernel_formula"] = to_json_count(via_kernel);
    out["agree"] = ok;
    out["kernel_d"] = json(profile.d);
    out["kernel_d_prime"] = json(profile.d_prime);
  }

  if (as_json) {
    std::cout << out.dump() << std::endl;
  } else {
    std::cout << "nilpotent pair: " << (nilpotent ? "yes" : "no") << '\n';
    std::cout << "fitting dims: V_I " << fitting.basis_v_inv.size() << ", V_N " << fitting.basis_v_nil.size()
              << ", W_I " << fitting.basis_w_inv.size() << ", W_N " << fitting.basis_w_nil.size() << '\n';
    if (nilpotent) {
      std::cout << "balanced vectors: direct " << out["balanced_direct"] << " / kernel formula "
                << out["balanced_kernel_formula"] << " / " << (ok ? "OK" : "MISMATCH") << '\n';
      std::cout << "kernel profile: d = " << out["kernel_d"].dump()
                << ", d' = " << out["kernel_d_prime"].dump() << '\n';
    }
  }
  if (!ok)
    print_failure_record(json{{"subcommand", "nilpairs"},
                              {"mode", "inspect"},
                              {"q", q},
                              {"m", pair.m},
                              {"n", pair.n},
                              {"balanced_direct", out["balanced_direct"]},
                              {"balanced_kernel_formula", out["balanced_kernel_formula"]}});
  return ok ? kExitOk : kExitMismatch;
}

int run_formulas(const nilcount::SweepRange& range, const std::string& out_path) {
  bool ok;
  if (out_path.empty()) {
    ok = nilcount::emit_formula_sweep_csv(range, std::cout);
  } else {
    auto out = open_output(out_path);
    ok = nilcount::emit_formula_sweep_csv(range, out);
  }
  if (!ok)
    print_failure_record(json{{"subcommand", "formulas"}, {"message", "at least one identity row failed"}});
  return ok ? kExitOk : kExitMismatch;
}

int run_all(unsigned workers) {
  const auto results = nilcount::run_acceptance(workers, &std::cout);
  const bool ok = nilcount::all_passed(results);
  std::cout << (ok ? "all criteria passed" : "ACCEPTANCE FAILURES PRESENT") << std::endl;
  if (!ok) {
    json failed = json::array();
    for (const auto& r : results)
      if (!r.pass) failed.push_back(json{{"criterion", r.id}, {"name", r.name}, {"detail", r.detail}});
    print_failure_record(json{{"subcommand", "all"}, {"failed", failed}});
  }
  return ok ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nilcount: exact enumeration and cross-verified counting of nilpotent Boolean matrices, "
               "eventually constant set-map pairs, and nilpotent pairs over finite fields"};
  app.require_subcommand(1);

  unsigned workers = nilcount::default_workers();
  bool force = false;
  app.add_option("--workers", workers, "worker thread count (env NILCOUNT_WORKERS)")
      ->capture_default_str()
      ->check(CLI::Range(1u, 256u));
  app.add_flag("--force", force, "override the desk-scale enumeration caps (prints a cost estimate)");

  auto* boolean_cmd = app.add_subcommand("boolean", "count nilpotent Boolean matrices vs the DAG recurrence");
  std::size_t bool_n = 3;
  std::string bool_emit;
  bool bool_json = false;
  boolean_cmd->add_option("--n", bool_n, "matrix size")->required();
  boolean_cmd->add_option("--emit", bool_emit, "write witnesses as JSON lines to this path");
  boolean_cmd->add_flag("--json", bool_json, "JSON summary on stdout");

  auto* setpairs_cmd = app.add_subcommand("setpairs", "count eventually constant pairs vs the closed form");
  std::size_t sp_m = 2, sp_n = 2;
  std::string sp_witness;
  bool sp_json = false;
  setpairs_cmd->add_option("--m", sp_m, "size of X")->required();
  setpairs_cmd->add_option("--n", sp_n, "size of Y")->required();
  setpairs_cmd->add_option("--witness-bijection", sp_witness,
                           "write (pair, tree, marked edge) rows as JSON lines to this path");
  setpairs_cmd->add_flag("--json", sp_json, "JSON summary on stdout");

  auto* nilpairs_cmd = app.add_subcommand("nilpairs", "count nilpotent pairs over GF(q) vs both formulas");
  std::uint64_t np_q = 2;
  unsigned np_m = 1, np_n = 1;
  std::optional<unsigned> np_ell;
  bool np_audit = false, np_json = false;
  std::string np_emit, np_f, np_g;
  nilpairs_cmd->add_option("--q", np_q, "field order (prime power)")->required();
  auto* np_m_opt = nilpairs_cmd->add_option("--m", np_m, "dim V");
  auto* np_n_opt = nilpairs_cmd->add_option("--n", np_n, "dim W");
  nilpairs_cmd->add_option("--ell", np_ell, "count balanced triples of this length instead");
  nilpairs_cmd->add_flag("--audit-theta", np_audit, "exhaustively audit the theta bijection");
  nilpairs_cmd->add_option("--emit", np_emit, "write theta audit rows as JSON lines to this path");
  nilpairs_cmd->add_flag("--json", np_json, "JSON summary on stdout");
  auto* np_f_opt = nilpairs_cmd->add_option(
      "--f", np_f, "inspect one pair: matrix literal for f as JSON row arrays, e.g. [[1,0],[0,1]]");
  auto* np_g_opt =
      nilpairs_cmd->add_option("--g", np_g, "inspect one pair: matrix literal for g as JSON row arrays");
  np_f_opt->needs(np_g_opt);
  np_g_opt->needs(np_f_opt);
  np_f_opt->excludes(np_m_opt)->excludes(np_n_opt);
  np_m_opt->needs(np_n_opt);
  np_n_opt->needs(np_m_opt);

  auto* formulas_cmd = app.add_subcommand("formulas", "CSV identity sweep over a (q, m, n) grid");
  std::string sweep_text = "q=2..5,m=0..8,n=0..8";
  std::string check_mode = "all";
  std::string formulas_out;
  formulas_cmd->add_option("--sweep", sweep_text, "grid, e.g. q=2..5,m=0..8,n=0..8")->capture_default_str();
  formulas_cmd->add_option("--check", check_mode, "identity set; only 'all' is defined")
      ->check(CLI::IsMember({"all"}));
  formulas_cmd->add_option("--out", formulas_out, "CSV output path (default stdout)");

  auto* all_cmd = app.add_subcommand("all", "run the full verification sweep");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (boolean_cmd->parsed()) return run_boolean(bool_n, workers, force, bool_json, bool_emit);
    if (setpairs_cmd->parsed()) return run_setpairs(sp_m, sp_n, workers, force, sp_json, sp_witness);
    if (nilpairs_cmd->parsed()) {
      if (!np_f.empty()) return inspect_pair(np_q, np_f, np_g, np_json);
      if (np_m_opt->count() == 0 || np_n_opt->count() == 0)
        throw CLI::RequiredError("--m and --n (or a pair literal via --f/--g)");
      return run_nilpairs(np_q, np_m, np_n, np_ell, np_audit, workers, force, np_json, np_emit);
    }
    if (formulas_cmd->parsed()) return run_formulas(parse_sweep(sweep_text), formulas_out);
    if (all_cmd->parsed()) return run_all(workers);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  } catch (const nilcount::Error& e) {
    std::cerr << "error: " << e.what() << std::endl;
    // parameter and cap problems are usage errors, not verification failures
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << std::endl;
    return kExitMismatch;
  }
  return kExitUsage;
}
