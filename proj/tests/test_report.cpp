#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "nilcount/report.hpp"

using namespace nilcount;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("boolean witness rows match the catalog for n = 2") {
  std::ostringstream out;
  emit_boolean_witnesses(2, 1, out);
  const auto lines = lines_of(out.str());
  REQUIRE(lines.size() == 4);  // header + 3 witnesses
  CHECK(lines[0].find("\"schema_version\":1") != std::string::npos);
  CHECK(lines[1] == "[[0,0],[0,0]]");
  CHECK(lines[2] == "[[0,0],[1,0]]");
  CHECK(lines[3] == "[[0,1],[0,0]]");
}

TEST_CASE("emission is deterministic and worker-count independent") {
  std::ostringstream a, b, c;
  emit_boolean_witnesses(3, 1, a);
  emit_boolean_witnesses(3, 1, b);
  emit_boolean_witnesses(3, 4, c);
  CHECK(a.str() == b.str());
  CHECK(a.str() == c.str());
  CHECK(lines_of(a.str()).size() == 26);  // header + 25 witnesses

  std::ostringstream d, e;
  emit_setpair_witnesses(2, 2, d);
  emit_setpair_witnesses(2, 2, e);
  CHECK(d.str() == e.str());
}

TEST_CASE("setpair witnesses are 1-indexed and count m^(n-1) n^(m-1) (m+n-1)") {
  std::ostringstream out;
  emit_setpair_witnesses(2, 1, out);
  const auto lines = lines_of(out.str());
  REQUIRE(lines.size() == 3);  // header + the two pairs
  CHECK(lines[1].find("\"f\":[1,1]") != std::string::npos);
  CHECK(lines[1].find("\"g\":[1]") != std::string::npos);
  CHECK(lines[2].find("\"f\":[1,1]") != std::string::npos);
  CHECK(lines[2].find("\"g\":[2]") != std::string::npos);
}

TEST_CASE("theta audit rows cover the full pair space for q = 2, m = n = 1") {
  std::ostringstream out;
  emit_theta_audit_rows(2, 1, 1, out);
  const auto lines = lines_of(out.str());
  REQUIRE(lines.size() == 5);  // header + 4 triples
  // every line carries both the triple and its image
  for (std::size_t i = 1; i < lines.size(); ++i) {
    CHECK(lines[i].find("\"image_f\"") != std::string::npos);
    CHECK(lines[i].find("\"v\"") != std::string::npos);
  }
}

TEST_CASE("formula sweep CSV has one row per tuple and passes") {
  std::ostringstream out;
  SweepRange range;
  range.q_lo = 2;
  range.q_hi = 3;
  range.m_lo = 0;
  range.m_hi = 3;
  range.n_lo = 0;
  range.n_hi = 3;
  CHECK(emit_formula_sweep_csv(range, out));
  const auto lines = lines_of(out.str());
  REQUIRE(lines.size() == 1 + 2 * 16);  // header + rows for q in {2,3}
  CHECK(lines[0].rfind("schema_version,q,m,n,", 0) == 0);
  for (std::size_t i = 1; i < lines.size(); ++i) CHECK(lines[i].find("fail") == std::string::npos);

  // q range including non prime powers skips them
  std::ostringstream wide;
  SweepRange range6;
  range6.q_lo = 6;
  range6.q_hi = 7;
  range6.m_hi = 1;
  range6.n_hi = 1;
  CHECK(emit_formula_sweep_csv(range6, wide));
  CHECK(lines_of(wide.str()).size() == 1 + 4);  // only q = 7 contributes
}
