#include <doctest.h>

#include <algorithm>
#include <random>

#include "collindiag/diagnose.hpp"
#include "collindiag/errors.hpp"
#include "oracles.hpp"
#include "theil.hpp"

using namespace collindiag;

namespace {

bool names_column(const Verdict& v, const std::string& name) {
  for (const auto& set : v.implicated)
    if (std::find(set.begin(), set.end(), name) != set.end()) return true;
  return false;
}

template <class T>
void check_section(const Section<T>& s) {
  CHECK((s.applicable() ? s.reason.empty() : !s.reason.empty()));
}

void check_sections(const DiagnosticsReport& r) {
  check_section(r.fit);
  check_section(r.correlation);
  check_section(r.vif);
  check_section(r.stewart);
  check_section(r.cn_with_intercept);
  check_section(r.cn_without_intercept);
  check_section(r.belsley);
  check_section(r.cv);
  check_section(r.slm);
}

}  // namespace

TEST_CASE("full textile design") {
  const auto y = theil::consume();
  const auto r = diagnose(theil::design(), std::span<const double>(y), {});
  check_sections(r);

  CHECK(r.verdict.kind == VerdictKind::NonEssential);
  REQUIRE(r.verdict.implicated.size() == 1);
  CHECK(r.verdict.implicated[0] == std::vector<std::string>{"intercept", "income"});
  CHECK_FALSE(names_column(r.verdict, "twentys"));
  CHECK_FALSE(r.slm.applicable());
  CHECK(std::abs(*r.cn_with_intercept.value - 53.3967) < 5e-3);
  CHECK(std::abs(r.fit.value->r_squared - 0.9529) < 5e-4);
  CHECK(r.verdict.evidence.front().measure == "condition_index@4");
  // relprice is not flagged by VIF either
  for (const auto& e : r.verdict.evidence) CHECK(e.measure.find("twentys") == std::string::npos);
}

TEST_CASE("simple linear models take the SLM path") {
  SUBCASE("income") {
    const auto x = theil::design({"income"});
    const auto r = diagnose(x, std::nullopt, {});
    check_sections(r);
    REQUIRE(r.slm.applicable());
    CHECK(r.verdict.kind == VerdictKind::NonEssential);
    CHECK(r.verdict.implicated[0] == std::vector<std::string>{"intercept", "income"});
    CHECK(std::abs(r.slm.value->cn_with_intercept - *r.cn_with_intercept.value) <=
          1e-12 * *r.cn_with_intercept.value);
    CHECK(std::abs(r.slm.value->stewart_intercept - r.stewart.value->entries[0].index) <=
          1e-12 * r.slm.value->stewart_intercept);
    CHECK(std::abs(r.slm.value->stewart_regressor - r.stewart.value->entries[1].index) <=
          1e-12 * r.slm.value->stewart_regressor);
    CHECK(*r.vif.value->entries[0].vif == 1.0);
    CHECK_FALSE(r.fit.applicable());
  }
  SUBCASE("twentys") {
    const auto r = diagnose(theil::design({"twentys"}), std::nullopt, {});
    CHECK(r.verdict.kind == VerdictKind::None);
    CHECK(r.verdict.implicated.empty());
    CHECK_FALSE(r.vif.applicable());
    CHECK_FALSE(r.cv.applicable());
  }
  SUBCASE("relprice") {
    const auto r = diagnose(theil::design({"relprice"}), std::nullopt, {});
    CHECK(r.verdict.kind == VerdictKind::None);
    CHECK(r.verdict.implicated.empty());
  }
}

TEST_CASE("orthogonal design has no verdict") {
  const DesignMatrix x({{"intercept", ColumnRole::Intercept, {1, 1, 1, 1}},
                        {"a", ColumnRole::Quantitative, {-1, 1, -1, 1}},
                        {"b", ColumnRole::Quantitative, {-1, -1, 1, 1}}});
  const auto r = diagnose(x, std::nullopt, {});
  CHECK(r.verdict.kind == VerdictKind::None);
  CHECK(r.verdict.implicated.empty());
  CHECK(r.verdict.evidence.empty());
  // zero-mean columns: CV is reported as not computable, not as an error
  for (const auto& e : *r.cv.value) CHECK_FALSE(e.cv.has_value());
}

TEST_CASE("design without intercept") {
  const auto x = theil::design({"income", "relprice"}).without_intercept();
  const auto r = diagnose(x, std::nullopt, {});
  check_sections(r);
  CHECK_FALSE(r.cn_with_intercept.applicable());
  CHECK(r.cn_without_intercept.applicable());
  CHECK_FALSE(r.vif.applicable());
  CHECK(r.verdict.kind != VerdictKind::NonEssential);
}

TEST_CASE("rank deficiency propagates with column names") {
  const DesignMatrix x({{"intercept", ColumnRole::Intercept, {1, 1, 1, 1, 1}},
                        {"a", ColumnRole::Quantitative, {1, 2, 3, 4, 6}},
                        {"b", ColumnRole::Quantitative, {2, 4, 6, 8, 12}}});
  try {
    diagnose(x, std::nullopt, {});
    FAIL("expected rank deficiency");
  } catch (const RankDeficientError& e) {
    CHECK(e.columns() == std::vector<std::string>{"a", "b"});
  }
}

TEST_CASE("invalid thresholds are rejected") {
  ThresholdConfig t;
  t.corr = 1.5;
  CHECK_THROWS_AS(diagnose(theil::design(), std::nullopt, t), std::invalid_argument);
  t = {};
  t.cn_moderate = 40.0;
  CHECK_THROWS_AS(t.validate(), std::invalid_argument);
  t = {};
  t.vdp = 0.0;
  CHECK_THROWS_AS(t.validate(), std::invalid_argument);
  CHECK_NOTHROW(ThresholdConfig{}.validate());
}

TEST_CASE("classify_belsley") {
  BelsleyTable b;
  b.names = {"intercept", "a", "b", "c"};
  b.first_is_intercept = true;
  b.condition_indexes = {1.0, 5.0, 35.0, 60.0};
  b.vdp = Matrix(4, 4);
  // index 3: a and b co-load (essential); index 4: intercept and c (non-essential)
  b.vdp(2, 1) = 0.9;
  b.vdp(2, 2) = 0.8;
  b.vdp(3, 0) = 0.95;
  b.vdp(3, 3) = 0.7;

  const auto v = classify_belsley(b, {});
  CHECK(v.kind == VerdictKind::Both);
  REQUIRE(v.implicated.size() == 2);
  CHECK(v.implicated[0] == std::vector<std::string>{"a", "b"});
  CHECK(v.implicated[1] == std::vector<std::string>{"intercept", "c"});

  ThresholdConfig strict;
  strict.cn_problematic = 50.0;
  strict.cn_moderate = 20.0;
  CHECK(classify_belsley(b, strict).kind == VerdictKind::NonEssential);
  strict.cn_problematic = 100.0;
  CHECK(classify_belsley(b, strict).kind == VerdictKind::None);

  // A lone high loading does not localize anything.
  b.vdp(3, 3) = 0.1;
  CHECK(classify_belsley(b, {}).kind == VerdictKind::Essential);
}

TEST_CASE("raising the condition threshold never creates a verdict") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> mix(0.0, 20.0);
  for (int trial = 0; trial < 40; ++trial) {
    const auto x = oracle::random_design(rng, 25, 2 + trial % 3, mix(rng));
    bool seen_none = false;
    for (double cn : {5.0, 10.0, 20.0, 30.0, 60.0, 120.0, 1000.0}) {
      ThresholdConfig t;
      t.cn_problematic = cn;
      t.cn_moderate = std::min(t.cn_moderate, cn);
      const auto kind = diagnose(x, std::nullopt, t).verdict.kind;
      if (seen_none) CHECK(kind == VerdictKind::None);
      if (kind == VerdictKind::None) seen_none = true;
    }
  }
}

TEST_CASE("verdict kind names round-trip") {
  for (auto k : {VerdictKind::None, VerdictKind::Essential, VerdictKind::NonEssential,
                 VerdictKind::Both})
    CHECK(parse_verdict_kind(to_string(k)) == k);
  CHECK_FALSE(parse_verdict_kind("maybe").has_value());
}
