#include "collindiag/diagnose.hpp"

#include <algorithm>
#include <stdexcept>

#include "collindiag/errors.hpp"

namespace collindiag {

void ThresholdConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) throw std::invalid_argument(std::string(name) + " must be positive");
  };
  positive(cn_problematic, "cn_problematic");
  positive(cn_moderate, "cn_moderate");
  positive(vif, "vif");
  positive(corr, "corr");
  positive(vdp, "vdp");
  positive(cv, "cv");
  positive(dummy_proportion, "dummy_proportion");
  if (cn_moderate > cn_problematic)
    throw std::invalid_argument("cn_moderate must not exceed cn_problematic");
  if (corr > 1.0) throw std::invalid_argument("corr must lie in (0, 1]");
  if (vdp > 1.0) throw std::invalid_argument("vdp must lie in (0, 1]");
  if (dummy_proportion >= 1.0) throw std::invalid_argument("dummy_proportion must lie in (0, 1)");
}

std::string_view to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::None: return "none";
    case VerdictKind::Essential: return "essential";
    case VerdictKind::NonEssential: return "non_essential";
    case VerdictKind::Both: return "both";
  }
  return "unknown";
}

std::optional<VerdictKind> parse_verdict_kind(std::string_view text) {
  for (auto k : {VerdictKind::None, VerdictKind::Essential, VerdictKind::NonEssential,
                 VerdictKind::Both})
    if (to_string(k) == text) return k;
  return std::nullopt;
}

namespace {

VerdictKind combine(VerdictKind a, VerdictKind b) {
  if (a == VerdictKind::None) return b;
  if (b == VerdictKind::None || a == b) return a;
  return VerdictKind::Both;
}

}  // namespace

Verdict classify_belsley(const BelsleyTable& table, const ThresholdConfig& thresholds) {
  Verdict verdict;
  for (std::size_t i = 0; i < table.condition_indexes.size(); ++i) {
    const double eta = table.condition_indexes[i];
    if (eta < thresholds.cn_problematic) continue;

    std::vector<std::string> members;
    std::vector<Evidence> loads;
    bool with_intercept = false;
    for (std::size_t j = 0; j < table.names.size(); ++j) {
      const double share = table.vdp(i, j);
      if (share < thresholds.vdp) continue;
      members.push_back(table.names[j]);
      loads.push_back({"vdp[" + table.names[j] + "]@" + std::to_string(i + 1), share,
                       thresholds.vdp});
      if (j == 0 && table.first_is_intercept) with_intercept = true;
    }
    // A single loading column does not localize a relation.
    if (members.size() < 2) continue;

    verdict.evidence.push_back(
        {"condition_index@" + std::to_string(i + 1), eta, thresholds.cn_problematic});
    verdict.evidence.insert(verdict.evidence.end(), loads.begin(), loads.end());
    verdict.implicated.push_back(std::move(members));
    verdict.kind = combine(verdict.kind,
                           with_intercept ? VerdictKind::NonEssential : VerdictKind::Essential);
  }
  return verdict;
}

namespace {

Verdict classify_slm(const SlmReport& slm, const std::string& intercept,
                     const ThresholdConfig& t) {
  Verdict verdict;
  if (slm.problematic) {
    verdict.kind = VerdictKind::NonEssential;
    verdict.implicated.push_back({intercept, slm.regressor});
  }
  if (slm.cn_with_intercept >= t.cn_problematic)
    verdict.evidence.push_back({"condition_number", slm.cn_with_intercept, t.cn_problematic});
  if (slm.cv && *slm.cv < t.cv)
    verdict.evidence.push_back({"cv[" + slm.regressor + "]", *slm.cv, t.cv});
  if (slm.proportion_ones && *slm.proportion_ones > t.dummy_proportion)
    verdict.evidence.push_back(
        {"proportion_ones[" + slm.regressor + "]", *slm.proportion_ones, t.dummy_proportion});
  return verdict;
}

void add_corroborating(const DiagnosticsReport& r, Verdict& verdict) {
  const auto& t = r.thresholds;
  if (r.vif.value)
    for (const auto& e : r.vif.value->entries)
      if (e.vif && *e.vif >= t.vif) verdict.evidence.push_back({"vif[" + e.name + "]", *e.vif, t.vif});
  if (r.cv.value)
    for (const auto& e : *r.cv.value)
      if (e.cv && *e.cv < t.cv) verdict.evidence.push_back({"cv[" + e.name + "]", *e.cv, t.cv});
  if (r.correlation.value)
    for (const auto& p : r.correlation.value->flagged_pairs)
      verdict.evidence.push_back(
          {"correlation[" + p.first + "," + p.second + "]", p.abs_r, t.corr});
}

}  // namespace

DiagnosticsReport diagnose(const DesignMatrix& x, std::optional<std::span<const double>> y,
                           const ThresholdConfig& thresholds, const DiagnoseOptions& options) {
  thresholds.validate();

  DiagnosticsReport r;
  r.dataset_id = options.dataset_id;
  r.design = {x.names(), x.roles(), x.rows(), x.cols()};
  r.thresholds = thresholds;
  r.legacy_dummies = options.legacy_dummies;

  // Rank deficiency surfaces here, before any other measure.
  r.belsley = Section<BelsleyTable>::of(belsley(x));
  r.stewart = Section<StewartTable>::of(stewart_table(x));

  if (y) {
    try {
      const auto fit = ols(x, *y);
      r.fit = Section<FitSummary>::of({options.dependent_name, fit.coefficients, fit.r_squared});
    } catch (const DataError& err) {
      r.fit = Section<FitSummary>::not_applicable(err.what());
    }
  } else {
    r.fit = Section<FitSummary>::not_applicable("no dependent variable supplied");
  }

  try {
    r.correlation = Section<CorrelationReport>::of(
        correlation_report(x, thresholds.corr, options.legacy_dummies));
  } catch (const DataError& err) {
    r.correlation = Section<CorrelationReport>::not_applicable(err.what());
  }

  try {
    r.vif = Section<VifTable>::of(vif_table(x, options.legacy_dummies));
  } catch (const DataError& err) {
    r.vif = Section<VifTable>::not_applicable(err.what());
  }

  if (x.has_intercept()) {
    r.cn_with_intercept = Section<double>::of(condition_number(x, true));
    if (x.cols() > 1)
      r.cn_without_intercept = Section<double>::of(condition_number(x, false));
    else
      r.cn_without_intercept = Section<double>::not_applicable("design has only the intercept");
  } else {
    r.cn_with_intercept = Section<double>::not_applicable("design has no intercept");
    r.cn_without_intercept = Section<double>::of(condition_number(x, true));
  }

  std::vector<CvEntry> cvs;
  for (const auto& c : x.columns()) {
    if (c.role != ColumnRole::Quantitative) continue;
    CvEntry entry{c.name, std::nullopt, {}};
    try {
      entry.cv = coefficient_of_variation(c.values);
    } catch (const std::runtime_error& err) {
      entry.note = err.what();
    }
    cvs.push_back(std::move(entry));
  }
  if (cvs.empty())
    r.cv = Section<std::vector<CvEntry>>::not_applicable("no quantitative columns");
  else
    r.cv = Section<std::vector<CvEntry>>::of(std::move(cvs));

  if (x.cols() == 2 && x.has_intercept()) {
    r.slm = Section<SlmReport>::of(slm_diagnostics(x, thresholds));
    r.verdict = classify_slm(*r.slm.value, x.column(0).name, thresholds);
  } else {
    r.slm = Section<SlmReport>::not_applicable(
        "design is not an intercept plus a single regressor");
    r.verdict = classify_belsley(*r.belsley.value, thresholds);
    add_corroborating(r, r.verdict);
  }
  return r;
}

}  // namespace collindiag
