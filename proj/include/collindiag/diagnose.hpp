#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "collindiag/dataset.hpp"
#include "collindiag/measures.hpp"
#include "collindiag/thresholds.hpp"

namespace collindiag {

enum class VerdictKind { None, Essential, NonEssential, Both };

std::string_view to_string(VerdictKind kind);
std::optional<VerdictKind> parse_verdict_kind(std::string_view text);

struct Evidence {
  std::string measure;  // e.g. "vdp[intercept]@4", "cv[income]"
  double value = 0.0;
  double threshold = 0.0;

  friend bool operator==(const Evidence&, const Evidence&) = default;
};

struct Verdict {
  VerdictKind kind = VerdictKind::None;
  /// Column sets co-loading on a problematic condition index.
  std::vector<std::vector<std::string>> implicated;
  /// Primary evidence first (condition indexes and VDPs), then corroborating
  /// measures (VIF, CV, correlation, SLM criteria).
  std::vector<Evidence> evidence;
};

/// A report entry that is either computed or carries the reason it is not.
template <class T>
struct Section {
  std::optional<T> value;
  std::string reason;

  bool applicable() const noexcept { return value.has_value(); }
  static Section of(T v) { return Section{std::move(v), {}}; }
  static Section not_applicable(std::string why) {
    return Section{std::nullopt, std::move(why)};
  }
};

struct DesignSummary {
  std::vector<std::string> names;
  std::vector<ColumnRole> roles;
  std::size_t n = 0;
  std::size_t k = 0;
};

struct FitSummary {
  std::string dependent;
  std::vector<double> coefficients;  // design order
  double r_squared = 0.0;
};

struct CvEntry {
  std::string name;
  std::optional<double> cv;
  std::string note;  // why cv is missing
};

struct DiagnosticsReport {
  std::string dataset_id;
  DesignSummary design;
  ThresholdConfig thresholds;
  bool legacy_dummies = false;

  Section<FitSummary> fit;
  Section<CorrelationReport> correlation;
  Section<VifTable> vif;
  Section<StewartTable> stewart;
  Section<double> cn_with_intercept;
  Section<double> cn_without_intercept;
  Section<BelsleyTable> belsley;
  Section<std::vector<CvEntry>> cv;
  Section<SlmReport> slm;
  Verdict verdict;
};

struct DiagnoseOptions {
  std::string dataset_id;
  /// Re-admit dummy columns into correlation and VIF (legacy outputs).
  bool legacy_dummies = false;
  std::string dependent_name = "y";
};

/// Runs every applicable measure and classifies the collinearity.
/// Throws RankDeficientError naming the dependent columns.
DiagnosticsReport diagnose(const DesignMatrix& x,
                           std::optional<std::span<const double>> y,
                           const ThresholdConfig& thresholds,
                           const DiagnoseOptions& options = {});

/// Verdict from the Belsley table alone: for every condition index at or
/// above `cn_problematic`, the columns with VDP >= `vdp` form a set. Sets
/// containing the intercept are non-essential, the rest essential.
Verdict classify_belsley(const BelsleyTable& table, const ThresholdConfig& thresholds);

}  // namespace collindiag
