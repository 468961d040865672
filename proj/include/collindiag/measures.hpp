#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "collindiag/dataset.hpp"
#include "collindiag/numerics.hpp"
#include "collindiag/thresholds.hpp"

namespace collindiag {

struct CorrelatedPair {
  std::string first;
  std::string second;
  double abs_r = 0.0;
};

struct CorrelationReport {
  std::vector<std::string> names;
  SymmetricMatrix matrix{0};
  double determinant = 1.0;
  double threshold = 0.0;
  std::vector<CorrelatedPair> flagged_pairs;
};

/// Pearson correlations among the non-intercept columns. Dummies are skipped
/// unless `include_dummies` is set (legacy compatibility mode).
/// Throws DataError when fewer than two columns remain.
CorrelationReport correlation_report(const DesignMatrix& x, double threshold,
                                     bool include_dummies = false);

struct VifEntry {
  std::string name;
  ColumnRole role = ColumnRole::Quantitative;
  std::optional<double> aux_r_squared;
  std::optional<double> vif;  // empty for dummies outside legacy mode
};

struct VifTable {
  std::vector<VifEntry> entries;  // design order, intercept omitted
};

/// VIF_j = 1 / (1 - R^2_j), R^2_j from regressing column j on the intercept
/// and every other non-intercept column (dummies included as predictors).
/// Dummy columns get no value unless `include_dummies` is set.
VifTable vif_table(const DesignMatrix& x, bool include_dummies = false);

struct StewartEntry {
  std::string name;
  double index = 0.0;
};

struct StewartTable {
  std::vector<StewartEntry> entries;  // every design column
};

/// Diagonal of the inverse cross-product of the unit-length (non-centered)
/// design. Defined for all columns, intercept and dummies included.
StewartTable stewart_table(const DesignMatrix& x);

/// sqrt(lambda_max / lambda_min) of the cross-product of the scaled design,
/// optionally after dropping the intercept. Unit-length scaling (the default)
/// makes the value invariant to rescaling any column; Raw does not.
double condition_number(const DesignMatrix& x, bool with_intercept,
                        ScalingMode scaling = ScalingMode::UnitLength);

struct BelsleyTable {
  std::vector<std::string> names;
  bool first_is_intercept = false;
  std::vector<double> condition_indexes;  // ascending, first is 1
  /// vdp(i, j): share of var(beta_j) attributed to condition index i.
  Matrix vdp;
};

BelsleyTable belsley(const DesignMatrix& x);

/// Sample standard deviation (divisor n - 1) over |mean|.
/// Throws DataError for constant columns, NumericalError for a zero mean.
double coefficient_of_variation(std::span<const double> column);

/// Closed-form condition number of an intercept + dummy design with
/// proportion of ones p. Throws std::domain_error unless 0 < p < 1.
double dummy_cn(double p);

struct SlmReport {
  std::string regressor;
  ColumnRole regressor_role = ColumnRole::Quantitative;
  double cn_with_intercept = 0.0;
  double stewart_intercept = 0.0;
  double stewart_regressor = 0.0;
  std::optional<double> cv;                // quantitative regressor
  std::optional<double> proportion_ones;   // dummy regressor
  std::optional<double> closed_form_cn;    // dummy regressor
  /// Reason the variability measure is missing (e.g. zero mean).
  std::string variability_note;
  bool problematic = false;
};

/// Diagnostics for the intercept + one regressor model.
SlmReport slm_diagnostics(const DesignMatrix& x, const ThresholdConfig& thresholds);

}  // namespace collindiag
