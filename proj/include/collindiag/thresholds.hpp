#pragma once

#include <cmath>

namespace collindiag {

/// Decision thresholds for every measure.
struct ThresholdConfig {
  double cn_problematic = 30.0;
  double cn_moderate = 20.0;
  double vif = 10.0;
  double corr = std::sqrt(0.9);
  double vdp = 0.5;
  double cv = 0.1002506;
  /// Proportion of ones above which an intercept+dummy model is problematic.
  /// 0.95 corresponds to a condition number of about 8.96.
  double dummy_proportion = 0.95;

  /// Throws std::invalid_argument describing the first violated constraint.
  void validate() const;
};

}  // namespace collindiag
