#include "collindiag/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "collindiag/errors.hpp"

namespace collindiag {

namespace {

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : ", ") + n;
  return out;
}

// Eigendecomposition of the unit-length cross-product, rejecting designs
// whose smallest eigenvalue is below the rank tolerance.
EigenDecomposition full_rank_eigen(const DesignMatrix& x) {
  auto e = sym_eigen(crossprod(scale(x, ScalingMode::UnitLength)));
  const double hi = e.values.front();
  const double lo = e.values.back();
  if (!(hi > 0.0) || lo <= kRankTolerance * hi) {
    auto cols = dependency_columns(x, e);
    const auto message = "design is rank deficient; linear dependence among: " + join(cols);
    throw RankDeficientError(message, std::move(cols));
  }
  return e;
}

std::vector<std::size_t> non_intercept_indices(const DesignMatrix& x) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < x.cols(); ++j)
    if (x.column(j).role != ColumnRole::Intercept) out.push_back(j);
  return out;
}

}  // namespace

CorrelationReport correlation_report(const DesignMatrix& x, double threshold,
                                     bool include_dummies) {
  std::vector<std::size_t> eligible;
  for (std::size_t j : non_intercept_indices(x))
    if (include_dummies || x.column(j).role != ColumnRole::Dummy) eligible.push_back(j);
  if (eligible.size() < 2)
    throw DataError("correlation matrix needs at least two eligible columns, found " +
                    std::to_string(eligible.size()));

  const DesignMatrix sub = x.select(eligible);
  const SymmetricMatrix cross = crossprod(scale(sub, ScalingMode::CenteredUnitLength));

  CorrelationReport report;
  report.names = sub.names();
  report.threshold = threshold;
  report.matrix = SymmetricMatrix(sub.cols());
  for (std::size_t i = 0; i < sub.cols(); ++i) {
    report.matrix.set(i, i, 1.0);
    for (std::size_t j = i + 1; j < sub.cols(); ++j) {
      const double r = std::clamp(cross(i, j), -1.0, 1.0);
      report.matrix.set(i, j, r);
      if (std::abs(r) >= threshold)
        report.flagged_pairs.push_back({report.names[i], report.names[j], std::abs(r)});
    }
  }
  report.determinant = std::clamp(det_spd(report.matrix), 0.0, 1.0);
  return report;
}

VifTable vif_table(const DesignMatrix& x, bool include_dummies) {
  if (!x.has_intercept()) throw DataError("VIF requires a design with an intercept");
  const auto others = non_intercept_indices(x);
  if (others.empty()) throw DataError("VIF requires at least one non-intercept column");
  const bool any_quantitative = std::any_of(others.begin(), others.end(), [&](std::size_t j) {
    return x.column(j).role == ColumnRole::Quantitative;
  });
  if (!any_quantitative) throw DataError("VIF is only defined for quantitative columns");
  full_rank_eigen(x);

  VifTable table;
  for (std::size_t j : others) {
    const auto& col = x.column(j);
    VifEntry entry{col.name, col.role, std::nullopt, std::nullopt};
    if (col.role == ColumnRole::Dummy && !include_dummies) {
      table.entries.push_back(std::move(entry));
      continue;
    }
    double r2 = 0.0;
    if (others.size() > 1) {
      // Auxiliary regression: column j on intercept plus every other column.
      std::vector<std::size_t> predictors{0};
      for (std::size_t o : others)
        if (o != j) predictors.push_back(o);
      r2 = ols(x.select(predictors), col.values).r_squared;
    }
    if (!(r2 < 1.0))
      throw RankDeficientError("column '" + col.name +
                                   "' is an exact linear combination of the others",
                               {col.name});
    entry.aux_r_squared = r2;
    entry.vif = 1.0 / (1.0 - r2);
    table.entries.push_back(std::move(entry));
  }
  return table;
}

StewartTable stewart_table(const DesignMatrix& x) {
  const auto e = full_rank_eigen(x);
  StewartTable table;
  for (std::size_t j = 0; j < x.cols(); ++j) {
    double sum = 0.0;
    for (std::size_t l = 0; l < e.values.size(); ++l)
      sum += e.vectors(j, l) * e.vectors(j, l) / e.values[l];
    table.entries.push_back({x.column(j).name, sum});
  }
  return table;
}

double condition_number(const DesignMatrix& x, bool with_intercept, ScalingMode scaling) {
  if (!with_intercept && x.has_intercept()) {
    if (x.cols() == 1) throw DataError("no columns left after removing the intercept");
    return condition_number(x.without_intercept(), true, scaling);
  }
  auto e = full_rank_eigen(x);
  if (scaling != ScalingMode::UnitLength) e = sym_eigen(crossprod(scale(x, scaling)));
  return std::sqrt(e.values.front() / e.values.back());
}

BelsleyTable belsley(const DesignMatrix& x) {
  const auto e = full_rank_eigen(x);
  const std::size_t k = x.cols();

  BelsleyTable table;
  table.names = x.names();
  table.first_is_intercept = x.has_intercept();
  table.condition_indexes.resize(k);
  const double d_max = std::sqrt(e.values.front());
  for (std::size_t i = 0; i < k; ++i) table.condition_indexes[i] = d_max / std::sqrt(e.values[i]);

  table.vdp = Matrix(k, k);
  for (std::size_t j = 0; j < k; ++j) {
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      const double phi = e.vectors(j, i) * e.vectors(j, i) / e.values[i];
      table.vdp(i, j) = phi;
      total += phi;
    }
    for (std::size_t i = 0; i < k; ++i) table.vdp(i, j) /= total;
  }
  return table;
}

double coefficient_of_variation(std::span<const double> column) {
  if (column.size() < 2) throw DataError("coefficient of variation needs at least two values");
  if (std::all_of(column.begin(), column.end(), [&](double v) { return v == column.front(); }))
    throw DataError("coefficient of variation of a constant column");
  const double n = static_cast<double>(column.size());
  const double mean = std::accumulate(column.begin(), column.end(), 0.0) / n;
  double biggest = 0.0;
  for (double v : column) biggest = std::max(biggest, std::abs(v));
  if (std::abs(mean) <= 1e-12 * biggest)
    throw NumericalError("coefficient of variation is undefined for a zero-mean column");
  double ss = 0.0;
  for (double v : column) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / (n - 1.0)) / std::abs(mean);
}

double dummy_cn(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("proportion of ones must lie strictly between 0 and 1");
  const double root = std::sqrt(p);
  return std::sqrt((1.0 + root) / (1.0 - root));
}

SlmReport slm_diagnostics(const DesignMatrix& x, const ThresholdConfig& thresholds) {
  if (x.cols() != 2 || !x.has_intercept())
    throw DataError("simple linear model diagnostics need an intercept and exactly one regressor");

  const auto& reg = x.column(1);
  SlmReport report;
  report.regressor = reg.name;
  report.regressor_role = reg.role;
  report.cn_with_intercept = condition_number(x, true);
  const auto stewart = stewart_table(x);
  report.stewart_intercept = stewart.entries[0].index;
  report.stewart_regressor = stewart.entries[1].index;

  if (reg.role == ColumnRole::Dummy) {
    const auto ones = std::count(reg.values.begin(), reg.values.end(), 1.0);
    const double p = static_cast<double>(ones) / static_cast<double>(reg.values.size());
    report.proportion_ones = p;
    report.closed_form_cn = dummy_cn(p);
  } else {
    try {
      report.cv = coefficient_of_variation(reg.values);
    } catch (const NumericalError& err) {
      report.variability_note = err.what();
    }
  }

  report.problematic = report.cn_with_intercept >= thresholds.cn_problematic ||
                       (report.cv && *report.cv < thresholds.cv) ||
                       (report.proportion_ones &&
                        *report.proportion_ones > thresholds.dummy_proportion);
  return report;
}

}  // namespace collindiag
