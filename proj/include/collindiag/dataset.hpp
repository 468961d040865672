#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "collindiag/matrix.hpp"

namespace collindiag {

enum class ColumnRole { Intercept, Quantitative, Dummy };

enum class ScalingMode { Raw, UnitLength, CenteredUnitLength };

std::string_view to_string(ColumnRole role);
std::optional<ColumnRole> parse_role(std::string_view text);
std::string_view to_string(ScalingMode mode);

/// Named observation table: n rows, m columns, all entries finite.
class Dataset {
 public:
  Dataset(std::vector<std::string> names, Matrix values);

  std::size_t rows() const noexcept { return values_.rows(); }
  std::size_t cols() const noexcept { return values_.cols(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const Matrix& values() const noexcept { return values_; }

  std::vector<double> column(std::size_t j) const { return values_.column(j); }
  std::optional<std::size_t> index_of(std::string_view name) const;

  /// Subset of columns, in the order given. Throws DataError on unknown names.
  Dataset select(std::span<const std::string> names) const;

 private:
  std::vector<std::string> names_;
  Matrix values_;
};

struct LoadedData {
  Dataset regressors;
  std::string dependent_name;
  std::vector<double> dependent;
};

/// Parses comma-separated numeric data with a header row (LF or CRLF).
Dataset parse_csv(std::istream& in);

/// Loads `path` and splits off the `dependent` column.
LoadedData load_csv(const std::filesystem::path& path, std::string_view dependent);

/// Splits an already-parsed table into regressors and the dependent column.
LoadedData split_dependent(const Dataset& table, std::string_view dependent);

using RoleOverrides = std::map<std::string, ColumnRole, std::less<>>;

/// Role of every column of `d`. All-ones columns are Intercept, columns whose
/// values are exactly {0, 1} are Dummy, anything else is Quantitative.
/// Overrides win over inference but must be consistent with the data.
std::vector<ColumnRole> infer_roles(const Dataset& d,
                                    const RoleOverrides& overrides = {});

/// Ordered, role-annotated regressor columns. An intercept, when present,
/// is always column 0.
class DesignMatrix {
 public:
  struct Column {
    std::string name;
    ColumnRole role;
    std::vector<double> values;
  };

  explicit DesignMatrix(std::vector<Column> columns);

  std::size_t rows() const noexcept { return n_; }
  std::size_t cols() const noexcept { return columns_.size(); }
  bool has_intercept() const noexcept {
    return !columns_.empty() && columns_.front().role == ColumnRole::Intercept;
  }

  const std::vector<Column>& columns() const noexcept { return columns_; }
  const Column& column(std::size_t j) const { return columns_.at(j); }
  std::vector<std::string> names() const;
  std::vector<ColumnRole> roles() const;
  std::optional<std::size_t> index_of(std::string_view name) const;

  /// Same design minus the intercept column (no-op without one).
  DesignMatrix without_intercept() const;
  /// Columns at the given indices, in that order.
  DesignMatrix select(std::span<const std::size_t> indices) const;

 private:
  std::vector<Column> columns_;
  std::size_t n_ = 0;
};

inline constexpr std::string_view kInterceptName = "intercept";

/// Assembles a design from `d` with one role per column. When
/// `include_intercept` is set, an all-ones "intercept" column is prepended.
DesignMatrix build_design(const Dataset& d, bool include_intercept,
                          std::span<const ColumnRole> roles);

DesignMatrix scale(const DesignMatrix& x, ScalingMode mode);

}  // namespace collindiag
