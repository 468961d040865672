#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace collindiag {

/// Malformed input data: unreadable files, bad cells, inconsistent roles.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical failure: rank deficiency, eigen non-convergence, undefined measure.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what,
                          std::vector<std::string> columns = {})
      : std::runtime_error(what), columns_(std::move(columns)) {}

  /// Design columns involved in the failure, when known.
  const std::vector<std::string>& columns() const noexcept { return columns_; }

 private:
  std::vector<std::string> columns_;
};

/// Exact or near-exact linear dependence among design columns.
class RankDeficientError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace collindiag
