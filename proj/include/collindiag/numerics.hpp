#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "collindiag/dataset.hpp"
#include "collindiag/matrix.hpp"

namespace collindiag {

/// Square matrix whose stored entries satisfy a(i,j) == a(j,i) exactly.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(std::size_t order) : m_(order, order) {}

  /// Throws std::invalid_argument if `full` is not square and exactly symmetric.
  static SymmetricMatrix from_full(const Matrix& full);

  std::size_t order() const noexcept { return m_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  /// Writes both (i,j) and (j,i).
  void set(std::size_t i, std::size_t j, double v) {
    m_(i, j) = v;
    m_(j, i) = v;
  }

  const Matrix& full() const noexcept { return m_; }
  double trace() const;
  double frobenius_norm() const;

 private:
  Matrix m_;
};

/// Eigenvalues in descending order; column i of `vectors` pairs with values[i].
struct EigenDecomposition {
  std::vector<double> values;
  Matrix vectors;

  std::vector<double> vector(std::size_t i) const { return vectors.column(i); }
};

struct JacobiOptions {
  double relative_tolerance = 1e-14;  // off-diagonal Frobenius / ||S||_F
  int max_sweeps = 100;
};

/// Min eigenvalue <= kRankTolerance * max eigenvalue means rank deficient.
inline constexpr double kRankTolerance = 1e-12;

SymmetricMatrix crossprod(const DesignMatrix& x);

/// Cyclic Jacobi eigensolver. Output is sorted by descending eigenvalue (ties
/// broken by the first eigenvector component), and each eigenvector is
/// signed so its largest-magnitude component is positive.
/// Throws NumericalError on non-finite input or when the sweep cap is hit.
EigenDecomposition sym_eigen(const SymmetricMatrix& s, JacobiOptions options = {});

/// Inverse of a symmetric positive definite matrix.
/// Throws RankDeficientError when min eigenvalue <= kRankTolerance * max.
SymmetricMatrix invert_spd(const SymmetricMatrix& s);

/// Product of eigenvalues; ~0 for singular input, never throws on rank.
double det_spd(const SymmetricMatrix& s);

struct OlsFit {
  std::vector<double> coefficients;
  std::vector<double> residuals;
  double r_squared = 0.0;
};

/// Least squares fit of y on the columns of x via the normal equations of the
/// unit-length scaled design. R^2 is centered when x has an intercept.
/// Throws RankDeficientError (naming the implicated columns) or DataError.
OlsFit ols(const DesignMatrix& x, std::span<const double> y);

/// Names of the columns that load on the smallest eigenvalue of the scaled
/// cross-product; used to describe rank deficiency.
std::vector<std::string> dependency_columns(const DesignMatrix& x,
                                            const EigenDecomposition& scaled);

}  // namespace collindiag
