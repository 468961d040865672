#pragma once

// Row-reduction kernels over design columns. Each kernel has a serial
// reference version and an OpenMP version. The OpenMP versions split rows
// into fixed blocks of kBlockRows and combine block partials in block order,
// so results do not depend on the thread count and are bitwise identical to
// the reference whenever n <= kBlockRows.

#include <cstddef>
#include <span>
#include <vector>

#include "collindiag/matrix.hpp"

namespace collindiag::kernels {

inline constexpr std::size_t kBlockRows = 4096;

using ColumnViews = std::span<const std::span<const double>>;

/// X^t X for the columns of X (all of equal length). Upper triangle is
/// accumulated, then mirrored.
Matrix crossprod_reference(ColumnViews columns);
Matrix crossprod_parallel(ColumnViews columns);

struct ColumnMoments {
  double mean = 0.0;
  double norm = 0.0;           // ||x||_2
  double centered_norm = 0.0;  // ||x - mean||_2
};

ColumnMoments moments_reference(std::span<const double> x);
ColumnMoments moments_parallel(std::span<const double> x);

/// Number of OpenMP threads available (1 when built without OpenMP).
int max_threads();

}  // namespace collindiag::kernels
