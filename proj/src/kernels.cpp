#include "collindiag/kernels.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace collindiag::kernels {

namespace {

std::size_t packed_size(std::size_t k) { return k * (k + 1) / 2; }

// Accumulates the packed upper triangle of X^t X over rows [begin, end).
void accumulate_block(ColumnViews columns, std::size_t begin, std::size_t end,
                      double* packed) {
  const std::size_t k = columns.size();
  std::size_t idx = 0;
  for (std::size_t a = 0; a < k; ++a) {
    const double* xa = columns[a].data();
    for (std::size_t b = a; b < k; ++b, ++idx) {
      const double* xb = columns[b].data();
      double sum = 0.0;
      for (std::size_t i = begin; i < end; ++i) sum += xa[i] * xb[i];
      packed[idx] = sum;
    }
  }
}

Matrix unpack(const std::vector<double>& packed, std::size_t k) {
  Matrix out(k, k);
  std::size_t idx = 0;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a; b < k; ++b, ++idx) {
      out(a, b) = packed[idx];
      out(b, a) = packed[idx];
    }
  return out;
}

std::size_t rows_of(ColumnViews columns) {
  return columns.empty() ? 0 : columns.front().size();
}

}  // namespace

Matrix crossprod_reference(ColumnViews columns) {
  const std::size_t k = columns.size();
  std::vector<double> packed(packed_size(k));
  accumulate_block(columns, 0, rows_of(columns), packed.data());
  return unpack(packed, k);
}

Matrix crossprod_parallel(ColumnViews columns) {
  const std::size_t k = columns.size();
  const std::size_t n = rows_of(columns);
  const std::size_t blocks = n == 0 ? 0 : (n + kBlockRows - 1) / kBlockRows;
  const std::size_t width = packed_size(k);
  std::vector<double> partial(blocks * width);

#pragma omp parallel for schedule(static) if (blocks > 1)
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(blocks); ++b) {
    const std::size_t begin = static_cast<std::size_t>(b) * kBlockRows;
    const std::size_t end = std::min(n, begin + kBlockRows);
    accumulate_block(columns, begin, end, partial.data() + b * width);
  }

  std::vector<double> packed(width, 0.0);
  for (std::size_t b = 0; b < blocks; ++b)
    for (std::size_t idx = 0; idx < width; ++idx) packed[idx] += partial[b * width + idx];
  return unpack(packed, k);
}

ColumnMoments moments_reference(std::span<const double> x) {
  ColumnMoments m;
  if (x.empty()) return m;
  double sum = 0.0, sq = 0.0;
  for (double v : x) {
    sum += v;
    sq += v * v;
  }
  m.mean = sum / static_cast<double>(x.size());
  double csq = 0.0;
  for (double v : x) csq += (v - m.mean) * (v - m.mean);
  m.norm = std::sqrt(sq);
  m.centered_norm = std::sqrt(csq);
  return m;
}

ColumnMoments moments_parallel(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n <= kBlockRows) return moments_reference(x);
  const std::size_t blocks = (n + kBlockRows - 1) / kBlockRows;
  std::vector<double> sums(blocks), squares(blocks);

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(blocks); ++b) {
    const std::size_t begin = static_cast<std::size_t>(b) * kBlockRows;
    const std::size_t end = std::min(n, begin + kBlockRows);
    double s = 0.0, q = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      s += x[i];
      q += x[i] * x[i];
    }
    sums[b] = s;
    squares[b] = q;
  }
  double sum = 0.0, sq = 0.0;
  for (std::size_t b = 0; b < blocks; ++b) {
    sum += sums[b];
    sq += squares[b];
  }
  ColumnMoments m;
  m.mean = sum / static_cast<double>(n);

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(blocks); ++b) {
    const std::size_t begin = static_cast<std::size_t>(b) * kBlockRows;
    const std::size_t end = std::min(n, begin + kBlockRows);
    double c = 0.0;
    for (std::size_t i = begin; i < end; ++i) c += (x[i] - m.mean) * (x[i] - m.mean);
    sums[b] = c;
  }
  double csq = 0.0;
  for (std::size_t b = 0; b < blocks; ++b) csq += sums[b];

  m.norm = std::sqrt(sq);
  m.centered_norm = std::sqrt(csq);
  return m;
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace collindiag::kernels
