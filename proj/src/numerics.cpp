#include "collindiag/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "collindiag/errors.hpp"
#include "collindiag/kernels.hpp"

namespace collindiag {

SymmetricMatrix SymmetricMatrix::from_full(const Matrix& full) {
  if (full.rows() != full.cols()) throw std::invalid_argument("matrix is not square");
  SymmetricMatrix s(full.rows());
  for (std::size_t i = 0; i < full.rows(); ++i)
    for (std::size_t j = i; j < full.cols(); ++j) {
      if (full(i, j) != full(j, i)) throw std::invalid_argument("matrix is not symmetric");
      s.set(i, j, full(i, j));
    }
  return s;
}

double SymmetricMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < order(); ++i) t += m_(i, i);
  return t;
}

double SymmetricMatrix::frobenius_norm() const {
  double sum = 0.0;
  for (double v : m_.data()) sum += v * v;
  return std::sqrt(sum);
}

SymmetricMatrix crossprod(const DesignMatrix& x) {
  std::vector<std::span<const double>> views;
  views.reserve(x.cols());
  for (const auto& c : x.columns()) views.emplace_back(c.values);
  return SymmetricMatrix::from_full(kernels::crossprod_parallel(views));
}

namespace {

double off_diagonal_norm(const Matrix& a) {
  double sum = 0.0;
  for (std::size_t p = 0; p < a.rows(); ++p)
    for (std::size_t q = p + 1; q < a.cols(); ++q) sum += 2.0 * a(p, q) * a(p, q);
  return std::sqrt(sum);
}

void rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
  const double apq = a(p, q);
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    if (theta < 0.0) t = -t;
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const std::size_t n = a.rows();

  for (std::size_t r = 0; r < n; ++r) {
    if (r == p || r == q) continue;
    const double arp = a(r, p);
    const double arq = a(r, q);
    a(r, p) = a(p, r) = c * arp - s * arq;
    a(r, q) = a(q, r) = s * arp + c * arq;
  }
  a(p, p) -= t * apq;
  a(q, q) += t * apq;
  a(p, q) = a(q, p) = 0.0;

  for (std::size_t r = 0; r < n; ++r) {
    const double vrp = v(r, p);
    const double vrq = v(r, q);
    v(r, p) = c * vrp - s * vrq;
    v(r, q) = s * vrp + c * vrq;
  }
}

}  // namespace

EigenDecomposition sym_eigen(const SymmetricMatrix& s, JacobiOptions options) {
  const std::size_t n = s.order();
  for (double x : s.full().data())
    if (!std::isfinite(x)) throw NumericalError("eigendecomposition of a non-finite matrix");

  Matrix a = s.full();
  Matrix v = Matrix::identity(n);
  const double scale = s.frobenius_norm();

  bool converged = false;
  for (int sweep = 0; sweep <= options.max_sweeps; ++sweep) {
    if (off_diagonal_norm(a) <= options.relative_tolerance * scale) {
      converged = true;
      break;
    }
    if (sweep == options.max_sweeps) break;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q)
        if (a(p, q) != 0.0) rotate(a, v, p, q);
  }
  if (!converged)
    throw NumericalError("Jacobi eigensolver did not converge in " +
                         std::to_string(options.max_sweeps) + " sweeps");

  // Sign convention: largest-magnitude component positive.
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t big = 0;
    for (std::size_t r = 1; r < n; ++r)
      if (std::abs(v(r, j)) > std::abs(v(big, j))) big = r;
    if (v(big, j) < 0.0)
      for (std::size_t r = 0; r < n; ++r) v(r, j) = -v(r, j);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    if (a(i, i) != a(j, j)) return a(i, i) > a(j, j);
    return v(0, i) > v(0, j);
  });

  EigenDecomposition out{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = a(order[j], order[j]);
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, j) = v(r, order[j]);
  }
  return out;
}

namespace {

bool rank_deficient(const std::vector<double>& values) {
  if (values.empty()) return true;
  const double hi = values.front();
  const double lo = values.back();
  return !(hi > 0.0) || lo <= kRankTolerance * hi;
}

SymmetricMatrix inverse_from(const EigenDecomposition& e) {
  const std::size_t n = e.values.size();
  SymmetricMatrix inv(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double sum = 0.0;
      for (std::size_t l = 0; l < n; ++l)
        sum += e.vectors(i, l) * e.vectors(j, l) / e.values[l];
      inv.set(i, j, sum);
    }
  return inv;
}

}  // namespace

SymmetricMatrix invert_spd(const SymmetricMatrix& s) {
  const auto e = sym_eigen(s);
  if (rank_deficient(e.values))
    throw RankDeficientError("matrix is singular or nearly singular (min eigenvalue " +
                             std::to_string(e.values.empty() ? 0.0 : e.values.back()) +
                             ")");
  return inverse_from(e);
}

double det_spd(const SymmetricMatrix& s) {
  const auto e = sym_eigen(s);
  double det = 1.0;
  for (double l : e.values) det *= l;
  return det;
}

std::vector<std::string> dependency_columns(const DesignMatrix& x,
                                            const EigenDecomposition& scaled) {
  std::vector<std::string> out;
  if (scaled.values.empty()) return out;
  const auto v = scaled.vector(scaled.values.size() - 1);
  double big = 0.0;
  for (double c : v) big = std::max(big, std::abs(c));
  for (std::size_t j = 0; j < v.size(); ++j)
    if (std::abs(v[j]) >= 0.1 * big) out.push_back(x.column(j).name);
  return out;
}

namespace {

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : ", ") + n;
  return out;
}

std::vector<double> multiply(const SymmetricMatrix& s, const std::vector<double>& b) {
  std::vector<double> out(b.size(), 0.0);
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i] += s(i, j) * b[j];
  return out;
}

std::vector<double> transpose_times(const DesignMatrix& z, std::span<const double> y) {
  std::vector<double> out(z.cols(), 0.0);
  for (std::size_t j = 0; j < z.cols(); ++j) {
    const auto& c = z.column(j).values;
    for (std::size_t i = 0; i < y.size(); ++i) out[j] += c[i] * y[i];
  }
  return out;
}

}  // namespace

OlsFit ols(const DesignMatrix& x, std::span<const double> y) {
  const std::size_t n = x.rows();
  const std::size_t k = x.cols();
  if (y.size() != n)
    throw DataError("response has " + std::to_string(y.size()) + " entries, design has " +
                    std::to_string(n) + " rows");
  if (n <= k)
    throw DataError("need more observations than columns (n = " + std::to_string(n) +
                    ", k = " + std::to_string(k) + ")");

  const DesignMatrix z = scale(x, ScalingMode::UnitLength);
  const auto e = sym_eigen(crossprod(z));
  if (rank_deficient(e.values)) {
    auto cols = dependency_columns(x, e);
    const auto message = "design is rank deficient; linear dependence among: " + join(cols);
    throw RankDeficientError(message, std::move(cols));
  }
  const auto inv = inverse_from(e);

  std::vector<double> beta = multiply(inv, transpose_times(z, y));
  std::vector<double> residuals(n);
  auto refresh = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      double fit = 0.0;
      for (std::size_t j = 0; j < k; ++j) fit += z.column(j).values[i] * beta[j];
      residuals[i] = y[i] - fit;
    }
  };
  refresh();
  // One step of iterative refinement on the normal equations.
  const auto correction = multiply(inv, transpose_times(z, residuals));
  for (std::size_t j = 0; j < k; ++j) beta[j] += correction[j];
  refresh();

  OlsFit fit;
  fit.coefficients.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    const double norm = kernels::moments_parallel(x.column(j).values).norm;
    fit.coefficients[j] = beta[j] / norm;
  }
  fit.residuals = std::move(residuals);

  double ssr = 0.0;
  for (double r : fit.residuals) ssr += r * r;
  double sst = 0.0;
  if (x.has_intercept()) {
    const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    for (double v : y) sst += (v - mean) * (v - mean);
  } else {
    for (double v : y) sst += v * v;
  }
  if (sst == 0.0) throw DataError("response has zero variation; R-squared is undefined");
  fit.r_squared = std::clamp(1.0 - ssr / sst, 0.0, 1.0);
  return fit;
}

}  // namespace collindiag
