#include "minplus/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace minplus {

std::optional<std::vector<double>> solve_linear(DenseMatrix m,
                                                std::vector<double> rhs,
                                                double tol) {
  const std::size_t n = m.rows;
  if (m.cols != n || rhs.size() != n) return std::nullopt;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m.at(r, col)) > std::abs(m.at(piv, col))) piv = r;
    if (std::abs(m.at(piv, col)) <= tol) return std::nullopt;
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(col, j));
      std::swap(rhs[piv], rhs[col]);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = m.at(r, col) / m.at(col, col);
      if (f == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) m.at(r, j) -= f * m.at(col, j);
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / m.at(i, i);
  return x;
}

std::vector<std::vector<double>> null_space(DenseMatrix m, double tol) {
  const std::size_t rows = m.rows, cols = m.cols;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    for (std::size_t i = r + 1; i < rows; ++i)
      if (std::abs(m.at(i, c)) > std::abs(m.at(piv, c))) piv = i;
    if (std::abs(m.at(piv, c)) <= tol) continue;
    if (piv != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
    const double d = m.at(r, c);
    for (std::size_t j = 0; j < cols; ++j) m.at(r, j) /= d;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const double f = m.at(i, c);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < cols; ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<char> is_pivot(cols, 0);
  for (std::size_t c : pivot_col) is_pivot[c] = 1;
  std::vector<std::vector<double>> basis;
  for (std::size_t free_c = 0; free_c < cols; ++free_c) {
    if (is_pivot[free_c]) continue;
    std::vector<double> v(cols, 0.0);
    v[free_c] = 1.0;
    for (std::size_t i = 0; i < pivot_col.size(); ++i)
      v[pivot_col[i]] = -m.at(i, free_c);
    basis.push_back(std::move(v));
  }
  return basis;
}

double spectral_radius_estimate(const DenseMatrix& m) {
  const std::size_t n = m.rows;
  if (n == 0) return 0.0;
  auto norm_inf = [&](const DenseMatrix& a) {
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += std::abs(a.at(i, j));
      best = std::max(best, s);
    }
    return best;
  };
  auto mul = [&](const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix c(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        const double aik = a.at(i, k);
        if (aik == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) c.at(i, j) += aik * b.at(k, j);
      }
    return c;
  };
  // Repeated squaring with scaling: after s rounds p * exp(logf)
  // represents M^(2^s); the estimate is norm(M^(2^s))^(1/2^s).
  DenseMatrix p = m;
  double logf = 0.0;
  double power = 1.0;
  double est = norm_inf(p);
  for (int s = 0; s < 8; ++s) {
    const double scale = norm_inf(p);
    if (scale == 0.0) return 0.0;
    DenseMatrix q = p;
    for (auto& v : q.a) v /= scale;
    p = mul(q, q);
    logf = 2.0 * (logf + std::log(scale));
    power *= 2.0;
    const double nrm = norm_inf(p);
    if (nrm == 0.0) return 0.0;
    est = std::exp((std::log(nrm) + logf) / power);
  }
  return est;
}

}  // namespace minplus
