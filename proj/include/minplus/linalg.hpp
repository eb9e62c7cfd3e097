#pragma once

#include <optional>
#include <vector>

namespace minplus {

/// Row-major dense matrix, just enough linear algebra for the small
/// systems the solvers produce.
struct DenseMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<double> a;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}
  double& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

/// Gaussian elimination with partial pivoting; empty if singular at tol.
std::optional<std::vector<double>> solve_linear(DenseMatrix m,
                                                std::vector<double> rhs,
                                                double tol = 1e-11);

/// Basis of the null space {x : m x = 0}, rank decided at tol.
std::vector<std::vector<double>> null_space(DenseMatrix m, double tol = 1e-9);

/// Spectral radius estimate via norms of repeated squarings; good enough
/// for a stability flag on small matrices.
double spectral_radius_estimate(const DenseMatrix& m);

}  // namespace minplus
