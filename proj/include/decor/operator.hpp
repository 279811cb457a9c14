#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "decor/graph.hpp"

namespace decor {

using Complex = std::complex<double>;

/// Dense row-major real matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::vector<double> column(std::size_t j) const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Real symmetric operator on the vertex space of a finite graph.
/// Symmetry is exact: construction rejects any a(i,j) != a(j,i).
class SymmetricOperator {
 public:
  SymmetricOperator() = default;
  explicit SymmetricOperator(Matrix entries);

  static SymmetricOperator zeros(std::size_t dim);
  static SymmetricOperator diagonal(std::span<const double> values);

  std::size_t dim() const { return m_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const Matrix& entries() const { return m_; }

  /// Adds `value` to (i, j) and (j, i) (once when i == j).
  void add_symmetric(std::size_t i, std::size_t j, double value);

  std::vector<double> apply(std::span<const double> v) const;
  /// <u|A|v>
  double form(std::span<const double> u, std::span<const double> v) const;
  double frobenius_norm() const;

  bool operator==(const SymmetricOperator&) const = default;

 private:
  Matrix m_;
};

/// -Laplacian of g: degree on the diagonal, -1 on every edge.
SymmetricOperator laplacian(const Graph& g);

/// True iff every off-diagonal entry outside E(g) is exactly zero.
/// Throws InputError on dimension mismatch.
bool check_compatibility(const SymmetricOperator& op, const Graph& g);

/// First off-diagonal entry violating compatibility, if any.
std::optional<Edge> first_incompatible_entry(const SymmetricOperator& op, const Graph& g);

/// H = P H_o P + 1 (x) A on the decorated vertex space (index x * dim(A) + u).
SymmetricOperator build_decorated_operator(const SymmetricOperator& base_op,
                                           const SymmetricOperator& decoration_op, std::size_t root,
                                           std::size_t n_base);

struct SolverOptions {
  /// Eigen-residual tolerance relative to ||A||_F.
  double eig_rel_tol = 1e-11;
  int max_sweeps = 100;
  /// Krylov breakdown threshold relative to ||A||_F.
  double breakdown_rel_tol = 1e-10;
};

struct EigenSystem {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column k belongs to values[k]
};

/// Cyclic Jacobi rotations. Throws std::runtime_error when the off-diagonal
/// mass is still above eig_rel_tol * ||A||_F after max_sweeps.
EigenSystem eigendecompose(const SymmetricOperator& op, const SolverOptions& opts = {});

std::vector<double> eigenvalues(const SymmetricOperator& op, const SolverOptions& opts = {});

/// <v|(A - z)^{-1}|v> through the spectral decomposition of A.
/// For real z within `real_tol` of an eigenvalue throws std::domain_error.
Complex green_diag(const EigenSystem& es, std::span<const double> v, Complex z, double real_tol = 1e-12);
Complex green_diag(const SymmetricOperator& op, std::span<const double> v, Complex z);
Complex green_diag(const SymmetricOperator& op, std::size_t vertex, Complex z);

/// Solves (A - z) w = rhs by Gaussian elimination with partial pivoting.
/// Throws std::domain_error if the shifted matrix is numerically singular.
std::vector<Complex> solve_shifted(const SymmetricOperator& op, Complex z, std::span<const Complex> rhs);

std::vector<double> unit_vector(std::size_t dim, std::size_t index);

/// Lanczos decomposition of the cyclic subspace V generated by |root> under
/// A, together with the spectrum of A on the orthogonal complement.
struct CyclicDecomposition {
  Matrix basis;                // dim x m, q_0 = |root>
  std::vector<double> alpha;   // m diagonal entries of A|_V
  std::vector<double> beta;    // m - 1 off-diagonal entries, all positive
  std::vector<double> remainder_eigenvalues;  // ascending, size dim - m
  /// Norm of the last Lanczos residual: the value that triggered breakdown,
  /// or the residual after the final step when m = dim.
  double terminal_residual = 0.0;

  std::size_t size() const { return alpha.size(); }
  bool cyclic() const { return remainder_eigenvalues.empty(); }
  SymmetricOperator tridiagonal() const;
};

CyclicDecomposition krylov_cyclic_decomposition(const SymmetricOperator& op, std::size_t root,
                                                const SolverOptions& opts = {});

}  // namespace decor
