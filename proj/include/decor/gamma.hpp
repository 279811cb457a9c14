#pragma once

#include <cstddef>
#include <vector>

#include "decor/operator.hpp"

namespace decor {

/// gamma(E) = E + c + sum_j w_j / (eps_j - E) with strictly ascending poles
/// eps_j and positive weights w_j. Strictly increasing on every branch
/// between consecutive poles, and maps each branch onto the real line.
class HerglotzRational {
 public:
  HerglotzRational() = default;
  /// Throws InputError unless poles ascend strictly and weights are positive.
  HerglotzRational(double c, std::vector<double> poles, std::vector<double> weights);

  static HerglotzRational identity() { return {}; }

  double constant() const { return c_; }
  const std::vector<double>& poles() const { return poles_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t pole_count() const { return poles_.size(); }
  std::size_t branch_count() const { return poles_.size() + 1; }

  /// Guard radius around pole j: 1e-9 * (1 + |eps_j|).
  double pole_tolerance(std::size_t j) const;
  bool near_pole(double e) const;

  /// Throws std::domain_error within pole_tolerance of a pole.
  double operator()(double e) const;
  Complex operator()(Complex z) const;
  /// gamma'(E) = 1 + sum_j w_j / (eps_j - E)^2.
  double derivative(double e) const;

  bool operator==(const HerglotzRational&) const = default;

 private:
  double c_ = 0.0;
  std::vector<double> poles_;
  std::vector<double> weights_;
};

/// Everything derived from a decoration (A, root).
struct SpectralMap {
  HerglotzRational gamma;
  /// Spectrum of A on the orthogonal complement of the cyclic subspace.
  std::vector<double> remainder;
  CyclicDecomposition cyclic;
  /// Eigenvalues of A restricted to the cyclic subspace (strictly ascending)
  /// and the spectral weights |<root|phi_k>|^2 of the root vector.
  std::vector<double> cyclic_eigenvalues;
  std::vector<double> cyclic_weights;
  /// Eigenvectors of A|_V expressed in the vertex basis, one per column.
  Matrix cyclic_eigenvectors;

  bool is_cyclic() const { return remainder.empty(); }
  /// <root|(A - z)^{-1}|root> computed inside the cyclic subspace.
  Complex green(Complex z) const;
};

SpectralMap gamma_from_decoration(const SymmetricOperator& decoration_op, std::size_t root,
                                  const SolverOptions& opts = {});

/// Eigenvalues of the principal minor of A with the root row and column
/// removed. Throws InputError when dim(A) = 1.
std::vector<double> poles_via_projection(const SymmetricOperator& decoration_op, std::size_t root,
                                         const SolverOptions& opts = {});

}  // namespace decor
