#include "decor/gamma.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace decor {

HerglotzRational::HerglotzRational(double c, std::vector<double> poles, std::vector<double> weights)
    : c_(c), poles_(std::move(poles)), weights_(std::move(weights)) {
  if (poles_.size() != weights_.size()) throw InputError("gamma needs one weight per pole");
  if (!std::isfinite(c_)) throw InputError("gamma constant is not finite");
  for (std::size_t j = 0; j < poles_.size(); ++j) {
    if (!std::isfinite(poles_[j]) || !std::isfinite(weights_[j])) throw InputError("gamma pole/weight not finite");
    if (!(weights_[j] > 0.0)) throw InputError("gamma weight " + std::to_string(j) + " is not positive");
    if (j > 0 && !(poles_[j] > poles_[j - 1])) throw InputError("gamma poles must be strictly ascending");
  }
}

double HerglotzRational::pole_tolerance(std::size_t j) const { return 1e-9 * (1.0 + std::abs(poles_[j])); }

bool HerglotzRational::near_pole(double e) const {
  for (std::size_t j = 0; j < poles_.size(); ++j)
    if (std::abs(e - poles_[j]) <= pole_tolerance(j)) return true;
  return false;
}

double HerglotzRational::operator()(double e) const {
  if (near_pole(e)) throw std::domain_error("gamma evaluated at a pole (E = " + std::to_string(e) + ")");
  double g = e + c_;
  for (std::size_t j = 0; j < poles_.size(); ++j) g += weights_[j] / (poles_[j] - e);
  return g;
}

Complex HerglotzRational::operator()(Complex z) const {
  if (z.imag() == 0.0) return (*this)(z.real());
  Complex g = z + c_;
  for (std::size_t j = 0; j < poles_.size(); ++j) g += weights_[j] / (poles_[j] - z);
  return g;
}

double HerglotzRational::derivative(double e) const {
  if (near_pole(e)) throw std::domain_error("gamma' evaluated at a pole (E = " + std::to_string(e) + ")");
  double d = 1.0;
  for (std::size_t j = 0; j < poles_.size(); ++j) {
    const double r = poles_[j] - e;
    d += weights_[j] / (r * r);
  }
  return d;
}

Complex SpectralMap::green(Complex z) const {
  Complex g = 0.0;
  for (std::size_t k = 0; k < cyclic_eigenvalues.size(); ++k) g += cyclic_weights[k] / (cyclic_eigenvalues[k] - z);
  return g;
}

namespace {

// G_V(E) and G_V'(E) for real E between eigenvalues.
double cyclic_green(const std::vector<double>& lambda, const std::vector<double>& p, double e) {
  double g = 0.0;
  for (std::size_t k = 0; k < lambda.size(); ++k) g += p[k] / (lambda[k] - e);
  return g;
}

double cyclic_green_derivative(const std::vector<double>& lambda, const std::vector<double>& p, double e) {
  double g = 0.0;
  for (std::size_t k = 0; k < lambda.size(); ++k) {
    const double r = lambda[k] - e;
    g += p[k] / (r * r);
  }
  return g;
}

// Zero of the increasing function G_V on (lo, hi).
// Bisects to adjacent doubles.
double bisect_zero(const std::vector<double>& lambda, const std::vector<double>& p, double lo, double hi) {
  for (;;) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (cyclic_green(lambda, p, mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

SpectralMap gamma_from_decoration(const SymmetricOperator& decoration_op, std::size_t root,
                                  const SolverOptions& opts) {
  SpectralMap out;
  out.cyclic = krylov_cyclic_decomposition(decoration_op, root, opts);
  out.remainder = out.cyclic.remainder_eigenvalues;

  const auto tri = eigendecompose(out.cyclic.tridiagonal(), opts);
  const std::size_t m = tri.values.size();
  out.cyclic_eigenvalues = tri.values;
  out.cyclic_weights.resize(m);
  for (std::size_t k = 0; k < m; ++k) out.cyclic_weights[k] = tri.vectors(0, k) * tri.vectors(0, k);

  const std::size_t n = decoration_op.dim();
  out.cyclic_eigenvectors = Matrix(n, m);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < m; ++j) s += out.cyclic.basis(i, j) * tri.vectors(j, k);
      out.cyclic_eigenvectors(i, k) = s;
    }

  const auto& lambda = out.cyclic_eigenvalues;
  const auto& p = out.cyclic_weights;
  std::vector<double> poles, weights;
  for (std::size_t k = 0; k + 1 < m; ++k) {
    const double eps = bisect_zero(lambda, p, lambda[k], lambda[k + 1]);
    poles.push_back(eps);
    weights.push_back(1.0 / cyclic_green_derivative(lambda, p, eps));
  }
  // c = -<root|A|root> is the first Lanczos coefficient.
  out.gamma = HerglotzRational(-out.cyclic.alpha.front(), std::move(poles), std::move(weights));
  return out;
}

std::vector<double> poles_via_projection(const SymmetricOperator& decoration_op, std::size_t root,
                                         const SolverOptions& opts) {
  const std::size_t n = decoration_op.dim();
  if (n < 2) throw InputError("root-deleted projection of a 1x1 operator is empty");
  if (root >= n) throw InputError("root outside operator");
  Matrix minor(n - 1, n - 1);
  for (std::size_t i = 0, mi = 0; i < n; ++i) {
    if (i == root) continue;
    for (std::size_t j = 0, mj = 0; j < n; ++j) {
      if (j == root) continue;
      minor(mi, mj++) = decoration_op(i, j);
    }
    ++mi;
  }
  return eigenvalues(SymmetricOperator(std::move(minor)), opts);
}

}  // namespace decor
