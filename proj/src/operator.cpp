#include "decor/operator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace decor {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

// Off-diagonal Frobenius mass of a square matrix.
double off_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<double> Matrix::column(std::size_t j) const {
  std::vector<double> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

SymmetricOperator::SymmetricOperator(Matrix entries) : m_(std::move(entries)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) {
    throw InputError("operator must be a non-empty square matrix, got " + std::to_string(m_.rows()) + "x" +
                     std::to_string(m_.cols()));
  }
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t j = 0; j < dim(); ++j) {
      if (!std::isfinite(m_(i, j))) {
        throw InputError("entry (" + std::to_string(i) + "," + std::to_string(j) + ") is not finite");
      }
    }
    for (std::size_t j = i + 1; j < dim(); ++j) {
      if (m_(i, j) != m_(j, i)) {
        throw InputError("operator is not symmetric: entry (" + std::to_string(i) + "," + std::to_string(j) +
                         ") differs from (" + std::to_string(j) + "," + std::to_string(i) + ")");
      }
    }
  }
}

SymmetricOperator SymmetricOperator::zeros(std::size_t dim) { return SymmetricOperator(Matrix(dim, dim)); }

SymmetricOperator SymmetricOperator::diagonal(std::span<const double> values) {
  Matrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return SymmetricOperator(std::move(m));
}

void SymmetricOperator::add_symmetric(std::size_t i, std::size_t j, double value) {
  m_(i, j) += value;
  if (i != j) m_(j, i) += value;
}

std::vector<double> SymmetricOperator::apply(std::span<const double> v) const {
  std::vector<double> out(dim(), 0.0);
  for (std::size_t i = 0; i < dim(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < dim(); ++j) s += m_(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

double SymmetricOperator::form(std::span<const double> u, std::span<const double> v) const {
  return dot(u, apply(v));
}

double SymmetricOperator::frobenius_norm() const {
  double s = 0.0;
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) s += m_(i, j) * m_(i, j);
  return std::sqrt(s);
}

SymmetricOperator laplacian(const Graph& g) {
  auto op = SymmetricOperator::zeros(g.vertex_count());
  for (const auto& [i, j] : g.edges()) {
    op.add_symmetric(i, j, -1.0);
    op.add_symmetric(i, i, 1.0);
    op.add_symmetric(j, j, 1.0);
  }
  return op;
}

std::optional<Edge> first_incompatible_entry(const SymmetricOperator& op, const Graph& g) {
  if (op.dim() != g.vertex_count()) {
    throw InputError("operator dimension " + std::to_string(op.dim()) + " does not match graph with " +
                     std::to_string(g.vertex_count()) + " vertices");
  }
  for (std::size_t i = 0; i < op.dim(); ++i)
    for (std::size_t j = i + 1; j < op.dim(); ++j)
      if (op(i, j) != 0.0 && !g.has_edge(i, j)) return Edge{i, j};
  return std::nullopt;
}

bool check_compatibility(const SymmetricOperator& op, const Graph& g) {
  return !first_incompatible_entry(op, g).has_value();
}

SymmetricOperator build_decorated_operator(const SymmetricOperator& base_op,
                                           const SymmetricOperator& decoration_op, std::size_t root,
                                           std::size_t n_base) {
  if (base_op.dim() != n_base) {
    throw InputError("base operator has dimension " + std::to_string(base_op.dim()) + ", expected " +
                     std::to_string(n_base));
  }
  const std::size_t nd = decoration_op.dim();
  if (root >= nd) throw InputError("root " + std::to_string(root) + " outside decoration operator");

  Matrix h(n_base * nd, n_base * nd);
  for (std::size_t x = 0; x < n_base; ++x)
    for (std::size_t y = 0; y < n_base; ++y) h(x * nd + root, y * nd + root) += base_op(x, y);
  for (std::size_t x = 0; x < n_base; ++x)
    for (std::size_t u = 0; u < nd; ++u)
      for (std::size_t v = 0; v < nd; ++v) h(x * nd + u, x * nd + v) += decoration_op(u, v);
  return SymmetricOperator(std::move(h));
}

EigenSystem eigendecompose(const SymmetricOperator& op, const SolverOptions& opts) {
  const std::size_t n = op.dim();
  Matrix a = op.entries();
  Matrix v = Matrix::identity(n);
  const double scale = op.frobenius_norm();

  double previous_off = std::numeric_limits<double>::infinity();
  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    const double off = off_norm(a);
    // Quadratic convergence stalls at rounding level; stop there.
    if (off == 0.0 || off <= std::numeric_limits<double>::epsilon() * scale ||
        (off <= 1e-12 * scale && off >= 0.5 * previous_off)) {
      break;
    }
    previous_off = off;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (off_norm(a) > opts.eig_rel_tol * scale) {
    throw std::runtime_error("Jacobi eigensolver did not converge in " + std::to_string(opts.max_sweeps) +
                             " sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

  EigenSystem es{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    es.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) es.vectors(i, k) = v(i, order[k]);
  }
  return es;
}

std::vector<double> eigenvalues(const SymmetricOperator& op, const SolverOptions& opts) {
  return eigendecompose(op, opts).values;
}

Complex green_diag(const EigenSystem& es, std::span<const double> v, Complex z, double real_tol) {
  Complex g = 0.0;
  for (std::size_t k = 0; k < es.values.size(); ++k) {
    double overlap = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) overlap += v[i] * es.vectors(i, k);
    const Complex denom = es.values[k] - z;
    if (z.imag() == 0.0 && std::abs(denom) <= real_tol * (1.0 + std::abs(es.values[k]))) {
      throw std::domain_error("resolvent evaluated at eigenvalue " + std::to_string(es.values[k]));
    }
    g += overlap * overlap / denom;
  }
  return g;
}

Complex green_diag(const SymmetricOperator& op, std::span<const double> v, Complex z) {
  return green_diag(eigendecompose(op), v, z);
}

Complex green_diag(const SymmetricOperator& op, std::size_t vertex, Complex z) {
  return green_diag(op, unit_vector(op.dim(), vertex), z);
}

std::vector<Complex> solve_shifted(const SymmetricOperator& op, Complex z, std::span<const Complex> rhs) {
  const std::size_t n = op.dim();
  std::vector<Complex> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = op(i, j) - (i == j ? z : Complex{0.0});
  std::vector<Complex> b(rhs.begin(), rhs.end());

  const double scale = op.frobenius_norm() + std::abs(z);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a[i * n + k]) > std::abs(a[piv * n + k])) piv = i;
    if (std::abs(a[piv * n + k]) <= 1e-14 * scale) throw std::domain_error("shifted operator is singular");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[piv * n + j]);
      std::swap(b[k], b[piv]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex f = a[i * n + k] / a[k * n + k];
      if (f == Complex{0.0}) continue;
      for (std::size_t j = k; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
      b[i] -= f * b[k];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    Complex s = b[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= a[k * n + j] * b[j];
    b[k] = s / a[k * n + k];
  }
  return b;
}

std::vector<double> unit_vector(std::size_t dim, std::size_t index) {
  std::vector<double> e(dim, 0.0);
  e.at(index) = 1.0;
  return e;
}

SymmetricOperator CyclicDecomposition::tridiagonal() const {
  auto t = SymmetricOperator::diagonal(alpha);
  for (std::size_t k = 0; k < beta.size(); ++k) t.add_symmetric(k, k + 1, beta[k]);
  return t;
}

CyclicDecomposition krylov_cyclic_decomposition(const SymmetricOperator& op, std::size_t root,
                                                const SolverOptions& opts) {
  const std::size_t n = op.dim();
  if (root >= n) throw InputError("root " + std::to_string(root) + " outside operator of dimension " + std::to_string(n));
  const double breakdown = opts.breakdown_rel_tol * op.frobenius_norm();

  std::vector<std::vector<double>> q{unit_vector(n, root)};
  CyclicDecomposition cd;
  for (std::size_t k = 0;; ++k) {
    auto w = op.apply(q[k]);
    const double a = dot(q[k], w);
    cd.alpha.push_back(a);
    // full reorthogonalization, applied twice
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& qi : q) {
        const double h = dot(qi, w);
        for (std::size_t i = 0; i < n; ++i) w[i] -= h * qi[i];
      }
    }
    const double b = norm2(w);
    cd.terminal_residual = b;
    if (k + 1 == n || b <= breakdown) break;
    for (auto& wi : w) wi /= b;
    cd.beta.push_back(b);
    q.push_back(std::move(w));
  }

  const std::size_t m = q.size();
  cd.basis = Matrix(n, m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < n; ++i) cd.basis(i, j) = q[j][i];

  if (m < n) {
    // Complete the Krylov basis with coordinate vectors, picking the one
    // with the largest component outside the current span each time.
    std::vector<std::vector<double>> all = q;
    std::vector<std::vector<double>> complement;
    while (all.size() < n) {
      std::vector<double> best;
      double best_norm = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        auto e = unit_vector(n, i);
        for (int pass = 0; pass < 2; ++pass) {
          for (const auto& b : all) {
            const double h = dot(b, e);
            for (std::size_t r = 0; r < n; ++r) e[r] -= h * b[r];
          }
        }
        const double en = norm2(e);
        if (en > best_norm) {
          best_norm = en;
          best = std::move(e);
        }
      }
      for (auto& x : best) x /= best_norm;
      all.push_back(best);
      complement.push_back(std::move(best));
    }
    const std::size_t r = complement.size();
    Matrix projected(r, r);
    for (std::size_t i = 0; i < r; ++i) {
      const auto ai = op.apply(complement[i]);
      for (std::size_t j = 0; j < r; ++j) projected(i, j) = dot(complement[j], ai);
    }
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = i + 1; j < r; ++j) projected(i, j) = projected(j, i) = 0.5 * (projected(i, j) + projected(j, i));
    cd.remainder_eigenvalues = eigenvalues(SymmetricOperator(std::move(projected)), opts);
  }
  return cd;
}

}  // namespace decor
