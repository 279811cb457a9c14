#include "decor/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace decor {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Portable draws; std::uniform_*_distribution output differs across
// standard libraries, which would break report byte-stability.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo, double hi) { return lo + (hi - lo) * static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::size_t integer(std::size_t lo, std::size_t hi) { return lo + engine_() % (hi - lo + 1); }
  bool coin(double p) { return uniform(0.0, 1.0) < p; }

 private:
  std::mt19937_64 engine_;
};

double spectral_radius(std::span<const double> eigs) {
  double r = 0.0;
  for (double e : eigs) r = std::max(r, std::abs(e));
  return r;
}

double distance_to_nearest(std::span<const double> sorted, double x) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
  double d = kInf;
  if (it != sorted.end()) d = std::min(d, std::abs(*it - x));
  if (it != sorted.begin()) d = std::min(d, std::abs(*std::prev(it) - x));
  return d;
}

std::size_t count_near(std::span<const double> values, double x, double tol) {
  return static_cast<std::size_t>(
      std::count_if(values.begin(), values.end(), [&](double v) { return std::abs(v - x) <= tol; }));
}

Check make_check(std::string name, double err, double tol) {
  return Check{std::move(name), err <= tol, err, tol};
}

std::string describe_graph(const Graph& g) {
  std::ostringstream os;
  os << "n=" << g.vertex_count() << " edges=[";
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    if (i) os << ",";
    os << "[" << g.edges()[i].first << "," << g.edges()[i].second << "]";
  }
  os << "]";
  return os.str();
}

Graph random_connected_graph(Rng& rng, std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t v = 1; v < n; ++v) edges.emplace_back(rng.integer(0, v - 1), v);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.coin(0.3)) edges.emplace_back(i, j);
  return Graph(n, std::move(edges));
}

SymmetricOperator random_compatible_operator(Rng& rng, const Graph& g) {
  auto op = SymmetricOperator::zeros(g.vertex_count());
  for (std::size_t i = 0; i < g.vertex_count(); ++i) op.add_symmetric(i, i, rng.uniform(-1.0, 1.0));
  for (const auto& [i, j] : g.edges()) op.add_symmetric(i, j, rng.uniform(-1.0, 1.0));
  return op;
}

}  // namespace

double SpectralMeasure::total_mass() const {
  double s = 0.0;
  for (const auto& a : atoms) s += a.weight;
  return s;
}

double SpectralMeasure::mass_near(double e, double tol) const {
  double s = 0.0;
  for (const auto& a : atoms)
    if (std::abs(a.value - e) <= tol) s += a.weight;
  return s;
}

SpectralMeasure spectral_measure_at(const EigenSystem& es, std::span<const double> v, double merge_tol) {
  SpectralMeasure mu;
  for (std::size_t k = 0; k < es.values.size(); ++k) {
    double overlap = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) overlap += v[i] * es.vectors(i, k);
    const double w = overlap * overlap;
    // Values ascend, so a cluster only ever grows at the back.
    if (!mu.atoms.empty() && es.values[k] - mu.atoms.back().value <= merge_tol) {
      mu.atoms.back().weight += w;
    } else {
      mu.atoms.push_back({es.values[k], w});
    }
  }
  return mu;
}

SpectralMeasure spectral_measure_at(const SymmetricOperator& op, std::span<const double> v) {
  return spectral_measure_at(eigendecompose(op), v, 1e-11 * std::max(1.0, op.frobenius_norm()));
}

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const Check* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name || c.name.starts_with(name + ":")) return &c;
  return nullptr;
}

void VerificationReport::append(const VerificationReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

void Instance::validate() const {
  if (base_op.dim() != base.vertex_count()) {
    throw InputError("base operator has dimension " + std::to_string(base_op.dim()) + " but the base graph has " +
                     std::to_string(base.vertex_count()) + " vertices");
  }
  if (decoration_op.dim() != decoration.graph.vertex_count()) {
    throw InputError("decoration operator has dimension " + std::to_string(decoration_op.dim()) +
                     " but the decoration graph has " + std::to_string(decoration.graph.vertex_count()) +
                     " vertices");
  }
  if (auto e = first_incompatible_entry(base_op, base)) {
    throw InputError("base operator entry (" + std::to_string(e->first) + "," + std::to_string(e->second) +
                     ") couples vertices that are not adjacent");
  }
  if (auto e = first_incompatible_entry(decoration_op, decoration.graph)) {
    throw InputError("decoration operator entry (" + std::to_string(e->first) + "," + std::to_string(e->second) +
                     ") couples vertices that are not adjacent");
  }
}

SymmetricOperator Instance::decorated_operator() const {
  return build_decorated_operator(base_op, decoration_op, decoration.root, base.vertex_count());
}

Instance laplacian_instance(const Graph& base, const RootedGraph& decoration, std::string descriptor) {
  if (descriptor.empty()) {
    descriptor = "base " + describe_graph(base) + " laplacian | decoration " + describe_graph(decoration.graph) +
                 " root=" + std::to_string(decoration.root) + " laplacian";
  }
  return Instance{base, laplacian(base), decoration, laplacian(decoration.graph), std::move(descriptor)};
}

VerificationReport verify_spectral_map(const Instance& inst, const OracleTolerances& tol) {
  inst.validate();
  VerificationReport rep{inst.descriptor, {}, 0};
  const auto h_eigs = eigenvalues(inst.decorated_operator(), tol.solver);
  const double match = tol.spectral_match * (1.0 + spectral_radius(h_eigs));

  const auto map = gamma_from_decoration(inst.decoration_op, inst.decoration.root, tol.solver);
  const auto base_eigs = eigenvalues(inst.base_op, tol.solver);
  const std::size_t nb = inst.base.vertex_count();

  std::vector<double> pulled;
  for (double lambda : base_eigs)
    for (std::size_t k = 0; k < map.gamma.branch_count(); ++k) pulled.push_back(branch_invert(map.gamma, k, lambda));
  std::vector<double> predicted = pulled;
  for (double r : map.remainder) predicted.insert(predicted.end(), nb, r);
  std::sort(pulled.begin(), pulled.end());
  std::sort(predicted.begin(), predicted.end());

  double err = kInf;
  if (predicted.size() == h_eigs.size()) {
    err = 0.0;
    for (std::size_t i = 0; i < predicted.size(); ++i) err = std::max(err, std::abs(predicted[i] - h_eigs[i]));
  }
  rep.checks.push_back(make_check("spectral_map: sigma(H) = gamma^-1(sigma(H_o)) U sigma(A|V-perp) x |base|", err, match));

  // Each base eigenvalue of multiplicity r yields n+1 decorated eigenvalues
  // of multiplicity r (plus whatever else coincides with them).
  const auto clusters = SpectrumSet::from_eigenvalues(base_eigs, 1e-9);
  double mult_err = 0.0;
  for (const auto& c : clusters.points()) {
    for (std::size_t k = 0; k < map.gamma.branch_count(); ++k) {
      const double e = branch_invert(map.gamma, k, c.value);
      const auto want = count_near(predicted, e, match);
      const auto got = count_near(h_eigs, e, match);
      if (got < c.multiplicity.count) mult_err = std::max(mult_err, double(c.multiplicity.count - got));
      mult_err = std::max(mult_err, std::abs(double(want) - double(got)));
    }
  }
  rep.checks.push_back(make_check("multiplicity_preservation: base multiplicity r gives multiplicity r per branch",
                                  mult_err, 0.0));

  double incl = 0.0;
  for (double e : pulled) incl = std::max(incl, distance_to_nearest(h_eigs, e));
  rep.checks.push_back(make_check("spectral_inclusion: gamma^-1(sigma(H_o)) subset of sigma(H)", incl, match));
  return rep;
}

VerificationReport verify_green_relation(const Instance& inst, std::span<const Complex> z_samples,
                                         const OracleTolerances& tol) {
  inst.validate();
  VerificationReport rep{inst.descriptor, {}, 0};
  const auto h = inst.decorated_operator();
  const auto map = gamma_from_decoration(inst.decoration_op, inst.decoration.root, tol.solver);
  const std::size_t nb = inst.base.vertex_count();
  const std::size_t nd = inst.decoration.graph.vertex_count();

  double err = 0.0, conj_err = 0.0;
  for (const Complex z : z_samples) {
    if (z.imag() == 0.0) throw InputError("green relation samples must be off the real axis");
    const Complex gz = map.gamma(z);
    for (std::size_t x = 0; x < nb; ++x) {
      const std::size_t site = x * nd + inst.decoration.root;
      std::vector<Complex> rhs_h(h.dim(), 0.0);
      rhs_h[site] = 1.0;
      std::vector<Complex> rhs_b(nb, 0.0);
      rhs_b[x] = 1.0;
      const Complex lhs = solve_shifted(h, z, rhs_h)[site];
      const Complex rhs = solve_shifted(inst.base_op, gz, rhs_b)[x];
      err = std::max(err, std::abs(lhs - rhs));
      const Complex lhs_bar = solve_shifted(h, std::conj(z), rhs_h)[site];
      conj_err = std::max(conj_err, std::abs(lhs_bar - std::conj(lhs)));
    }
  }
  rep.checks.push_back(make_check("green_relation: <x,O|(H-z)^-1|x,O> = <x|(H_o-gamma(z))^-1|x>", err, tol.green));
  rep.checks.push_back(make_check("green_conjugation: G(conj z) = conj G(z)", conj_err, tol.green));
  return rep;
}

VerificationReport verify_measure_relation(const Instance& inst, const OracleTolerances& tol) {
  inst.validate();
  VerificationReport rep{inst.descriptor, {}, 0};
  const auto h = inst.decorated_operator();
  const auto es_h = eigendecompose(h, tol.solver);
  const auto es_b = eigendecompose(inst.base_op, tol.solver);
  const double h_scale = 1.0 + spectral_radius(es_h.values);
  const double b_scale = 1.0 + spectral_radius(es_b.values);
  const auto map = gamma_from_decoration(inst.decoration_op, inst.decoration.root, tol.solver);
  const auto& gamma = map.gamma;
  const std::size_t nb = inst.base.vertex_count();
  const std::size_t nd = inst.decoration.graph.vertex_count();
  const double match = tol.spectral_match * h_scale;

  double atom_err = 0.0, sum_err = 0.0;
  for (std::size_t x = 0; x < nb; ++x) {
    const auto mu_h = spectral_measure_at(es_h, unit_vector(h.dim(), x * nd + inst.decoration.root), 1e-10 * h_scale);
    const auto mu_b = spectral_measure_at(es_b, unit_vector(nb, x), 1e-10 * b_scale);

    for (const auto& atom : mu_h.atoms) {
      if (gamma.near_pole(atom.value)) {
        // No weight can sit at a pole of gamma.
        atom_err = std::max(atom_err, atom.weight);
        continue;
      }
      const double g = gamma(atom.value);
      const double d = gamma.derivative(atom.value);
      // gamma amplifies the error in E by gamma'(E).
      const double base_mass = mu_b.mass_near(g, 1e-9 * (d * h_scale + b_scale));
      atom_err = std::max(atom_err, std::abs(atom.weight * d - base_mass));
    }

    for (const auto& atom : mu_b.atoms) {
      double predicted = 0.0, observed = 0.0;
      std::vector<double> pre;
      for (std::size_t k = 0; k < gamma.branch_count(); ++k) {
        const double e = branch_invert(gamma, k, atom.value);
        pre.push_back(e);
        predicted += atom.weight / gamma.derivative(e);
      }
      std::sort(pre.begin(), pre.end());
      for (const auto& a : mu_h.atoms)
        if (distance_to_nearest(pre, a.value) <= match) observed += a.weight;
      sum_err = std::max(sum_err, std::abs(predicted - observed));
    }
  }
  rep.checks.push_back(make_check("measure_relation: mu~_x({E}) gamma'(E) = mu_x({gamma(E)}) per atom", atom_err,
                                  tol.measure));
  rep.checks.push_back(make_check("measure_relation_summed: sum over gamma^-1(l) of mu_x({l})/gamma'(E) = mu~_x mass",
                                  sum_err, tol.measure));
  return rep;
}

VerificationReport verify_gamma_identities(const SymmetricOperator& decoration_op, std::size_t root,
                                           std::span<const Complex> z_samples, const OracleTolerances& tol) {
  VerificationReport rep;
  const auto map = gamma_from_decoration(decoration_op, root, tol.solver);
  const auto& gamma = map.gamma;
  const std::size_t n = decoration_op.dim();

  const double mean = decoration_op(root, root);
  double second = 0.0;
  for (std::size_t u = 0; u < n; ++u) second += decoration_op(root, u) * decoration_op(root, u);

  rep.checks.push_back(make_check("coefficient_c: c = -<O|A|O>", std::abs(gamma.constant() + mean), tol.coefficient));

  double wsum = 0.0;
  for (double w : gamma.weights()) wsum += w;
  rep.checks.push_back(make_check("weight_sum: sum w_j = <O|A^2|O> - <O|A|O>^2",
                                  std::abs(wsum - (second - mean * mean)), tol.coefficient));

  // w_j = 1 / <O|(A - eps_j)^-2|O> inside V, by a linear solve on the
  // tridiagonal form rather than the eigenvalue sum used to build gamma.
  const auto tri = map.cyclic.tridiagonal();
  double wf_err = 0.0;
  for (std::size_t j = 0; j < gamma.pole_count(); ++j) {
    std::vector<Complex> e0(tri.dim(), 0.0);
    e0[0] = 1.0;
    const auto x = solve_shifted(tri, gamma.poles()[j], e0);
    double norm_sq = 0.0;
    for (const auto& xi : x) norm_sq += std::norm(xi);
    const double w = gamma.weights()[j];
    wf_err = std::max(wf_err, std::abs(w - 1.0 / norm_sq) / (1.0 + w));
  }
  rep.checks.push_back(make_check("weight_formula: w_j = 1/<O|(A-eps_j)^-2|O>", wf_err, tol.weight_formula));

  const auto& lambda = map.cyclic_eigenvalues;
  double worst_gap = kInf;
  for (std::size_t j = 0; j < gamma.pole_count(); ++j) {
    worst_gap = std::min(worst_gap, gamma.poles()[j] - lambda[j]);
    worst_gap = std::min(worst_gap, lambda[j + 1] - gamma.poles()[j]);
  }
  const bool interlaced = gamma.pole_count() + 1 == lambda.size() && worst_gap > tol.interlacing_gap;
  rep.checks.push_back(Check{"pole_interlacing: lambda_1 < eps_1 < lambda_2 < ... < lambda_m", interlaced,
                             interlaced ? 0.0 : tol.interlacing_gap - worst_gap, tol.interlacing_gap});

  const auto es_a = eigendecompose(decoration_op, tol.solver);
  const auto e_root = unit_vector(n, root);
  double rec_err = 0.0, min_im = kInf;
  for (const Complex z : z_samples) {
    const Complex g = gamma(z);
    rec_err = std::max(rec_err, std::abs(g * green_diag(es_a, e_root, z) + 1.0));
    if (z.imag() > 0.0) min_im = std::min(min_im, g.imag());
  }
  rep.checks.push_back(make_check("gamma_reconstruction: gamma(z) <O|(A-z)^-1|O> = -1", rec_err, tol.reconstruction));
  const bool herglotz = !(min_im <= 0.0);
  rep.checks.push_back(Check{"herglotz: Im gamma(z) > 0 for Im z > 0", herglotz, herglotz ? 0.0 : -min_im, 0.0});
  return rep;
}

VerificationReport verify_pole_projection(const SymmetricOperator& decoration_op, std::size_t root,
                                          const OracleTolerances& tol) {
  VerificationReport rep;
  const auto map = gamma_from_decoration(decoration_op, root, tol.solver);
  const auto& poles = map.gamma.poles();
  if (decoration_op.dim() < 2) {
    rep.checks.push_back(make_check("pole_projection: poles(gamma) vs eig(P A P), trivial 1x1", 0.0, tol.projection));
    return rep;
  }
  const auto minor = poles_via_projection(decoration_op, root, tol.solver);
  if (map.is_cyclic()) {
    double err = kInf;
    if (minor.size() == poles.size()) {
      err = 0.0;
      for (std::size_t j = 0; j < poles.size(); ++j) err = std::max(err, std::abs(poles[j] - minor[j]));
    }
    rep.checks.push_back(make_check("pole_projection: cyclic root, poles(gamma) = eig(P A P)", err, tol.projection));
  } else {
    // Every pole is an eigenvalue of the minor, matched without reuse.
    std::vector<bool> used(minor.size(), false);
    double err = 0.0;
    for (double p : poles) {
      std::size_t best = minor.size();
      for (std::size_t i = 0; i < minor.size(); ++i)
        if (!used[i] && (best == minor.size() || std::abs(minor[i] - p) < std::abs(minor[best] - p))) best = i;
      if (best == minor.size()) {
        err = kInf;
        break;
      }
      used[best] = true;
      err = std::max(err, std::abs(minor[best] - p));
    }
    const bool strict = poles.size() < minor.size();
    rep.checks.push_back(Check{"pole_projection: non-cyclic root, poles(gamma) strict subset of eig(P A P)",
                               strict && err <= tol.projection, strict ? err : kInf, tol.projection});
  }
  return rep;
}

std::vector<double> lift_eigenfunction(std::span<const double> psi, double energy, const SpectralMap& map,
                                       std::size_t root) {
  const auto& lambda = map.cyclic_eigenvalues;
  const auto& vecs = map.cyclic_eigenvectors;
  const std::size_t nd = vecs.rows();
  std::vector<double> phi(nd, 0.0);

  std::size_t hit = lambda.size();
  for (std::size_t k = 0; k < lambda.size(); ++k)
    if (std::abs(energy - lambda[k]) <= 1e-14 * (1.0 + std::abs(lambda[k]))) hit = k;

  if (hit < lambda.size()) {
    // E is an eigenvalue of A|_V: the ratio tends to the eigenvector
    // normalized at the root.
    for (std::size_t u = 0; u < nd; ++u) phi[u] = vecs(u, hit) / vecs(root, hit);
  } else {
    double denom = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < lambda.size(); ++k) {
      const double t = vecs(root, k) / (lambda[k] - energy);
      for (std::size_t u = 0; u < nd; ++u) phi[u] += t * vecs(u, k);
      denom += t * vecs(root, k);
      scale += std::abs(t * vecs(root, k));
    }
    if (std::abs(denom) <= 1e-12 * scale) {
      throw std::domain_error("no lift: E = " + std::to_string(energy) + " is a pole of gamma");
    }
    for (auto& p : phi) p /= denom;
  }

  std::vector<double> out(psi.size() * nd);
  for (std::size_t y = 0; y < psi.size(); ++y)
    for (std::size_t u = 0; u < nd; ++u) out[y * nd + u] = psi[y] * phi[u];
  return out;
}

std::vector<double> lift_eigenfunction(std::span<const double> psi, double energy,
                                       const SymmetricOperator& decoration_op, std::size_t root) {
  return lift_eigenfunction(psi, energy, gamma_from_decoration(decoration_op, root), root);
}

VerificationReport verify_lifting(const Instance& inst, const OracleTolerances& tol) {
  inst.validate();
  VerificationReport rep{inst.descriptor, {}, 0};
  const auto h = inst.decorated_operator();
  const auto map = gamma_from_decoration(inst.decoration_op, inst.decoration.root, tol.solver);
  const auto es_b = eigendecompose(inst.base_op, tol.solver);

  double worst = 0.0;
  for (std::size_t i = 0; i < es_b.values.size(); ++i) {
    const auto psi = es_b.vectors.column(i);
    for (std::size_t k = 0; k < map.gamma.branch_count(); ++k) {
      const double e = branch_invert(map.gamma, k, es_b.values[i]);
      const auto lifted = lift_eigenfunction(psi, e, map, inst.decoration.root);
      const auto hv = h.apply(lifted);
      double res = 0.0, norm = 0.0;
      for (std::size_t j = 0; j < hv.size(); ++j) {
        res += (hv[j] - e * lifted[j]) * (hv[j] - e * lifted[j]);
        norm += lifted[j] * lifted[j];
      }
      worst = std::max(worst, std::sqrt(res / norm));
    }
  }
  rep.checks.push_back(make_check("eigenfunction_lift: H Psi = E Psi for Psi = psi (x) phi_E", worst, tol.lift));
  return rep;
}

std::vector<Complex> sample_upper_half_plane(std::uint64_t seed, std::size_t count, double center, double radius) {
  Rng rng(splitmix64(seed ^ 0x5a5a5a5a5a5a5a5aULL));
  std::vector<Complex> zs;
  zs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double re = rng.uniform(center - radius, center + radius);
    const double im = rng.uniform(0.1, 2.0);
    zs.emplace_back(re, im);
  }
  return zs;
}

VerificationReport verify_instance(const Instance& inst, std::uint64_t seed, const OracleTolerances& tol) {
  VerificationReport rep{inst.descriptor, {}, seed};
  const auto h_radius = spectral_radius(eigenvalues(inst.decorated_operator(), tol.solver));
  const auto zs = sample_upper_half_plane(seed, 20, 0.0, h_radius + 1.0);
  rep.append(verify_spectral_map(inst, tol));
  rep.append(verify_green_relation(inst, zs, tol));
  rep.append(verify_measure_relation(inst, tol));
  rep.append(verify_gamma_identities(inst.decoration_op, inst.decoration.root, zs, tol));
  rep.append(verify_pole_projection(inst.decoration_op, inst.decoration.root, tol));
  rep.append(verify_lifting(inst, tol));
  return rep;
}

Instance random_instance(std::uint64_t seed, std::size_t index) {
  Rng rng(splitmix64(seed * 0x100000001b3ULL + index));
  const auto base = random_connected_graph(rng, rng.integer(1, 8));
  const auto dec_graph = random_connected_graph(rng, rng.integer(1, 5));
  const RootedGraph dec(dec_graph, rng.integer(0, dec_graph.vertex_count() - 1));
  const bool base_laplacian = rng.coin(0.5);
  const bool dec_laplacian = rng.coin(0.5);

  Instance inst;
  inst.base = base;
  inst.decoration = dec;
  inst.base_op = base_laplacian ? laplacian(base) : random_compatible_operator(rng, base);
  inst.decoration_op = dec_laplacian ? laplacian(dec.graph) : random_compatible_operator(rng, dec.graph);
  inst.descriptor = "case " + std::to_string(index) + ": base " + describe_graph(base) +
                    (base_laplacian ? " laplacian" : " random") + " | decoration " + describe_graph(dec.graph) +
                    " root=" + std::to_string(dec.root) + (dec_laplacian ? " laplacian" : " random");
  return inst;
}

std::size_t CampaignReport::passed() const {
  return static_cast<std::size_t>(
      std::count_if(cases.begin(), cases.end(), [](const VerificationReport& r) { return r.passed(); }));
}

std::size_t CampaignReport::failed() const { return cases.size() - passed(); }

CampaignReport run_campaign(std::uint64_t seed, std::size_t cases, const OracleTolerances& tol) {
  CampaignReport out{seed, {}};
  out.cases.reserve(cases);
  for (std::size_t i = 0; i < cases; ++i) {
    const auto inst = random_instance(seed, i);
    out.cases.push_back(verify_instance(inst, splitmix64(seed + i), tol));
  }
  return out;
}

}  // namespace decor
