#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "decor/gamma.hpp"
#include "decor/graph.hpp"
#include "decor/operator.hpp"
#include "decor/spectrum.hpp"

namespace decor {

struct Atom {
  double value = 0.0;
  double weight = 0.0;
};

/// Atomic spectral measure of an operator at a vector.
struct SpectralMeasure {
  std::vector<Atom> atoms;  // ascending by value
  double total_mass() const;
  /// Mass of atoms within `tol` of e.
  double mass_near(double e, double tol) const;
};

/// Atoms (lambda_k, |<v, phi_k>|^2), merging eigenvalues closer than
/// `merge_tol` into one atom.
SpectralMeasure spectral_measure_at(const EigenSystem& es, std::span<const double> v, double merge_tol);
SpectralMeasure spectral_measure_at(const SymmetricOperator& op, std::span<const double> v);

struct Check {
  std::string name;
  bool pass = false;
  double max_error = 0.0;
  double tol = 0.0;
};

struct VerificationReport {
  std::string descriptor;
  std::vector<Check> checks;
  std::uint64_t seed = 0;

  bool passed() const;
  /// Looks a check up by its key, the part of the name before ':'.
  const Check* find(const std::string& key) const;
  void append(const VerificationReport& other);
};

/// A finite decorated instance: base graph with its operator, decoration
/// with its operator. Operators must be compatible with their graphs.
struct Instance {
  Graph base;
  SymmetricOperator base_op;
  RootedGraph decoration;
  SymmetricOperator decoration_op;
  std::string descriptor;

  /// Throws InputError naming the first offending entry.
  void validate() const;
  SymmetricOperator decorated_operator() const;
};

Instance laplacian_instance(const Graph& base, const RootedGraph& decoration, std::string descriptor = {});

struct OracleTolerances {
  double spectral_match = 1e-7;  // relative to 1 + ||H||
  double green = 1e-9;
  double measure = 1e-8;
  double coefficient = 1e-10;
  double interlacing_gap = 1e-12;
  double reconstruction = 1e-9;
  double weight_formula = 1e-9;
  double projection = 1e-8;
  double lift = 1e-9;
  SolverOptions solver;
};

/// Eigenvalues of H against gamma^{-1}(eig H_o) plus the remainder repeated
/// |base| times; multiplicity preservation; spectral inclusion.
VerificationReport verify_spectral_map(const Instance& inst, const OracleTolerances& tol = {});

/// <x,root|(H-z)^{-1}|x,root> = <x|(H_o - gamma(z))^{-1}|x> for every base
/// vertex x and sample z, both sides by complex linear solves.
VerificationReport verify_green_relation(const Instance& inst, std::span<const Complex> z_samples,
                                         const OracleTolerances& tol = {});

/// Per-atom w~ * gamma'(E) = mu_x({gamma(E)}) and the summed form over
/// each preimage set.
VerificationReport verify_measure_relation(const Instance& inst, const OracleTolerances& tol = {});

/// Coefficient identities of gamma, interlacing, -1/gamma = Green function,
/// and the Herglotz sign on the upper half plane.
VerificationReport verify_gamma_identities(const SymmetricOperator& decoration_op, std::size_t root,
                                           std::span<const Complex> z_samples, const OracleTolerances& tol = {});

/// Poles of gamma against the spectrum of the root-deleted minor: equal
/// when the root is cyclic, a strict subset otherwise.
VerificationReport verify_pole_projection(const SymmetricOperator& decoration_op, std::size_t root,
                                          const OracleTolerances& tol = {});

/// Psi(y,u) = psi(y) * phi(u) with phi(u) = <root|(A-E)^{-1}|u> / <root|(A-E)^{-1}|root>,
/// evaluated inside the cyclic subspace (so E may coincide with an
/// eigenvalue of A). Throws std::domain_error when E sits at a pole of gamma.
std::vector<double> lift_eigenfunction(std::span<const double> psi, double energy, const SpectralMap& map,
                                       std::size_t root);
std::vector<double> lift_eigenfunction(std::span<const double> psi, double energy,
                                       const SymmetricOperator& decoration_op, std::size_t root);

/// Lifts every base eigenpair through every branch and reports the worst
/// relative residual ||H Psi - E Psi|| / ||Psi||.
VerificationReport verify_lifting(const Instance& inst, const OracleTolerances& tol = {});

/// Deterministic complex samples with Im z in [0.1, 2] and real part
/// spread over [center - radius, center + radius].
std::vector<Complex> sample_upper_half_plane(std::uint64_t seed, std::size_t count, double center = 0.0,
                                             double radius = 3.0);

/// Every check above on one instance.
VerificationReport verify_instance(const Instance& inst, std::uint64_t seed, const OracleTolerances& tol = {});

/// Random connected instance for case `index` of a campaign seeded by `seed`.
/// Base graphs have 1..8 vertices, decorations 1..5; operators are
/// Laplacians or random compatible matrices (entries uniform in [-1, 1]).
Instance random_instance(std::uint64_t seed, std::size_t index);

struct CampaignReport {
  std::uint64_t seed = 0;
  std::vector<VerificationReport> cases;
  std::size_t passed() const;
  std::size_t failed() const;
};

CampaignReport run_campaign(std::uint64_t seed, std::size_t cases, const OracleTolerances& tol = {});

}  // namespace decor
