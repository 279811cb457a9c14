#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "decor/gamma.hpp"

namespace decor {

/// Multiplicity of a spectral point: a finite count, or "extensive" for
/// eigenvalues whose degeneracy grows with the size of an infinite base.
struct Multiplicity {
  std::size_t count = 1;
  bool extensive = false;

  static Multiplicity finite(std::size_t n) { return {n, false}; }
  static Multiplicity infinite() { return {0, true}; }

  Multiplicity operator+(const Multiplicity& o) const {
    if (extensive || o.extensive) return infinite();
    return finite(count + o.count);
  }
  bool operator==(const Multiplicity&) const = default;
};

struct SpectralPoint {
  double value = 0.0;
  Multiplicity multiplicity;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double e, double tol = 0.0) const { return e >= lo - tol && e <= hi + tol; }
};

/// Finite union of disjoint closed intervals plus point spectrum. Points
/// that fall inside an interval stay in the point list (an eigenvalue
/// embedded at a band edge is still reported).
class SpectrumSet {
 public:
  static constexpr double kMergeTol = 1e-10;

  SpectrumSet() = default;
  SpectrumSet(std::vector<Interval> intervals, std::vector<SpectralPoint> points);

  /// Clusters sorted eigenvalues closer than `cluster_tol` into points.
  static SpectrumSet from_eigenvalues(std::span<const double> values, double cluster_tol = kMergeTol);

  const std::vector<Interval>& intervals() const { return intervals_; }
  const std::vector<SpectralPoint>& points() const { return points_; }
  /// Sum of finite point multiplicities.
  std::size_t finite_point_count() const;
  bool contains(double e, double tol = kMergeTol) const;

 private:
  void normalize();

  std::vector<Interval> intervals_;
  std::vector<SpectralPoint> points_;
};

/// Unique E in branch k (between poles k-1 and k, with -inf / +inf at the
/// ends) such that gamma(E) = v. Throws InputError for k > pole count.
double branch_invert(const HerglotzRational& gamma, std::size_t branch, double v);

/// gamma^{-1}(s): every interval and point of s pulled back through each
/// branch. Point multiplicities carry over to each preimage point.
SpectrumSet preimage(const HerglotzRational& gamma, const SpectrumSet& s);

/// Size of the base graph; nullopt for an infinite base.
using BaseSize = std::optional<std::size_t>;

/// gamma^{-1}(base) together with the remainder eigenvalues, each with
/// multiplicity scaled by the base size (or marked extensive).
SpectrumSet assemble_decorated_spectrum(const HerglotzRational& gamma, std::span<const double> remainder,
                                        const SpectrumSet& base, BaseSize base_size);

}  // namespace decor
