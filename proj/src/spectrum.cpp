#include "decor/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace decor {

namespace {

double merge_tol(double v) { return SpectrumSet::kMergeTol * std::max(1.0, std::abs(v)); }

// gamma without pole guards, for bracketing close to a pole.
double raw_gamma(const HerglotzRational& g, double e) {
  double s = e + g.constant();
  for (std::size_t j = 0; j < g.pole_count(); ++j) s += g.weights()[j] / (g.poles()[j] - e);
  return s;
}

}  // namespace

SpectrumSet::SpectrumSet(std::vector<Interval> intervals, std::vector<SpectralPoint> points)
    : intervals_(std::move(intervals)), points_(std::move(points)) {
  for (const auto& iv : intervals_) {
    if (!(iv.lo <= iv.hi)) throw InputError("interval with lo > hi");
  }
  normalize();
}

void SpectrumSet::normalize() {
  std::sort(intervals_.begin(), intervals_.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> merged;
  for (const auto& iv : intervals_) {
    if (!merged.empty() && iv.lo - merged.back().hi <= merge_tol(iv.lo)) {
      merged.back().hi = std::max(merged.back().hi, iv.hi);
    } else {
      merged.push_back(iv);
    }
  }
  intervals_ = std::move(merged);

  std::stable_sort(points_.begin(), points_.end(),
                   [](const SpectralPoint& a, const SpectralPoint& b) { return a.value < b.value; });
  std::vector<SpectralPoint> pts;
  for (const auto& p : points_) {
    if (!pts.empty() && p.value - pts.back().value <= merge_tol(p.value)) {
      pts.back().multiplicity = pts.back().multiplicity + p.multiplicity;
    } else {
      pts.push_back(p);
    }
  }
  points_ = std::move(pts);
}

SpectrumSet SpectrumSet::from_eigenvalues(std::span<const double> values, double cluster_tol) {
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  std::vector<SpectralPoint> pts;
  for (double x : v) {
    if (!pts.empty() && x - pts.back().value <= cluster_tol * std::max(1.0, std::abs(x))) {
      ++pts.back().multiplicity.count;
    } else {
      pts.push_back({x, Multiplicity::finite(1)});
    }
  }
  return SpectrumSet({}, std::move(pts));
}

std::size_t SpectrumSet::finite_point_count() const {
  std::size_t n = 0;
  for (const auto& p : points_)
    if (!p.multiplicity.extensive) n += p.multiplicity.count;
  return n;
}

bool SpectrumSet::contains(double e, double tol) const {
  for (const auto& iv : intervals_)
    if (iv.contains(e, tol)) return true;
  for (const auto& p : points_)
    if (std::abs(p.value - e) <= tol) return true;
  return false;
}

double branch_invert(const HerglotzRational& gamma, std::size_t branch, double v) {
  const auto& poles = gamma.poles();
  const std::size_t n = poles.size();
  if (branch > n) {
    throw InputError("branch " + std::to_string(branch) + " out of range 0.." + std::to_string(n));
  }
  if (n == 0) return v - gamma.constant();

  // Bracket [lo, hi] inside the branch with gamma(lo) <= v <= gamma(hi).
  // Finite ends are approached geometrically; infinite ends are expanded.
  const bool left_open = branch == 0;
  const bool right_open = branch == n;
  const double left = left_open ? 0.0 : poles[branch - 1];
  const double right = right_open ? 0.0 : poles[branch];
  const double half_width = (!left_open && !right_open) ? 0.5 * (right - left) : 1.0;

  double lo, hi;
  if (left_open) {
    double step = 1.0;
    lo = right - step;
    while (raw_gamma(gamma, lo) > v) {
      step *= 2.0;
      lo = right - step;
    }
  } else {
    double delta = half_width;
    lo = left + delta;
    while (raw_gamma(gamma, lo) > v && left + 0.5 * delta > left) {
      delta *= 0.5;
      lo = left + delta;
    }
  }
  if (right_open) {
    double step = 1.0;
    hi = left + step;
    while (raw_gamma(gamma, hi) < v) {
      step *= 2.0;
      hi = left + step;
    }
  } else {
    double delta = half_width;
    hi = right - delta;
    while (raw_gamma(gamma, hi) < v && right - 0.5 * delta < right) {
      delta *= 0.5;
      hi = right - delta;
    }
  }

  for (;;) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (raw_gamma(gamma, mid) < v) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double best = std::abs(raw_gamma(gamma, lo) - v) <= std::abs(raw_gamma(gamma, hi) - v) ? lo : hi;
  // One Newton polish step, kept only if it stays in the bracket and helps.
  double d = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double r = poles[j] - best;
    d += gamma.weights()[j] / (r * r);
  }
  const double newton = best - (raw_gamma(gamma, best) - v) / d;
  if (newton >= lo && newton <= hi && std::abs(raw_gamma(gamma, newton) - v) < std::abs(raw_gamma(gamma, best) - v)) {
    best = newton;
  }
  return best;
}

SpectrumSet preimage(const HerglotzRational& gamma, const SpectrumSet& s) {
  std::vector<Interval> intervals;
  std::vector<SpectralPoint> points;
  for (std::size_t k = 0; k < gamma.branch_count(); ++k) {
    for (const auto& iv : s.intervals()) {
      intervals.push_back({branch_invert(gamma, k, iv.lo), branch_invert(gamma, k, iv.hi)});
    }
    for (const auto& p : s.points()) points.push_back({branch_invert(gamma, k, p.value), p.multiplicity});
  }
  return SpectrumSet(std::move(intervals), std::move(points));
}

SpectrumSet assemble_decorated_spectrum(const HerglotzRational& gamma, std::span<const double> remainder,
                                        const SpectrumSet& base, BaseSize base_size) {
  const auto pulled = preimage(gamma, base);
  std::vector<SpectralPoint> points = pulled.points();
  const auto flat = SpectrumSet::from_eigenvalues(remainder);
  for (const auto& r : flat.points()) {
    points.push_back({r.value, base_size ? Multiplicity::finite(r.multiplicity.count * *base_size)
                                         : Multiplicity::infinite()});
  }
  return SpectrumSet(pulled.intervals(), std::move(points));
}

}  // namespace decor
