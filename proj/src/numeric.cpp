#include "dyntop/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dyntop/error.hpp"

namespace dyntop {

namespace {

double frac(double x) { return x - std::floor(x); }

// frac(n * a), keeping the rounding error of the product.
double frac_product(double n, double a) {
  const double hi = n * a;
  const double lo = std::fma(n, a, -hi);
  return frac(frac(hi) + lo);
}

// Decision margin for arc tests after n steps.
double arc_margin(std::size_t n) { return 1e-13 + 4e-16 * static_cast<double>(n); }

}  // namespace

Alpha Alpha::golden() { return {(std::sqrt(5.0) - 1.0) / 2.0, false}; }

Alpha Alpha::ratio(long p, long q) {
  if (q == 0) throw DomainError("zero denominator");
  return {static_cast<double>(p) / static_cast<double>(q), true};
}

double circle_distance(double a, double b) {
  const double d = std::fabs(a - b);
  return std::min(d, 1.0 - d);
}

TorusSystem::TorusSystem(TorusMap kind, Alpha alpha, TorusPoint seed, std::size_t horizon,
                         std::size_t grid, std::size_t sample)
    : kind_(kind), alpha_(alpha.value), seed_(seed), horizon_(horizon), grid_(grid), sample_(sample) {
  if (alpha.rational) throw DomainError("rational rotation numbers are refused");
  if (!(alpha.value > 0.0 && alpha.value < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  if (horizon == 0) throw DomainError("horizon must be positive");
  if (grid == 0) throw DomainError("grid resolution must be positive");
  if (sample == 0) throw DomainError("sample density must be positive");
  for (double& c : seed_) c = frac(c);
  if (kind_ == TorusMap::rotation) seed_[1] = 0.0;
  orbit_ = orbit_of(seed_);
}

TorusSystem TorusSystem::rotation(Alpha alpha, double seed, std::size_t horizon, std::size_t grid,
                                  std::size_t sample) {
  return TorusSystem(TorusMap::rotation, alpha, {seed, 0.0}, horizon, grid, sample);
}

TorusSystem TorusSystem::skew(Alpha alpha, TorusPoint seed, std::size_t horizon, std::size_t grid,
                              std::size_t sample) {
  return TorusSystem(TorusMap::skew, alpha, seed, horizon, grid, sample);
}

std::string TorusSystem::describe() const {
  std::ostringstream out;
  out.precision(12);
  out << (kind_ == TorusMap::rotation ? "rotation" : "skew") << "(alpha=" << alpha_ << ", H=" << horizon_
      << ", grid=" << grid_ << ", sample=" << sample_ << ")";
  return out.str();
}

TorusPoint TorusSystem::step(const TorusPoint& p) const {
  if (kind_ == TorusMap::rotation) return {frac(p[0] + alpha_), 0.0};
  return {frac(p[0] + alpha_), frac(p[0] + p[1])};
}

std::vector<TorusPoint> TorusSystem::orbit_of(const TorusPoint& p) const {
  std::vector<TorusPoint> out(horizon_);
  // x_n from the product n * alpha, never by repeated addition.
  double y = p[1];
  double carry = 0.0;  // compensation for the y sum
  for (std::size_t n = 0; n < horizon_; ++n) {
    const double x = frac(p[0] + frac_product(static_cast<double>(n), alpha_));
    out[n] = {x, kind_ == TorusMap::rotation ? 0.0 : frac(y + carry)};
    if (kind_ == TorusMap::skew) {
      // Two-sum: s + err == y + x exactly.
      const double s = y + x;
      const double bp = s - y;
      const double err = (y - (s - bp)) + (x - bp);
      carry += err;
      y = frac(s);
    }
  }
  return out;
}

TorusPoint TorusSystem::closed_form(std::size_t n) const {
  const double x = frac(seed_[0] + frac_product(static_cast<double>(n), alpha_));
  if (kind_ == TorusMap::rotation) return {x, 0.0};
  // y_n = y_0 + n x_0 + alpha n(n-1)/2.
  const double tri = static_cast<double>(n) * static_cast<double>(n == 0 ? 0 : n - 1) / 2.0;
  const double y = frac(seed_[1] + frac_product(static_cast<double>(n), seed_[0]) + frac_product(tri, alpha_));
  return {x, y};
}

void TorusSystem::validate(const GridBox& box) const {
  if (box.index[0] >= grid_ || (dimension() == 2 && box.index[1] >= grid_)) {
    throw DomainError("grid box index outside [0, " + std::to_string(grid_) + ")");
  }
  if (dimension() == 1 && box.index[1] != 0) throw DomainError("circle boxes have a single index");
}

std::vector<GridBox> TorusSystem::boxes() const {
  std::vector<GridBox> out;
  const std::size_t ny = dimension() == 2 ? grid_ : 1;
  for (std::size_t i = 0; i < grid_; ++i) {
    for (std::size_t j = 0; j < ny; ++j) out.push_back(GridBox{{i, j}});
  }
  return out;
}

bool TorusSystem::in_box(const TorusPoint& p, const GridBox& box) const {
  const auto cell = [&](double c) {
    return std::min(static_cast<std::size_t>(c * static_cast<double>(grid_)), grid_ - 1);
  };
  if (cell(p[0]) != box.index[0]) return false;
  return dimension() == 1 || cell(p[1]) == box.index[1];
}

std::vector<TorusPoint> TorusSystem::lattice_sample(const GridBox& box) const {
  validate(box);
  const double side = 1.0 / static_cast<double>(grid_);
  std::vector<TorusPoint> out;
  const std::size_t ny = dimension() == 2 ? sample_ : 1;
  for (std::size_t a = 0; a < sample_; ++a) {
    for (std::size_t b = 0; b < ny; ++b) {
      const double x = (static_cast<double>(box.index[0]) + (static_cast<double>(a) + 0.5) / sample_) * side;
      const double y = dimension() == 2
                           ? (static_cast<double>(box.index[1]) + (static_cast<double>(b) + 0.5) / sample_) * side
                           : 0.0;
      out.push_back({x, y});
    }
  }
  return out;
}

std::string TorusSystem::label(const GridBox& box) const {
  if (dimension() == 1) return "[" + std::to_string(box.index[0]) + "]";
  return "[" + std::to_string(box.index[0]) + "," + std::to_string(box.index[1]) + "]";
}

double TorusSystem::distance(const TorusPoint& a, const TorusPoint& b) const {
  const double dx = circle_distance(a[0], b[0]);
  return dimension() == 1 ? dx : std::max(dx, circle_distance(a[1], b[1]));
}

HitSet TorusSystem::visit_times(const GridBox& box) const { return visit_times(orbit_, box); }

HitSet TorusSystem::visit_times(const std::vector<TorusPoint>& orbit, const GridBox& box) const {
  validate(box);
  TimeSet out(horizon_);
  for (std::size_t n = 0; n < std::min(horizon_, orbit.size()); ++n) {
    if (in_box(orbit[n], box)) out.insert(n);
  }
  return {std::move(out), Exactness::exact};
}

HitSet TorusSystem::transfer_times(const GridBox& u, const GridBox& v) const {
  validate(u);
  validate(v);
  TimeSet out(horizon_);
  if (kind_ == TorusMap::rotation) {
    // U + n alpha meets V iff the offset c of V's start relative to the
    // shifted start of U lies in [0, w) or wraps past 1 - w.
    const double w = 1.0 / static_cast<double>(grid_);
    const double a = static_cast<double>(u.index[0]) * w;
    const double b = static_cast<double>(v.index[0]) * w;
    Exactness exactness = Exactness::exact;
    for (std::size_t n = 0; n < horizon_; ++n) {
      const double c = frac(b - a - frac_product(static_cast<double>(n), alpha_));
      const double eps = arc_margin(n);
      if (std::fabs(c - w) < eps || std::fabs(c - (1.0 - w)) < eps) {
        exactness = Exactness::lower_bound;  // too close to an endpoint to decide
        continue;
      }
      if (c < w || c > 1.0 - w) out.insert(n);
    }
    return {std::move(out), exactness};
  }
  for (const auto& p : lattice_sample(u)) {
    const auto orbit = orbit_of(p);
    for (std::size_t n = 0; n < horizon_; ++n) {
      if (in_box(orbit[n], v)) out.insert(n);
    }
  }
  return {std::move(out), Exactness::lower_bound};
}

HitSet TorusSystem::sensitivity_times(const GridBox& box, double delta) const {
  if (!(delta > 0.0 && delta < 0.5)) throw DomainError("delta must lie in (0, 1/2)");
  std::vector<std::vector<TorusPoint>> orbits;
  for (const auto& p : lattice_sample(box)) orbits.push_back(orbit_of(p));
  TimeSet out(horizon_);
  for (std::size_t n = 0; n < horizon_; ++n) {
    bool spread = false;
    for (std::size_t i = 0; i < orbits.size() && !spread; ++i) {
      for (std::size_t j = i + 1; j < orbits.size() && !spread; ++j) {
        spread = distance(orbits[i][n], orbits[j][n]) > delta;
      }
    }
    if (spread) out.insert(n);
  }
  return {std::move(out), Exactness::lower_bound};
}

}  // namespace dyntop
