#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "dyntop/hit_set.hpp"

namespace dyntop {

/// Rotation number. Rational values are only representable so that they
/// can be refused.
struct Alpha {
  double value = 0.0;
  bool rational = false;

  /// (sqrt(5) - 1) / 2.
  static Alpha golden();
  static Alpha irrational(double value) { return {value, false}; }
  static Alpha ratio(long p, long q);
};

using TorusPoint = std::array<double, 2>;

/// Axis-aligned box of side 1/m; index[1] is ignored on the circle.
struct GridBox {
  std::array<std::size_t, 2> index{0, 0};

  friend bool operator==(const GridBox&, const GridBox&) = default;
  friend auto operator<=>(const GridBox&, const GridBox&) = default;
};

enum class TorusMap { rotation, skew };

/// Circle distance min(|a-b|, 1-|a-b|) of two points of [0, 1).
double circle_distance(double a, double b);

/// x -> x + alpha on the circle, or (x, y) -> (x + alpha, x + y) on the
/// 2-torus, with the seed orbit precomputed up to the horizon.
///
/// Minimality of these maps for irrational alpha is a classical fact and is
/// assumed, never certified.
class TorusSystem {
 public:
  static TorusSystem rotation(Alpha alpha, double seed, std::size_t horizon, std::size_t grid,
                              std::size_t sample = 4);
  static TorusSystem skew(Alpha alpha, TorusPoint seed, std::size_t horizon, std::size_t grid,
                          std::size_t sample = 4);

  TorusMap kind() const noexcept { return kind_; }
  std::size_t dimension() const noexcept { return kind_ == TorusMap::rotation ? 1 : 2; }
  double alpha() const noexcept { return alpha_; }
  std::size_t horizon() const noexcept { return horizon_; }
  std::size_t grid() const noexcept { return grid_; }
  std::size_t sample() const noexcept { return sample_; }
  const TorusPoint& seed() const noexcept { return seed_; }
  std::string describe() const;

  TorusPoint step(const TorusPoint& p) const;
  /// The first H iterates of the seed (index 0 is the seed).
  const std::vector<TorusPoint>& orbit() const noexcept { return orbit_; }
  std::vector<TorusPoint> orbit_of(const TorusPoint& p) const;
  /// n-th iterate of the seed by the closed form (no iteration).
  TorusPoint closed_form(std::size_t n) const;

  void validate(const GridBox& box) const;
  std::vector<GridBox> boxes() const;
  bool in_box(const TorusPoint& p, const GridBox& box) const;
  /// s^d points at the centres of a regular s-subdivision of the box.
  std::vector<TorusPoint> lattice_sample(const GridBox& box) const;
  std::string label(const GridBox& box) const;

  /// Max over axes of the circle distance.
  double distance(const TorusPoint& a, const TorusPoint& b) const;

  HitSet visit_times(const GridBox& box) const;
  HitSet visit_times(const std::vector<TorusPoint>& orbit, const GridBox& box) const;
  /// Rotation: exact arc arithmetic. Skew: lower bound from the lattice sample.
  HitSet transfer_times(const GridBox& u, const GridBox& v) const;
  /// Lower bound from the lattice sample; requires 0 < delta < 1/2.
  HitSet sensitivity_times(const GridBox& box, double delta) const;

 private:
  TorusSystem(TorusMap kind, Alpha alpha, TorusPoint seed, std::size_t horizon, std::size_t grid,
              std::size_t sample);

  TorusMap kind_;
  double alpha_;
  TorusPoint seed_;
  std::size_t horizon_;
  std::size_t grid_;
  std::size_t sample_;
  std::vector<TorusPoint> orbit_;
};

}  // namespace dyntop
