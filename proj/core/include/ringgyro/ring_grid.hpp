#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace ringgyro {

/// Uniform periodic angular grid on a ring of radius R (units hbar = m = 1).
///
/// theta_j = -pi + j * 2pi/N for j = 0..N-1. Winding numbers are stored in
/// centered order -N/2 .. N/2-1, which is also the order used by
/// `to_spectrum`.
class RingGrid {
 public:
  std::size_t size() const noexcept { return theta_.size(); }
  double radius() const noexcept { return radius_; }
  double spacing() const noexcept { return spacing_; }

  const std::vector<double>& theta() const noexcept { return theta_; }
  const std::vector<int>& windings() const noexcept { return windings_; }

  /// Winding number carried by FFT bin `k` (0, 1, ..., N/2-1, -N/2, ..., -1).
  int fft_winding(std::size_t k) const noexcept {
    const auto n = static_cast<long>(size());
    const auto kk = static_cast<long>(k);
    return static_cast<int>(kk < n / 2 ? kk : kk - n);
  }

  bool same_as(const RingGrid& other) const noexcept {
    return size() == other.size() && radius_ == other.radius_;
  }

 private:
  friend std::shared_ptr<const RingGrid> make_grid(std::size_t, double);
  RingGrid(std::size_t n_points, double radius);

  double radius_;
  double spacing_;
  std::vector<double> theta_;
  std::vector<int> windings_;
};

using GridPtr = std::shared_ptr<const RingGrid>;

/// Throws ConfigError unless n_points >= 8 is a power of two and radius > 0.
GridPtr make_grid(std::size_t n_points, double radius);

/// Wraps an angle into (-pi, pi].
double wrap_angle(double angle) noexcept;

}  // namespace ringgyro
