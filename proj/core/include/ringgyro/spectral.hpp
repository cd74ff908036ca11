#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace ringgyro {

using cplx = std::complex<double>;

/// Owns a pair of FFTW plans (forward/backward, out of place) and their
/// aligned scratch buffers for one transform length.
///
/// Neither direction is normalized; callers scale. FFTW_ESTIMATE plans give
/// bit-identical output for identical input. Not shareable between threads;
/// construction is serialized internally.
class SpectralTransform {
 public:
  explicit SpectralTransform(std::size_t n);
  ~SpectralTransform();

  SpectralTransform(const SpectralTransform&) = delete;
  SpectralTransform& operator=(const SpectralTransform&) = delete;
  SpectralTransform(SpectralTransform&& other) noexcept;
  SpectralTransform& operator=(SpectralTransform&& other) noexcept;

  std::size_t size() const noexcept { return n_; }

  /// out[k] = sum_j in[j] exp(-2 pi i j k / n)
  void forward(std::span<const cplx> in, std::span<cplx> out);
  /// out[j] = sum_k in[k] exp(+2 pi i j k / n)
  void backward(std::span<const cplx> in, std::span<cplx> out);

 private:
  void release() noexcept;

  std::size_t n_ = 0;
  cplx* in_ = nullptr;
  cplx* out_ = nullptr;
  void* forward_plan_ = nullptr;
  void* backward_plan_ = nullptr;
};

/// Per-thread cached transform for length `n`.
SpectralTransform& cached_transform(std::size_t n);

}  // namespace ringgyro
