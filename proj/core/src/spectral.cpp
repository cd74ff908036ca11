#include "ringgyro/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <new>
#include <stdexcept>
#include <utility>

namespace ringgyro {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

SpectralTransform::SpectralTransform(std::size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("SpectralTransform: zero length");
  std::lock_guard lock(planner_mutex());
  in_ = reinterpret_cast<cplx*>(fftw_malloc(sizeof(cplx) * n));
  out_ = reinterpret_cast<cplx*>(fftw_malloc(sizeof(cplx) * n));
  if (in_ == nullptr || out_ == nullptr) {
    release();
    throw std::bad_alloc();
  }
  const int len = static_cast<int>(n);
  forward_plan_ = fftw_plan_dft_1d(len, as_fftw(in_), as_fftw(out_),
                                   FFTW_FORWARD, FFTW_ESTIMATE);
  backward_plan_ = fftw_plan_dft_1d(len, as_fftw(in_), as_fftw(out_),
                                    FFTW_BACKWARD, FFTW_ESTIMATE);
  if (forward_plan_ == nullptr || backward_plan_ == nullptr) {
    release();
    throw std::runtime_error("SpectralTransform: FFTW planning failed");
  }
}

SpectralTransform::~SpectralTransform() {
  if (in_ != nullptr || forward_plan_ != nullptr) {
    std::lock_guard lock(planner_mutex());
    release();
  }
}

SpectralTransform::SpectralTransform(SpectralTransform&& other) noexcept
    : n_(std::exchange(other.n_, 0)),
      in_(std::exchange(other.in_, nullptr)),
      out_(std::exchange(other.out_, nullptr)),
      forward_plan_(std::exchange(other.forward_plan_, nullptr)),
      backward_plan_(std::exchange(other.backward_plan_, nullptr)) {}

SpectralTransform& SpectralTransform::operator=(
    SpectralTransform&& other) noexcept {
  if (this != &other) {
    {
      std::lock_guard lock(planner_mutex());
      release();
    }
    n_ = std::exchange(other.n_, 0);
    in_ = std::exchange(other.in_, nullptr);
    out_ = std::exchange(other.out_, nullptr);
    forward_plan_ = std::exchange(other.forward_plan_, nullptr);
    backward_plan_ = std::exchange(other.backward_plan_, nullptr);
  }
  return *this;
}

void SpectralTransform::release() noexcept {
  if (forward_plan_ != nullptr) {
    fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  }
  if (backward_plan_ != nullptr) {
    fftw_destroy_plan(static_cast<fftw_plan>(backward_plan_));
  }
  fftw_free(in_);
  fftw_free(out_);
  forward_plan_ = backward_plan_ = nullptr;
  in_ = out_ = nullptr;
}

void SpectralTransform::forward(std::span<const cplx> in, std::span<cplx> out) {
  if (in.size() != n_ || out.size() != n_) {
    throw std::invalid_argument("SpectralTransform::forward: length mismatch");
  }
  std::copy(in.begin(), in.end(), in_);
  fftw_execute(static_cast<fftw_plan>(forward_plan_));
  std::copy(out_, out_ + n_, out.begin());
}

void SpectralTransform::backward(std::span<const cplx> in,
                                 std::span<cplx> out) {
  if (in.size() != n_ || out.size() != n_) {
    throw std::invalid_argument("SpectralTransform::backward: length mismatch");
  }
  std::copy(in.begin(), in.end(), in_);
  fftw_execute(static_cast<fftw_plan>(backward_plan_));
  std::copy(out_, out_ + n_, out.begin());
}

SpectralTransform& cached_transform(std::size_t n) {
  thread_local std::map<std::size_t, std::unique_ptr<SpectralTransform>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<SpectralTransform>(n);
  return *slot;
}

}  // namespace ringgyro
