#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <string>

namespace dlab {

/// Owning 1-D complex FFT plan (FFTW backend). Forward uses e^{-2 pi i jk/n}.
class FftPlan {
 public:
  enum class Direction { Forward, Backward };
  FftPlan(std::size_t n, Direction dir);
  ~FftPlan();
  FftPlan(FftPlan&&) noexcept;
  FftPlan& operator=(FftPlan&&) noexcept;
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  std::size_t size() const { return n_; }
  /// In-place unnormalized transform of `data` (size must equal size()).
  void execute(std::span<std::complex<double>> data) const;

 private:
  struct Impl;
  std::size_t n_;
  std::unique_ptr<Impl> impl_;
};

/// Version string reported by the FFT backend.
std::string fft_backend_version();

}  // namespace dlab
