#pragma once

#include <complex>
#include <span>

namespace lowreg::detail {

// Unnormalized complex DFTs of length n backed by FFTW.
//   backward: out_j = sum_m in_m e^{+2 pi i jm/n}
//   forward:  out_m = sum_j in_j e^{-2 pi i jm/n}
// Plans are cached per thread; planning itself is serialized because FFTW's
// planner is not reentrant.
void fft_backward(std::span<const std::complex<double>> in,
                  std::span<std::complex<double>> out);
void fft_forward(std::span<const std::complex<double>> in,
                 std::span<std::complex<double>> out);

}  // namespace lowreg::detail
