#pragma once

#include <cstdint>

namespace lowreg {

/// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of the stream labelled `key` under the master `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t key) noexcept;

/// Marsaglia xorshift64* generator. The state is never zero.
///
/// Streams are addressed by (seed, key): the random data generator draws the
/// phase of mode k from stream key k, so a field is reproducible mode by mode
/// regardless of N or evaluation order.
class ShiftRegisterRng {
 public:
  explicit ShiftRegisterRng(std::uint64_t seed) noexcept;
  ShiftRegisterRng(std::uint64_t seed, std::uint64_t key) noexcept
      : ShiftRegisterRng(derive_seed(seed, key)) {}

  std::uint64_t next() noexcept;
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;

 private:
  std::uint64_t state_;
};

}  // namespace lowreg
