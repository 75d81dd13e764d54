#include "lowreg/rng.hpp"

namespace lowreg {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t key) noexcept {
  return splitmix64(splitmix64(seed) ^ splitmix64(key ^ 0xD1B54A32D192ED03ULL));
}

ShiftRegisterRng::ShiftRegisterRng(std::uint64_t seed) noexcept
    : state_(splitmix64(seed)) {
  if (state_ == 0) state_ = 0x2545F4914F6CDD1DULL;
}

std::uint64_t ShiftRegisterRng::next() noexcept {
  state_ ^= state_ >> 12;
  state_ ^= state_ << 25;
  state_ ^= state_ >> 27;
  return state_ * 0x2545F4914F6CDD1DULL;
}

double ShiftRegisterRng::uniform() noexcept {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

}  // namespace lowreg
