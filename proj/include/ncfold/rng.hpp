#pragma once

#include <cstdint>
#include <random>

namespace ncfold {

/// SplitMix64 finalizer applied to (master, index). Used to derive
/// independent stream seeds so that parallel work does not depend on
/// scheduling.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

/// Reproducible generator: std::mt19937_64 (whose output sequence is fixed by
/// the standard) plus rejection sampling for bounded integers, so streams are
/// identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  /// Independent stream number `index` of a master seed.
  static Rng stream(std::uint64_t master, std::uint64_t index) {
    return Rng(derive_seed(master, index));
  }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, bound). bound must be positive.
  std::uint64_t uniform_below(std::uint64_t bound);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace ncfold
