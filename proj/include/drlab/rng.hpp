#pragma once

#include <cstdint>
#include <optional>
#include <random>

namespace drlab {

/// Seedable generator built on std::mt19937_64, whose output sequence is
/// fixed by the standard. Uniform and normal variates are derived here rather
/// than through <random> distributions so that draws do not depend on the
/// standard library in use.
///
/// Stream splitting: trial t of a run seeded with s draws from an engine
/// seeded by std::seed_seq{lo32(s), hi32(s), lo32(t), hi32(t)}.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  static Rng for_trial(std::uint64_t seed, std::uint64_t trial);

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal, Marsaglia polar method.
  double normal();

 private:
  explicit Rng(std::mt19937_64 engine) : engine_(engine) {}
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

}  // namespace drlab
