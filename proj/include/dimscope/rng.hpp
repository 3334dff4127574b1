#pragma once

#include <cstdint>
#include <random>

namespace dimscope {

/// Seeded random stream. A (seed, stream) pair always produces the same
/// sequence; independent streams are derived with substream() rather than
/// by sharing one handle between tasks.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0, std::uint64_t stream = 0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  /// Child stream keyed by `id`; does not advance this handle.
  Rng substream(std::uint64_t id) const;

  /// Uniform in [0, 1).
  double uniform();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);
  /// Standard normal.
  double normal();
  /// Uniform integer in [0, n).
  std::size_t below(std::size_t n);
  /// Fair coin as 0.0 / 1.0.
  double bit();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace dimscope
