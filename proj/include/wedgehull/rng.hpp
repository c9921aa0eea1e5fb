#pragma once

#include <array>
#include <cstdint>

namespace wedge {

// Identifies one random stream. The stream is a pure function of the pair,
// so replications can run in any order on any number of workers.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;

  // Sub-stream for the k-th independent child task of this stream.
  SeedSpec child(std::uint64_t k) const noexcept;

  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;
// Order-sensitive 64-bit mix of several keys.
std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value) noexcept;

// Philox4x32-10 (Salmon et al., SC'11). Key = master seed, counter =
// (block index, stream id).
class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Block bijection(Block ctr, Key key) noexcept;
};

// Uniform and Gaussian variates drawn from one Philox stream. Not thread
// safe; create one per task from its SeedSpec.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(SeedSpec seed) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }
  result_type operator()() noexcept { return next_u64(); }

  std::uint64_t next_u64() noexcept;
  // Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform() noexcept;
  // Uniform on (lo, hi).
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  // Standard normal (Marsaglia polar method, second value cached).
  double normal() noexcept;

  const SeedSpec& seed() const noexcept { return seed_; }

 private:
  void refill() noexcept;

  SeedSpec seed_;
  Philox4x32::Key key_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace wedge
