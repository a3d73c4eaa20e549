#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace wfe {

// Stream addressing for reproducible parallel Monte Carlo: the variate
// sequence is a pure function of (master_seed, stream_id), so replicate r
// can be given stream_id = base + r and produces the same numbers no matter
// which thread runs it.
struct RngSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;
};

// Philox4x32-10 counter-based generator (Salmon et al. 2011).
// key = master_seed, counter words 2..3 = stream_id, words 0..1 = block index.
class RngStream {
 public:
  explicit RngStream(RngSpec spec) : spec_(spec) {}
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
      : RngStream(RngSpec{master_seed, stream_id}) {}

  std::uint64_t next_u64() {
    if (buf_pos_ >= 2) refill();
    return buf_[buf_pos_++];
  }

  // uniform on [0,1), 53-bit resolution
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // uniform on (0,1], safe as a log argument
  double uniform_pos() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  double exponential(double rate) { return -std::log(uniform_pos()) / rate; }

  // standard normal, Box-Muller with pair caching
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
    const double theta = 6.283185307179586476925286766559 * uniform();
    cached_ = r * std::sin(theta);
    have_cached_ = true;
    return r * std::cos(theta);
  }

  RngSpec spec() const { return spec_; }

 private:
  void refill() {
    std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(block_),
        static_cast<std::uint32_t>(block_ >> 32),
        static_cast<std::uint32_t>(spec_.stream_id),
        static_cast<std::uint32_t>(spec_.stream_id >> 32)};
    std::uint32_t k0 = static_cast<std::uint32_t>(spec_.master_seed);
    std::uint32_t k1 = static_cast<std::uint32_t>(spec_.master_seed >> 32);
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = 0xD2511F53ull * ctr[0];
      const std::uint64_t p1 = 0xCD9E8D57ull * ctr[2];
      const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
      const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
      ctr = {hi1 ^ ctr[1] ^ k0, lo1, hi0 ^ ctr[3] ^ k1, lo0};
      k0 += 0x9E3779B9u;
      k1 += 0xBB67AE85u;
    }
    buf_[0] = (static_cast<std::uint64_t>(ctr[1]) << 32) | ctr[0];
    buf_[1] = (static_cast<std::uint64_t>(ctr[3]) << 32) | ctr[2];
    buf_pos_ = 0;
    ++block_;
  }

  RngSpec spec_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buf_ = {0, 0};
  int buf_pos_ = 2;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

inline RngStream derive_rng_stream(RngSpec spec) { return RngStream(spec); }

}  // namespace wfe
