#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace symvol {

/// Philox4x64-10 counter-based generator. A stream is identified by a
/// 128-bit key (seed, stream index); the counter advances one block (four
/// 64-bit words) at a time, so any (key, counter) pair can be generated
/// independently of the rest of the stream. This is what makes the Monte
/// Carlo batches splittable: batch b of a run with seed s consumes the
/// stream keyed (s, b) regardless of which worker executes it.
class Philox4x64 {
 public:
  using Block = std::array<std::uint64_t, 4>;

  Philox4x64(std::uint64_t seed, std::uint64_t stream) : key_{seed, stream}, counter_{0, 0, 0, 0} {}

  Block next_block() {
    Block x = counter_;
    std::uint64_t k0 = key_[0];
    std::uint64_t k1 = key_[1];
    for (int round = 0; round < 10; ++round) {
      x = round_fn(x, k0, k1);
      k0 += kWeyl0;
      k1 += kWeyl1;
    }
    advance_counter();
    return x;
  }

 private:
  static constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ull;
  static constexpr std::uint64_t kMul1 = 0xCA5A826395121157ull;
  static constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ull;
  static constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73Bull;

  static void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
    unsigned __int128 product = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(product >> 64);
    lo = static_cast<std::uint64_t>(product);
  }

  static Block round_fn(const Block& x, std::uint64_t k0, std::uint64_t k1) {
    std::uint64_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, x[0], hi0, lo0);
    mulhilo(kMul1, x[2], hi1, lo1);
    return {hi1 ^ x[1] ^ k0, lo1, hi0 ^ x[3] ^ k1, lo0};
  }

  void advance_counter() {
    if (++counter_[0] == 0)
      if (++counter_[1] == 0)
        if (++counter_[2] == 0) ++counter_[3];
  }

  std::array<std::uint64_t, 2> key_;
  Block counter_;
};

/// Buffered view over a Philox stream with the variate transforms the
/// samplers need. All transforms are written out explicitly (no
/// std::*_distribution) so that a given (seed, stream) pair yields the same
/// doubles on every platform and standard library.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream) : engine_(seed, stream) {}

  std::uint64_t next_u64() {
    if (index_ == 4) {
      buffer_ = engine_.next_block();
      index_ = 0;
    }
    return buffer_[index_++];
  }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1]; safe under log().
  double uniform_pos() { return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53; }

  /// Uniform on [-1, 1).
  double uniform_sym() { return 2.0 * uniform() - 1.0; }

  /// Uniform on [a, b).
  double uniform_in(double a, double b) { return a + (b - a) * uniform(); }

  /// Standard normal via Box-Muller; consumes two uniforms per pair.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform_pos();
    double u2 = uniform();
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = 6.283185307179586476925286766559 * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  /// Exponential with rate 1.
  double exponential() { return -std::log(uniform_pos()); }

 private:
  Philox4x64 engine_;
  Philox4x64::Block buffer_{};
  int index_ = 4;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace symvol
