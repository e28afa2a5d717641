#pragma once

#include <bit>
#include <cstdint>

#include "leadelect/rational.hpp"

namespace leadelect {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

// SplitMix64 finalizer (Steele et al.). Bijective on 64-bit words.
inline std::uint64_t avalanche64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Small deterministic PRNG; fully specified here so results are identical
// across platforms and standard library versions.
class SplitMix64 {
public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~0ull; }

  result_type operator()() { return avalanche64(state_ += kGolden); }

private:
  std::uint64_t state_;
};

// Independent stream for one trial. Scrambling both inputs keeps the streams
// of neighboring trial indices from sharing counter positions.
inline SplitMix64 trial_stream(std::uint64_t seed, std::uint64_t trial) {
  return SplitMix64(avalanche64(seed ^ avalanche64(trial + kGolden)));
}

// Uniform draw from [0, bound), bound >= 1, by masked rejection.
template <typename Rng>
std::uint64_t uniform_below(std::uint64_t bound, Rng& rng) {
  if (bound <= 1) return 0;
  const std::uint64_t mask = ~0ull >> std::countl_zero(bound - 1);
  for (;;) {
    const std::uint64_t r = rng() & mask;
    if (r < bound) return r;
  }
}

// True with probability exactly p, p in [0,1]. For denominators that fit a
// machine word a single uniform draw decides; otherwise the draw is refined
// 64 bits at a time until the interval [A/2^m, (A+1)/2^m) falls entirely on
// one side of p. Consumes a variable number of words (expected < 2).
template <typename Rng>
bool exact_bernoulli(const Rational& p, Rng& rng) {
  const int s = p.sign();
  if (s <= 0) return false;
  if (p.raw().get_num() >= p.raw().get_den()) return true;

  const mpz_class& den = p.raw().get_den();
  if (mpz_fits_ulong_p(den.get_mpz_t())) {
    const std::uint64_t d = mpz_get_ui(den.get_mpz_t());
    const std::uint64_t n = mpz_get_ui(p.raw().get_num().get_mpz_t());
    return uniform_below(d, rng) < n;
  }

  const mpz_class& num = p.raw().get_num();
  mpz_class acc(0), acc_num, hi_num, scaled_p;
  mp_bitcnt_t bits = 0;
  for (;;) {
    mpz_mul_2exp(acc.get_mpz_t(), acc.get_mpz_t(), 64);
    acc += mpz_class(static_cast<unsigned long>(rng()));
    bits += 64;
    // X < p surely when (acc+1)/2^bits <= p; X >= p surely when acc/2^bits >= p.
    scaled_p = num;
    mpz_mul_2exp(scaled_p.get_mpz_t(), scaled_p.get_mpz_t(), bits);
    acc_num = acc * den;
    hi_num = acc_num + den;
    if (hi_num <= scaled_p) return true;
    if (acc_num >= scaled_p) return false;
  }
}

}  // namespace leadelect
