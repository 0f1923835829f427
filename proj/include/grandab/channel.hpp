#pragma once

#include <array>
#include <cstdint>

#include "grandab/gf2.hpp"

namespace grandab {

// xoshiro256++ with SplitMix64 seeding (public-domain algorithms by Blackman
// and Vigna). The generator and the seeding chain are pinned so that a
// (seed, stream) pair reproduces the same draws on every build.
class Xoshiro256pp {
 public:
  Xoshiro256pp(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next();

  // Uniform double in [0, 1) from the top 53 bits.
  double next_unit();

  // Standard normal via the Marsaglia polar method. Draw order is fixed:
  // pairs of units are consumed until one lands inside the unit disc; the
  // second sample of a pair is cached for the next call.
  double next_gaussian();

 private:
  std::array<std::uint64_t, 4> state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

struct ChannelConfig {
  double snr_db = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  bool noiseless = false;  // bypasses noise entirely (unit-test shortcut)

  // Noise standard deviation under SNR = -10 log10(sigma^2).
  double sigma() const;
  Xoshiro256pp make_rng() const { return Xoshiro256pp(seed, stream); }
};

double snr_db_to_sigma(double snr_db);

// Hard-decision crossover probability Q(1/sigma) of BPSK over AWGN.
double hard_decision_flip_probability(double snr_db);

// BPSK over AWGN with hard decisions: bit b maps to symbol 1-2b, Gaussian
// noise of deviation sigma() is added per bit, and the sign gives the
// received bit (y >= 0 reads as 0). `r` is resized to match c.
void transmit_hard(const BitVector& c, const ChannelConfig& ch, Xoshiro256pp& rng,
                   BitVector& r);
BitVector transmit_hard(const BitVector& c, const ChannelConfig& ch, Xoshiro256pp& rng);

}  // namespace grandab
