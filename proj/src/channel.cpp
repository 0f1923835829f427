#include "grandab/channel.hpp"

#include <cmath>

namespace grandab {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Xoshiro256pp::Xoshiro256pp(std::uint64_t seed, std::uint64_t stream) {
  // Distinct streams get decorrelated states by folding the stream id into
  // the SplitMix64 chain before expansion.
  std::uint64_t x = seed ^ (0x9E3779B97F4A7C15ull * (stream + 1));
  for (auto& s : state_) s = splitmix64(x);
}

std::uint64_t Xoshiro256pp::next() {
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double Xoshiro256pp::next_unit() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Xoshiro256pp::next_gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * next_unit() - 1.0;
    v = 2.0 * next_unit() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  have_spare_ = true;
  return u * f;
}

double snr_db_to_sigma(double snr_db) {
  return std::pow(10.0, -snr_db / 20.0);
}

double ChannelConfig::sigma() const { return snr_db_to_sigma(snr_db); }

double hard_decision_flip_probability(double snr_db) {
  const double sigma = snr_db_to_sigma(snr_db);
  return 0.5 * std::erfc(1.0 / (sigma * std::sqrt(2.0)));
}

void transmit_hard(const BitVector& c, const ChannelConfig& ch, Xoshiro256pp& rng,
                   BitVector& r) {
  const std::size_t n = c.size();
  if (ch.noiseless) {
    r = c;
    return;
  }
  if (r.size() != n) r = BitVector(n);
  const double sigma = ch.sigma();
  for (std::size_t i = 1; i <= n; ++i) {
    const double symbol = c.bit(i) ? -1.0 : 1.0;
    const double y = symbol + sigma * rng.next_gaussian();
    r.set_bit(i, y < 0.0);
  }
}

BitVector transmit_hard(const BitVector& c, const ChannelConfig& ch, Xoshiro256pp& rng) {
  BitVector r(c.size());
  transmit_hard(c, ch, rng, r);
  return r;
}

}  // namespace grandab
