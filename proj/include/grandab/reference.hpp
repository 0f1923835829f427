#pragma once

#include <cstdint>
#include <vector>

#include "grandab/code.hpp"
#include "grandab/gf2.hpp"

namespace grandab {

// Abandonment weight limit: error patterns of Hamming weight up to `ab` are
// tried. The dial architecture covers ab in {1,2,3}; the serial reference
// accepts any ab <= n.
struct GrandConfig {
  unsigned ab = 3;
};

enum class DecodeStatus { decoded, abandoned };

struct DecodeResult {
  DecodeStatus status = DecodeStatus::abandoned;
  BitVector codeword;  // empty when abandoned
  BitVector message;   // empty when abandoned
  std::vector<std::size_t> flipped;  // sorted 1-based flip positions
  std::size_t weight = 0;
  std::uint64_t queries = 0;         // membership checks, the weight-0 check included
  std::uint64_t latency_cycles = 0;  // dial engine only; 0 for the serial path

  bool decoded() const noexcept { return status == DecodeStatus::decoded; }
};

// All C(n, w) strictly increasing w-tuples over [1..n] in lexicographic
// order. Weight 0 yields a single empty tuple.
class PatternStream {
 public:
  PatternStream(std::size_t n, std::size_t weight);
  // Fills `tuple` with the next pattern; returns false once exhausted.
  bool next(std::vector<std::size_t>& tuple);

 private:
  std::size_t n_, w_;
  bool started_ = false, done_ = false;
  std::vector<std::size_t> cur_;
};

// Exact binomial coefficient. Sized for the decoder regime (n <= 1024,
// small k); throws on 64-bit overflow rather than wrapping.
std::uint64_t binomial(std::size_t n, std::size_t k);

// Maximum number of membership queries for weight classes 1..t:
// sum_{i=1}^{t} C(n, i). The weight-0 check is not part of this bound.
std::uint64_t count_max_queries(std::size_t n, std::size_t t);

// Serial GRANDAB: checks error patterns by increasing Hamming weight, in
// lexicographic order within each weight class, and stops at the first
// candidate whose syndrome is zero. Ground truth for the dial engine.
DecodeResult grandab_decode(const LinearCode& code, const BitVector& r,
                            const GrandConfig& cfg);

}  // namespace grandab
