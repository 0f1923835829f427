#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "grandab/gf2.hpp"

namespace grandab {

// Systematic CRC code description. `poly` holds the generator polynomial
// coefficients below the implicit leading x^(n-k) term, so 0x1021 with
// n-k = 16 means x^16 + x^12 + x^5 + 1.
struct CrcSpec {
  std::size_t n = 0;
  std::size_t k = 0;
  std::uint64_t poly = 0;
};

// An (n, k) binary linear block code with generator G (k x n), parity check
// H (n-k x n), right inverse Ginv (n x k with G * Ginv = I_k) and the n
// single-flip syndromes (the columns of H). Immutable after construction and
// safe to share across threads.
class LinearCode {
 public:
  // Systematic CRC code: codeword = (message, remainder of x^(n-k) * m(x)
  // modulo the generator polynomial). Zero initial register, no reflection,
  // no output inversion. G = [I_k | P], H = [P^T | I_(n-k)].
  static LinearCode from_crc(const CrcSpec& spec);

  // Arbitrary code from a full-row-rank parity check matrix. The generator is
  // the nullspace basis ordered by ascending free column, which makes the
  // construction deterministic across runs and platforms.
  static LinearCode from_parity_check(const BitMatrix& h);

  // Parity check file: first line "n-k n", then n-k rows, each either n
  // characters of {0,1} or one hex string of ceil(n/4) digits (MSB first).
  // Blank lines and lines starting with '#' are skipped.
  static LinearCode from_parity_check_file(const std::string& path);
  static LinearCode parse_parity_check(std::istream& in);

  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return k_; }
  std::size_t syndrome_bits() const noexcept { return n_ - k_; }
  bool systematic() const noexcept { return systematic_; }

  const BitMatrix& generator() const noexcept { return g_; }
  const BitMatrix& parity_check() const noexcept { return h_; }
  const BitMatrix& generator_right_inverse() const noexcept { return ginv_; }

  // c = u * G. Requires u.size() == k.
  BitVector encode(const BitVector& u) const;

  // H * r^T. Requires r.size() == n.
  BitVector syndrome(const BitVector& r) const;

  // u = c * Ginv; recovers the message from any codeword.
  BitVector decode_message(const BitVector& c) const;

  // Single-flip syndrome for position i (column i of H), 1-based.
  const BitVector& col_syndrome(std::size_t i) const;

  // True when n-k <= 64; the syndrome then fits one machine word with
  // component j stored at bit j-1 and the accessors below are usable.
  bool narrow() const noexcept { return n_ - k_ <= 64; }
  // col_words()[i-1] is the single-flip syndrome of position i as a word.
  std::span<const std::uint64_t> col_words() const;
  std::uint64_t syndrome_word(const BitVector& r) const;

 private:
  LinearCode() = default;
  void finish_construction();  // derives cols/Ginv and validates invariants

  std::size_t n_ = 0, k_ = 0;
  BitMatrix g_, h_, ginv_;
  bool systematic_ = false;
  std::vector<BitVector> col_syndromes_;
  std::vector<std::uint64_t> col_words_;  // narrow codes only
};

}  // namespace grandab
