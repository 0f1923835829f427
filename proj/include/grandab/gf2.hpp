#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace grandab {

// Bit-packed vector over GF(2). Bits are stored little-endian inside 64-bit
// words and positions in the public interface are 1-based, so position p maps
// to stored bit p-1. Bits past size() are kept zero at all times.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t len) : len_(len), words_(word_count(len), 0) {}

  // Indicator vector: all zero except position pos.
  static BitVector indicator(std::size_t len, std::size_t pos);
  // Parses "10110..."; character i becomes position i.
  static BitVector from_bit_string(std::string_view s);
  // Hex string, most-significant nibble first, left-padded to ceil(len/4)
  // digits. Position 1 is the most significant bit of the value.
  static BitVector from_hex(std::string_view s, std::size_t len);
  // Adopts packed words directly; bits past len must be zero.
  static BitVector from_words(std::size_t len, std::vector<std::uint64_t> words);

  std::size_t size() const noexcept { return len_; }
  bool empty() const noexcept { return len_ == 0; }

  bool bit(std::size_t pos) const;
  void set_bit(std::size_t pos, bool value);
  void flip_bit(std::size_t pos);

  bool is_zero() const noexcept;
  std::size_t weight() const noexcept;

  BitVector& operator^=(const BitVector& rhs);
  friend BitVector operator^(BitVector lhs, const BitVector& rhs) {
    lhs ^= rhs;
    return lhs;
  }
  bool operator==(const BitVector&) const = default;

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  // First storage word; holds the entire vector when size() <= 64.
  std::uint64_t low_word() const noexcept { return words_.empty() ? 0 : words_[0]; }

  std::string to_bit_string() const;
  std::string to_hex() const;

  static std::size_t word_count(std::size_t len) { return (len + 63) / 64; }

 private:
  friend class BitMatrix;
  void check_pos(std::size_t pos) const;

  std::size_t len_ = 0;
  std::vector<std::uint64_t> words_;
};

// Dense GF(2) matrix with row-major packed rows. Indices are 1-based.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  static BitMatrix identity(std::size_t n);
  // One "0101..." string per row; all rows must have equal length.
  static BitMatrix from_rows(const std::vector<std::string>& bit_rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  bool bit(std::size_t r, std::size_t c) const;
  void set_bit(std::size_t r, std::size_t c, bool value);

  BitVector row(std::size_t r) const;
  void set_row(std::size_t r, const BitVector& v);
  BitVector column(std::size_t c) const;

  std::span<const std::uint64_t> row_words(std::size_t r) const;

  void xor_rows(std::size_t dst, std::size_t src);  // row dst ^= row src
  void swap_rows(std::size_t a, std::size_t b);

  BitMatrix transposed() const;

  bool operator==(const BitMatrix&) const = default;

 private:
  void check_rc(std::size_t r, std::size_t c) const;

  std::size_t rows_ = 0, cols_ = 0, stride_ = 0;
  std::vector<std::uint64_t> words_;
};

// M * v^T: bit j of the result is the parity of (row j of M) AND v.
BitVector mat_vec_mul(const BitMatrix& m, const BitVector& v);

// u * M for a row vector u with u.size() == m.rows().
BitVector vec_mat_mul(const BitVector& u, const BitMatrix& m);

BitMatrix mat_mul(const BitMatrix& a, const BitMatrix& b);

// Rank over GF(2). Eliminates a copy; the argument is not modified.
std::size_t gf2_rank(const BitMatrix& m);

// Right inverse: the n x k matrix R with G * R = I_k. Throws if G does not
// have full row rank, naming the deficient rank.
BitMatrix right_inverse(const BitMatrix& g);

}  // namespace grandab
