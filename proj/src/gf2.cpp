#include "grandab/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace grandab {

namespace {

constexpr std::uint64_t kOne = 1;

std::uint64_t tail_mask(std::size_t len) {
  const std::size_t rem = len % 64;
  return rem == 0 ? ~std::uint64_t{0} : (kOne << rem) - 1;
}

}  // namespace

void BitVector::check_pos(std::size_t pos) const {
  if (pos < 1 || pos > len_) {
    throw std::out_of_range("BitVector position " + std::to_string(pos) +
                            " outside [1, " + std::to_string(len_) + "]");
  }
}

BitVector BitVector::indicator(std::size_t len, std::size_t pos) {
  BitVector v(len);
  v.set_bit(pos, true);
  return v;
}

BitVector BitVector::from_bit_string(std::string_view s) {
  BitVector v(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1') {
      v.set_bit(i + 1, true);
    } else if (s[i] != '0') {
      throw std::invalid_argument("bit string may contain only 0 and 1");
    }
  }
  return v;
}

BitVector BitVector::from_hex(std::string_view s, std::size_t len) {
  const std::size_t digits = (len + 3) / 4;
  if (s.size() != digits) {
    throw std::invalid_argument("hex string must have exactly " +
                                std::to_string(digits) + " digits for length " +
                                std::to_string(len));
  }
  BitVector v(len);
  // Digit d covers positions 4d+1..4d+4 of the left-padded 4*digits-bit value;
  // the pad occupies the leading 4*digits-len bits and must be zero.
  const std::size_t pad = 4 * digits - len;
  for (std::size_t d = 0; d < digits; ++d) {
    const char c = s[d];
    unsigned nibble = 0;
    if (c >= '0' && c <= '9') {
      nibble = static_cast<unsigned>(c - '0');
    } else if (c >= 'a' && c <= 'f') {
      nibble = static_cast<unsigned>(c - 'a') + 10;
    } else if (c >= 'A' && c <= 'F') {
      nibble = static_cast<unsigned>(c - 'A') + 10;
    } else {
      throw std::invalid_argument("invalid hex digit in bit vector literal");
    }
    for (unsigned b = 0; b < 4; ++b) {
      if (!(nibble & (8u >> b))) continue;
      const std::size_t padded_index = 4 * d + b;  // 0-based, MSB first
      if (padded_index < pad) {
        throw std::invalid_argument("hex literal sets bits beyond length " +
                                    std::to_string(len));
      }
      v.set_bit(padded_index - pad + 1, true);
    }
  }
  return v;
}

BitVector BitVector::from_words(std::size_t len, std::vector<std::uint64_t> words) {
  if (words.size() != word_count(len)) {
    throw std::invalid_argument("from_words: wrong word count for length");
  }
  if (!words.empty() && (words.back() & ~tail_mask(len)) != 0) {
    throw std::invalid_argument("from_words: bits set past the vector length");
  }
  BitVector v;
  v.len_ = len;
  v.words_ = std::move(words);
  return v;
}

bool BitVector::bit(std::size_t pos) const {
  check_pos(pos);
  return (words_[(pos - 1) / 64] >> ((pos - 1) % 64)) & 1;
}

void BitVector::set_bit(std::size_t pos, bool value) {
  check_pos(pos);
  const std::uint64_t mask = kOne << ((pos - 1) % 64);
  if (value) {
    words_[(pos - 1) / 64] |= mask;
  } else {
    words_[(pos - 1) / 64] &= ~mask;
  }
}

void BitVector::flip_bit(std::size_t pos) {
  check_pos(pos);
  words_[(pos - 1) / 64] ^= kOne << ((pos - 1) % 64);
}

bool BitVector::is_zero() const noexcept {
  for (std::uint64_t w : words_) {
    if (w != 0) return false;
  }
  return true;
}

std::size_t BitVector::weight() const noexcept {
  std::size_t total = 0;
  for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

BitVector& BitVector::operator^=(const BitVector& rhs) {
  if (len_ != rhs.len_) {
    throw std::invalid_argument("BitVector xor length mismatch: " +
                                std::to_string(len_) + " vs " +
                                std::to_string(rhs.len_));
  }
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= rhs.words_[i];
  return *this;
}

std::string BitVector::to_bit_string() const {
  std::string s(len_, '0');
  for (std::size_t i = 0; i < len_; ++i) {
    if ((words_[i / 64] >> (i % 64)) & 1) s[i] = '1';
  }
  return s;
}

std::string BitVector::to_hex() const {
  static const char* digits = "0123456789abcdef";
  const std::size_t ndig = (len_ + 3) / 4;
  const std::size_t pad = 4 * ndig - len_;
  std::vector<unsigned> nib(ndig, 0);
  for (std::size_t i = 0; i < len_; ++i) {
    if (!((words_[i / 64] >> (i % 64)) & 1)) continue;
    const std::size_t padded_index = i + pad;  // MSB-first position
    nib[padded_index / 4] |= 8u >> (padded_index % 4);
  }
  std::string s(ndig, '0');
  for (std::size_t d = 0; d < ndig; ++d) s[d] = digits[nib[d]];
  return s;
}

void BitMatrix::check_rc(std::size_t r, std::size_t c) const {
  if (r < 1 || r > rows_ || c < 1 || c > cols_) {
    throw std::out_of_range("BitMatrix index (" + std::to_string(r) + ", " +
                            std::to_string(c) + ") outside " +
                            std::to_string(rows_) + "x" + std::to_string(cols_));
  }
}

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_(BitVector::word_count(cols)),
      words_(rows * stride_, 0) {}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 1; i <= n; ++i) m.set_bit(i, i, true);
  return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<std::string>& bit_rows) {
  if (bit_rows.empty()) return {};
  BitMatrix m(bit_rows.size(), bit_rows.front().size());
  for (std::size_t r = 0; r < bit_rows.size(); ++r) {
    if (bit_rows[r].size() != m.cols_) {
      throw std::invalid_argument("all matrix rows must have equal length");
    }
    m.set_row(r + 1, BitVector::from_bit_string(bit_rows[r]));
  }
  return m;
}

bool BitMatrix::bit(std::size_t r, std::size_t c) const {
  check_rc(r, c);
  return (words_[(r - 1) * stride_ + (c - 1) / 64] >> ((c - 1) % 64)) & 1;
}

void BitMatrix::set_bit(std::size_t r, std::size_t c, bool value) {
  check_rc(r, c);
  const std::uint64_t mask = kOne << ((c - 1) % 64);
  std::uint64_t& w = words_[(r - 1) * stride_ + (c - 1) / 64];
  if (value) {
    w |= mask;
  } else {
    w &= ~mask;
  }
}

BitVector BitMatrix::row(std::size_t r) const {
  if (r < 1 || r > rows_) throw std::out_of_range("row index");
  BitVector v(cols_);
  for (std::size_t i = 0; i < stride_; ++i) v.words_[i] = words_[(r - 1) * stride_ + i];
  return v;
}

void BitMatrix::set_row(std::size_t r, const BitVector& v) {
  if (r < 1 || r > rows_) throw std::out_of_range("row index");
  if (v.size() != cols_) throw std::invalid_argument("row length mismatch");
  for (std::size_t i = 0; i < stride_; ++i) words_[(r - 1) * stride_ + i] = v.words()[i];
}

BitVector BitMatrix::column(std::size_t c) const {
  if (c < 1 || c > cols_) throw std::out_of_range("column index");
  BitVector v(rows_);
  for (std::size_t r = 1; r <= rows_; ++r) v.set_bit(r, bit(r, c));
  return v;
}

std::span<const std::uint64_t> BitMatrix::row_words(std::size_t r) const {
  if (r < 1 || r > rows_) throw std::out_of_range("row index");
  return {words_.data() + (r - 1) * stride_, stride_};
}

void BitMatrix::xor_rows(std::size_t dst, std::size_t src) {
  if (dst < 1 || dst > rows_ || src < 1 || src > rows_) throw std::out_of_range("row index");
  for (std::size_t i = 0; i < stride_; ++i) {
    words_[(dst - 1) * stride_ + i] ^= words_[(src - 1) * stride_ + i];
  }
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a < 1 || a > rows_ || b < 1 || b > rows_) throw std::out_of_range("row index");
  if (a == b) return;
  for (std::size_t i = 0; i < stride_; ++i) {
    std::swap(words_[(a - 1) * stride_ + i], words_[(b - 1) * stride_ + i]);
  }
}

BitMatrix BitMatrix::transposed() const {
  BitMatrix t(cols_, rows_);
  for (std::size_t r = 1; r <= rows_; ++r) {
    for (std::size_t c = 1; c <= cols_; ++c) {
      if (bit(r, c)) t.set_bit(c, r, true);
    }
  }
  return t;
}

BitVector mat_vec_mul(const BitMatrix& m, const BitVector& v) {
  if (m.cols() != v.size()) {
    throw std::invalid_argument("mat_vec_mul dimension mismatch: matrix has " +
                                std::to_string(m.cols()) + " columns, vector " +
                                std::to_string(v.size()) + " bits");
  }
  BitVector out(m.rows());
  const auto vw = v.words();
  for (std::size_t r = 1; r <= m.rows(); ++r) {
    const auto rw = m.row_words(r);
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < rw.size(); ++i) acc ^= rw[i] & vw[i];
    if (std::popcount(acc) & 1) out.set_bit(r, true);
  }
  return out;
}

BitVector vec_mat_mul(const BitVector& u, const BitMatrix& m) {
  if (u.size() != m.rows()) {
    throw std::invalid_argument("vec_mat_mul dimension mismatch: vector has " +
                                std::to_string(u.size()) + " bits, matrix " +
                                std::to_string(m.rows()) + " rows");
  }
  std::vector<std::uint64_t> acc(BitVector::word_count(m.cols()), 0);
  const auto uw = u.words();
  for (std::size_t wi = 0; wi < uw.size(); ++wi) {
    std::uint64_t w = uw[wi];
    while (w != 0) {
      const int b = std::countr_zero(w);
      w &= w - 1;
      const std::size_t r = wi * 64 + static_cast<std::size_t>(b) + 1;
      const auto rw = m.row_words(r);
      for (std::size_t i = 0; i < rw.size(); ++i) acc[i] ^= rw[i];
    }
  }
  return BitVector::from_words(m.cols(), std::move(acc));
}

BitMatrix mat_mul(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("mat_mul dimension mismatch");
  }
  BitMatrix out(a.rows(), b.cols());
  for (std::size_t r = 1; r <= a.rows(); ++r) {
    out.set_row(r, vec_mat_mul(a.row(r), b));
  }
  return out;
}

std::size_t gf2_rank(const BitMatrix& m) {
  BitMatrix a = m;
  std::size_t rank = 0;
  for (std::size_t c = 1; c <= a.cols() && rank < a.rows(); ++c) {
    std::size_t pivot = 0;
    for (std::size_t r = rank + 1; r <= a.rows(); ++r) {
      if (a.bit(r, c)) {
        pivot = r;
        break;
      }
    }
    if (pivot == 0) continue;
    a.swap_rows(rank + 1, pivot);
    for (std::size_t r = 1; r <= a.rows(); ++r) {
      if (r != rank + 1 && a.bit(r, c)) a.xor_rows(r, rank + 1);
    }
    ++rank;
  }
  return rank;
}

BitMatrix right_inverse(const BitMatrix& g) {
  const std::size_t k = g.rows();
  const std::size_t n = g.cols();
  BitMatrix a = g;
  BitMatrix e = BitMatrix::identity(k);
  std::vector<std::size_t> pivot_col;
  pivot_col.reserve(k);
  for (std::size_t c = 1; c <= n && pivot_col.size() < k; ++c) {
    const std::size_t pr = pivot_col.size() + 1;
    std::size_t pivot = 0;
    for (std::size_t r = pr; r <= k; ++r) {
      if (a.bit(r, c)) {
        pivot = r;
        break;
      }
    }
    if (pivot == 0) continue;
    a.swap_rows(pr, pivot);
    e.swap_rows(pr, pivot);
    for (std::size_t r = 1; r <= k; ++r) {
      if (r != pr && a.bit(r, c)) {
        a.xor_rows(r, pr);
        e.xor_rows(r, pr);
      }
    }
    pivot_col.push_back(c);
  }
  if (pivot_col.size() < k) {
    throw std::invalid_argument("right_inverse: matrix has rank " +
                                std::to_string(pivot_col.size()) +
                                ", expected full row rank " + std::to_string(k));
  }
  // After full reduction E * G is in reduced row echelon form with pivot
  // columns pivot_col; placing row j of E at row pivot_col[j] of R gives
  // G * R = I_k.
  BitMatrix r(n, k);
  for (std::size_t j = 0; j < k; ++j) r.set_row(pivot_col[j], e.row(j + 1));
  return r;
}

}  // namespace grandab
