#include "grandab/code.hpp"

#include <bit>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace grandab {

namespace {

// Reverses the low `width` bits of v.
std::uint64_t reverse_bits(std::uint64_t v, std::size_t width) {
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < width; ++i) {
    if ((v >> i) & 1) out |= std::uint64_t{1} << (width - 1 - i);
  }
  return out;
}

bool is_identity_prefix(const BitMatrix& g, std::size_t k) {
  for (std::size_t r = 1; r <= k; ++r) {
    for (std::size_t c = 1; c <= k; ++c) {
      if (g.bit(r, c) != (r == c)) return false;
    }
  }
  return true;
}

}  // namespace

LinearCode LinearCode::from_crc(const CrcSpec& spec) {
  const std::size_t n = spec.n;
  const std::size_t k = spec.k;
  if (k < 1 || n <= k) {
    throw std::invalid_argument("CRC code needs 1 <= k < n");
  }
  const std::size_t w = n - k;
  if (w > 64) {
    throw std::invalid_argument("CRC generator degree " + std::to_string(w) +
                                " exceeds the supported 64 parity bits");
  }
  if (spec.poly == 0 || (spec.poly & 1) == 0) {
    throw std::invalid_argument("CRC polynomial must have a nonzero constant term");
  }
  if (w < 64 && (spec.poly >> w) != 0) {
    throw std::invalid_argument("CRC polynomial degree mismatch: coefficients do not fit below x^" +
                                std::to_string(w));
  }

  // Column i of H is x^(n-i) mod g(x): the parity footprint of a single flip
  // at position i. Built backwards from x^0 with one multiply-by-x step per
  // position, then bit-reversed so that parity component j sits at bit j-1.
  const std::uint64_t mask = (w == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << w) - 1);
  std::vector<std::uint64_t> cols_plain(n, 0);
  std::uint64_t cur = 1;  // x^0
  cols_plain[n - 1] = cur;
  for (std::size_t i = n - 1; i >= 1; --i) {
    const bool overflow = (w == 64) ? (cur >> 63) & 1 : (cur >> (w - 1)) & 1;
    cur = (cur << 1) & mask;
    if (overflow) cur ^= spec.poly & mask;
    cols_plain[i - 1] = cur;
  }

  LinearCode code;
  code.n_ = n;
  code.k_ = k;
  code.systematic_ = true;
  code.col_words_.resize(n);
  for (std::size_t i = 0; i < n; ++i) code.col_words_[i] = reverse_bits(cols_plain[i], w);

  code.h_ = BitMatrix(w, n);
  for (std::size_t i = 1; i <= n; ++i) {
    const std::uint64_t cw = code.col_words_[i - 1];
    for (std::size_t j = 1; j <= w; ++j) {
      if ((cw >> (j - 1)) & 1) code.h_.set_bit(j, i, true);
    }
  }

  code.g_ = BitMatrix(k, n);
  for (std::size_t r = 1; r <= k; ++r) {
    code.g_.set_bit(r, r, true);
    const std::uint64_t cw = code.col_words_[r - 1];  // row r of P
    for (std::size_t j = 1; j <= w; ++j) {
      if ((cw >> (j - 1)) & 1) code.g_.set_bit(r, k + j, true);
    }
  }

  code.finish_construction();
  return code;
}

LinearCode LinearCode::from_parity_check(const BitMatrix& h) {
  const std::size_t w = h.rows();
  const std::size_t n = h.cols();
  if (w < 1 || n <= w) {
    throw std::invalid_argument("parity check matrix must satisfy 1 <= n-k < n");
  }
  const std::size_t rank = gf2_rank(h);
  if (rank != w) {
    throw std::invalid_argument("parity check matrix is rank deficient: rank " +
                                std::to_string(rank) + " of " + std::to_string(w));
  }
  const std::size_t k = n - w;

  // Reduce H to RREF, then read one generator row off each free column.
  BitMatrix a = h;
  std::vector<std::size_t> pivot_cols;
  pivot_cols.reserve(w);
  for (std::size_t c = 1; c <= n && pivot_cols.size() < w; ++c) {
    const std::size_t pr = pivot_cols.size() + 1;
    std::size_t pivot = 0;
    for (std::size_t r = pr; r <= w; ++r) {
      if (a.bit(r, c)) {
        pivot = r;
        break;
      }
    }
    if (pivot == 0) continue;
    a.swap_rows(pr, pivot);
    for (std::size_t r = 1; r <= w; ++r) {
      if (r != pr && a.bit(r, c)) a.xor_rows(r, pr);
    }
    pivot_cols.push_back(c);
  }

  std::vector<bool> is_pivot(n + 1, false);
  for (std::size_t c : pivot_cols) is_pivot[c] = true;

  LinearCode code;
  code.n_ = n;
  code.k_ = k;
  code.g_ = BitMatrix(k, n);
  std::size_t row = 0;
  for (std::size_t f = 1; f <= n; ++f) {
    if (is_pivot[f]) continue;
    ++row;
    code.g_.set_bit(row, f, true);
    for (std::size_t j = 0; j < pivot_cols.size(); ++j) {
      if (a.bit(j + 1, f)) code.g_.set_bit(row, pivot_cols[j], true);
    }
  }

  code.h_ = h;
  code.systematic_ = is_identity_prefix(code.g_, k);
  if (w <= 64) {
    code.col_words_.resize(n);
    for (std::size_t i = 1; i <= n; ++i) {
      std::uint64_t cw = 0;
      for (std::size_t j = 1; j <= w; ++j) {
        if (h.bit(j, i)) cw |= std::uint64_t{1} << (j - 1);
      }
      code.col_words_[i - 1] = cw;
    }
  }

  code.finish_construction();
  return code;
}

void LinearCode::finish_construction() {
  ginv_ = right_inverse(g_);

  col_syndromes_.clear();
  col_syndromes_.reserve(n_);
  for (std::size_t i = 1; i <= n_; ++i) col_syndromes_.push_back(h_.column(i));

  // Construction is one-time, so the full invariant set is checked here:
  // every generator row is a codeword, G has a right inverse, both matrices
  // have full rank, and the stored single-flip syndromes match H.
  for (std::size_t r = 1; r <= k_; ++r) {
    if (!mat_vec_mul(h_, g_.row(r)).is_zero()) {
      throw std::runtime_error("code construction: generator row " + std::to_string(r) +
                               " fails the parity check");
    }
  }
  if (mat_mul(g_, ginv_) != BitMatrix::identity(k_)) {
    throw std::runtime_error("code construction: G * Ginv is not the identity");
  }
  if (gf2_rank(g_) != k_) {
    throw std::runtime_error("code construction: generator is rank deficient");
  }
  if (gf2_rank(h_) != n_ - k_) {
    throw std::runtime_error("code construction: parity check is rank deficient");
  }
  if (!col_words_.empty()) {
    for (std::size_t i = 1; i <= n_; ++i) {
      if (col_syndromes_[i - 1].low_word() != col_words_[i - 1]) {
        throw std::runtime_error("code construction: packed column syndromes diverge from H");
      }
    }
  }
}

LinearCode LinearCode::from_parity_check_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open parity check file: " + path);
  }
  try {
    return parse_parity_check(in);
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

LinearCode LinearCode::parse_parity_check(std::istream& in) {
  auto next_line = [&in](std::string& line) {
    while (std::getline(in, line)) {
      const auto first = line.find_first_not_of(" \t\r\n");
      if (first == std::string::npos) continue;
      const auto last = line.find_last_not_of(" \t\r\n");
      line = line.substr(first, last - first + 1);
      if (line[0] == '#') continue;
      return true;
    }
    return false;
  };

  std::string line;
  if (!next_line(line)) {
    throw std::invalid_argument("parity check file is empty");
  }
  std::istringstream header(line);
  std::size_t rows = 0, n = 0;
  if (!(header >> rows >> n)) {
    throw std::invalid_argument("parity check header must be two integers: n-k n");
  }
  if (rows < 1 || n <= rows) {
    throw std::invalid_argument("parity check header needs 1 <= n-k < n");
  }

  const std::size_t hex_digits = (n + 3) / 4;
  BitMatrix h(rows, n);
  bool hex_mode = false;
  for (std::size_t r = 1; r <= rows; ++r) {
    if (!next_line(line)) {
      throw std::invalid_argument("parity check file ends after " + std::to_string(r - 1) +
                                  " of " + std::to_string(rows) + " rows");
    }
    if (r == 1) {
      if (line.size() == n && line.find_first_not_of("01") == std::string::npos) {
        hex_mode = false;
      } else if (line.size() == hex_digits) {
        hex_mode = true;
      } else {
        throw std::invalid_argument("row 1 is neither " + std::to_string(n) +
                                    " binary digits nor " + std::to_string(hex_digits) +
                                    " hex digits");
      }
    }
    h.set_row(r, hex_mode ? BitVector::from_hex(line, n) : BitVector::from_bit_string(line));
  }
  return from_parity_check(h);
}

BitVector LinearCode::encode(const BitVector& u) const {
  if (u.size() != k_) {
    throw std::invalid_argument("encode: message has " + std::to_string(u.size()) +
                                " bits, expected k = " + std::to_string(k_));
  }
  if (systematic_ && narrow()) {
    // Fast path: copy the message and splice the parity word in at bit k.
    std::vector<std::uint64_t> words(BitVector::word_count(n_), 0);
    const auto uw = u.words();
    for (std::size_t i = 0; i < uw.size(); ++i) words[i] = uw[i];
    std::uint64_t parity = 0;
    for (std::size_t wi = 0; wi < uw.size(); ++wi) {
      std::uint64_t w = uw[wi];
      while (w != 0) {
        const int b = std::countr_zero(w);
        w &= w - 1;
        parity ^= col_words_[wi * 64 + static_cast<std::size_t>(b)];
      }
    }
    const std::size_t lo = k_ % 64;
    const std::size_t wi = k_ / 64;
    words[wi] |= parity << lo;
    if (lo != 0 && lo + (n_ - k_) > 64) words[wi + 1] |= parity >> (64 - lo);
    return BitVector::from_words(n_, std::move(words));
  }
  return vec_mat_mul(u, g_);
}

BitVector LinearCode::syndrome(const BitVector& r) const {
  if (r.size() != n_) {
    throw std::invalid_argument("syndrome: vector has " + std::to_string(r.size()) +
                                " bits, expected n = " + std::to_string(n_));
  }
  if (narrow()) {
    std::vector<std::uint64_t> words(1, syndrome_word(r));
    return BitVector::from_words(n_ - k_, std::move(words));
  }
  return mat_vec_mul(h_, r);
}

BitVector LinearCode::decode_message(const BitVector& c) const {
  if (c.size() != n_) {
    throw std::invalid_argument("decode_message: vector has " + std::to_string(c.size()) +
                                " bits, expected n = " + std::to_string(n_));
  }
  return vec_mat_mul(c, ginv_);
}

const BitVector& LinearCode::col_syndrome(std::size_t i) const {
  if (i < 1 || i > n_) {
    throw std::out_of_range("col_syndrome position " + std::to_string(i));
  }
  return col_syndromes_[i - 1];
}

std::span<const std::uint64_t> LinearCode::col_words() const {
  if (!narrow()) {
    throw std::logic_error("col_words requires n-k <= 64");
  }
  return col_words_;
}

std::uint64_t LinearCode::syndrome_word(const BitVector& r) const {
  if (!narrow()) {
    throw std::logic_error("syndrome_word requires n-k <= 64");
  }
  if (r.size() != n_) {
    throw std::invalid_argument("syndrome_word: wrong vector length");
  }
  std::uint64_t s = 0;
  const auto rw = r.words();
  for (std::size_t wi = 0; wi < rw.size(); ++wi) {
    std::uint64_t w = rw[wi];
    while (w != 0) {
      const int b = std::countr_zero(w);
      w &= w - 1;
      s ^= col_words_[wi * 64 + static_cast<std::size_t>(b)];
    }
  }
  return s;
}

}  // namespace grandab
