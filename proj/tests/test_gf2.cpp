#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "grandab/gf2.hpp"

using namespace grandab;

namespace {

// Independent bit-by-bit product used as the oracle for the packed one.
BitVector naive_mat_vec_mul(const BitMatrix& m, const BitVector& v) {
  BitVector out(m.rows());
  for (std::size_t r = 1; r <= m.rows(); ++r) {
    bool acc = false;
    for (std::size_t c = 1; c <= m.cols(); ++c) {
      acc ^= m.bit(r, c) && v.bit(c);
    }
    out.set_bit(r, acc);
  }
  return out;
}

BitMatrix random_matrix(std::mt19937_64& gen, std::size_t rows, std::size_t cols) {
  BitMatrix m(rows, cols);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t r = 1; r <= rows; ++r) {
    for (std::size_t c = 1; c <= cols; ++c) {
      if (coin(gen)) m.set_bit(r, c, true);
    }
  }
  return m;
}

BitVector random_vector(std::mt19937_64& gen, std::size_t len) {
  BitVector v(len);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t i = 1; i <= len; ++i) {
    if (coin(gen)) v.set_bit(i, true);
  }
  return v;
}

const std::vector<std::string> kHamming74Rows = {
    "1101100",
    "1011010",
    "0111001",
};

// Standard systematic (7,4) Hamming generator matching kHamming74Rows.
const std::vector<std::string> kHamming74Gen = {
    "1000110",
    "0100101",
    "0010011",
    "0001111",
};

}  // namespace

TEST_CASE("BitVector basics and bit order") {
  BitVector v(70);
  CHECK(v.size() == 70);
  CHECK(v.is_zero());
  v.set_bit(1, true);
  v.set_bit(70, true);
  CHECK(v.bit(1));
  CHECK(v.bit(70));
  CHECK(v.weight() == 2);
  CHECK(v.words()[0] == 1);        // position 1 lives at stored bit 0
  CHECK(v.words()[1] == (1ull << 5));
  v.flip_bit(1);
  CHECK_FALSE(v.bit(1));
  CHECK_THROWS_AS(v.bit(0), std::out_of_range);
  CHECK_THROWS_AS(v.bit(71), std::out_of_range);
}

TEST_CASE("xor of a vector with itself is zero") {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 50; ++trial) {
    BitVector v = random_vector(gen, 1 + static_cast<std::size_t>(gen() % 300));
    BitVector z = v ^ v;
    CHECK(z.is_zero());
  }
}

TEST_CASE("bit string and hex round trips") {
  const BitVector v = BitVector::from_bit_string("1011011");
  CHECK(v.size() == 7);
  CHECK(v.to_bit_string() == "1011011");
  CHECK(v.to_hex() == "5b");
  CHECK(BitVector::from_hex("5b", 7) == v);
  CHECK(BitVector::from_hex("5B", 7) == v);
  CHECK_THROWS(BitVector::from_hex("5b", 8));    // wrong digit count for n=8? 2 digits needed
  CHECK(BitVector::from_hex("ff", 8).weight() == 8);
  // A pad bit set beyond the length must be rejected.
  CHECK_THROWS(BitVector::from_hex("ff", 7));
}

TEST_CASE("indicator vectors") {
  const BitVector e3 = BitVector::indicator(8, 3);
  CHECK(e3.weight() == 1);
  CHECK(e3.bit(3));
}

TEST_CASE("mat_vec_mul identity and annihilation") {
  const BitMatrix id = BitMatrix::identity(4);
  const BitVector v = BitVector::from_bit_string("1011");
  CHECK(mat_vec_mul(id, v) == v);

  std::mt19937_64 gen(11);
  const BitMatrix m = random_matrix(gen, 5, 12);
  CHECK(mat_vec_mul(m, BitVector(12)).is_zero());
}

TEST_CASE("Hamming(7,4): all 16 codewords satisfy the parity check") {
  const BitMatrix h = BitMatrix::from_rows(kHamming74Rows);
  const BitMatrix g = BitMatrix::from_rows(kHamming74Gen);
  for (unsigned msg = 0; msg < 16; ++msg) {
    BitVector u(4);
    for (unsigned b = 0; b < 4; ++b) {
      if ((msg >> b) & 1) u.set_bit(b + 1, true);
    }
    const BitVector c = vec_mat_mul(u, g);
    CHECK(mat_vec_mul(h, c).is_zero());
  }
}

TEST_CASE("mat_vec_mul matches the naive product on random instances") {
  std::mt19937_64 gen(13);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t cols = 1 + static_cast<std::size_t>(gen() % 1024);
    const std::size_t rows = 1 + static_cast<std::size_t>(gen() % 64);
    const BitMatrix m = random_matrix(gen, rows, cols);
    const BitVector v = random_vector(gen, cols);
    CHECK(mat_vec_mul(m, v) == naive_mat_vec_mul(m, v));
  }
}

TEST_CASE("mat_vec_mul linearity: M(u^v) = Mu ^ Mv") {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t cols = 1 + static_cast<std::size_t>(gen() % 256);
    const std::size_t rows = 1 + static_cast<std::size_t>(gen() % 48);
    const BitMatrix m = random_matrix(gen, rows, cols);
    const BitVector u = random_vector(gen, cols);
    const BitVector v = random_vector(gen, cols);
    CHECK(mat_vec_mul(m, u ^ v) == (mat_vec_mul(m, u) ^ mat_vec_mul(m, v)));
  }
}

TEST_CASE("mat_vec_mul rejects dimension mismatch") {
  const BitMatrix m(3, 5);
  CHECK_THROWS_AS(mat_vec_mul(m, BitVector(4)), std::invalid_argument);
}

TEST_CASE("transpose is an involution") {
  std::mt19937_64 gen(19);
  for (int trial = 0; trial < 20; ++trial) {
    const BitMatrix m = random_matrix(gen, 1 + gen() % 20, 1 + gen() % 90);
    CHECK(m.transposed().transposed() == m);
  }
}

TEST_CASE("gf2_rank examples") {
  CHECK(gf2_rank(BitMatrix(6, 9)) == 0);
  CHECK(gf2_rank(BitMatrix::identity(8)) == 8);
  CHECK(gf2_rank(BitMatrix::from_rows(kHamming74Rows)) == 3);

  // Duplicated row drops the rank.
  BitMatrix m = BitMatrix::from_rows({"1100", "0110", "1010"});
  CHECK(gf2_rank(m) == 2);
}

TEST_CASE("gf2_rank does not mutate its argument") {
  std::mt19937_64 gen(23);
  const BitMatrix m = random_matrix(gen, 6, 10);
  const BitMatrix copy = m;
  (void)gf2_rank(m);
  CHECK(m == copy);
}

TEST_CASE("right_inverse of the identity") {
  const BitMatrix id = BitMatrix::identity(5);
  const BitMatrix r = right_inverse(id);
  CHECK(mat_mul(id, r) == id);
}

TEST_CASE("right_inverse of a systematic generator extracts the message") {
  const BitMatrix g = BitMatrix::from_rows(kHamming74Gen);
  const BitMatrix r = right_inverse(g);
  CHECK(mat_mul(g, r) == BitMatrix::identity(4));
  // For G = [I | P] the inverse is [I ; 0].
  for (std::size_t i = 1; i <= 4; ++i) {
    for (std::size_t j = 1; j <= 4; ++j) {
      CHECK(r.bit(i, j) == (i == j));
    }
  }
  for (std::size_t i = 5; i <= 7; ++i) {
    for (std::size_t j = 1; j <= 4; ++j) {
      CHECK_FALSE(r.bit(i, j));
    }
  }
}

TEST_CASE("right_inverse post-verified on random full-rank matrices") {
  std::mt19937_64 gen(29);
  int built = 0;
  while (built < 40) {
    const std::size_t k = 1 + static_cast<std::size_t>(gen() % 8);
    const std::size_t n = k + static_cast<std::size_t>(gen() % 9);
    const BitMatrix g = random_matrix(gen, k, n);
    if (gf2_rank(g) != k) continue;
    ++built;
    const BitMatrix r = right_inverse(g);
    CHECK(mat_mul(g, r) == BitMatrix::identity(k));
  }
}

TEST_CASE("right_inverse names the deficient rank") {
  const BitMatrix g = BitMatrix::from_rows({"1100", "1100"});
  CHECK_THROWS_WITH_AS(right_inverse(g), doctest::Contains("rank 1"),
                       std::invalid_argument);
}
