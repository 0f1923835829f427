#include "grandab/reference.hpp"

#include <limits>
#include <stdexcept>

namespace grandab {

PatternStream::PatternStream(std::size_t n, std::size_t weight) : n_(n), w_(weight) {
  done_ = w_ > n_;
}

bool PatternStream::next(std::vector<std::size_t>& tuple) {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    cur_.resize(w_);
    for (std::size_t i = 0; i < w_; ++i) cur_[i] = i + 1;
    tuple = cur_;
    return true;
  }
  // Advance the rightmost index that still has room, reset the tail.
  std::size_t i = w_;
  while (i > 0 && cur_[i - 1] == n_ - (w_ - i)) --i;
  if (i == 0) {
    done_ = true;
    return false;
  }
  ++cur_[i - 1];
  for (std::size_t j = i; j < w_; ++j) cur_[j] = cur_[j - 1] + 1;
  tuple = cur_;
  return true;
}

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    const std::uint64_t factor = n - k + i;
    if (result > std::numeric_limits<std::uint64_t>::max() / factor) {
      throw std::overflow_error("binomial overflows 64 bits");
    }
    result = result * factor / i;  // exact: result stays C(n-k+i, i) throughout
  }
  return result;
}

std::uint64_t count_max_queries(std::size_t n, std::size_t t) {
  if (t > n) {
    throw std::invalid_argument("count_max_queries requires t <= n");
  }
  std::uint64_t total = 0;
  for (std::size_t i = 1; i <= t; ++i) total += binomial(n, i);
  return total;
}

namespace {

struct Hit {
  bool found = false;
  std::vector<std::size_t> flipped;
};

// Narrow-code scan (syndrome fits one word); weights 1..3 are unrolled and
// the general weight falls back to the lexicographic stream.
Hit scan_narrow(const LinearCode& code, std::uint64_t base, unsigned ab,
                std::uint64_t& queries) {
  const auto cols = code.col_words();
  const std::size_t n = code.n();
  Hit hit;
  for (unsigned w = 1; w <= ab; ++w) {
    if (w == 1) {
      for (std::size_t i = 1; i <= n; ++i) {
        ++queries;
        if ((base ^ cols[i - 1]) == 0) {
          hit.found = true;
          hit.flipped = {i};
          return hit;
        }
      }
    } else if (w == 2) {
      for (std::size_t i = 1; i < n; ++i) {
        const std::uint64_t pi = base ^ cols[i - 1];
        for (std::size_t j = i + 1; j <= n; ++j) {
          ++queries;
          if ((pi ^ cols[j - 1]) == 0) {
            hit.found = true;
            hit.flipped = {i, j};
            return hit;
          }
        }
      }
    } else if (w == 3) {
      for (std::size_t i = 1; i + 1 < n; ++i) {
        const std::uint64_t pi = base ^ cols[i - 1];
        for (std::size_t j = i + 1; j < n; ++j) {
          const std::uint64_t pij = pi ^ cols[j - 1];
          for (std::size_t l = j + 1; l <= n; ++l) {
            ++queries;
            if ((pij ^ cols[l - 1]) == 0) {
              hit.found = true;
              hit.flipped = {i, j, l};
              return hit;
            }
          }
        }
      }
    } else {
      PatternStream stream(n, w);
      std::vector<std::size_t> tuple;
      while (stream.next(tuple)) {
        ++queries;
        std::uint64_t s = base;
        for (std::size_t pos : tuple) s ^= cols[pos - 1];
        if (s == 0) {
          hit.found = true;
          hit.flipped = tuple;
          return hit;
        }
      }
    }
  }
  return hit;
}

// Generic scan for wide syndromes; plain BitVector arithmetic.
Hit scan_wide(const LinearCode& code, const BitVector& base, unsigned ab,
              std::uint64_t& queries) {
  const std::size_t n = code.n();
  Hit hit;
  for (unsigned w = 1; w <= ab; ++w) {
    PatternStream stream(n, w);
    std::vector<std::size_t> tuple;
    while (stream.next(tuple)) {
      ++queries;
      BitVector s = base;
      for (std::size_t pos : tuple) s ^= code.col_syndrome(pos);
      if (s.is_zero()) {
        hit.found = true;
        hit.flipped = tuple;
        return hit;
      }
    }
  }
  return hit;
}

}  // namespace

DecodeResult grandab_decode(const LinearCode& code, const BitVector& r,
                            const GrandConfig& cfg) {
  if (r.size() != code.n()) {
    throw std::invalid_argument("grandab_decode: received vector has " +
                                std::to_string(r.size()) + " bits, expected " +
                                std::to_string(code.n()));
  }
  if (cfg.ab > code.n()) {
    throw std::invalid_argument("grandab_decode: ab exceeds the code length");
  }

  DecodeResult res;
  res.queries = 1;  // the weight-0 membership check

  Hit hit;
  bool zero_base;
  if (code.narrow()) {
    const std::uint64_t base = code.syndrome_word(r);
    zero_base = base == 0;
    if (!zero_base) hit = scan_narrow(code, base, cfg.ab, res.queries);
  } else {
    const BitVector base = code.syndrome(r);
    zero_base = base.is_zero();
    if (!zero_base) hit = scan_wide(code, base, cfg.ab, res.queries);
  }

  if (zero_base) {
    hit.found = true;
    hit.flipped.clear();
  }
  if (!hit.found) {
    res.status = DecodeStatus::abandoned;
    return res;
  }

  res.status = DecodeStatus::decoded;
  res.flipped = hit.flipped;
  res.weight = hit.flipped.size();
  res.codeword = r;
  for (std::size_t pos : hit.flipped) res.codeword.flip_bit(pos);
  res.message = code.decode_message(res.codeword);
  return res;
}

}  // namespace grandab
