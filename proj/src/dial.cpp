#include "grandab/dial.hpp"

#include <algorithm>
#include <stdexcept>

namespace grandab {

const char* phase_name(Phase p) {
  switch (p) {
    case Phase::weight0: return "weight0";
    case Phase::weight1: return "weight1";
    case Phase::weight2: return "weight2";
    case Phase::weight3: return "weight3";
    case Phase::done: return "done";
  }
  return "?";
}

void Dial::attach(std::span<const std::uint64_t> cols) {
  cols_ = cols;
  reset();
}

void Dial::reset() {
  dropped_ = 0;
  rot_ = 0;
}

void Dial::shift_up(std::size_t count) {
  if (rot_ != 0) {
    throw std::logic_error("Dial::shift_up on a rotated dial is not part of the schedule");
  }
  if (dropped_ + count > cols_.size()) {
    throw std::logic_error("Dial::shift_up past the last row");
  }
  dropped_ += count;
}

void Dial::cyclic_shift(std::size_t count) {
  const std::size_t a = active();
  if (a == 0) return;
  rot_ = (rot_ + count) % a;
}

std::size_t Dial::index_at(std::size_t row) const {
  const std::size_t a = active();
  if (row < 1 || row > cols_.size()) {
    throw std::out_of_range("Dial row outside [1, n]");
  }
  if (row > a) return 0;  // null row
  return dropped_ + 1 + (row - 1 + rot_) % a;
}

std::uint64_t Dial::row_at(std::size_t row) const {
  const std::size_t idx = index_at(row);
  return idx == 0 ? 0 : cols_[idx - 1];
}

std::uint64_t worst_case_cycles(std::size_t n, unsigned ab) {
  if (ab < 1 || ab > 3) {
    throw std::invalid_argument("worst_case_cycles supports ab in {1,2,3}");
  }
  std::uint64_t total = 2;  // weight-0 cycle plus the single weight-1 cycle
  if (ab >= 2) total += n / 2;
  if (ab == 3) {
    for (std::size_t i = 2; i + 1 <= n; ++i) total += i / 2;
  }
  return total;
}

DialDecoder::DialDecoder(const LinearCode& code, GrandConfig cfg)
    : code_(&code), cfg_(cfg) {
  if (!code.narrow()) {
    throw std::invalid_argument("dial engine requires n-k <= 64");
  }
  if (cfg_.ab < 1 || cfg_.ab > 3) {
    throw std::invalid_argument("dial engine supports ab in {1,2,3}");
  }
  dial1_.attach(code.col_words());
  dial2_.attach(code.col_words());
}

void DialDecoder::init(const BitVector& r) {
  if (r.size() != code_->n()) {
    throw std::invalid_argument("dial init: received vector has " +
                                std::to_string(r.size()) + " bits, expected " +
                                std::to_string(code_->n()));
  }
  base_ = code_->syndrome_word(r);
  dial1_.reset();
  dial2_.reset();
  phase_ = Phase::weight0;
  time_step_ = 0;
  controller_ = 0;
  shift_ = 0;
}

void DialDecoder::enter_weight2() {
  phase_ = Phase::weight2;
  shift_ = 0;
  dial2_.reset();
  dial2_.cyclic_shift(1);
}

void DialDecoder::enter_weight3_subphase(std::size_t c) {
  phase_ = Phase::weight3;
  controller_ = c;
  shift_ = 0;
  if (c == 1) {
    dial1_.reset();
  }
  dial1_.shift_up(1);
  dial2_.reset();
  dial2_.shift_up(c);
  dial2_.cyclic_shift(1);
}

void DialDecoder::advance_after_cycle() {
  const std::size_t n = code_->n();
  switch (phase_) {
    case Phase::weight0:
      phase_ = Phase::weight1;
      break;
    case Phase::weight1:
      if (cfg_.ab >= 2 && n / 2 >= 1) {
        enter_weight2();
      } else if (cfg_.ab >= 3 && n >= 3) {
        enter_weight3_subphase(1);
      } else {
        phase_ = Phase::done;
      }
      break;
    case Phase::weight2:
      ++shift_;
      if (shift_ == n / 2) {
        if (cfg_.ab >= 3 && n >= 3) {
          enter_weight3_subphase(1);
        } else {
          phase_ = Phase::done;
        }
      } else {
        dial2_.cyclic_shift(1);
      }
      break;
    case Phase::weight3:
      ++shift_;
      if (shift_ == (n - controller_) / 2) {
        if (controller_ + 2 < n) {
          enter_weight3_subphase(controller_ + 1);
        } else {
          phase_ = Phase::done;
        }
      } else {
        dial2_.cyclic_shift(1);
      }
      break;
    case Phase::done:
      break;
  }
}

bool DialDecoder::step(CycleReport& out) {
  if (phase_ == Phase::done) {
    throw std::logic_error("DialDecoder::step called after the schedule finished");
  }
  const std::size_t n = code_->n();
  const auto cols = code_->col_words();

  ++time_step_;
  out.time_step = time_step_;
  out.phase = phase_;
  out.controller = phase_ == Phase::weight3 ? controller_ : 0;
  out.offset = (phase_ == Phase::weight2 || phase_ == Phase::weight3) ? shift_ + 1 : 0;
  out.checks.clear();
  out.has_hit = false;

  auto emit = [&out](std::size_t a, std::size_t b, std::size_t c, std::uint64_t s) {
    CycleCheck chk;
    chk.syndrome = s;
    std::array<std::size_t, 3> p{a, b, c};
    std::sort(p.begin(), p.end());
    std::size_t w = 0;
    for (std::size_t v : p) {
      if (v != 0) chk.pattern[w++] = v;
    }
    chk.weight = w;
    out.checks.push_back(chk);
    if (!out.has_hit && s == 0) {
      out.has_hit = true;
      out.hit = chk;
    }
  };

  switch (phase_) {
    case Phase::weight0:
      emit(0, 0, 0, base_);
      break;
    case Phase::weight1:
      // Dial 1 holds s_1..s_n top to bottom; all n single flips in one step.
      for (std::size_t m = 1; m <= n; ++m) {
        emit(m, 0, 0, base_ ^ cols[m - 1]);
      }
      break;
    case Phase::weight2: {
      // Dial 2 runs `offset` positions ahead of dial 1.
      const std::size_t d = shift_ + 1;
      for (std::size_t m = 1; m <= n; ++m) {
        const std::size_t i = m;
        const std::size_t j = 1 + (m - 1 + d) % n;
        emit(i, j, 0, base_ ^ cols[i - 1] ^ cols[j - 1]);
      }
      break;
    }
    case Phase::weight3: {
      // The controller contributes s_c; the dials cover the window {c+1..n}.
      const std::size_t c = controller_;
      const std::size_t w = n - c;
      const std::size_t d = shift_ + 1;
      const std::uint64_t pre = base_ ^ cols[c - 1];
      for (std::size_t m = 1; m <= w; ++m) {
        const std::size_t i = c + m;
        const std::size_t j = c + 1 + (m - 1 + d) % w;
        emit(c, i, j, pre ^ cols[i - 1] ^ cols[j - 1]);
      }
      break;
    }
    case Phase::done:
      break;
  }

  advance_after_cycle();
  return out.has_hit;
}

DecodeResult DialDecoder::decode(const BitVector& r) {
  init(r);
  DecodeResult res;
  CycleReport rep;
  while (phase_ != Phase::done) {
    step(rep);
    res.queries += rep.checks.size();
    if (rep.has_hit) {
      res.status = DecodeStatus::decoded;
      res.latency_cycles = rep.time_step;
      res.weight = rep.hit.weight;
      res.flipped.assign(rep.hit.pattern.begin(), rep.hit.pattern.begin() + rep.hit.weight);
      res.codeword = r;
      for (std::size_t pos : res.flipped) res.codeword.flip_bit(pos);
      res.message = code_->decode_message(res.codeword);
      return res;
    }
  }
  res.status = DecodeStatus::abandoned;
  res.latency_cycles = worst_case_cycles(code_->n(), cfg_.ab);
  return res;
}

DecodeResult dial_decode(const LinearCode& code, const BitVector& r,
                         const GrandConfig& cfg) {
  DialDecoder dec(code, cfg);
  return dec.decode(r);
}

std::string trace_line(const CycleReport& report) {
  std::string line = "cycle=" + std::to_string(report.time_step);
  line += " phase=";
  line += phase_name(report.phase);
  line += " controller=" + std::to_string(report.controller);
  line += " offset=" + std::to_string(report.offset);
  line += " checks=" + std::to_string(report.checks.size());
  line += " hit=";
  if (!report.has_hit) {
    line += "-";
  } else {
    line += "(";
    for (std::size_t i = 0; i < report.hit.weight; ++i) {
      if (i > 0) line += ",";
      line += std::to_string(report.hit.pattern[i]);
    }
    line += ")";
  }
  return line;
}

}  // namespace grandab
