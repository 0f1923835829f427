#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "grandab/code.hpp"
#include "grandab/reference.hpp"

namespace grandab {

enum class Phase { weight0, weight1, weight2, weight3, done };

const char* phase_name(Phase p);

// One dial: an n-row cyclic register file whose rows hold the single-flip
// syndromes. A shift-up drops the top entry and appends a null row; cyclic
// shifts rotate the remaining non-null rows only. Rows are modeled as a
// window plus rotation offset instead of physically moving data; the row
// accessors reconstruct what the hardware registers would hold.
class Dial {
 public:
  void attach(std::span<const std::uint64_t> cols);  // cols[i-1] = syndrome of position i

  void reset();                        // full window, no rotation
  void shift_up(std::size_t count);    // requires rotation() == 0
  void cyclic_shift(std::size_t count);

  std::size_t active() const noexcept { return cols_.size() - dropped_; }
  std::size_t rotation() const noexcept { return rot_; }

  // Position label held by 1-based row m, or 0 when the row is null.
  std::size_t index_at(std::size_t row) const;
  // Syndrome held by row m; only meaningful when index_at(row) != 0.
  std::uint64_t row_at(std::size_t row) const;

 private:
  std::span<const std::uint64_t> cols_;
  std::size_t dropped_ = 0;
  std::size_t rot_ = 0;
};

struct CycleCheck {
  std::array<std::size_t, 3> pattern{};  // ascending 1-based positions, zero padded
  std::size_t weight = 0;
  std::uint64_t syndrome = 0;
};

// Everything one time step evaluates: up to n parallel membership checks and
// the priority-encoder outcome (lowest zero-syndrome row, if any).
struct CycleReport {
  std::uint64_t time_step = 0;
  Phase phase = Phase::weight0;
  std::size_t controller = 0;  // active during weight3 only
  std::size_t offset = 0;      // dial-2 rotation within the phase or sub-phase
  std::vector<CycleCheck> checks;
  bool has_hit = false;
  CycleCheck hit;
};

// Time steps to exhaust every pattern of weight <= ab:
//   ab=1: 2, ab=2: 2 + floor(n/2), ab=3: 2 + sum_{i=2}^{n} floor(i/2).
std::uint64_t worst_case_cycles(std::size_t n, unsigned ab);

// Cycle-accurate model of the dial architecture: a weight-0 cycle, one
// weight-1 cycle over all n rows, floor(n/2) weight-2 cycles with dial 2
// rotating against dial 1, and a controller-driven weight-3 schedule in
// which sub-phase c pairs position c with every rotation of the window
// {c+1..n}. Requires n-k <= 64 (the syndrome datapath is one word wide).
class DialDecoder {
 public:
  explicit DialDecoder(const LinearCode& code, GrandConfig cfg = {});

  void init(const BitVector& r);

  Phase phase() const noexcept { return phase_; }
  std::uint64_t time_step() const noexcept { return time_step_; }
  std::size_t controller_pos() const noexcept { return controller_; }
  std::size_t shift_count() const noexcept { return shift_; }
  std::uint64_t base_syndrome() const noexcept { return base_; }
  const Dial& dial1() const noexcept { return dial1_; }
  const Dial& dial2() const noexcept { return dial2_; }
  const LinearCode& code() const noexcept { return *code_; }

  // Advances exactly one time step, filling `out` with this cycle's checks.
  // Returns out.has_hit. Throws when called in the done phase.
  bool step(CycleReport& out);

  // Runs init + step until a hit or until the schedule is exhausted.
  DecodeResult decode(const BitVector& r);

 private:
  void enter_weight2();
  void enter_weight3_subphase(std::size_t c);
  void advance_after_cycle();

  const LinearCode* code_;
  GrandConfig cfg_;
  Phase phase_ = Phase::done;
  std::uint64_t time_step_ = 0;
  std::size_t controller_ = 0;
  std::size_t shift_ = 0;
  std::uint64_t base_ = 0;
  Dial dial1_, dial2_;
};

// Convenience wrapper matching the serial grandab_decode signature.
DecodeResult dial_decode(const LinearCode& code, const BitVector& r,
                         const GrandConfig& cfg);

// One trace line per cycle:
//   cycle=<t> phase=<p> controller=<c> offset=<d> checks=<count> hit=<tuple|->
std::string trace_line(const CycleReport& report);

}  // namespace grandab
