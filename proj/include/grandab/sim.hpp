#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "grandab/code.hpp"
#include "grandab/reference.hpp"

namespace grandab {

enum class DecoderChoice { dial, reference, both };

// One Monte Carlo sweep: random messages are encoded, sent through the
// BPSK/AWGN hard-decision channel and decoded at every SNR point until
// `min_frame_errors` frames failed or `max_frames` were spent.
struct SimJob {
  LinearCode code;
  unsigned ab = 3;
  std::vector<double> snr_db;
  std::uint64_t min_frame_errors = 100;
  std::uint64_t max_frames = 1'000'000;
  double clock_mhz = 500.0;
  DecoderChoice decoder = DecoderChoice::both;
  std::uint64_t seed = 1;
  unsigned threads = 0;  // 0 selects the hardware thread count
  bool noiseless = false;
};

struct SimStats {
  double snr_db = 0.0;
  std::uint64_t frames = 0;
  std::uint64_t frame_errors = 0;
  double fer = 0.0;
  double avg_queries = 0.0;
  double avg_latency_cycles = 0.0;
  std::uint64_t wc_latency_cycles = 0;
  double avg_info_tput_mbps = 0.0;
  double wc_info_tput_mbps = 0.0;

  // Extra diagnostics, not part of the CSV schema.
  bool low_confidence = false;          // stopped by max_frames before min errors
  std::uint64_t disagreements = 0;      // dial vs reference mismatches (both mode)
};

// Modeled information throughput k * clock / cycles in Mbps.
double throughput_mbps(std::size_t k, std::uint64_t cycles, double clock_mhz);

// Runs the sweep. A frame counts as an error when the decoder abandons or
// returns the wrong codeword. With DecoderChoice::both the dial engine
// supplies latency and the frame-error decision while the serial reference
// supplies the query count and a per-frame cross-check. Results are
// deterministic for a fixed seed, independent of the worker count.
std::vector<SimStats> run_sweep(const SimJob& job);

// CSV with a fixed 9-column header matching the SimStats fields.
std::string to_csv(const std::vector<SimStats>& stats);
void emit_csv(const std::vector<SimStats>& stats, const std::string& path);

}  // namespace grandab
