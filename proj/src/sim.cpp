#include "grandab/sim.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "grandab/channel.hpp"
#include "grandab/dial.hpp"

namespace grandab {

namespace {

// Frames are processed in fixed-size rounds so that the set of simulated
// frames depends only on the stop rule, never on thread scheduling.
constexpr std::uint64_t kRoundFrames = 16384;
constexpr std::uint64_t kChunkFrames = 256;

struct Accum {
  std::uint64_t frames = 0;
  std::uint64_t errors = 0;
  std::uint64_t disagreements = 0;
  std::uint64_t sum_queries = 0;
  std::uint64_t sum_latency = 0;

  void merge(const Accum& o) {
    frames += o.frames;
    errors += o.errors;
    disagreements += o.disagreements;
    sum_queries += o.sum_queries;
    sum_latency += o.sum_latency;
  }
};

class PointWorker {
 public:
  PointWorker(const SimJob& job, const ChannelConfig& base_channel,
              std::size_t point_index)
      : job_(job), channel_(base_channel), point_index_(point_index),
        use_dial_(job.decoder != DecoderChoice::reference),
        use_ref_(job.decoder != DecoderChoice::dial),
        dial_(job.code, GrandConfig{job.ab}),
        u_(job.code.k()), r_(job.code.n()) {}

  void run_frame(std::uint64_t frame_index, Accum& acc) {
    channel_.stream = (static_cast<std::uint64_t>(point_index_) << 40) | frame_index;
    Xoshiro256pp rng = channel_.make_rng();

    // Message bits first, then the per-bit channel noise.
    for (std::size_t w = 0; w < BitVector::word_count(job_.code.k()); ++w) {
      std::uint64_t bits = rng.next();
      const std::size_t lo = w * 64 + 1;
      const std::size_t hi = std::min(job_.code.k(), w * 64 + 64);
      for (std::size_t pos = lo; pos <= hi; ++pos) {
        u_.set_bit(pos, bits & 1);
        bits >>= 1;
      }
    }
    const BitVector c = job_.code.encode(u_);
    transmit_hard(c, channel_, rng, r_);

    DecodeResult dial_res, ref_res;
    if (use_dial_) dial_res = dial_.decode(r_);
    if (use_ref_) ref_res = grandab_decode(job_.code, r_, GrandConfig{job_.ab});

    const DecodeResult& primary = use_dial_ ? dial_res : ref_res;
    const bool error = !primary.decoded() || primary.codeword != c;

    acc.frames += 1;
    acc.errors += error ? 1 : 0;
    acc.sum_queries += use_ref_ ? ref_res.queries : dial_res.queries;
    acc.sum_latency += use_dial_ ? dial_res.latency_cycles : 0;
    if (use_dial_ && use_ref_) {
      const bool agree = dial_res.status == ref_res.status &&
                         dial_res.weight == ref_res.weight;
      acc.disagreements += agree ? 0 : 1;
    }
  }

 private:
  const SimJob& job_;
  ChannelConfig channel_;
  std::size_t point_index_;
  bool use_dial_, use_ref_;
  DialDecoder dial_;
  BitVector u_, r_;
};

Accum run_point(const SimJob& job, const ChannelConfig& base_channel,
                std::size_t point_index, unsigned threads) {
  Accum total;
  std::uint64_t next_frame = 0;
  while (true) {
    if (total.errors >= job.min_frame_errors) break;
    if (next_frame >= job.max_frames) break;
    const std::uint64_t round = std::min(kRoundFrames, job.max_frames - next_frame);

    std::atomic<std::uint64_t> cursor{0};
    std::mutex merge_mutex;
    auto body = [&]() {
      PointWorker worker(job, base_channel, point_index);
      Accum local;
      while (true) {
        const std::uint64_t begin = cursor.fetch_add(kChunkFrames);
        if (begin >= round) break;
        const std::uint64_t end = std::min(round, begin + kChunkFrames);
        for (std::uint64_t f = begin; f < end; ++f) {
          worker.run_frame(next_frame + f, local);
        }
      }
      std::lock_guard<std::mutex> lock(merge_mutex);
      total.merge(local);
    };

    if (threads <= 1) {
      body();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(threads);
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(body);
      for (auto& t : pool) t.join();
    }
    next_frame += round;
  }
  return total;
}

}  // namespace

double throughput_mbps(std::size_t k, std::uint64_t cycles, double clock_mhz) {
  if (cycles == 0) {
    throw std::invalid_argument("throughput_mbps: cycle count must be positive");
  }
  return static_cast<double>(k) * clock_mhz / static_cast<double>(cycles);
}

std::vector<SimStats> run_sweep(const SimJob& job) {
  if (job.snr_db.empty()) {
    throw std::invalid_argument("run_sweep: at least one SNR point is required");
  }
  if (job.min_frame_errors < 1) {
    throw std::invalid_argument("run_sweep: min_frame_errors must be >= 1");
  }
  unsigned threads = job.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

  const std::uint64_t wc = worst_case_cycles(job.code.n(), job.ab);
  std::vector<SimStats> out;
  out.reserve(job.snr_db.size());
  for (std::size_t p = 0; p < job.snr_db.size(); ++p) {
    ChannelConfig ch;
    ch.snr_db = job.snr_db[p];
    ch.seed = job.seed;
    ch.noiseless = job.noiseless;
    const Accum acc = run_point(job, ch, p, threads);

    SimStats st;
    st.snr_db = job.snr_db[p];
    st.frames = acc.frames;
    st.frame_errors = acc.errors;
    st.fer = acc.frames ? static_cast<double>(acc.errors) / static_cast<double>(acc.frames) : 0.0;
    st.avg_queries = acc.frames ? static_cast<double>(acc.sum_queries) / static_cast<double>(acc.frames) : 0.0;
    st.avg_latency_cycles = acc.frames ? static_cast<double>(acc.sum_latency) / static_cast<double>(acc.frames) : 0.0;
    st.wc_latency_cycles = wc;
    st.wc_info_tput_mbps = throughput_mbps(job.code.k(), wc, job.clock_mhz);
    st.avg_info_tput_mbps = st.avg_latency_cycles > 0.0
        ? static_cast<double>(job.code.k()) * job.clock_mhz / st.avg_latency_cycles
        : 0.0;
    st.low_confidence = acc.errors < job.min_frame_errors;
    st.disagreements = acc.disagreements;
    out.push_back(st);
  }
  return out;
}

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

std::string to_csv(const std::vector<SimStats>& stats) {
  std::string csv =
      "snr_db,frames,frame_errors,fer,avg_queries,avg_latency_cycles,"
      "wc_latency_cycles,avg_info_tput_mbps,wc_info_tput_mbps\n";
  for (const SimStats& st : stats) {
    csv += format_double(st.snr_db);
    csv += "," + std::to_string(st.frames);
    csv += "," + std::to_string(st.frame_errors);
    csv += "," + format_double(st.fer);
    csv += "," + format_double(st.avg_queries);
    csv += "," + format_double(st.avg_latency_cycles);
    csv += "," + std::to_string(st.wc_latency_cycles);
    csv += "," + format_double(st.avg_info_tput_mbps);
    csv += "," + format_double(st.wc_info_tput_mbps);
    csv += "\n";
  }
  return csv;
}

void emit_csv(const std::vector<SimStats>& stats, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + path);
  }
  out << to_csv(stats);
  if (!out) {
    throw std::runtime_error("failed writing output file: " + path);
  }
}

}  // namespace grandab
