#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "grandab/channel.hpp"
#include "grandab/code.hpp"
#include "grandab/dial.hpp"
#include "grandab/reference.hpp"
#include "grandab/sim.hpp"

namespace {

using namespace grandab;

// "crc:n,k,poly" with poly in decimal or 0x-prefixed hex.
LinearCode parse_code_spec(const std::string& text) {
  const std::string prefix = "crc:";
  if (text.rfind(prefix, 0) != 0) {
    throw CLI::ValidationError("--code", "expected crc:n,k,poly");
  }
  const std::string body = text.substr(prefix.size());
  CrcSpec spec;
  char* end = nullptr;
  const char* p = body.c_str();
  spec.n = std::strtoull(p, &end, 10);
  if (end == p || *end != ',') throw CLI::ValidationError("--code", "expected crc:n,k,poly");
  p = end + 1;
  spec.k = std::strtoull(p, &end, 10);
  if (end == p || *end != ',') throw CLI::ValidationError("--code", "expected crc:n,k,poly");
  p = end + 1;
  spec.poly = std::strtoull(p, &end, 0);
  if (end == p || *end != '\0') throw CLI::ValidationError("--code", "bad polynomial");
  return LinearCode::from_crc(spec);
}

LinearCode build_code(const std::string& code_spec, const std::string& hfile) {
  if (!code_spec.empty() && !hfile.empty()) {
    throw CLI::ValidationError("--code/--hfile", "give exactly one code source");
  }
  if (!code_spec.empty()) return parse_code_spec(code_spec);
  if (!hfile.empty()) return LinearCode::from_parity_check_file(hfile);
  throw CLI::ValidationError("--code/--hfile", "a code source is required");
}

// "a:step:b" inclusive grid, or a comma-separated list, or one value.
std::vector<double> parse_snr_list(const std::string& text) {
  std::vector<double> points;
  const auto colon1 = text.find(':');
  if (colon1 != std::string::npos) {
    const auto colon2 = text.find(':', colon1 + 1);
    if (colon2 == std::string::npos) {
      throw CLI::ValidationError("--snr", "grid form is a:step:b");
    }
    const double a = std::stod(text.substr(0, colon1));
    const double step = std::stod(text.substr(colon1 + 1, colon2 - colon1 - 1));
    const double b = std::stod(text.substr(colon2 + 1));
    if (step <= 0) throw CLI::ValidationError("--snr", "step must be positive");
    for (double v = a; v <= b + 1e-9; v += step) points.push_back(v);
    return points;
  }
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    points.push_back(std::stod(text.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  if (points.empty()) throw CLI::ValidationError("--snr", "no SNR points given");
  return points;
}

void print_result(const DecodeResult& res) {
  std::printf("status          %s\n", res.decoded() ? "decoded" : "abandoned");
  if (res.decoded()) {
    std::string flips = "(";
    for (std::size_t i = 0; i < res.flipped.size(); ++i) {
      if (i) flips += ",";
      flips += std::to_string(res.flipped[i]);
    }
    flips += ")";
    std::printf("weight          %zu\n", res.weight);
    std::printf("flipped         %s\n", flips.c_str());
    std::printf("codeword (hex)  %s\n", res.codeword.to_hex().c_str());
    std::printf("message (hex)   %s\n", res.message.to_hex().c_str());
  }
  std::printf("queries         %llu\n", static_cast<unsigned long long>(res.queries));
  std::printf("latency cycles  %llu\n", static_cast<unsigned long long>(res.latency_cycles));
}

int run(int argc, char** argv) {
  CLI::App app{"GRANDAB decoder, dial-architecture model and channel simulator"};
  app.require_subcommand(1);

  std::string code_spec, hfile;
  std::string snr_text = "4:0.5:12";
  unsigned ab = 3;
  std::uint64_t min_errors = 100, max_frames = 1'000'000, seed = 1;
  double clock_mhz = 500.0;
  std::string decoder_name = "both";
  unsigned threads = 0;
  std::string out_path;

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo FER/latency sweep");
  simulate->add_option("--code", code_spec, "CRC code as crc:n,k,poly");
  simulate->add_option("--hfile", hfile, "parity check matrix file");
  simulate->add_option("--ab", ab, "abandonment weight (1-3)")->capture_default_str();
  simulate->add_option("--snr", snr_text, "SNR grid a:step:b or list a,b,c in dB")
      ->capture_default_str();
  simulate->add_option("--min-errors", min_errors, "frame errors to stop at")
      ->capture_default_str();
  simulate->add_option("--max-frames", max_frames, "frame budget per SNR point")
      ->capture_default_str();
  simulate->add_option("--clock-mhz", clock_mhz, "modeled clock for throughput")
      ->capture_default_str();
  simulate->add_option("--decoder", decoder_name, "dial, ref or both")
      ->check(CLI::IsMember({"dial", "ref", "both"}))->capture_default_str();
  simulate->add_option("--seed", seed, "RNG seed")->capture_default_str();
  simulate->add_option("--threads", threads, "worker threads (0 = auto)")
      ->capture_default_str();
  simulate->add_option("--out", out_path, "CSV output path");

  std::string rx_hex;
  unsigned decode_ab = 3;
  std::string decode_code, decode_hfile;
  auto* decode = app.add_subcommand("decode", "decode one received vector");
  decode->add_option("--code", decode_code, "CRC code as crc:n,k,poly");
  decode->add_option("--hfile", decode_hfile, "parity check matrix file");
  decode->add_option("--ab", decode_ab, "abandonment weight (1-3)")->capture_default_str();
  decode->add_option("--rx", rx_hex, "received vector as hex, MSB first")->required();
  std::string decode_with = "dial";
  decode->add_option("--decoder", decode_with, "dial or ref")
      ->check(CLI::IsMember({"dial", "ref"}))->capture_default_str();

  std::string trace_code, trace_hfile, trace_rx;
  unsigned trace_ab = 3;
  auto* trace = app.add_subcommand("trace", "per-cycle dial engine trace");
  trace->add_option("--code", trace_code, "CRC code as crc:n,k,poly");
  trace->add_option("--hfile", trace_hfile, "parity check matrix file");
  trace->add_option("--ab", trace_ab, "abandonment weight (1-3)")->capture_default_str();
  trace->add_option("--rx", trace_rx, "received vector as hex, MSB first")->required();

  CLI11_PARSE(app, argc, argv);

  if (simulate->parsed()) {
    SimJob job;
    job.code = build_code(code_spec, hfile);
    job.ab = ab;
    job.snr_db = parse_snr_list(snr_text);
    job.min_frame_errors = min_errors;
    job.max_frames = max_frames;
    job.clock_mhz = clock_mhz;
    job.decoder = decoder_name == "dial" ? DecoderChoice::dial
                : decoder_name == "ref" ? DecoderChoice::reference
                                        : DecoderChoice::both;
    job.seed = seed;
    job.threads = threads;

    std::fprintf(stderr, "(%zu,%zu) code, ab=%u, %zu SNR points, decoder=%s\n",
                 job.code.n(), job.code.k(), job.ab, job.snr_db.size(),
                 decoder_name.c_str());
    const std::vector<SimStats> stats = run_sweep(job);
    std::fputs(to_csv(stats).c_str(), stdout);
    for (const SimStats& st : stats) {
      if (st.low_confidence) {
        std::fprintf(stderr, "warning: %g dB stopped at %llu frames with only %llu errors\n",
                     st.snr_db, static_cast<unsigned long long>(st.frames),
                     static_cast<unsigned long long>(st.frame_errors));
      }
      if (st.disagreements != 0) {
        std::fprintf(stderr, "warning: %g dB had %llu dial/reference disagreements\n",
                     st.snr_db, static_cast<unsigned long long>(st.disagreements));
      }
    }
    if (!out_path.empty()) emit_csv(stats, out_path);
    return 0;
  }

  if (decode->parsed()) {
    const LinearCode code = build_code(decode_code, decode_hfile);
    const BitVector r = BitVector::from_hex(rx_hex, code.n());
    const GrandConfig cfg{decode_ab};
    const DecodeResult res = decode_with == "dial" ? dial_decode(code, r, cfg)
                                                   : grandab_decode(code, r, cfg);
    print_result(res);
    return 0;
  }

  if (trace->parsed()) {
    const LinearCode code = build_code(trace_code, trace_hfile);
    const BitVector r = BitVector::from_hex(trace_rx, code.n());
    DialDecoder dec(code, GrandConfig{trace_ab});
    dec.init(r);
    CycleReport rep;
    while (dec.phase() != Phase::done) {
      const bool hit = dec.step(rep);
      std::puts(trace_line(rep).c_str());
      if (hit) break;
    }
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
