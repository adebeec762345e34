#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lanmpc/garbling/protocol.hpp"
#include "lanmpc/sharing/party.hpp"
#include "lanmpc/transport/network_profile.hpp"

namespace lanmpc::bench {

enum class Protocol { kGc, kSs };
enum class TransportKind { kMem, kEmulated, kSocket };
enum class ReportFormat { kCsv, kJson };

struct BenchConfig {
  Protocol protocol = Protocol::kGc;
  std::uint64_t rows = 8;
  std::uint64_t cols = 8;
  unsigned bitwidth = 32;
  TransportKind transport = TransportKind::kMem;
  // Applied by the emulated transport; also the profile used for the prediction.
  transport::NetworkProfile profile;
  sharing::FlushPolicy flush_policy = sharing::FlushPolicy::kBatched;
  garbling::GateApi gate_api = garbling::GateApi::kBatched;
  garbling::InputMode input_mode = garbling::InputMode::kExternal;
  std::size_t flush_bytes = garbling::kDefaultFlushBytes;
  std::uint64_t seed = 1;
  unsigned repetitions = 3;
  // CPU seconds fed to the cost model. Negative: use the slower party's measured CPU time.
  double cpu_estimate_s = -1;

  // Throws std::invalid_argument describing the first problem found.
  void validate() const;
};

struct BenchReport {
  BenchConfig config;
  std::string status = "ok";  // "ok" or "FAILED"
  std::string error;

  // Online phase; medians over repetitions, plus the wall-clock spread.
  double wall_s = 0;
  double wall_min_s = 0;
  double wall_max_s = 0;
  double cpu_p0_s = 0;  // garbler / party 0
  double cpu_p1_s = 0;  // evaluator / party 1

  // Triple generation (ss only), medians.
  double prep_wall_s = 0;
  double prep_cpu_s = 0;

  // Per direction: forward is party 0 -> party 1.
  std::uint64_t bytes_fwd = 0;
  std::uint64_t bytes_bwd = 0;
  std::uint64_t messages_fwd = 0;
  std::uint64_t messages_bwd = 0;
  std::uint64_t flushes_fwd = 0;
  std::uint64_t flushes_bwd = 0;
  // Flushes during the multiplication layer (ss only).
  std::uint64_t mult_flushes_p0 = 0;
  std::uint64_t mult_flushes_p1 = 0;

  std::uint64_t and_count = 0;  // gc only
  std::uint64_t checksum = 0;
  std::uint64_t expected_checksum = 0;
  // Measured transfer statistics equal the closed-form protocol formulas.
  bool stats_ok = false;
  double predicted_s = 0;

  bool ok() const { return status == "ok"; }
};

inline constexpr std::string_view kCsvSchema = "lanmpc-bench-v1";

// Runs the configured benchmark with both parties in this process. Never throws
// for protocol or correctness failures; those come back as status FAILED.
// Throws std::invalid_argument for an invalid config.
BenchReport run_bench(const BenchConfig& config);

// Deterministic benchmark inputs and the plaintext oracle.
std::vector<std::uint64_t> bench_matrix(const BenchConfig& config);
std::vector<std::uint64_t> bench_vector(const BenchConfig& config);
std::vector<std::uint64_t> oracle_matvec(const BenchConfig& config);
std::uint64_t checksum(const std::vector<std::uint64_t>& values);

// Closed-form prediction for the config with the given CPU estimate.
double predict(const BenchConfig& config, double cpu_seconds);

std::string csv_header();
std::string csv_row(const BenchReport& report);
std::string to_json(const BenchReport& report);
BenchReport from_json(const std::string& text);
// Header line plus one row per report (CSV) or one JSON object per line.
std::string emit_report(const std::vector<BenchReport>& reports, ReportFormat format);

// Names accepted by sweep(): protocol, rows, cols, size, bitwidth, transport,
// rtt, bandwidth, overhead, flush_policy, gate_api, input_mode, flush_bytes, seed, reps.
// Applying a value throws std::invalid_argument for an unknown axis or unparsable value.
void apply_axis(BenchConfig& config, const std::string& axis, const std::string& value);
std::vector<BenchReport> sweep(const BenchConfig& base, const std::string& axis,
                               const std::vector<std::string>& values);

// Two-process mode: runs one party over an already connected channel.
// role 0 is the garbler / party 0. The returned report only carries this
// party's CPU time and its own channel counters.
BenchReport run_party(const BenchConfig& config, int role, transport::Channel& channel);

std::string to_string(Protocol p);
std::string to_string(TransportKind t);
std::string to_string(sharing::FlushPolicy p);
std::string to_string(garbling::GateApi a);
std::string to_string(garbling::InputMode m);
Protocol parse_protocol(const std::string& s);
TransportKind parse_transport(const std::string& s);
sharing::FlushPolicy parse_flush_policy(const std::string& s);
garbling::GateApi parse_gate_api(const std::string& s);
garbling::InputMode parse_input_mode(const std::string& s);
ReportFormat parse_format(const std::string& s);

}  // namespace lanmpc::bench
