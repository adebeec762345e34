// Benchmark harness for the garbled-circuit and secret-sharing matvec protocols.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lanmpc/bench/bench.hpp"
#include "lanmpc/transport/socket_channel.hpp"

namespace {

using namespace lanmpc;

struct Flags {
  std::string protocol = "gc";
  std::uint64_t size = 0;
  std::uint64_t rows = 8;
  std::uint64_t cols = 8;
  unsigned bitwidth = 0;  // 0 = 32 for gc, 64 for ss
  std::string transport = "mem";
  double rtt = 0;
  double bandwidth = 0;  // 0 = uncapped
  double overhead = 0;
  std::string flush_policy = "batched";
  std::string gate_api = "batched";
  std::string input_mode = "external";
  std::size_t flush_bytes = garbling::kDefaultFlushBytes;
  std::uint64_t seed = 1;
  unsigned reps = 3;
  double cpu_estimate = -1;
  std::string format = "csv";
  std::string out;
};

void add_config_flags(CLI::App& app, Flags& f) {
  app.add_option("--protocol", f.protocol, "gc or ss")->check(CLI::IsMember({"gc", "ss"}));
  app.add_option("--size", f.size, "Sets rows and cols together");
  app.add_option("--rows", f.rows, "Matrix rows");
  app.add_option("--cols", f.cols, "Matrix columns (vector length)");
  app.add_option("--bitwidth", f.bitwidth, "Integer width: 8/16/32/64 for gc (default 32), 64 (default) or 32 for ss");
  app.add_option("--transport", f.transport, "mem, emulated or socket")
      ->check(CLI::IsMember({"mem", "emulated", "socket"}));
  app.add_option("--rtt", f.rtt, "Round-trip time in seconds");
  app.add_option("--bandwidth", f.bandwidth, "Link capacity in bits per second, 0 for uncapped");
  app.add_option("--overhead", f.overhead, "Per-message overhead in seconds");
  app.add_option("--flush-policy", f.flush_policy, "ss: eager or batched")
      ->check(CLI::IsMember({"eager", "batched"}));
  app.add_option("--gate-api", f.gate_api, "gc: batched or per-gate")->check(CLI::IsMember({"batched", "per-gate"}));
  app.add_option("--input-mode", f.input_mode, "gc evaluator inputs: external, or direct (INSECURE)")
      ->check(CLI::IsMember({"external", "direct"}));
  app.add_option("--flush-bytes", f.flush_bytes, "gc: garbler flush threshold in bytes");
  app.add_option("--seed", f.seed, "Input and randomness seed");
  app.add_option("--reps", f.reps, "Repetitions; the median is reported");
  app.add_option("--cpu-estimate", f.cpu_estimate, "CPU seconds for the prediction (default: measured)");
  app.add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", f.out, "Write the report to FILE instead of stdout");
}

bench::BenchConfig to_config(const Flags& f) {
  bench::BenchConfig c;
  c.protocol = bench::parse_protocol(f.protocol);
  c.rows = f.size ? f.size : f.rows;
  c.cols = f.size ? f.size : f.cols;
  c.bitwidth = f.bitwidth ? f.bitwidth : (c.protocol == bench::Protocol::kGc ? 32 : 64);
  c.transport = bench::parse_transport(f.transport);
  c.profile.rtt_s = f.rtt;
  if (f.bandwidth > 0) c.profile.bandwidth_bps = f.bandwidth;
  c.profile.per_message_overhead_s = f.overhead;
  c.flush_policy = bench::parse_flush_policy(f.flush_policy);
  c.gate_api = bench::parse_gate_api(f.gate_api);
  c.input_mode = bench::parse_input_mode(f.input_mode);
  c.flush_bytes = f.flush_bytes;
  c.seed = f.seed;
  c.repetitions = f.reps;
  c.cpu_estimate_s = f.cpu_estimate;
  if (f.bandwidth < 0) throw std::invalid_argument("bandwidth must be >= 0");
  c.validate();
  return c;
}

void write(const Flags& f, const std::string& text) {
  if (f.out.empty()) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream os(f.out);
  if (!os) throw std::runtime_error("cannot open " + f.out);
  os << text;
}

int status_code(const std::vector<bench::BenchReport>& reports) {
  for (const auto& r : reports) {
    if (!r.ok()) {
      std::cerr << "FAILED: " << r.error << "\n";
      return 1;
    }
  }
  return 0;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mpcbench: two-party matrix-vector benchmarks over garbled circuits and secret sharing"};
  app.require_subcommand(1);

  Flags run_flags;
  auto* run = app.add_subcommand("run", "Run one benchmark with both parties in this process");
  add_config_flags(*run, run_flags);

  Flags sweep_flags;
  std::string axis;
  std::string values;
  auto* sw = app.add_subcommand("sweep", "Run one benchmark per value of a config field");
  add_config_flags(*sw, sweep_flags);
  sw->add_option("--axis", axis, "Config field to vary (rtt, bandwidth, size, gate_api, ...)")->required();
  sw->add_option("--values", values, "Comma-separated values")->required();

  Flags predict_flags;
  double cpu = 0;
  auto* pr = app.add_subcommand("predict", "Cost-model prediction only");
  add_config_flags(*pr, predict_flags);
  pr->add_option("--cpu", cpu, "Calibrated CPU seconds");

  Flags party_flags;
  int role = -1;
  std::string listen, connect;
  auto* party = app.add_subcommand("party", "Run one party of a two-process socket benchmark");
  add_config_flags(*party, party_flags);
  party->add_option("--role", role, "0 = garbler / party 0, 1 = evaluator / party 1")->required()->check(
      CLI::Range(0, 1));
  auto* listen_opt = party->add_option("--listen", listen, "host:port to accept the peer on");
  auto* connect_opt = party->add_option("--connect", connect, "host:port of the listening peer");
  listen_opt->excludes(connect_opt);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const auto config = to_config(run_flags);
      const std::vector<bench::BenchReport> reports{bench::run_bench(config)};
      write(run_flags, bench::emit_report(reports, bench::parse_format(run_flags.format)));
      return status_code(reports);
    }
    if (*sw) {
      const auto config = to_config(sweep_flags);
      const auto reports = bench::sweep(config, axis, split(values));
      write(sweep_flags, bench::emit_report(reports, bench::parse_format(sweep_flags.format)));
      return status_code(reports);
    }
    if (*pr) {
      const auto config = to_config(predict_flags);
      std::printf("%.9g\n", bench::predict(config, cpu));
      return 0;
    }
    if (*party) {
      if (listen.empty() == connect.empty()) throw std::invalid_argument("party needs exactly one of --listen, --connect");
      auto config = to_config(party_flags);
      config.transport = bench::TransportKind::kSocket;
      transport::Channel channel = listen.empty() ? transport::connect_socket(connect) : transport::listen_socket(listen);
      const std::vector<bench::BenchReport> reports{bench::run_party(config, role, channel)};
      write(party_flags, bench::emit_report(reports, bench::parse_format(party_flags.format)));
      return status_code(reports);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
