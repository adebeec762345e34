#include "lanmpc/bench/bench.hpp"

#include <time.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <latch>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <variant>

#include <json.hpp>

#include "lanmpc/circuit/builders.hpp"
#include "lanmpc/cost/cost_model.hpp"
#include "lanmpc/crypto/prg.hpp"
#include "lanmpc/garbling/matvec.hpp"
#include "lanmpc/transport/socket_channel.hpp"

namespace lanmpc::bench {

using Clock = std::chrono::steady_clock;
using transport::Channel;
using transport::ChannelStats;

// ---------------------------------------------------------------------------
// Names

std::string to_string(Protocol p) { return p == Protocol::kGc ? "gc" : "ss"; }

std::string to_string(TransportKind t) {
  switch (t) {
    case TransportKind::kMem: return "mem";
    case TransportKind::kEmulated: return "emulated";
    case TransportKind::kSocket: return "socket";
  }
  return "?";
}

std::string to_string(sharing::FlushPolicy p) { return p == sharing::FlushPolicy::kEager ? "eager" : "batched"; }
std::string to_string(garbling::GateApi a) { return a == garbling::GateApi::kBatched ? "batched" : "per-gate"; }
std::string to_string(garbling::InputMode m) { return m == garbling::InputMode::kDirect ? "direct" : "external"; }

namespace {

[[noreturn]] void bad_value(const char* what, const std::string& s) {
  throw std::invalid_argument(std::string("unknown ") + what + " '" + s + "'");
}

}  // namespace

Protocol parse_protocol(const std::string& s) {
  if (s == "gc") return Protocol::kGc;
  if (s == "ss") return Protocol::kSs;
  bad_value("protocol", s);
}

TransportKind parse_transport(const std::string& s) {
  if (s == "mem") return TransportKind::kMem;
  if (s == "emulated") return TransportKind::kEmulated;
  if (s == "socket") return TransportKind::kSocket;
  bad_value("transport", s);
}

sharing::FlushPolicy parse_flush_policy(const std::string& s) {
  if (s == "eager") return sharing::FlushPolicy::kEager;
  if (s == "batched") return sharing::FlushPolicy::kBatched;
  bad_value("flush policy", s);
}

garbling::GateApi parse_gate_api(const std::string& s) {
  if (s == "batched") return garbling::GateApi::kBatched;
  if (s == "per-gate") return garbling::GateApi::kPerGate;
  bad_value("gate api", s);
}

garbling::InputMode parse_input_mode(const std::string& s) {
  if (s == "external") return garbling::InputMode::kExternal;
  if (s == "direct") return garbling::InputMode::kDirect;
  bad_value("input mode", s);
}

ReportFormat parse_format(const std::string& s) {
  if (s == "csv") return ReportFormat::kCsv;
  if (s == "json") return ReportFormat::kJson;
  bad_value("format", s);
}

// ---------------------------------------------------------------------------
// Config and oracle

void BenchConfig::validate() const {
  if (rows == 0 || cols == 0) throw std::invalid_argument("rows and cols must be positive");
  if (protocol == Protocol::kGc) {
    circuit::check_bitwidth(bitwidth);
  } else if (bitwidth != 64 && bitwidth != 32) {
    throw std::invalid_argument("ss requires bitwidth 64 (or 32 for cross-checks)");
  }
  if (repetitions == 0) throw std::invalid_argument("repetitions must be at least 1");
  if (flush_bytes == 0) throw std::invalid_argument("flush bytes must be positive");
  profile.validate();
}

std::vector<std::uint64_t> bench_matrix(const BenchConfig& config) {
  crypto::Prg rng(config.seed);
  std::vector<std::uint64_t> m(config.rows * config.cols);
  for (auto& x : m) x = circuit::wrap(rng.next_u64(), config.bitwidth);
  return m;
}

std::vector<std::uint64_t> bench_vector(const BenchConfig& config) {
  crypto::Prg rng(~config.seed);
  std::vector<std::uint64_t> v(config.cols);
  for (auto& x : v) x = circuit::wrap(rng.next_u64(), config.bitwidth);
  return v;
}

std::vector<std::uint64_t> oracle_matvec(const BenchConfig& config) {
  const auto m = bench_matrix(config);
  const auto v = bench_vector(config);
  std::vector<std::uint64_t> out(config.rows, 0);
  for (std::uint64_t r = 0; r < config.rows; ++r) {
    std::uint64_t acc = 0;
    for (std::uint64_t c = 0; c < config.cols; ++c) acc += m[r * config.cols + c] * v[c];
    out[r] = circuit::wrap(acc, config.bitwidth);
  }
  return out;
}

// FNV-1a over the little-endian bytes of each value.
std::uint64_t checksum(const std::vector<std::uint64_t>& values) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::uint64_t v : values) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

namespace {

struct Expected {
  std::uint64_t bytes_fwd = 0;
  std::uint64_t bytes_bwd = 0;
  std::uint64_t mult_flushes = 0;  // ss only
  std::uint64_t and_count = 0;     // gc only
};

bool direct(const BenchConfig& c) { return c.input_mode == garbling::InputMode::kDirect; }

Expected expected_stats(const BenchConfig& c) {
  Expected e;
  const std::uint64_t products = c.rows * c.cols;
  if (c.protocol == Protocol::kGc) {
    e.and_count = circuit::matvec_stats(c.rows, c.cols, c.bitwidth).and_count;
    const std::uint64_t g = products * c.bitwidth, ev = c.cols * c.bitwidth, out = c.rows * c.bitwidth;
    e.bytes_fwd = garbling::garbler_to_evaluator_bytes(g, ev, e.and_count, out, c.input_mode);
    e.bytes_bwd = garbling::evaluator_to_garbler_bytes(ev, c.input_mode);
  } else {
    e.bytes_fwd = e.bytes_bwd = 16 * products + 8 * c.rows;
    e.mult_flushes = c.flush_policy == sharing::FlushPolicy::kEager ? products : 1;
  }
  return e;
}

cost::ProtocolFootprint footprint(const BenchConfig& c) {
  if (c.protocol == Protocol::kGc) {
    const auto stats = circuit::matvec_stats(c.rows, c.cols, c.bitwidth);
    const std::uint64_t g = c.rows * c.cols * c.bitwidth, ev = c.cols * c.bitwidth;
    return cost::gc_footprint(stats, g + (direct(c) ? ev : 0), c.rows * c.bitwidth, direct(c) ? ev : 0);
  }
  const std::uint64_t products = c.rows * c.cols;
  const std::uint64_t rounds = c.flush_policy == sharing::FlushPolicy::kEager ? products : 1;
  return cost::ss_footprint(products, rounds, c.rows);
}

double thread_cpu_seconds() {
  timespec ts{};
  clock_gettime(CLOCK_THREAD_CPUTIME_ID, &ts);
  return static_cast<double>(ts.tv_sec) + static_cast<double>(ts.tv_nsec) * 1e-9;
}

double seconds_between(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::pair<Channel, Channel> connect_pair(const BenchConfig& c) {
  switch (c.transport) {
    case TransportKind::kMem: return transport::pair_in_memory(transport::MemoryPairOptions{});
    case TransportKind::kEmulated: return transport::pair_in_memory(transport::MemoryPairOptions{c.profile});
    case TransportKind::kSocket: {
      transport::SocketListener listener("127.0.0.1:0");
      const std::string address = "127.0.0.1:" + std::to_string(listener.port());
      Channel client;
      std::exception_ptr error;
      std::thread t([&] {
        try {
          client = transport::connect_socket(address);
        } catch (...) {
          error = std::current_exception();
        }
      });
      Channel server = listener.accept();
      t.join();
      if (error) std::rethrow_exception(error);
      return {std::move(server), std::move(client)};
    }
  }
  throw std::logic_error("unreachable transport");
}

struct PartyResult {
  double cpu_s = 0;
  Clock::time_point end;
  ChannelStats stats;
  ChannelStats mult_stats;
  std::vector<std::uint64_t> output;
  std::string error;
};

struct Rep {
  double wall_s = 0;
  double prep_wall_s = 0;
  double prep_cpu_s = 0;
  PartyResult p[2];
};

// Shared inputs of one ss run: dealer output and input shares.
struct SsSetup {
  sharing::TripleStore triples[2];
  std::vector<sharing::Share> matrix[2];
  std::vector<sharing::Share> vec[2];
};

SsSetup ss_setup(const BenchConfig& c, double* prep_wall, double* prep_cpu) {
  SsSetup s;
  const auto w0 = Clock::now();
  const double c0 = thread_cpu_seconds();
  auto [t0, t1] = sharing::dealer_generate(c.rows * c.cols, c.seed);
  if (prep_cpu) *prep_cpu = thread_cpu_seconds() - c0;
  if (prep_wall) *prep_wall = seconds_between(w0, Clock::now());
  s.triples[0] = std::move(t0);
  s.triples[1] = std::move(t1);
  // Input sharing is done in the clear by the harness, like the dealer.
  crypto::Prg rng(c.seed ^ 0x5eedULL);
  const auto m = bench_matrix(c);
  const auto v = bench_vector(c);
  auto [m0, m1] = sharing::share_all(m, rng);
  auto [v0, v1] = sharing::share_all(v, rng);
  s.matrix[0] = std::move(m0);
  s.matrix[1] = std::move(m1);
  s.vec[0] = std::move(v0);
  s.vec[1] = std::move(v1);
  return s;
}

std::vector<std::uint64_t> ss_online(const BenchConfig& c, int role, Channel& ch, SsSetup& s, ChannelStats* mult) {
  sharing::SsParty party(role, ch, s.triples[role], c.flush_policy);
  const ChannelStats before = ch.stats();
  const auto shares = party.matvec(s.matrix[role], s.vec[role], c.rows, c.cols);
  if (mult) *mult = ch.stats() - before;
  auto out = party.open(shares);
  for (auto& x : out) x = circuit::wrap(x, c.bitwidth);
  return out;
}

struct GcInputs {
  std::vector<std::uint64_t> matrix;
  std::vector<std::uint64_t> vec;
};

GcInputs gc_inputs(const BenchConfig& c) {
  if (c.protocol != Protocol::kGc) return {};
  return {bench_matrix(c), bench_vector(c)};
}

// Body of one party; returns its output (empty for the garbler).
std::vector<std::uint64_t> run_role(const BenchConfig& c, int role, Channel& ch, const GcInputs& in,
                                    garbling::InputLabelDelivery* delivery, SsSetup* ss, ChannelStats* mult) {
  if (c.protocol == Protocol::kGc) {
    if (role == 0) {
      garbling::GarbleRunOptions opts;
      opts.seed = c.seed;
      opts.flush_bytes = c.flush_bytes;
      opts.input_mode = c.input_mode;
      opts.delivery = delivery;
      opts.gate_api = c.gate_api;
      garbling::garble_matvec(ch, in.matrix, c.rows, c.cols, c.bitwidth, opts);
      return {};
    }
    garbling::EvaluateRunOptions opts;
    opts.input_mode = c.input_mode;
    opts.delivery = delivery;
    opts.gate_api = c.gate_api;
    return garbling::evaluate_matvec(ch, in.vec, c.rows, c.cols, c.bitwidth, opts);
  }
  return ss_online(c, role, ch, *ss, mult);
}

Rep run_once(const BenchConfig& c) {
  Rep rep;
  SsSetup ss;
  if (c.protocol == Protocol::kSs) ss = ss_setup(c, &rep.prep_wall_s, &rep.prep_cpu_s);
  const GcInputs inputs = gc_inputs(c);
  auto [ch0, ch1] = connect_pair(c);
  Channel* chans[2] = {&ch0, &ch1};
  garbling::LocalLabelDelivery delivery;

  std::latch start(3);
  Clock::time_point t0;
  auto body = [&](int role) {
    PartyResult& r = rep.p[role];
    Channel& ch = *chans[role];
    start.arrive_and_wait();
    const double cpu0 = thread_cpu_seconds();
    try {
      r.output = run_role(c, role, ch, inputs, &delivery, &ss, &r.mult_stats);
    } catch (const std::exception& e) {
      r.error = std::string(role == 0 ? "party 0: " : "party 1: ") + e.what();
      ch.close();
    }
    r.cpu_s = thread_cpu_seconds() - cpu0;
    r.end = Clock::now();
    r.stats = ch.stats();
  };
  std::thread a(body, 0), b(body, 1);
  t0 = Clock::now();
  start.arrive_and_wait();
  a.join();
  b.join();
  rep.wall_s = seconds_between(t0, std::max(rep.p[0].end, rep.p[1].end));
  return rep;
}

}  // namespace

double predict(const BenchConfig& config, double cpu_seconds) {
  auto f = footprint(config);
  f.cpu_seconds = std::max(cpu_seconds, 0.0);
  return cost::predict_runtime(f, config.profile);
}

BenchReport run_bench(const BenchConfig& config) {
  config.validate();
  BenchReport report;
  report.config = config;
  const Expected exp = expected_stats(config);
  const auto oracle = oracle_matvec(config);
  report.expected_checksum = checksum(oracle);
  report.and_count = exp.and_count;

  std::vector<double> wall, cpu0, cpu1, prep_wall, prep_cpu;
  std::vector<std::string> failures;
  bool first = true;
  for (unsigned i = 0; i < config.repetitions; ++i) {
    Rep rep;
    try {
      rep = run_once(config);
    } catch (const std::exception& e) {
      failures.push_back(e.what());
      break;
    }
    for (const auto& p : rep.p) {
      if (!p.error.empty()) failures.push_back(p.error);
    }
    if (!failures.empty()) break;

    // Party 1 always holds the result; in ss both parties open it.
    const auto& out = rep.p[1].output;
    const std::uint64_t sum = checksum(out);
    if (config.protocol == Protocol::kSs && rep.p[0].output != out) failures.push_back("parties opened different values");
    if (sum != report.expected_checksum) failures.push_back("checksum mismatch in repetition " + std::to_string(i));

    const ChannelStats& s0 = rep.p[0].stats;
    const ChannelStats& s1 = rep.p[1].stats;
    if (first) {
      report.checksum = sum;
      report.bytes_fwd = s0.bytes_sent;
      report.bytes_bwd = s1.bytes_sent;
      report.messages_fwd = s0.messages_sent;
      report.messages_bwd = s1.messages_sent;
      report.flushes_fwd = s0.flushes;
      report.flushes_bwd = s1.flushes;
      report.mult_flushes_p0 = rep.p[0].mult_stats.flushes;
      report.mult_flushes_p1 = rep.p[1].mult_stats.flushes;
      first = false;
    } else if (s0.bytes_sent != report.bytes_fwd || s1.bytes_sent != report.bytes_bwd) {
      failures.push_back("transfer volume differs between repetitions");
    }
    wall.push_back(rep.wall_s);
    cpu0.push_back(rep.p[0].cpu_s);
    cpu1.push_back(rep.p[1].cpu_s);
    prep_wall.push_back(rep.prep_wall_s);
    prep_cpu.push_back(rep.prep_cpu_s);
    if (!failures.empty()) break;
  }

  if (!wall.empty()) {
    report.wall_s = median(wall);
    report.wall_min_s = *std::min_element(wall.begin(), wall.end());
    report.wall_max_s = *std::max_element(wall.begin(), wall.end());
    report.cpu_p0_s = median(cpu0);
    report.cpu_p1_s = median(cpu1);
    report.prep_wall_s = median(prep_wall);
    report.prep_cpu_s = median(prep_cpu);
  }

  report.stats_ok = !wall.empty() && report.bytes_fwd == exp.bytes_fwd && report.bytes_bwd == exp.bytes_bwd;
  if (config.protocol == Protocol::kSs) {
    report.stats_ok = report.stats_ok && report.mult_flushes_p0 == exp.mult_flushes &&
                      report.mult_flushes_p1 == exp.mult_flushes && report.flushes_fwd == exp.mult_flushes + 1 &&
                      report.flushes_bwd == exp.mult_flushes + 1;
  }
  if (!wall.empty() && failures.empty() && !report.stats_ok) {
    failures.push_back("transfer statistics differ from the closed-form formulas");
  }

  const double cpu_estimate =
      config.cpu_estimate_s >= 0 ? config.cpu_estimate_s : std::max(report.cpu_p0_s, report.cpu_p1_s);
  report.predicted_s = predict(config, cpu_estimate);

  if (!failures.empty()) {
    report.status = "FAILED";
    report.error = failures.front();
  }
  return report;
}

BenchReport run_party(const BenchConfig& config, int role, Channel& channel) {
  config.validate();
  if (role != 0 && role != 1) throw std::invalid_argument("role must be 0 or 1");
  if (config.protocol == Protocol::kGc && config.input_mode != garbling::InputMode::kDirect) {
    throw std::invalid_argument("two-process gc needs --input-mode direct (no label delivery across processes)");
  }
  BenchReport report;
  report.config = config;
  report.config.repetitions = 1;
  const Expected exp = expected_stats(config);
  report.expected_checksum = checksum(oracle_matvec(config));
  report.and_count = exp.and_count;

  SsSetup ss;
  // Both processes derive the dealer output from the shared seed.
  if (config.protocol == Protocol::kSs) ss = ss_setup(config, &report.prep_wall_s, &report.prep_cpu_s);

  const GcInputs inputs = gc_inputs(config);
  ChannelStats mult;
  std::vector<std::uint64_t> out;
  const auto w0 = Clock::now();
  const double c0 = thread_cpu_seconds();
  try {
    out = run_role(config, role, channel, inputs, nullptr, &ss, &mult);
  } catch (const std::exception& e) {
    report.status = "FAILED";
    report.error = e.what();
  }
  const double cpu = thread_cpu_seconds() - c0;
  report.wall_s = report.wall_min_s = report.wall_max_s = seconds_between(w0, Clock::now());
  (role == 0 ? report.cpu_p0_s : report.cpu_p1_s) = cpu;

  const ChannelStats s = channel.stats();
  if (role == 0) {
    report.bytes_fwd = s.bytes_sent;
    report.bytes_bwd = s.bytes_received;
    report.messages_fwd = s.messages_sent;
    report.flushes_fwd = s.flushes;
    report.mult_flushes_p0 = mult.flushes;
  } else {
    report.bytes_bwd = s.bytes_sent;
    report.bytes_fwd = s.bytes_received;
    report.messages_bwd = s.messages_sent;
    report.flushes_bwd = s.flushes;
    report.mult_flushes_p1 = mult.flushes;
  }
  report.stats_ok = report.bytes_fwd == exp.bytes_fwd && report.bytes_bwd == exp.bytes_bwd;
  if (config.protocol == Protocol::kSs) {
    report.stats_ok = report.stats_ok && mult.flushes == exp.mult_flushes && s.flushes == exp.mult_flushes + 1;
  }
  // The garbler learns no output, so only the evaluator / ss parties can check the result.
  const bool has_output = !(config.protocol == Protocol::kGc && role == 0);
  report.checksum = has_output ? checksum(out) : 0;
  if (report.ok()) {
    if (has_output && report.checksum != report.expected_checksum) {
      report.status = "FAILED";
      report.error = "checksum mismatch";
    } else if (!report.stats_ok) {
      report.status = "FAILED";
      report.error = "transfer statistics differ from the closed-form formulas";
    }
  }
  const double cpu_estimate = config.cpu_estimate_s >= 0 ? config.cpu_estimate_s : cpu;
  report.predicted_s = predict(config, cpu_estimate);
  return report;
}

// ---------------------------------------------------------------------------
// Reports

namespace {

using nlohmann::ordered_json;

// Report fields in their stable output order.
ordered_json fields(const BenchReport& r) {
  const BenchConfig& c = r.config;
  ordered_json j;
  j["schema"] = std::string(kCsvSchema);
  j["status"] = r.status;
  j["protocol"] = to_string(c.protocol);
  j["rows"] = c.rows;
  j["cols"] = c.cols;
  j["bitwidth"] = c.bitwidth;
  j["transport"] = to_string(c.transport);
  j["rtt_s"] = c.profile.rtt_s;
  j["bandwidth_bps"] = std::isinf(c.profile.bandwidth_bps) ? ordered_json() : ordered_json(c.profile.bandwidth_bps);
  j["overhead_s"] = c.profile.per_message_overhead_s;
  j["flush_policy"] = to_string(c.flush_policy);
  j["gate_api"] = to_string(c.gate_api);
  j["input_mode"] = to_string(c.input_mode);
  j["flush_bytes"] = c.flush_bytes;
  j["seed"] = c.seed;
  j["reps"] = c.repetitions;
  j["wall_s"] = r.wall_s;
  j["wall_min_s"] = r.wall_min_s;
  j["wall_max_s"] = r.wall_max_s;
  j["cpu_p0_s"] = r.cpu_p0_s;
  j["cpu_p1_s"] = r.cpu_p1_s;
  j["prep_wall_s"] = r.prep_wall_s;
  j["prep_cpu_s"] = r.prep_cpu_s;
  j["bytes_fwd"] = r.bytes_fwd;
  j["bytes_bwd"] = r.bytes_bwd;
  j["messages_fwd"] = r.messages_fwd;
  j["messages_bwd"] = r.messages_bwd;
  j["flushes_fwd"] = r.flushes_fwd;
  j["flushes_bwd"] = r.flushes_bwd;
  j["mult_flushes_p0"] = r.mult_flushes_p0;
  j["mult_flushes_p1"] = r.mult_flushes_p1;
  j["and_count"] = r.and_count;
  j["checksum"] = r.checksum;
  j["expected_checksum"] = r.expected_checksum;
  j["stats_ok"] = r.stats_ok;
  j["predicted_s"] = r.predicted_s;
  j["cpu_estimate_s"] = c.cpu_estimate_s;
  j["error"] = r.error;
  return j;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch == '\n' ? ' ' : ch;
  }
  return out + "\"";
}

std::string csv_cell(const ordered_json& v) {
  if (v.is_null()) return "inf";
  if (v.is_string()) return csv_escape(v.get<std::string>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v.get<double>());
    return buf;
  }
  return v.dump();
}

}  // namespace

std::string csv_header() {
  std::string out;
  const auto j = fields(BenchReport{});
  for (const auto& [key, value] : j.items()) {
    if (!out.empty()) out += ',';
    out += key;
  }
  return out;
}

std::string csv_row(const BenchReport& report) {
  std::string out;
  bool first = true;
  const auto j = fields(report);
  for (const auto& [key, value] : j.items()) {
    if (!first) out += ',';
    first = false;
    out += csv_cell(value);
  }
  return out;
}

std::string to_json(const BenchReport& report) { return fields(report).dump(); }

BenchReport from_json(const std::string& text) {
  const auto j = ordered_json::parse(text);
  if (j.value("schema", std::string()) != kCsvSchema) throw std::invalid_argument("unsupported report schema");
  BenchReport r;
  BenchConfig& c = r.config;
  r.status = j.at("status").get<std::string>();
  c.protocol = parse_protocol(j.at("protocol").get<std::string>());
  c.rows = j.at("rows").get<std::uint64_t>();
  c.cols = j.at("cols").get<std::uint64_t>();
  c.bitwidth = j.at("bitwidth").get<unsigned>();
  c.transport = parse_transport(j.at("transport").get<std::string>());
  c.profile.rtt_s = j.at("rtt_s").get<double>();
  c.profile.bandwidth_bps = j.at("bandwidth_bps").is_null() ? std::numeric_limits<double>::infinity()
                                                            : j.at("bandwidth_bps").get<double>();
  c.profile.per_message_overhead_s = j.at("overhead_s").get<double>();
  c.flush_policy = parse_flush_policy(j.at("flush_policy").get<std::string>());
  c.gate_api = parse_gate_api(j.at("gate_api").get<std::string>());
  c.input_mode = parse_input_mode(j.at("input_mode").get<std::string>());
  c.flush_bytes = j.at("flush_bytes").get<std::size_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.repetitions = j.at("reps").get<unsigned>();
  c.cpu_estimate_s = j.at("cpu_estimate_s").get<double>();
  r.wall_s = j.at("wall_s").get<double>();
  r.wall_min_s = j.at("wall_min_s").get<double>();
  r.wall_max_s = j.at("wall_max_s").get<double>();
  r.cpu_p0_s = j.at("cpu_p0_s").get<double>();
  r.cpu_p1_s = j.at("cpu_p1_s").get<double>();
  r.prep_wall_s = j.at("prep_wall_s").get<double>();
  r.prep_cpu_s = j.at("prep_cpu_s").get<double>();
  r.bytes_fwd = j.at("bytes_fwd").get<std::uint64_t>();
  r.bytes_bwd = j.at("bytes_bwd").get<std::uint64_t>();
  r.messages_fwd = j.at("messages_fwd").get<std::uint64_t>();
  r.messages_bwd = j.at("messages_bwd").get<std::uint64_t>();
  r.flushes_fwd = j.at("flushes_fwd").get<std::uint64_t>();
  r.flushes_bwd = j.at("flushes_bwd").get<std::uint64_t>();
  r.mult_flushes_p0 = j.at("mult_flushes_p0").get<std::uint64_t>();
  r.mult_flushes_p1 = j.at("mult_flushes_p1").get<std::uint64_t>();
  r.and_count = j.at("and_count").get<std::uint64_t>();
  r.checksum = j.at("checksum").get<std::uint64_t>();
  r.expected_checksum = j.at("expected_checksum").get<std::uint64_t>();
  r.stats_ok = j.at("stats_ok").get<bool>();
  r.predicted_s = j.at("predicted_s").get<double>();
  r.error = j.at("error").get<std::string>();
  return r;
}

std::string emit_report(const std::vector<BenchReport>& reports, ReportFormat format) {
  std::string out;
  if (format == ReportFormat::kCsv) {
    out = csv_header() + "\n";
    for (const auto& r : reports) out += csv_row(r) + "\n";
  } else {
    for (const auto& r : reports) out += to_json(r) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sweeps

void apply_axis(BenchConfig& c, const std::string& axis, const std::string& value) {
  auto num = [&]() -> double {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size() || value.empty()) throw std::invalid_argument("bad value '" + value + "' for " + axis);
    return v;
  };
  auto count = [&]() -> std::uint64_t {
    const double v = num();
    if (v < 0 || v != std::floor(v)) throw std::invalid_argument("bad value '" + value + "' for " + axis);
    return static_cast<std::uint64_t>(v);
  };
  if (axis == "protocol") c.protocol = parse_protocol(value);
  else if (axis == "rows") c.rows = count();
  else if (axis == "cols") c.cols = count();
  else if (axis == "size") c.rows = c.cols = count();
  else if (axis == "bitwidth") c.bitwidth = static_cast<unsigned>(count());
  else if (axis == "transport") c.transport = parse_transport(value);
  else if (axis == "rtt") c.profile.rtt_s = num();
  else if (axis == "bandwidth") c.profile.bandwidth_bps = num();
  else if (axis == "overhead") c.profile.per_message_overhead_s = num();
  else if (axis == "flush_policy") c.flush_policy = parse_flush_policy(value);
  else if (axis == "gate_api") c.gate_api = parse_gate_api(value);
  else if (axis == "input_mode") c.input_mode = parse_input_mode(value);
  else if (axis == "flush_bytes") c.flush_bytes = count();
  else if (axis == "seed") c.seed = count();
  else if (axis == "reps") c.repetitions = static_cast<unsigned>(count());
  else throw std::invalid_argument("unknown sweep axis '" + axis + "'");
}

std::vector<BenchReport> sweep(const BenchConfig& base, const std::string& axis,
                               const std::vector<std::string>& values) {
  // Validate the axis name even when there is nothing to run.
  if (values.empty()) {
    static const char* known[] = {"protocol", "rows", "cols", "size", "bitwidth", "transport", "rtt", "bandwidth",
                                  "overhead", "flush_policy", "gate_api", "input_mode", "flush_bytes", "seed", "reps"};
    if (std::find(std::begin(known), std::end(known), axis) == std::end(known)) {
      throw std::invalid_argument("unknown sweep axis '" + axis + "'");
    }
    return {};
  }
  std::vector<BenchConfig> configs;
  for (const auto& v : values) {
    BenchConfig c = base;
    apply_axis(c, axis, v);
    c.validate();
    configs.push_back(c);
  }
  std::vector<BenchReport> out;
  for (const auto& c : configs) out.push_back(run_bench(c));
  return out;
}

}  // namespace lanmpc::bench
