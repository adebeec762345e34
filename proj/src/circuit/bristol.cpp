#include "lanmpc/circuit/bristol.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_set>
#include <vector>

namespace lanmpc::circuit {

namespace {

std::vector<std::vector<std::string_view>> tokenize(std::string_view text) {
  std::vector<std::vector<std::string_view>> lines;
  while (!text.empty()) {
    auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
      if (j > i) tokens.push_back(line.substr(i, j - i));
      i = j;
    }
    if (!tokens.empty()) lines.push_back(std::move(tokens));
  }
  return lines;
}

std::uint64_t number(std::string_view tok, std::size_t line) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size()) {
    throw CircuitError("line " + std::to_string(line) + ": expected a number, got '" + std::string(tok) + "'");
  }
  return v;
}

// Parses "<n> <w1> ... <wn>" and returns the widths.
std::vector<std::uint64_t> arity_line(const std::vector<std::string_view>& toks, std::size_t line) {
  if (toks.empty()) throw CircuitError("line " + std::to_string(line) + ": empty io line");
  const auto n = number(toks[0], line);
  if (toks.size() != n + 1) throw CircuitError("line " + std::to_string(line) + ": io count does not match widths");
  std::vector<std::uint64_t> widths;
  for (std::size_t i = 1; i < toks.size(); ++i) widths.push_back(number(toks[i], line));
  return widths;
}

WireId wire(std::string_view tok, std::size_t line) {
  const auto v = number(tok, line);
  if (v > std::numeric_limits<WireId>::max()) throw CircuitError("line " + std::to_string(line) + ": wire id too large");
  return static_cast<WireId>(v);
}

}  // namespace

BooleanCircuit parse_bristol(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.size() < 3) throw CircuitError("bristol: missing header");
  if (lines[0].size() != 2) throw CircuitError("bristol: first line must be '<gates> <wires>'");
  const auto gate_count = number(lines[0][0], 1);
  const auto wire_count = number(lines[0][1], 1);
  if (wire_count > std::numeric_limits<WireId>::max()) throw CircuitError("bristol: wire count too large");

  const auto inputs = arity_line(lines[1], 2);
  const auto outputs = arity_line(lines[2], 3);
  if (inputs.empty() || inputs.size() > 2) throw CircuitError("bristol: expected one or two input values");

  std::uint64_t total_out = 0;
  for (auto w : outputs) total_out += w;
  const std::uint64_t g_in = inputs[0];
  const std::uint64_t e_in = inputs.size() == 2 ? inputs[1] : 0;
  if (g_in + e_in > wire_count || total_out > wire_count) throw CircuitError("bristol: io widths exceed wire count");
  if (lines.size() - 3 != gate_count) {
    throw CircuitError("bristol: header declares " + std::to_string(gate_count) + " gates, body has " +
                       std::to_string(lines.size() - 3));
  }

  std::vector<Gate> gates;
  gates.reserve(gate_count);
  for (std::size_t li = 3; li < lines.size(); ++li) {
    const auto& t = lines[li];
    const std::size_t line_no = li + 1;
    if (t.size() < 4) throw CircuitError("line " + std::to_string(line_no) + ": truncated gate");
    const auto nin = number(t[0], line_no);
    const auto nout = number(t[1], line_no);
    if (t.size() != 2 + nin + nout + 1) throw CircuitError("line " + std::to_string(line_no) + ": arity mismatch");
    const std::string_view op = t.back();
    if (op == "XOR" || op == "AND") {
      if (nin != 2 || nout != 1) throw CircuitError("line " + std::to_string(line_no) + ": " + std::string(op) + " takes 2 inputs, 1 output");
      gates.push_back({op == "XOR" ? GateKind::kXor : GateKind::kAnd, wire(t[2], line_no), wire(t[3], line_no),
                       wire(t[4], line_no)});
    } else if (op == "INV") {
      if (nin != 1 || nout != 1) throw CircuitError("line " + std::to_string(line_no) + ": INV takes 1 input, 1 output");
      const WireId in = wire(t[2], line_no);
      gates.push_back({GateKind::kInv, in, in, wire(t[3], line_no)});
    } else {
      throw CircuitError("line " + std::to_string(line_no) + ": unknown opcode '" + std::string(op) + "'");
    }
  }

  std::vector<WireId> out_wires;
  out_wires.reserve(total_out);
  for (std::uint64_t w = wire_count - total_out; w < wire_count; ++w) out_wires.push_back(static_cast<WireId>(w));

  return BooleanCircuit(static_cast<WireId>(wire_count), WireRange{0, static_cast<WireId>(g_in)},
                        WireRange{static_cast<WireId>(g_in), static_cast<WireId>(e_in)}, std::move(out_wires),
                        std::move(gates));
}

BooleanCircuit load_bristol(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CircuitError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_bristol(ss.str());
}

std::string write_bristol(const BooleanCircuit& circuit) {
  const WireId g_in = circuit.garbler_inputs().count;
  const WireId e_in = circuit.evaluator_inputs().count;
  const auto outputs = circuit.outputs();

  constexpr WireId kUnset = std::numeric_limits<WireId>::max();
  std::vector<WireId> rename(circuit.wire_count(), kUnset);
  for (WireId i = 0; i < g_in; ++i) rename[circuit.garbler_inputs().begin + i] = i;
  for (WireId i = 0; i < e_in; ++i) rename[circuit.evaluator_inputs().begin + i] = g_in + i;

  // Decide which outputs can take over their defining gate's wire and which need a copy.
  std::vector<std::uint8_t> is_gate_out(circuit.wire_count(), 0);
  for (const Gate& g : circuit.gates()) is_gate_out[g.out] = 1;
  std::unordered_set<WireId> claimed;
  std::vector<bool> needs_copy(outputs.size(), false);
  std::size_t copies = 0;
  for (std::size_t k = 0; k < outputs.size(); ++k) {
    if (!is_gate_out[outputs[k]] || !claimed.insert(outputs[k]).second) {
      needs_copy[k] = true;
      ++copies;
    }
  }

  const std::uint64_t n_out = outputs.size();
  const std::uint64_t internal = circuit.gates().size() - (n_out - copies);
  const std::uint64_t total_wires = static_cast<std::uint64_t>(g_in) + e_in + internal + copies + n_out;
  const std::uint64_t out_base = total_wires - n_out;
  for (std::size_t k = 0; k < outputs.size(); ++k) {
    if (!needs_copy[k]) rename[outputs[k]] = static_cast<WireId>(out_base + k);
  }
  WireId next = g_in + e_in;
  for (const Gate& g : circuit.gates()) {
    if (rename[g.out] == kUnset) rename[g.out] = next++;
  }

  std::ostringstream os;
  os << (circuit.gates().size() + 2 * copies) << ' ' << total_wires << '\n';
  if (e_in > 0) {
    os << "2 " << g_in << ' ' << e_in << '\n';
  } else {
    os << "1 " << g_in << '\n';
  }
  os << "1 " << n_out << "\n\n";
  for (const Gate& g : circuit.gates()) {
    switch (g.kind) {
      case GateKind::kXor: os << "2 1 " << rename[g.in0] << ' ' << rename[g.in1] << ' ' << rename[g.out] << " XOR\n"; break;
      case GateKind::kAnd: os << "2 1 " << rename[g.in0] << ' ' << rename[g.in1] << ' ' << rename[g.out] << " AND\n"; break;
      case GateKind::kInv: os << "1 1 " << rename[g.in0] << ' ' << rename[g.out] << " INV\n"; break;
    }
  }
  for (std::size_t k = 0; k < outputs.size(); ++k) {
    if (!needs_copy[k]) continue;
    const WireId tmp = next++;
    os << "1 1 " << rename[outputs[k]] << ' ' << tmp << " INV\n";
    os << "1 1 " << tmp << ' ' << (out_base + k) << " INV\n";
  }
  return os.str();
}

}  // namespace lanmpc::circuit
