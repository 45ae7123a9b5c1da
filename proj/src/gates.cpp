#include "trotterion/gates.hpp"

#include <charconv>
#include <sstream>

namespace trotterion {

std::string gate_kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::O1: return "O1";
    case GateKind::O2: return "O2";
    case GateKind::O3: return "O3";
    case GateKind::O4: return "O4";
  }
  return "?";
}

GateKind gate_kind_from_name(std::string_view name) {
  if (name == "O1") return GateKind::O1;
  if (name == "O2") return GateKind::O2;
  if (name == "O3") return GateKind::O3;
  if (name == "O4") return GateKind::O4;
  throw std::invalid_argument("unknown gate kind '" + std::string(name) + "'");
}

GateOp GateOp::o1(double theta, std::size_t target) { return {GateKind::O1, theta, 0.0, target}; }
GateOp GateOp::o2(double theta) { return {GateKind::O2, theta, 0.0, std::nullopt}; }
GateOp GateOp::o3(double theta, double phi) { return {GateKind::O3, theta, phi, std::nullopt}; }
GateOp GateOp::o4(double theta, double phi) { return {GateKind::O4, theta, phi, std::nullopt}; }

void GateOp::validate(std::size_t n) const {
  if (!std::isfinite(theta) || !std::isfinite(phi)) throw std::invalid_argument("gate phase must be finite");
  if (kind == GateKind::O1) {
    if (!target) throw std::invalid_argument("O1 requires a target spin");
    if (*target >= n) {
      throw DimensionError("O1 target " + std::to_string(*target) + " out of range for " + std::to_string(n) + " spins");
    }
  } else if (target) {
    throw std::invalid_argument(gate_kind_name(kind) + " takes no target");
  }
}

GateSequence::GateSequence(std::size_t n) : n_(n) { require_spin_count(n); }

GateSequence::GateSequence(std::size_t n, std::vector<GateOp> gates) : GateSequence(n) {
  for (const auto& g : gates) append(g);
}

GateSequence& GateSequence::append(const GateOp& g) {
  g.validate(n_);
  gates_.push_back(g);
  return *this;
}

GateSequence& GateSequence::append(const GateSequence& other) {
  if (other.n_ != n_) throw DimensionError("cannot concatenate sequences of different size");
  gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
  return *this;
}

GateSequence GateSequence::prefix(std::size_t count) const {
  if (count > gates_.size()) throw std::out_of_range("prefix longer than sequence");
  GateSequence out(n_);
  out.gates_.assign(gates_.begin(), gates_.begin() + static_cast<std::ptrdiff_t>(count));
  return out;
}

UnitaryMatrix gate_unitary(const GateOp& g, std::size_t n) {
  require_spin_count(n);
  const auto dim = dimension_of(n);
  UnitaryMatrix u(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    StateVector col = StateVector::Zero(dim);
    col[c] = 1.0;
    apply_gate_inplace(col, g);
    u.col(c) = col;
  }
  return u;
}

UnitaryMatrix sequence_unitary(const GateSequence& seq) {
  const auto n = seq.spin_count();
  require_spin_count(n);
  const auto dim = dimension_of(n);
  UnitaryMatrix u = UnitaryMatrix::Identity(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    StateVector col = u.col(c);
    apply_sequence_inplace(col, seq);
    u.col(c) = col;
  }
  return u;
}

DurationModel DurationModel::defaults() {
  DurationModel m;
  m.entries[GateKind::O1] = {30.0, 0.0};
  m.entries[GateKind::O2] = {0.0, 160.0 / kPi};
  m.entries[GateKind::O3] = {0.0, 20.0 / kPi};
  m.entries[GateKind::O4] = {30.0, 0.0};
  return m;
}

double DurationModel::duration(const GateOp& g) const {
  const auto it = entries.find(g.kind);
  if (it == entries.end()) throw std::invalid_argument("no duration entry for " + gate_kind_name(g.kind));
  return it->second.fixed_us + it->second.per_radian_us * std::abs(g.theta);
}

SequenceStats sequence_stats(const GateSequence& seq, const DurationModel& model) {
  SequenceStats s;
  for (const auto& g : seq) {
    ++s.gate_count;
    ++s.per_kind[static_cast<std::size_t>(g.kind)];
    s.wall_time_us += model.duration(g);
  }
  return s;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string to_text(const GateSequence& seq) {
  std::ostringstream out;
  out << "# spins=" << seq.spin_count() << '\n';
  for (const auto& g : seq) {
    out << gate_kind_name(g.kind) << " theta=" << format_double(g.theta);
    if (g.kind == GateKind::O3 || g.kind == GateKind::O4) out << " phi=" << format_double(g.phi);
    if (g.kind == GateKind::O1) out << " target=" << *g.target;
    out << '\n';
  }
  return out.str();
}

namespace {

double parse_number(std::string_view text, std::size_t line_no) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument("line " + std::to_string(line_no) + ": bad number '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

GateSequence sequence_from_text(std::string_view text, std::optional<std::size_t> n) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<GateOp> gates;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto pos = line.find("spins=");
      if (pos != std::string::npos && !n) n = static_cast<std::size_t>(parse_number(line.substr(pos + 6), line_no));
      continue;
    }
    std::istringstream fields(line);
    std::string kind_name;
    fields >> kind_name;
    GateOp g;
    g.kind = gate_kind_from_name(kind_name);
    std::string kv;
    while (fields >> kv) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("line " + std::to_string(line_no) + ": expected key=value");
      const auto key = kv.substr(0, eq);
      const double value = parse_number(std::string_view(kv).substr(eq + 1), line_no);
      if (key == "theta") {
        g.theta = value;
      } else if (key == "phi") {
        g.phi = value;
      } else if (key == "target") {
        g.target = static_cast<std::size_t>(value);
      } else {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
      }
    }
    gates.push_back(g);
  }
  if (!n) throw std::invalid_argument("spin count missing from program text");
  return GateSequence(*n, std::move(gates));
}

}  // namespace trotterion
