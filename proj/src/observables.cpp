#include "trotterion/observables.hpp"

#include "trotterion/metrics.hpp"

#include <charconv>

namespace trotterion {

namespace {

double parse_real(std::string_view text, std::string_view context) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw ConfigError("bad number '" + std::string(text) + "' in observable '" + std::string(context) + "'");
  }
  return v;
}

}  // namespace

std::uint64_t basis_index_from_label(std::string_view label) {
  std::uint64_t idx = 0;
  for (std::size_t k = 0; k < label.size(); ++k) {
    const char c = label[k];
    if (c == 'd' || c == '1') {
      idx |= std::uint64_t{1} << k;
    } else if (c != 'u' && c != '0') {
      throw ConfigError("basis label '" + std::string(label) + "' may only contain u/d/0/1");
    }
  }
  return idx;
}

std::vector<Observable> Observable::parse(std::string_view spec, std::size_t n) {
  const auto colon = spec.find(':');
  const auto head = spec.substr(0, colon);
  const auto arg = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  std::vector<Observable> out;
  Observable o;
  o.label = std::string(spec);
  if (head == "pop") {
    if (arg.size() != n) throw ConfigError("population label '" + std::string(arg) + "' must have one character per spin");
    if (arg.find_first_not_of("ud01") == std::string_view::npos) {
      o.kind = Kind::Population;
      o.basis_index = basis_index_from_label(arg);
    } else {
      o.kind = Kind::Projector;
      try {
        o.target = product_state(arg);
      } catch (const std::exception& e) {
        throw ConfigError("observable '" + std::string(spec) + "': " + e.what());
      }
    }
    o.label = "P_" + std::string(arg);
    out.push_back(o);
  } else if (head == "hamming") {
    o.kind = Kind::HammingWeight;
    if (arg.empty()) {
      for (std::size_t w = 0; w <= n; ++w) {
        o.weight = w;
        o.label = "P" + std::to_string(w);
        out.push_back(o);
      }
    } else {
      o.weight = static_cast<std::size_t>(parse_real(arg, spec));
      if (o.weight > n) throw ConfigError("hamming weight exceeds spin count");
      o.label = "P" + std::to_string(o.weight);
      out.push_back(o);
    }
  } else if (head == "parity") {
    if (arg.empty()) {
      o.kind = Kind::Parity;
      o.pauli = PauliString(std::vector<Pauli>(n, Pauli::Z));
      o.label = "parity";
    } else {
      o.kind = Kind::AnalysisParity;
      o.phi = parse_real(arg, spec);
      o.label = "parity_" + std::string(arg);
    }
    out.push_back(o);
  } else if (head == "pauli") {
    o.kind = Kind::PauliExpectation;
    try {
      o.pauli = PauliString::parse(arg);
    } catch (const std::exception& e) {
      throw ConfigError("observable '" + std::string(spec) + "': " + e.what());
    }
    if (o.pauli.size() != n) throw ConfigError("pauli observable length does not match spin count");
    o.label = "<" + o.pauli.str() + ">";
    out.push_back(o);
  } else {
    throw ConfigError("unknown observable '" + std::string(spec) + "'");
  }
  return out;
}

double Observable::evaluate(const StateVector& psi) const {
  switch (kind) {
    case Kind::Population: return std::norm(psi[static_cast<Eigen::Index>(basis_index)]);
    case Kind::Projector: return std::norm(target.dot(psi));
    case Kind::HammingWeight: return hamming_histogram(psi).at(weight);
    case Kind::Parity:
    case Kind::PauliExpectation: return expectation(psi, pauli);
    case Kind::AnalysisParity: return ghz_parity_observable(psi, phi);
  }
  return 0.0;
}

double Observable::sample(const StateVector& psi, SplitMix64& rng) const {
  const double v = evaluate(psi);
  if (is_probability()) return rng.bernoulli(v) ? 1.0 : 0.0;
  return rng.bernoulli(0.5 * (1.0 + v)) ? 1.0 : -1.0;
}

}  // namespace trotterion
