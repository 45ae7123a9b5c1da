#include "trotterion/compiler.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <sstream>

namespace trotterion {

namespace {

struct PairIndex {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  explicit PairIndex(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    }
  }
};

struct Candidate {
  GraphLayer layer;
  Eigen::VectorXd column;
  std::uint64_t covered = 0;
};

double sign_of(std::uint32_t flips, std::size_t k) { return ((flips >> k) & 1U) ? -1.0 : 1.0; }

std::vector<Candidate> masked_candidates(std::size_t n, const PairIndex& idx) {
  std::vector<Candidate> out;
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    if (std::popcount(mask) < 2) continue;
    const std::uint32_t low = mask & (~mask + 1);
    const std::uint32_t free_bits = mask & ~low;
    // enumerate all subsets of free_bits, including the empty one
    std::uint32_t s = 0;
    while (true) {
      Candidate c;
      c.layer = {mask, s, 0.0};
      c.column = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(idx.pairs.size()));
      for (std::size_t p = 0; p < idx.pairs.size(); ++p) {
        const auto [i, j] = idx.pairs[p];
        if (((mask >> i) & 1U) && ((mask >> j) & 1U)) {
          c.column[static_cast<Eigen::Index>(p)] = sign_of(s, i) * sign_of(s, j);
          c.covered |= std::uint64_t{1} << p;
        }
      }
      out.push_back(std::move(c));
      if (s == free_bits) break;
      s = (s - free_bits) & free_bits;
    }
  }
  return out;
}

Eigen::VectorXd target_vector(const CouplingGraph& g, const PairIndex& idx) {
  Eigen::VectorXd t(static_cast<Eigen::Index>(idx.pairs.size()));
  for (std::size_t p = 0; p < idx.pairs.size(); ++p) t[static_cast<Eigen::Index>(p)] = g(idx.pairs[p].first, idx.pairs[p].second);
  return t;
}

std::uint32_t canonical(std::uint32_t flips, std::uint32_t full) { return (flips & 1U) ? (~flips & full) : flips; }

// Expand masked layers into full-register sign layers; spins outside a mask
// average over both signs, which cancels every pair touching them.
std::vector<SignLayer> lower_layers(const std::vector<GraphLayer>& layers, std::size_t n) {
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  std::map<std::uint32_t, double> merged;
  for (const auto& l : layers) {
    const std::uint32_t outside = full & ~l.mask;
    const double share = l.weight / static_cast<double>(std::uint64_t{1} << std::popcount(outside));
    std::uint32_t e = 0;
    while (true) {
      merged[canonical(l.flips | e, full)] += share;
      if (e == outside) break;
      e = (e - outside) & outside;
    }
  }
  std::vector<SignLayer> out;
  for (const auto& [f, w] : merged) {
    if (w > 0.0) out.push_back({f, w});
  }
  return out;
}

struct Ordering {
  std::vector<SignLayer> schedule;  // flips hold the actual frame used per layer
  std::size_t pulses = 0;
};

// Best representative choice (frame or its complement) per layer for a
// fixed order, returning to the empty frame at the end.
Ordering frames_for_order(const std::vector<SignLayer>& layers, const std::vector<std::size_t>& order, std::size_t n) {
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  const std::size_t m = order.size();
  std::vector<std::array<std::size_t, 2>> cost(m);
  std::vector<std::array<int, 2>> back(m);
  auto rep = [&](std::size_t k, int r) {
    const auto f = layers[order[k]].flips;
    return r == 0 ? f : (~f & full);
  };
  for (int r = 0; r < 2; ++r) cost[0][static_cast<std::size_t>(r)] = static_cast<std::size_t>(std::popcount(rep(0, r)));
  for (std::size_t k = 1; k < m; ++k) {
    for (int r = 0; r < 2; ++r) {
      std::size_t best = SIZE_MAX;
      int arg = 0;
      for (int q = 0; q < 2; ++q) {
        const auto c = cost[k - 1][static_cast<std::size_t>(q)] + static_cast<std::size_t>(std::popcount(rep(k - 1, q) ^ rep(k, r)));
        if (c < best) {
          best = c;
          arg = q;
        }
      }
      cost[k][static_cast<std::size_t>(r)] = best;
      back[k][static_cast<std::size_t>(r)] = arg;
    }
  }
  std::size_t best = SIZE_MAX;
  int r = 0;
  for (int q = 0; q < 2; ++q) {
    const auto c = cost[m - 1][static_cast<std::size_t>(q)] + static_cast<std::size_t>(std::popcount(rep(m - 1, q)));
    if (c < best) {
      best = c;
      r = q;
    }
  }
  Ordering o;
  o.pulses = best;
  o.schedule.resize(m);
  for (std::size_t k = m; k-- > 0;) {
    o.schedule[k] = {rep(k, r), layers[order[k]].weight};
    if (k > 0) r = back[k][static_cast<std::size_t>(r)];
  }
  return o;
}

Ordering order_layers(const std::vector<SignLayer>& layers, std::size_t n) {
  if (layers.empty()) return {};
  std::vector<std::size_t> order(layers.size());
  std::iota(order.begin(), order.end(), 0);
  if (layers.size() <= 7) {
    Ordering best;
    best.pulses = SIZE_MAX;
    do {
      auto o = frames_for_order(layers, order, n);
      if (o.pulses < best.pulses) best = std::move(o);
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
  }
  // greedy nearest neighbour from the empty frame
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  std::vector<bool> used(layers.size(), false);
  std::vector<std::size_t> greedy;
  std::uint32_t frame = 0;
  for (std::size_t step = 0; step < layers.size(); ++step) {
    std::size_t arg = 0;
    int best = INT32_MAX;
    for (std::size_t k = 0; k < layers.size(); ++k) {
      if (used[k]) continue;
      const auto d = std::popcount(frame ^ layers[k].flips);
      const int dist = std::min(d, static_cast<int>(n) - d);
      if (dist < best) {
        best = dist;
        arg = k;
      }
    }
    used[arg] = true;
    greedy.push_back(arg);
    const auto f = layers[arg].flips;
    frame = std::popcount(frame ^ f) <= std::popcount(frame ^ (~f & full)) ? f : (~f & full);
  }
  return frames_for_order(layers, greedy, n);
}

Eigen::VectorXd nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double tol) {
  const auto m = a.cols();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(m);
  std::vector<bool> passive(static_cast<std::size_t>(m), false);
  auto solve_passive = [&](Eigen::VectorXd& z) {
    std::vector<Eigen::Index> cols;
    for (Eigen::Index j = 0; j < m; ++j) {
      if (passive[static_cast<std::size_t>(j)]) cols.push_back(j);
    }
    Eigen::MatrixXd ap(a.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) ap.col(static_cast<Eigen::Index>(k)) = a.col(cols[k]);
    const Eigen::VectorXd zp = ap.colPivHouseholderQr().solve(b);
    z = Eigen::VectorXd::Zero(m);
    for (std::size_t k = 0; k < cols.size(); ++k) z[cols[k]] = zp[static_cast<Eigen::Index>(k)];
  };
  for (int outer = 0; outer < 10 * static_cast<int>(m) + 10; ++outer) {
    const Eigen::VectorXd w = a.transpose() * (b - a * x);
    Eigen::Index arg = -1;
    double best = tol;
    for (Eigen::Index j = 0; j < m; ++j) {
      if (!passive[static_cast<std::size_t>(j)] && w[j] > best) {
        best = w[j];
        arg = j;
      }
    }
    if (arg < 0) break;
    passive[static_cast<std::size_t>(arg)] = true;
    for (int inner = 0; inner < 10 * static_cast<int>(m) + 10; ++inner) {
      Eigen::VectorXd z;
      solve_passive(z);
      bool feasible = true;
      for (Eigen::Index j = 0; j < m; ++j) {
        if (passive[static_cast<std::size_t>(j)] && z[j] <= 0.0) feasible = false;
      }
      if (feasible) {
        x = z;
        break;
      }
      double alpha = 1.0;
      for (Eigen::Index j = 0; j < m; ++j) {
        if (passive[static_cast<std::size_t>(j)] && z[j] <= 0.0) alpha = std::min(alpha, x[j] / (x[j] - z[j]));
      }
      x += alpha * (z - x);
      for (Eigen::Index j = 0; j < m; ++j) {
        if (passive[static_cast<std::size_t>(j)] && x[j] <= tol) {
          passive[static_cast<std::size_t>(j)] = false;
          x[j] = 0.0;
        }
      }
    }
  }
  return x;
}

double binomial(std::size_t n, std::size_t k) {
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

std::string residual_report(const CouplingGraph& g, const PairIndex& idx, const Eigen::VectorXd& residual) {
  const auto n = g.spin_count();
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t p = 0; p < idx.pairs.size(); ++p) {
    const auto [i, j] = idx.pairs[p];
    r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = r(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) =
        residual[static_cast<Eigen::Index>(p)];
  }
  std::ostringstream out;
  out << "residual coupling matrix:\n" << r;
  return out.str();
}

GraphDecomposition finish(std::vector<GraphLayer> layers, std::size_t n) {
  GraphDecomposition d;
  d.layers = std::move(layers);
  auto ordering = order_layers(lower_layers(d.layers, n), n);
  d.schedule = std::move(ordering.schedule);
  d.gate_count = d.schedule.size() + ordering.pulses;
  return d;
}

}  // namespace

GraphDecomposition decompose_coupling_graph(const CouplingGraph& graph, const GraphCompileOptions& options) {
  const auto n = graph.spin_count();
  if (n > 6) throw CompileError("coupling-graph decomposition supports at most 6 spins, got " + std::to_string(n));
  if (n < 2) return {};
  const PairIndex idx(n);
  const Eigen::VectorXd t = target_vector(graph, idx);
  const double scale = std::max(1.0, t.cwiseAbs().maxCoeff());
  const double tol = options.tolerance * scale;
  if (t.cwiseAbs().maxCoeff() <= tol) return {};

  std::uint64_t support = 0;
  for (Eigen::Index p = 0; p < t.size(); ++p) {
    if (std::abs(t[p]) > tol) support |= std::uint64_t{1} << p;
  }

  const auto candidates = masked_candidates(n, idx);
  const std::size_t n_pairs = idx.pairs.size();
  const std::size_t k_limit = options.max_layers ? std::min(options.max_layers, n_pairs) : n_pairs;
  Eigen::VectorXd best_residual = t;

  for (std::size_t k = 1; k <= k_limit; ++k) {
    if (binomial(candidates.size(), k) > static_cast<double>(options.search_budget)) break;
    std::optional<GraphDecomposition> best;
    std::vector<std::size_t> combo(k);
    std::iota(combo.begin(), combo.end(), 0);
    Eigen::MatrixXd a(static_cast<Eigen::Index>(n_pairs), static_cast<Eigen::Index>(k));
    while (true) {
      std::uint64_t covered = 0;
      for (auto c : combo) covered |= candidates[c].covered;
      if ((covered & support) == support) {
        for (std::size_t q = 0; q < k; ++q) a.col(static_cast<Eigen::Index>(q)) = candidates[combo[q]].column;
        const Eigen::VectorXd w = a.colPivHouseholderQr().solve(t);
        const Eigen::VectorXd res = t - a * w;
        if (res.norm() < best_residual.norm()) best_residual = res;
        if (res.cwiseAbs().maxCoeff() <= tol && w.minCoeff() > tol) {
          std::vector<GraphLayer> layers;
          for (std::size_t q = 0; q < k; ++q) {
            auto l = candidates[combo[q]].layer;
            l.weight = w[static_cast<Eigen::Index>(q)];
            layers.push_back(l);
          }
          auto d = finish(std::move(layers), n);
          if (!best || d.gate_count < best->gate_count) best = std::move(d);
        }
      }
      // next combination
      std::size_t pos = k;
      while (pos > 0 && combo[pos - 1] == candidates.size() - k + pos - 1) --pos;
      if (pos == 0) break;
      ++combo[pos - 1];
      for (std::size_t q = pos; q < k; ++q) combo[q] = combo[q - 1] + 1;
    }
    if (best) return *best;
  }

  // Non-negative fit over full-register sign patterns. These span every
  // symmetric coupling matrix and their sum has zero off-diagonal, so the
  // cone they generate is the whole space.
  std::vector<GraphLayer> full_layers;
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  for (std::uint32_t f = 0; f <= full; f += 2) full_layers.push_back({full, f, 0.0});
  Eigen::MatrixXd a(static_cast<Eigen::Index>(n_pairs), static_cast<Eigen::Index>(full_layers.size()));
  for (std::size_t c = 0; c < full_layers.size(); ++c) {
    for (std::size_t p = 0; p < n_pairs; ++p) {
      const auto [i, j] = idx.pairs[p];
      a(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(c)) = sign_of(full_layers[c].flips, i) * sign_of(full_layers[c].flips, j);
    }
  }
  const Eigen::VectorXd w = nnls(a, t, 1e-14 * scale);
  const Eigen::VectorXd res = t - a * w;
  std::vector<GraphLayer> layers;
  for (std::size_t c = 0; c < full_layers.size(); ++c) {
    if (w[static_cast<Eigen::Index>(c)] > tol) {
      auto l = full_layers[c];
      l.weight = w[static_cast<Eigen::Index>(c)];
      layers.push_back(l);
    }
  }
  if (res.cwiseAbs().maxCoeff() > tol) {
    throw CompileError("no non-negative layer decomposition found; " + residual_report(graph, idx, res));
  }
  if (options.max_layers && layers.size() > options.max_layers) {
    throw CompileError("decomposition needs " + std::to_string(layers.size()) + " layers, budget is " +
                       std::to_string(options.max_layers) + "; " + residual_report(graph, idx, best_residual));
  }
  return finish(std::move(layers), n);
}

void emit_graph_layers(GateSequence& seq, const GraphDecomposition& dec, double scale, double phi) {
  if (scale < 0.0) throw CompileError("graph layers require a non-negative phase scale");
  const auto n = seq.spin_count();
  std::uint32_t frame = 0;
  auto move_to = [&](std::uint32_t target) {
    const std::uint32_t diff = frame ^ target;
    for (std::size_t k = 0; k < n; ++k) {
      if ((diff >> k) & 1U) seq.append(GateOp::o1(kPi / 2, k));
    }
    frame = target;
  };
  for (const auto& layer : dec.schedule) {
    move_to(layer.flips);
    seq.append(GateOp::o4(layer.weight * scale, phi));
  }
  move_to(0);
}

}  // namespace trotterion
