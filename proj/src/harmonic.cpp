#include "sqtile/harmonic.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <string>

#include "sqtile/error.hpp"

namespace sqtile {

namespace {

const char* kModule = "harmonic";

std::vector<char> reachable_from(const Network& net, int start) {
  std::vector<std::vector<int>> adj(net.num_vertices);
  for (const auto& [u, v] : net.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<char> seen(net.num_vertices, 0);
  std::deque<int> queue{start};
  seen[start] = 1;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int w : adj[u]) {
      if (!seen[w]) {
        seen[w] = 1;
        queue.push_back(w);
      }
    }
  }
  return seen;
}

}  // namespace

Network network_of(const PolarMap& g) {
  Network net;
  net.num_vertices = g.map.num_vertices;
  net.source = g.source();
  net.sink = g.sink();
  net.fingerprint = g.map.fingerprint();
  const int pole = g.pole_edge();
  if (pole != g.map.num_edges() - 1) {
    throw Error(ErrorCode::SchemaError, kModule, "pole arc must be the last edge");
  }
  net.edges.reserve(pole);
  for (int e = 0; e < pole; ++e) net.edges.emplace_back(g.map.tail[2 * e], g.map.tail[2 * e + 1]);
  return net;
}

HarmonicField solve_harmonic(const Network& net, double tol, int max_iterations) {
  using Vec = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
  const auto started = std::chrono::steady_clock::now();
  if (net.source == net.sink || net.source < 0 || net.sink < 0) {
    throw Error(ErrorCode::Disconnected, kModule, "source and sink must be distinct vertices");
  }
  const std::vector<char> seen = reachable_from(net, net.source);
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    throw Error(ErrorCode::Disconnected, kModule, "network is not connected");
  }

  // Free vertices keep their relative order.
  const int n = net.num_vertices;
  std::vector<int> slot(n, -1);
  int num_free = 0;
  for (int v = 0; v < n; ++v) {
    if (v != net.source && v != net.sink) slot[v] = num_free++;
  }

  std::vector<Eigen::Triplet<long double>> triplets;
  triplets.reserve(4 * net.edges.size());
  Vec rhs = Vec::Zero(num_free);
  for (const auto& [u, v] : net.edges) {
    if (u == v) continue;
    const int su = slot[u], sv = slot[v];
    if (su >= 0) triplets.emplace_back(su, su, 1.0);
    if (sv >= 0) triplets.emplace_back(sv, sv, 1.0);
    if (su >= 0 && sv >= 0) {
      triplets.emplace_back(su, sv, -1.0);
      triplets.emplace_back(sv, su, -1.0);
    } else if (su >= 0 && v == net.source) {
      rhs[su] += 1.0;
    } else if (sv >= 0 && u == net.source) {
      rhs[sv] += 1.0;
    }
  }
  Eigen::SparseMatrix<long double> laplacian(num_free, num_free);
  laplacian.setFromTriplets(triplets.begin(), triplets.end());

  if (max_iterations <= 0) {
    max_iterations = static_cast<int>(std::ceil(50.0 * std::sqrt(double(std::max(n, 1)))));
  }
  Vec x = Vec::Zero(num_free);
  const CgResult<long double> cg =
      jacobi_pcg<long double>(laplacian, rhs, x, static_cast<long double>(tol), max_iterations);
  if (!cg.converged) {
    throw Error(ErrorCode::SolveDiverged, kModule,
                "conjugate gradients stopped after " + std::to_string(cg.iterations) +
                    " iterations with residual " + std::to_string(static_cast<double>(cg.residual)));
  }

  HarmonicField h;
  h.tol = tol;
  h.fingerprint = net.fingerprint;
  h.values.resize(n);
  for (int v = 0; v < n; ++v) h.values[v] = slot[v] >= 0 ? static_cast<double>(x[slot[v]]) : 0.0;
  h.values[net.source] = 1.0;
  h.values[net.sink] = 0.0;

  const Vec degree = laplacian.diagonal();
  const Vec lap_residual = rhs - laplacian * x;
  h.residual = 0.0;
  for (int k = 0; k < num_free; ++k) {
    if (degree[k] > 0) {
      h.residual = std::max(h.residual, static_cast<double>(std::abs(lap_residual[k]) / degree[k]));
    }
  }
  h.stats.iterations = cg.iterations;
  h.stats.residual_l1 = static_cast<double>(cg.residual);
  h.stats.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return h;
}

double EdgeFlow::max_node_residual(const Network& net) const {
  double worst = 0.0;
  for (int v = 0; v < net.num_vertices; ++v) {
    if (v == net.source || v == net.sink) continue;
    worst = std::max(worst, std::abs(node_sum[v]));
  }
  return worst;
}

EdgeFlow edge_flow(const Network& net, const HarmonicField& h) {
  if (h.values.size() != net.num_vertices || h.fingerprint != net.fingerprint) {
    throw Error(ErrorCode::InconsistentFields, kModule, "potential was solved on another network");
  }
  EdgeFlow w;
  w.fingerprint = net.fingerprint;
  w.flow.resize(static_cast<Eigen::Index>(net.edges.size()));
  w.node_sum = Eigen::VectorXd::Zero(net.num_vertices);
  for (std::size_t e = 0; e < net.edges.size(); ++e) {
    const auto [u, v] = net.edges[e];
    const double f = u == v ? 0.0 : h.values[u] - h.values[v];
    w.flow[static_cast<Eigen::Index>(e)] = f;
    w.node_sum[u] += f;
    w.node_sum[v] -= f;
  }
  w.intensity = w.node_sum[net.source];
  return w;
}

HittingEstimate mc_hitting_probability(const Network& net, int vertex, std::int64_t walks,
                                       std::uint64_t seed) {
  HittingEstimate out;
  out.walks = walks;
  if (vertex == net.source || vertex == net.sink) {
    out.estimate = vertex == net.source ? 1.0 : 0.0;
    return out;
  }
  const std::vector<char> seen = reachable_from(net, vertex);
  if (!seen[net.source] && !seen[net.sink]) {
    throw Error(ErrorCode::Disconnected, kModule, "walk start cannot reach either pole");
  }

  // Compressed adjacency with one entry per edge end.
  std::vector<int> offset(net.num_vertices + 1, 0);
  for (const auto& [u, v] : net.edges) {
    if (u == v) continue;
    ++offset[u + 1];
    ++offset[v + 1];
  }
  for (int k = 0; k < net.num_vertices; ++k) offset[k + 1] += offset[k];
  std::vector<int> fill(offset.begin(), offset.end() - 1);
  std::vector<int> adj(offset.back());
  for (const auto& [u, v] : net.edges) {
    if (u == v) continue;
    adj[fill[u]++] = v;
    adj[fill[v]++] = u;
  }

  std::int64_t hits = 0;
  for (std::int64_t k = 0; k < walks; ++k) {
    SplitMix64 key(seed ^ (static_cast<std::uint64_t>(k) * 0xd1b54a32d192ed03ull));
    SplitMix64 rng(key.next());
    int at = vertex;
    while (at != net.source && at != net.sink) {
      const int deg = offset[at + 1] - offset[at];
      at = adj[offset[at] + static_cast<int>(rng.below(static_cast<std::uint64_t>(deg)))];
    }
    hits += at == net.source;
  }
  out.estimate = walks > 0 ? double(hits) / double(walks) : 0.0;
  out.std_error = walks > 0 ? std::sqrt(out.estimate * (1.0 - out.estimate) / double(walks)) : 0.0;
  return out;
}

}  // namespace sqtile
