#include <doctest.h>

#include <Eigen/SparseCholesky>

#include "fixtures.hpp"
#include "sqtile/error.hpp"

using namespace sqtile;

namespace {

fixtures::Solved unit_square_g2() {
  LatticeSubgraph sub = build_lattice_subgraph(fixtures::unit_square(), 2, {0.5, 0.5});
  classify_boundary(sub);
  return fixtures::solve_mesh(sub);
}

// Random connected multigraph with loops and parallel edges.
Network random_network(SplitMix64& rng, int n) {
  Network net;
  net.num_vertices = n;
  for (int v = 1; v < n; ++v) net.edges.emplace_back(int(rng.below(v)), v);
  const int extra = int(rng.below(2 * n));
  for (int k = 0; k < extra; ++k) net.edges.emplace_back(int(rng.below(n)), int(rng.below(n)));
  net.source = int(rng.below(n));
  do {
    net.sink = int(rng.below(n));
  } while (net.sink == net.source);
  return net;
}

// Sparse Cholesky on the reduced Laplacian, assembled here from scratch.
Eigen::VectorXd direct_solve(const Network& net) {
  const int n = net.num_vertices;
  std::vector<int> slot(n, -1);
  int m = 0;
  for (int v = 0; v < n; ++v) {
    if (v != net.source && v != net.sink) slot[v] = m++;
  }
  Eigen::SparseMatrix<double> a(m, m);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  std::vector<Eigen::Triplet<double>> trip;
  for (auto [u, v] : net.edges) {
    if (u == v) continue;
    for (int side = 0; side < 2; ++side) {
      const int x = side ? v : u, y = side ? u : v;
      if (slot[x] < 0) continue;
      trip.emplace_back(slot[x], slot[x], 1.0);
      if (slot[y] >= 0) {
        trip.emplace_back(slot[x], slot[y], -1.0);
      } else if (y == net.source) {
        rhs[slot[x]] += 1.0;
      }
    }
  }
  a.setFromTriplets(trip.begin(), trip.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(a);
  const Eigen::VectorXd x = ldlt.solve(rhs);
  Eigen::VectorXd h(n);
  for (int v = 0; v < n; ++v) h[v] = slot[v] >= 0 ? x[slot[v]] : (v == net.source ? 1.0 : 0.0);
  return h;
}

}  // namespace

TEST_CASE("unit square G_2 potential and flow") {
  const auto s = unit_square_g2();
  const MeshGraph& g = s.mesh;
  for (int m = 0; m < g.num_free; ++m) CHECK(s.h.values[m] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(s.h.values[g.t()] == 1.0);
  CHECK(s.h.values[g.b()] == 0.0);
  CHECK(s.flow.intensity == doctest::Approx(1.5).epsilon(1e-12));
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const MeshEdge& me = g.edges[e];
    const double w = std::abs(s.flow.flow[Eigen::Index(e)]);
    if (me.axis == Axis::Horizontal) {
      CHECK(w < 1e-12);
    } else {
      CHECK(w == doctest::Approx(0.5).epsilon(1e-12));
    }
  }
}

TEST_CASE("path t-v-b") {
  const auto s = fixtures::solve_mesh(fixtures::path_subgraph());
  CHECK(s.h.values[0] == doctest::Approx(0.5));
  CHECK(s.flow.intensity == doctest::Approx(0.5));
  CHECK(std::abs(s.flow.flow[0]) == doctest::Approx(0.5));
  CHECK(std::abs(s.flow.flow[1]) == doctest::Approx(0.5));
}

TEST_CASE("constant potential gives zero flow") {
  const auto s = unit_square_g2();
  HarmonicField flat = s.h;
  flat.values.setConstant(0.25);
  const EdgeFlow w = edge_flow(s.net, flat);
  CHECK(w.flow.cwiseAbs().maxCoeff() == 0.0);
  CHECK(w.intensity == 0.0);
}

TEST_CASE("errors") {
  const auto s = unit_square_g2();
  Network broken = s.net;
  broken.num_vertices += 1;  // an isolated vertex
  CHECK_THROWS_WITH_AS(solve_harmonic(broken), doctest::Contains("connected"), Error);

  LatticeSubgraph sub = build_lattice_subgraph(fixtures::unit_square(), 5, {0.5, 0.5});
  classify_boundary(sub);
  const MeshGraph g = contract_marked_arcs(sub);
  try {
    solve_harmonic(network_of(g.embedding), 1e-10, 3);
    FAIL("expected SolveDiverged");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SolveDiverged);
  }

  HarmonicField other = s.h;
  other.fingerprint ^= 1;
  try {
    edge_flow(s.net, other);
    FAIL("expected InconsistentFields");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InconsistentFields);
  }
}

TEST_CASE("conjugate gradients work for other scalar types") {
  Eigen::SparseMatrix<float> a(3, 3);
  std::vector<Eigen::Triplet<float>> t{{0, 0, 2}, {0, 1, -1}, {1, 0, -1}, {1, 1, 2}, {1, 2, -1}, {2, 1, -1}, {2, 2, 2}};
  a.setFromTriplets(t.begin(), t.end());
  Eigen::VectorXf b(3);
  b << 1, 0, 1;
  Eigen::VectorXf x = Eigen::VectorXf::Zero(3);
  const auto r = jacobi_pcg<float>(a, b, x, 1e-5f, 100);
  CHECK(r.converged);
  CHECK(x[0] == doctest::Approx(1.0));
  CHECK(x[1] == doctest::Approx(1.0));
  CHECK(x[2] == doctest::Approx(1.0));
}

TEST_CASE("property: agreement with a direct solver, maximum principle, node law") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const Network net = random_network(rng, 3 + int(rng.below(60)));
    const HarmonicField h = solve_harmonic(net, 1e-11);
    const Eigen::VectorXd ref = direct_solve(net);
    CHECK((h.values - ref).cwiseAbs().maxCoeff() < 1e-9);

    std::vector<std::vector<int>> adj(net.num_vertices);
    for (auto [u, v] : net.edges) {
      if (u == v) continue;
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    const EdgeFlow w = edge_flow(net, h);
    double total = 0.0;
    for (int v = 0; v < net.num_vertices; ++v) {
      if (v == net.source || v == net.sink) continue;
      double lo = 1e300, hi = -1e300;
      for (int u : adj[v]) {
        lo = std::min(lo, h.values[u]);
        hi = std::max(hi, h.values[u]);
      }
      CHECK(h.values[v] >= lo - 1e-11);
      CHECK(h.values[v] <= hi + 1e-11);
      CHECK(std::abs(w.node_sum[v]) <= adj[v].size() * 1e-11);
      total += std::abs(w.node_sum[v]);
    }
    CHECK(total <= 2e-11);
    // What leaves the source arrives at the sink.
    CHECK(std::abs(w.intensity + w.node_sum[net.sink]) <= 1e-11 * net.edges.size());
  }
}

TEST_CASE("SplitMix64 reference outputs") {
  SplitMix64 rng(1234567);
  const std::uint64_t expected[] = {6457827717110365317ull, 3203168211198807973ull,
                                    9817491932198370423ull, 4593380528125082431ull,
                                    16408922859458223821ull};
  for (std::uint64_t e : expected) CHECK(rng.next() == e);
  SplitMix64 small(5);
  for (int k = 0; k < 1000; ++k) CHECK(small.below(7) < 7);
}

TEST_CASE("random-walk hitting probabilities") {
  const auto path = fixtures::solve_mesh(fixtures::path_subgraph());
  const HittingEstimate e = mc_hitting_probability(path.net, 0, 100000, 42);
  CHECK(std::abs(e.estimate - 0.5) <= 3 * e.std_error);
  CHECK(e.std_error == doctest::Approx(0.00158).epsilon(0.01));
  CHECK(mc_hitting_probability(path.net, path.net.source, 10, 1).estimate == 1.0);
  CHECK(mc_hitting_probability(path.net, path.net.sink, 10, 1).estimate == 0.0);

  const auto g2 = unit_square_g2();
  LatticeSubgraph sub = build_lattice_subgraph(fixtures::unit_square(), 2, {0.5, 0.5});
  const int left = g2.mesh.lattice_to_mesh[*sub.find({1, 2})];
  const HittingEstimate l = mc_hitting_probability(g2.net, left, 100000, 9);
  CHECK(std::abs(l.estimate - 0.5) <= 3 * l.std_error);

  // Streams depend only on (seed, walk index).
  const HittingEstimate again = mc_hitting_probability(g2.net, left, 100000, 9);
  CHECK(again.estimate == l.estimate);
  const HittingEstimate shorter = mc_hitting_probability(g2.net, left, 50000, 9);
  const HittingEstimate other = mc_hitting_probability(g2.net, left, 100000, 10);
  CHECK(other.estimate != l.estimate);
  CHECK(std::abs(shorter.estimate - 0.5) <= 3 * shorter.std_error);
}
