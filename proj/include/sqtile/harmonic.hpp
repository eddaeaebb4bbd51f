#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "sqtile/plane_map.hpp"

namespace sqtile {

// Unit-conductance multigraph with two poles held at potential 1 (source)
// and 0 (sink). Parallel edges count with multiplicity; loops carry no
// current and are ignored by the solver and the walk.
struct Network {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;
  int source = -1;
  int sink = -1;
  std::uint64_t fingerprint = 0;
};

// Every edge of the map except the pole arc, which must be the last edge.
Network network_of(const PolarMap& g);

struct SolverStats {
  int iterations = 0;
  double residual_l1 = 0.0;  // sum of |Laplacian residual| over free vertices
  double wall_ms = 0.0;
};

struct HarmonicField {
  Eigen::VectorXd values;
  double residual = 0.0;  // max over free vertices of |h(u) - mean of neighbours|
  double tol = 0.0;
  SolverStats stats;
  std::uint64_t fingerprint = 0;
};

// Result of a preconditioned conjugate-gradient run.
template <typename Scalar>
struct CgResult {
  int iterations = 0;
  Scalar residual = 0;  // 1-norm of b - Ax
  bool converged = false;
};

// Jacobi-preconditioned conjugate gradients on a symmetric positive definite
// system. Stops once the true residual b - Ax has 1-norm at most `tol`,
// restarting from the current iterate if the recurrence drifted.
template <typename Scalar>
CgResult<Scalar> jacobi_pcg(const Eigen::SparseMatrix<Scalar>& A,
                            const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& b,
                            Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& x, Scalar tol,
                            int max_iterations) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  CgResult<Scalar> out;
  const Vec inv_diag = A.diagonal().cwiseInverse();
  while (true) {
    Vec r = b - A * x;
    out.residual = r.template lpNorm<1>();
    if (out.residual <= tol) {
      out.converged = true;
      return out;
    }
    if (out.iterations >= max_iterations) return out;

    Vec z = inv_diag.cwiseProduct(r);
    Vec p = z;
    Scalar rz = r.dot(z);
    while (out.iterations < max_iterations) {
      ++out.iterations;
      const Vec q = A * p;
      const Scalar alpha = rz / p.dot(q);
      x.noalias() += alpha * p;
      r.noalias() -= alpha * q;
      if (r.template lpNorm<1>() <= tol) break;
      z = inv_diag.cwiseProduct(r);
      const Scalar rz_next = r.dot(z);
      p = z + (rz_next / rz) * p;
      rz = rz_next;
    }
  }
}

// h(source) = 1, h(sink) = 0, harmonic elsewhere. The solve runs in long
// double until the node-law residuals sum to at most tol in absolute
// value, so no sum of them over a region of the mesh exceeds tol either.
// Throws Disconnected or SolveDiverged. A non-positive max_iterations
// selects 50 * sqrt(V).
HarmonicField solve_harmonic(const Network& net, double tol = 1e-10, int max_iterations = 0);

// Ohm flow w(x->y) = h(x) - h(y), indexed by edge in the stored direction.
struct EdgeFlow {
  Eigen::VectorXd flow;
  double intensity = 0.0;       // total flow out of the source
  Eigen::VectorXd node_sum;     // sum of outgoing flow per vertex
  std::uint64_t fingerprint = 0;

  double max_node_residual(const Network& net) const;
};

EdgeFlow edge_flow(const Network& net, const HarmonicField& h);

struct HittingEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::int64_t walks = 0;
};

// Fraction of simple random walks from `vertex` that reach the source
// before the sink. Walk k draws from its own SplitMix64 stream keyed by
// (seed, k), so the result does not depend on evaluation order.
HittingEstimate mc_hitting_probability(const Network& net, int vertex, std::int64_t walks,
                                       std::uint64_t seed);

// SplitMix64: state advances by a fixed odd increment and each output is a
// bijective mix of the state, so the n-th value is a function of (seed, n).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform integer in [0, n) by multiply-shift.
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next()) * n) >> 64);
  }

 private:
  std::uint64_t state_;
};

}  // namespace sqtile
