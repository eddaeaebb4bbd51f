#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "sqtile/conjugate.hpp"
#include "sqtile/error.hpp"
#include "sqtile/harmonic.hpp"
#include "sqtile/lattice.hpp"
#include "sqtile/mesh.hpp"
#include "sqtile/tiling.hpp"

namespace sqtile {

using Complex = std::complex<double>;

// Images s_n(z) of the lattice vertices, with bilinear evaluation on the
// lattice cells whose four corners all belong to the mesh.
struct DiscreteConformalMap {
  int level = 0;
  double width = 0.0;                  // I*; images lie in [0, width] x [0, 1]
  std::vector<LatticePoint> vertices;  // sorted, as in the lattice subgraph
  std::vector<Complex> images;

  double spacing() const;
  std::optional<Complex> image(LatticePoint p) const;
};

// Re s(z) is the mean of h' over the distinct faces around z in the mesh,
// Im s(z) = h(z). T_n and B_n vertices use the faces around t_n and b_n.
DiscreteConformalMap vertex_images(const MeshGraph& g, const LatticeSubgraph& sub,
                                   const DualGraph& dual, const HarmonicField& h,
                                   const ConjugateField& c);

struct MapValue {
  bool outside_mesh = true;
  Complex value{0.0, 0.0};
};

// Bilinear interpolation of the corner images. Points on a lattice edge or
// vertex only need the corners they touch.
MapValue evaluate_map(const DiscreteConformalMap& m, const Point& p);

// A real function on lattice vertices.
struct LatticeFunction {
  int level = 0;
  std::vector<LatticePoint> vertices;  // sorted
  std::vector<double> values;

  std::optional<double> at(LatticePoint p) const;
};

// k-fold forward difference 2^n (g(z + 2^-n e) - g(z)) along the axis.
// Throws MissingNeighbor when a needed vertex carries no value.
double discrete_partial(const LatticeFunction& f, Axis axis, LatticePoint z, int order = 1);

// h on lattice vertices (1 on T_n, 0 on B_n).
LatticeFunction lattice_potential(const MeshGraph& g, const LatticeSubgraph& sub,
                                  const HarmonicField& h);

struct CrVertexResidual {
  int vertex = 0;  // lattice vertex index
  double along_y = 0.0;  // 2^n[(h'(NE) - h'(NW)) - (h(z + i 2^-n) - h(z))]
  double along_x = 0.0;  // 2^n[(h'(NE) - h'(SE)) + (h(z + 2^-n) - h(z))]
};

struct CrReport {
  std::vector<CrVertexResidual> vertices;
  double max_residual = 0.0;
};

// True for vertices outside T_n and B_n with all four lattice neighbours.
bool is_cr_vertex(const LatticeSubgraph& sub, int vertex);

// Throws NotInterior when the vertex does not qualify.
CrVertexResidual cr_residual_at(const MeshGraph& g, const LatticeSubgraph& sub,
                                const DualGraph& dual, const HarmonicField& h,
                                const ConjugateField& c, int vertex);

CrReport cr_residual(const MeshGraph& g, const LatticeSubgraph& sub, const DualGraph& dual,
                     const HarmonicField& h, const ConjugateField& c);

struct Disk {
  Point center = Point::Zero();
  double radius = 0.0;
};

// W(n): largest square side, optionally over edges with both lattice
// endpoints in the closed disk.
double max_square_side(const SquareTiling& t);
double max_square_side(const SquareTiling& t, const MeshGraph& g, const LatticeSubgraph& sub,
                       const Disk& region);

// d^2 / |E| with d the number of edges on a shortest t-b path: the extremal
// length of the metric that gives every edge the same length.
double duffin_lower_bound(const MeshGraph& g);

// Every stage of the pipeline at one level.
struct LevelResult {
  LatticeSubgraph sub;
  MeshGraph mesh;
  DualGraph dual;
  Network network;
  HarmonicField h;
  EdgeFlow flow;
  ConjugateField conjugate;
  SquareTiling tiling;
  TilingReport tiling_report;
  DiscreteConformalMap map;
  CrReport cr;
  double duffin = 0.0;
  double max_side = 0.0;
  double wall_ms = 0.0;
};

LevelResult run_level(const PlanarDomain& domain, const Point& seed, int level, double tol);

struct LevelFailure {
  ErrorCode code = ErrorCode::SchemaError;
  std::string module;
  std::string message;
};

struct LevelDiagnostics {
  int level = 0;
  double intensity = 0.0;
  double r_eff = 0.0;
  double duffin_lb = 0.0;
  double max_side = 0.0;
  double cr_residual = 0.0;
  double node_residual = 0.0;
  double cycle_residual = 0.0;
  int solve_iters = 0;
  double wall_ms = 0.0;
  std::optional<LevelFailure> failure;
};

struct ConvergenceReport {
  std::vector<LevelDiagnostics> levels;

  // |I*_{n+1} - I*_n| for consecutive successful levels.
  std::vector<double> increments() const;
  bool complete() const;
};

LevelDiagnostics diagnostics_of(const LevelResult& r);

// Runs every level in [first, last]; a failing level is recorded and the
// sweep continues.
ConvergenceReport convergence_sweep(const PlanarDomain& domain, const Point& seed, int first,
                                    int last, double tol);

}  // namespace sqtile
