#pragma once

#include <vector>

#include "sqtile/lattice.hpp"
#include "sqtile/plane_map.hpp"

namespace sqtile {

struct MeshEdge {
  int u = 0;             // mesh endpoint of the lattice edge's lower-left vertex
  int v = 0;
  int lattice_edge = 0;  // originating lattice segment
  Axis axis = Axis::Horizontal;
};

// The lattice component with T_n and B_n identified into t and b. Vertices
// 0..num_free-1 are the remaining lattice vertices in sorted order, then t,
// then b. The embedding carries the edges 0..E-1 plus the pole arc t->b as
// edge E; its rotation system is the merged lattice rotation.
struct MeshGraph {
  int level = 0;
  int num_free = 0;
  std::vector<int> free_to_lattice;   // per free vertex
  std::vector<int> lattice_to_mesh;   // per lattice vertex
  std::vector<int> lattice_edge_to_mesh;  // -1 for dropped self-loops
  std::vector<BoundaryLabel> labels;  // per mesh vertex
  std::vector<MeshEdge> edges;
  std::vector<int> degree;            // edge multiplicity per mesh vertex
  PolarMap embedding;

  int t() const { return num_free; }
  int b() const { return num_free + 1; }
  int num_vertices() const { return num_free + 2; }
  int num_edges() const { return static_cast<int>(edges.size()); }

  // Mesh dart leaving the lattice vertex in direction d, or -1.
  int dart_at(const LatticeSubgraph& sub, int lattice_vertex, Dir d) const;
};

MeshGraph contract_marked_arcs(const LatticeSubgraph& sub);

// Faces of the pole-augmented plane map and its dual. The poles l and r are
// the faces to the left and right of the pole dart; the dual carries the
// dual of the pole arc as its own pole dart, running r -> l.
struct DualGraph {
  PolarMap primal;
  FaceSet faces;
  int l = -1;
  int r = -1;
  PolarMap dual;

  int num_faces() const { return faces.count; }
  int num_edges() const { return primal.map.num_edges() - 1; }
};

DualGraph build_dual(const PolarMap& g);

// As above, and checks that l lies on the L_n side and r on the R_n side.
DualGraph build_dual(const MeshGraph& g);

}  // namespace sqtile
