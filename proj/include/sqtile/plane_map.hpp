#pragma once

#include <cstdint>
#include <vector>

namespace sqtile {

// Combinatorial map of a plane multigraph. Edge e owns darts 2e (first
// endpoint to second) and 2e+1 (reverse); next_ccw gives the rotation of
// darts leaving a vertex in counter-clockwise order.
struct PlaneMap {
  int num_vertices = 0;
  std::vector<int> tail;      // per dart
  std::vector<int> next_ccw;  // per dart

  int num_darts() const { return static_cast<int>(tail.size()); }
  int num_edges() const { return num_darts() / 2; }
  static int twin(int dart) { return dart ^ 1; }
  int head(int dart) const { return tail[twin(dart)]; }

  // Inverse rotation.
  std::vector<int> prev_ccw() const;

  // Next dart along the face on the left of `dart`.
  std::vector<int> face_successor() const;

  std::uint64_t fingerprint() const;
};

struct FaceSet {
  int count = 0;
  std::vector<int> left_face;  // per dart

  int right_face(int dart) const { return left_face[PlaneMap::twin(dart)]; }
};

FaceSet trace_faces(const PlaneMap& map);

// Combinatorial dual. Dart d of the primal becomes the dual dart from the
// face on the left of d to the face on its right; the rotation around a
// dual vertex follows the boundary walk of the corresponding face.
PlaneMap dual_map(const PlaneMap& map, const FaceSet& faces);

// V - E + F for the connected map; 2 iff the rotation system is planar.
int euler_characteristic(const PlaneMap& map, const FaceSet& faces);

// A plane map with a distinguished pole arc running from the source to the
// sink. The arc is excluded from the electrical network and only splits
// the outer region into two poles.
struct PolarMap {
  PlaneMap map;
  int pole_dart = -1;

  int pole_edge() const { return pole_dart / 2; }
  int source() const { return map.tail[pole_dart]; }
  int sink() const { return map.head(pole_dart); }
};

}  // namespace sqtile
