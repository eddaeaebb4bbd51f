#include "sqtile/plane_map.hpp"

namespace sqtile {

std::vector<int> PlaneMap::prev_ccw() const {
  std::vector<int> prev(next_ccw.size());
  for (int d = 0; d < num_darts(); ++d) prev[next_ccw[d]] = d;
  return prev;
}

std::vector<int> PlaneMap::face_successor() const {
  // Arriving along d at its head, the face on the left continues with the
  // dart one step clockwise from the reverse of d.
  const std::vector<int> prev = prev_ccw();
  std::vector<int> succ(next_ccw.size());
  for (int d = 0; d < num_darts(); ++d) succ[d] = prev[twin(d)];
  return succ;
}

std::uint64_t PlaneMap::fingerprint() const {
  // FNV-1a over the vertex count and both permutations.
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t v) {
    for (int k = 0; k < 8; ++k) {
      h ^= (v >> (8 * k)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  mix(static_cast<std::uint64_t>(num_vertices));
  for (int t : tail) mix(static_cast<std::uint64_t>(t));
  for (int n : next_ccw) mix(static_cast<std::uint64_t>(n));
  return h;
}

FaceSet trace_faces(const PlaneMap& map) {
  FaceSet faces;
  faces.left_face.assign(map.tail.size(), -1);
  const std::vector<int> succ = map.face_successor();
  for (int d = 0; d < map.num_darts(); ++d) {
    if (faces.left_face[d] >= 0) continue;
    int cur = d;
    do {
      faces.left_face[cur] = faces.count;
      cur = succ[cur];
    } while (cur != d);
    ++faces.count;
  }
  return faces;
}

PlaneMap dual_map(const PlaneMap& map, const FaceSet& faces) {
  PlaneMap dual;
  dual.num_vertices = faces.count;
  dual.tail = faces.left_face;
  dual.next_ccw = map.face_successor();
  return dual;
}

int euler_characteristic(const PlaneMap& map, const FaceSet& faces) {
  return map.num_vertices - map.num_edges() + faces.count;
}

}  // namespace sqtile
