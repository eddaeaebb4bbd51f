#include "sqtile/mesh.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <string>
#include <tuple>

#include "sqtile/error.hpp"

namespace sqtile {

namespace {

const char* kModule = "mesh";

[[noreturn]] void embedding_failure(const std::string& msg) {
  throw Error(ErrorCode::NonPlanarEmbedding, kModule, msg);
}

int lattice_edge_index(const LatticeSubgraph& sub, int v, Dir d) {
  const int w = sub.neighbor[v][static_cast<std::size_t>(d)];
  if (w < 0) return -1;
  const bool forward = (d == Dir::E || d == Dir::N);
  const int a = forward ? v : w;
  const int b = forward ? w : v;
  auto it = std::lower_bound(sub.edges.begin(), sub.edges.end(), std::make_pair(a, b),
                             [](const LatticeEdge& e, const std::pair<int, int>& key) {
                               return std::tie(e.a, e.b) < std::tie(key.first, key.second);
                             });
  return static_cast<int>(it - sub.edges.begin());
}

// Lattice component as a plane map, with the dart leaving each vertex in
// each direction (-1 when the edge is absent).
struct LatticeMap {
  PlaneMap map;
  std::vector<std::array<int, 4>> dart;
};

LatticeMap lattice_map(const LatticeSubgraph& sub) {
  LatticeMap lm;
  const int n = static_cast<int>(sub.vertices.size());
  lm.map.num_vertices = n;
  lm.map.tail.resize(2 * sub.edges.size());
  lm.map.next_ccw.resize(2 * sub.edges.size());
  lm.dart.assign(n, {-1, -1, -1, -1});
  for (std::size_t k = 0; k < sub.edges.size(); ++k) {
    const LatticeEdge& e = sub.edges[k];
    const bool horizontal = e.axis == Axis::Horizontal;
    lm.dart[e.a][static_cast<std::size_t>(horizontal ? Dir::E : Dir::N)] = int(2 * k);
    lm.dart[e.b][static_cast<std::size_t>(horizontal ? Dir::W : Dir::S)] = int(2 * k + 1);
    lm.map.tail[2 * k] = e.a;
    lm.map.tail[2 * k + 1] = e.b;
  }
  for (int v = 0; v < n; ++v) {
    for (std::size_t k = 0; k < 4; ++k) {
      const int d = lm.dart[v][k];
      if (d < 0) continue;
      for (std::size_t s = 1; s <= 4; ++s) {
        const int nd = lm.dart[v][(k + s) % 4];
        if (nd >= 0) {
          lm.map.next_ccw[d] = nd;
          break;
        }
      }
    }
  }
  return lm;
}

struct Corner {
  int walk_pos = 0;
  int vertex = 0;
  int dart = 0;  // lattice dart whose counter-clockwise sector holds the corner
  BoundaryLabel label = BoundaryLabel::None;
};

}  // namespace

int MeshGraph::dart_at(const LatticeSubgraph& sub, int lattice_vertex, Dir d) const {
  const int k = lattice_edge_index(sub, lattice_vertex, d);
  if (k < 0) return -1;
  const int e = lattice_edge_to_mesh[k];
  if (e < 0) return -1;
  return 2 * e + (sub.edges[k].a == lattice_vertex ? 0 : 1);
}

MeshGraph contract_marked_arcs(const LatticeSubgraph& sub) {
  const int n = static_cast<int>(sub.vertices.size());
  if (static_cast<int>(sub.labels.size()) != n) {
    throw Error(ErrorCode::SchemaError, kModule, "boundary labels have not been assigned");
  }

  MeshGraph g;
  g.level = sub.level;
  g.lattice_to_mesh.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    const BoundaryLabel lab = sub.labels[v];
    if (lab == BoundaryLabel::T || lab == BoundaryLabel::B) continue;
    g.lattice_to_mesh[v] = g.num_free++;
    g.free_to_lattice.push_back(v);
  }
  for (int v = 0; v < n; ++v) {
    if (sub.labels[v] == BoundaryLabel::T) g.lattice_to_mesh[v] = g.t();
    if (sub.labels[v] == BoundaryLabel::B) g.lattice_to_mesh[v] = g.b();
  }
  g.labels.assign(g.num_vertices(), BoundaryLabel::None);
  for (int m = 0; m < g.num_free; ++m) g.labels[m] = sub.labels[g.free_to_lattice[m]];
  g.labels[g.t()] = BoundaryLabel::T;
  g.labels[g.b()] = BoundaryLabel::B;

  // Identification drops T-T and B-B edges and keeps parallel edges.
  g.lattice_edge_to_mesh.assign(sub.edges.size(), -1);
  for (std::size_t k = 0; k < sub.edges.size(); ++k) {
    const LatticeEdge& e = sub.edges[k];
    const int mu = g.lattice_to_mesh[e.a];
    const int mv = g.lattice_to_mesh[e.b];
    if (mu == mv) continue;
    g.lattice_edge_to_mesh[k] = g.num_edges();
    g.edges.push_back({mu, mv, static_cast<int>(k), e.axis});
  }
  if (g.edges.empty()) {
    throw Error(ErrorCode::Disconnected, kModule, "no edge survives the identification");
  }

  const LatticeMap lm = lattice_map(sub);
  const FaceSet lattice_faces = trace_faces(lm.map);

  // The unbounded face is the only one with non-positive signed area; the
  // bounded faces are lattice cells traced counter-clockwise.
  std::vector<std::int64_t> area2(lattice_faces.count, 0);
  for (int d = 0; d < lm.map.num_darts(); ++d) {
    const LatticePoint p = sub.vertices[lm.map.tail[d]];
    const LatticePoint q = sub.vertices[lm.map.head(d)];
    area2[lattice_faces.left_face[d]] +=
        std::int64_t(p.i) * q.j - std::int64_t(p.j) * q.i;
  }
  int outer = -1;
  for (int f = 0; f < lattice_faces.count; ++f) {
    if (area2[f] <= 0) {
      if (outer >= 0) embedding_failure("lattice component has two unbounded faces");
      outer = f;
    }
  }
  if (outer < 0) embedding_failure("lattice component has no unbounded face");

  // Walk the unbounded face (clockwise around the component).
  const std::vector<int> succ = lm.map.face_successor();
  std::vector<int> walk_pos(lm.map.num_darts(), -1);
  int start = -1;
  for (int d = 0; d < lm.map.num_darts(); ++d) {
    if (lattice_faces.left_face[d] == outer) {
      start = d;
      break;
    }
  }
  {
    int cur = start, pos = 0;
    do {
      walk_pos[cur] = pos++;
      cur = succ[cur];
    } while (cur != start);
  }

  // Each T_n / B_n vertex is attached to its pole through the corner that
  // holds its first edge crossing the matching arc.
  std::vector<Corner> corners;
  for (int v = 0; v < n; ++v) {
    const BoundaryLabel lab = sub.labels[v];
    if (lab != BoundaryLabel::T && lab != BoundaryLabel::B) continue;
    const Arc arc = lab == BoundaryLabel::T ? Arc::T : Arc::B;
    int dir = -1;
    for (std::size_t k = 0; k < 4; ++k) {
      if (has_arc(sub.crossing[v][k], arc)) {
        dir = static_cast<int>(k);
        break;
      }
    }
    int dart = -1;
    for (int s = 1; s <= 4 && dart < 0; ++s) dart = lm.dart[v][(dir + 4 - s) % 4];
    if (dart < 0) embedding_failure("isolated boundary vertex");
    if (lattice_faces.left_face[dart] != outer) {
      embedding_failure("boundary crossing of vertex " + std::to_string(v) +
                        " does not lie on the unbounded face");
    }
    corners.push_back({walk_pos[dart], v, dart, lab});
  }
  std::sort(corners.begin(), corners.end(),
            [](const Corner& x, const Corner& y) { return x.walk_pos < y.walk_pos; });

  // T corners must form one contiguous run of the cyclic walk, B corners
  // the complementary run.
  const std::size_t nc = corners.size();
  std::size_t first_t = nc, first_b = nc, changes = 0;
  for (std::size_t k = 0; k < nc; ++k) {
    const Corner& prev = corners[(k + nc - 1) % nc];
    if (corners[k].label == prev.label) continue;
    ++changes;
    (corners[k].label == BoundaryLabel::T ? first_t : first_b) = k;
  }
  if (changes != 2) embedding_failure("T_n and B_n interleave along the outer boundary");

  const int num_edges = g.num_edges();
  const int pole_edge = num_edges;
  PlaneMap& map = g.embedding.map;
  map.num_vertices = g.num_vertices();
  map.tail.assign(2 * (num_edges + 1), -1);
  map.next_ccw.assign(2 * (num_edges + 1), -1);
  g.embedding.pole_dart = 2 * pole_edge;

  auto mesh_dart = [&](int lattice_dart) {
    const int e = g.lattice_edge_to_mesh[lattice_dart / 2];
    return e < 0 ? -1 : 2 * e + (lattice_dart & 1);
  };
  for (int d = 0; d < lm.map.num_darts(); ++d) {
    const int md = mesh_dart(d);
    if (md >= 0) map.tail[md] = g.lattice_to_mesh[lm.map.tail[d]];
  }
  map.tail[2 * pole_edge] = g.t();
  map.tail[2 * pole_edge + 1] = g.b();

  for (int m = 0; m < g.num_free; ++m) {
    const int v = g.free_to_lattice[m];
    for (int d : lm.dart[v]) {
      if (d >= 0) map.next_ccw[mesh_dart(d)] = mesh_dart(lm.map.next_ccw[d]);
    }
  }

  // The rotation of a pole lists, in walk order, each attached vertex's
  // darts starting just after its corner, and ends with the pole arc.
  auto build_pole = [&](std::size_t first, BoundaryLabel lab, int pole_dart) {
    std::vector<int> rotation;
    for (std::size_t k = 0; k < nc; ++k) {
      const Corner& c = corners[(first + k) % nc];
      if (c.label != lab) break;
      int d = c.dart;
      do {
        d = lm.map.next_ccw[d];
        const int md = mesh_dart(d);
        if (md >= 0) rotation.push_back(md);
      } while (d != c.dart);
    }
    rotation.push_back(pole_dart);
    for (std::size_t k = 0; k < rotation.size(); ++k) {
      map.next_ccw[rotation[k]] = rotation[(k + 1) % rotation.size()];
    }
  };
  build_pole(first_t, BoundaryLabel::T, 2 * pole_edge);
  build_pole(first_b, BoundaryLabel::B, 2 * pole_edge + 1);

  g.degree.assign(g.num_vertices(), 0);
  for (const MeshEdge& e : g.edges) {
    ++g.degree[e.u];
    ++g.degree[e.v];
  }

  // Identification cannot disconnect a connected component, but a caller
  // may hand in a hand-built subgraph.
  std::vector<std::vector<int>> adj(g.num_vertices());
  for (const MeshEdge& e : g.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<char> seen(g.num_vertices(), 0);
  std::deque<int> queue{g.t()};
  seen[g.t()] = 1;
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
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    throw Error(ErrorCode::Disconnected, kModule, "t_n and b_n are not in one component");
  }
  return g;
}

DualGraph build_dual(const PolarMap& g) {
  DualGraph dual;
  dual.primal = g;
  dual.faces = trace_faces(g.map);
  if (euler_characteristic(g.map, dual.faces) != 2) {
    embedding_failure("rotation system is not planar (V - E + F = " +
                      std::to_string(euler_characteristic(g.map, dual.faces)) + ")");
  }
  dual.l = dual.faces.left_face[g.pole_dart];
  dual.r = dual.faces.right_face(g.pole_dart);
  if (dual.l == dual.r) embedding_failure("pole arc has the same face on both sides");
  dual.dual.map = dual_map(g.map, dual.faces);
  dual.dual.pole_dart = PlaneMap::twin(g.pole_dart);
  return dual;
}

DualGraph build_dual(const MeshGraph& g) {
  DualGraph dual = build_dual(g.embedding);
  // Tally the sides seen from L_n and R_n vertices: an L_n vertex touching
  // r but never l (or the mirror case) means the poles were swapped.
  int l_on_l = 0, l_on_r = 0, r_on_l = 0, r_on_r = 0;
  const PlaneMap& map = g.embedding.map;
  for (int d = 0; d < map.num_darts(); ++d) {
    const BoundaryLabel lab = g.labels[map.tail[d]];
    const int f = dual.faces.left_face[d];
    if (lab == BoundaryLabel::L) {
      l_on_l += f == dual.l;
      l_on_r += f == dual.r;
    } else if (lab == BoundaryLabel::R) {
      r_on_l += f == dual.l;
      r_on_r += f == dual.r;
    }
  }
  if ((l_on_r > 0 && l_on_l == 0) || (r_on_l > 0 && r_on_r == 0)) {
    embedding_failure("poles l_n and r_n are not on the L_n and R_n sides");
  }
  return dual;
}

}  // namespace sqtile
