#include "sqtile/mapper.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

namespace sqtile {

namespace {

const char* kModule = "mapper";

std::optional<int> index_of(const std::vector<LatticePoint>& vertices, LatticePoint p) {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), p);
  if (it == vertices.end() || *it != p) return std::nullopt;
  return static_cast<int>(it - vertices.begin());
}

std::string describe(LatticePoint p) {
  return "(" + std::to_string(p.i) + ", " + std::to_string(p.j) + ")";
}

}  // namespace

double DiscreteConformalMap::spacing() const { return std::ldexp(1.0, -level); }

std::optional<Complex> DiscreteConformalMap::image(LatticePoint p) const {
  const auto k = index_of(vertices, p);
  if (!k) return std::nullopt;
  return images[*k];
}

DiscreteConformalMap vertex_images(const MeshGraph& g, const LatticeSubgraph& sub,
                                   const DualGraph& dual, const HarmonicField& h,
                                   const ConjugateField& c) {
  const PlaneMap& map = g.embedding.map;
  std::vector<std::vector<int>> faces(g.num_vertices());
  for (int d = 0; d < map.num_darts(); ++d) faces[map.tail[d]].push_back(dual.faces.left_face[d]);

  std::vector<double> re(g.num_vertices(), 0.0);
  for (int m = 0; m < g.num_vertices(); ++m) {
    auto& fs = faces[m];
    std::sort(fs.begin(), fs.end());
    fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
    double sum = 0.0;
    for (int f : fs) sum += c.values[f];
    re[m] = fs.empty() ? 0.0 : sum / double(fs.size());
  }

  DiscreteConformalMap out;
  out.level = sub.level;
  out.width = c.intensity;
  out.vertices = sub.vertices;
  out.images.resize(sub.vertices.size());
  for (std::size_t v = 0; v < sub.vertices.size(); ++v) {
    const int m = g.lattice_to_mesh[v];
    double im = h.values[m];
    if (m == g.t()) im = 1.0;
    if (m == g.b()) im = 0.0;
    out.images[v] = {re[m], im};
  }
  return out;
}

MapValue evaluate_map(const DiscreteConformalMap& m, const Point& p) {
  const double inv = std::ldexp(1.0, m.level);
  const double gx = p.x() * inv, gy = p.y() * inv;
  const double fx = std::floor(gx), fy = std::floor(gy);
  if (!std::isfinite(fx) || !std::isfinite(fy) || std::abs(fx) > 1e9 || std::abs(fy) > 1e9) {
    return {};
  }
  const double u = gx - fx, v = gy - fy;
  const LatticePoint p00{static_cast<std::int32_t>(fx), static_cast<std::int32_t>(fy)};
  const LatticePoint p10{p00.i + 1, p00.j}, p01{p00.i, p00.j + 1}, p11{p00.i + 1, p00.j + 1};

  // Corners with zero weight are not required.
  const double w00 = (1 - u) * (1 - v), w10 = u * (1 - v), w01 = (1 - u) * v, w11 = u * v;
  MapValue out;
  Complex acc{0.0, 0.0};
  const std::pair<LatticePoint, double> corners[] = {{p00, w00}, {p10, w10}, {p01, w01}, {p11, w11}};
  for (const auto& [q, w] : corners) {
    if (w == 0.0) continue;
    const auto img = m.image(q);
    if (!img) return out;
    acc += w * *img;
  }
  out.outside_mesh = false;
  out.value = acc;
  return out;
}

std::optional<double> LatticeFunction::at(LatticePoint p) const {
  const auto k = index_of(vertices, p);
  if (!k) return std::nullopt;
  return values[*k];
}

double discrete_partial(const LatticeFunction& f, Axis axis, LatticePoint z, int order) {
  if (order < 0) throw Error(ErrorCode::SchemaError, kModule, "derivative order must be >= 0");
  if (order == 0) {
    const auto v = f.at(z);
    if (!v) throw Error(ErrorCode::MissingNeighbor, kModule, "no value at " + describe(z));
    return *v;
  }
  const LatticePoint u = step(z, axis == Axis::Horizontal ? Dir::E : Dir::N);
  return std::ldexp(discrete_partial(f, axis, u, order - 1) - discrete_partial(f, axis, z, order - 1),
                    f.level);
}

LatticeFunction lattice_potential(const MeshGraph& g, const LatticeSubgraph& sub,
                                  const HarmonicField& h) {
  LatticeFunction f;
  f.level = sub.level;
  f.vertices = sub.vertices;
  f.values.resize(sub.vertices.size());
  for (std::size_t v = 0; v < sub.vertices.size(); ++v) {
    const int m = g.lattice_to_mesh[v];
    f.values[v] = m == g.t() ? 1.0 : m == g.b() ? 0.0 : h.values[m];
  }
  return f;
}

bool is_cr_vertex(const LatticeSubgraph& sub, int vertex) {
  const BoundaryLabel lab = sub.labels[vertex];
  return lab != BoundaryLabel::T && lab != BoundaryLabel::B && sub.degree(vertex) == 4;
}

CrVertexResidual cr_residual_at(const MeshGraph& g, const LatticeSubgraph& sub,
                                const DualGraph& dual, const HarmonicField& h,
                                const ConjugateField& c, int vertex) {
  if (vertex < 0 || vertex >= static_cast<int>(sub.vertices.size()) || !is_cr_vertex(sub, vertex)) {
    throw Error(ErrorCode::NotInterior, kModule,
                "vertex " + std::to_string(vertex) + " is not an interior degree-4 vertex");
  }
  auto pot = [&](int lattice_vertex) {
    const int m = g.lattice_to_mesh[lattice_vertex];
    return m == g.t() ? 1.0 : m == g.b() ? 0.0 : h.values[m];
  };
  // The face to the left of the dart leaving z in direction d is the cell
  // counter-clockwise after d.
  auto sector = [&](Dir d) { return c.values[dual.faces.left_face[g.dart_at(sub, vertex, d)]]; };
  const double ne = sector(Dir::E), nw = sector(Dir::N), se = sector(Dir::S);
  const double hz = pot(vertex);
  const double hn = pot(sub.neighbor[vertex][static_cast<std::size_t>(Dir::N)]);
  const double he = pot(sub.neighbor[vertex][static_cast<std::size_t>(Dir::E)]);
  const int n = sub.level;
  return {vertex, std::ldexp((ne - nw) - (hn - hz), n), std::ldexp((ne - se) + (he - hz), n)};
}

CrReport cr_residual(const MeshGraph& g, const LatticeSubgraph& sub, const DualGraph& dual,
                     const HarmonicField& h, const ConjugateField& c) {
  CrReport rep;
  for (int v = 0; v < static_cast<int>(sub.vertices.size()); ++v) {
    if (!is_cr_vertex(sub, v)) continue;
    const CrVertexResidual r = cr_residual_at(g, sub, dual, h, c, v);
    rep.max_residual = std::max({rep.max_residual, std::abs(r.along_x), std::abs(r.along_y)});
    rep.vertices.push_back(r);
  }
  return rep;
}

double max_square_side(const SquareTiling& t) {
  double w = 0.0;
  for (const Square& s : t.squares) w = std::max(w, s.side);
  return w;
}

double max_square_side(const SquareTiling& t, const MeshGraph& g, const LatticeSubgraph& sub,
                        const Disk& region) {
  double w = 0.0;
  for (const Square& s : t.squares) {
    const LatticeEdge& e = sub.edges[g.edges[s.edge].lattice_edge];
    if ((sub.position(e.a) - region.center).norm() > region.radius) continue;
    if ((sub.position(e.b) - region.center).norm() > region.radius) continue;
    w = std::max(w, s.side);
  }
  return w;
}

double duffin_lower_bound(const MeshGraph& g) {
  std::vector<std::vector<int>> adj(g.num_vertices());
  for (const MeshEdge& e : g.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<int> dist(g.num_vertices(), -1);
  std::deque<int> queue{g.t()};
  dist[g.t()] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int w : adj[u]) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  if (dist[g.b()] < 0) throw Error(ErrorCode::Disconnected, kModule, "b_n is unreachable from t_n");
  const double d = dist[g.b()];
  return d * d / double(g.num_edges());
}

}  // namespace sqtile
