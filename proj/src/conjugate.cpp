#include "sqtile/conjugate.hpp"

#include <cmath>
#include <deque>
#include <vector>

#include "sqtile/error.hpp"

namespace sqtile {

ConjugateField conjugate_potential(const DualGraph& dual, const EdgeFlow& flow,
                                   SpanningTree tree) {
  const int num_edges = dual.num_edges();
  if (flow.fingerprint != dual.primal.map.fingerprint() || flow.flow.size() != num_edges) {
    throw Error(ErrorCode::InconsistentFields, "conjugate", "flow belongs to another mesh");
  }

  ConjugateField field;
  field.fingerprint = flow.fingerprint;
  field.intensity = flow.intensity;
  field.dual_flow = flow.flow;

  // Incident dual darts per face, in edge order. Dart 2e runs from the
  // left face of primal dart 2e to its right face.
  std::vector<std::vector<int>> out(dual.num_faces());
  for (int e = 0; e < num_edges; ++e) {
    out[dual.faces.left_face[2 * e]].push_back(2 * e);
    out[dual.faces.left_face[2 * e + 1]].push_back(2 * e + 1);
  }
  auto dart_flow = [&](int d) { return (d & 1) ? -flow.flow[d / 2] : flow.flow[d / 2]; };

  std::vector<char> seen(dual.num_faces(), 0);
  field.values = Eigen::VectorXd::Zero(dual.num_faces());
  std::deque<int> frontier{dual.l};
  seen[dual.l] = 1;
  while (!frontier.empty()) {
    int f;
    if (tree == SpanningTree::BreadthFirst) {
      f = frontier.front();
      frontier.pop_front();
    } else {
      f = frontier.back();
      frontier.pop_back();
    }
    for (int d : out[f]) {
      const int g = dual.faces.right_face(d);
      if (seen[g]) continue;
      seen[g] = 1;
      // h'(g) = w'(g -> f) + h'(f), and w'(g -> f) = -w'(f -> g).
      field.values[g] = field.values[f] - dart_flow(d);
      frontier.push_back(g);
    }
  }
  if (!seen[dual.r]) {
    throw Error(ErrorCode::PoleUnreachable, "conjugate", "r_n is not reachable from l_n");
  }
  field.cycle_residual = cycle_residual(dual, field);
  return field;
}

double cycle_residual(const DualGraph& dual, const ConjugateField& field) {
  double worst = 0.0;
  for (int e = 0; e < dual.num_edges(); ++e) {
    const int x = dual.faces.left_face[2 * e];
    const int y = dual.faces.right_face(2 * e);
    worst = std::max(worst, std::abs(field.values[x] - field.values[y] - field.dual_flow[e]));
  }
  return worst;
}

}  // namespace sqtile
