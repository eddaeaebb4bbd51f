#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "sqtile/harmonic.hpp"
#include "sqtile/mesh.hpp"

namespace sqtile {

enum class SpanningTree { BreadthFirst, DepthFirst };

// Face potential obtained by integrating the rotated flow from l.
struct ConjugateField {
  Eigen::VectorXd values;     // per face of the pole-augmented map
  Eigen::VectorXd dual_flow;  // per edge e: w'(left face of 2e -> right face of 2e) = w(e)
  double intensity = 0.0;
  double cycle_residual = 0.0;
  std::uint64_t fingerprint = 0;
};

ConjugateField conjugate_potential(const DualGraph& dual, const EdgeFlow& flow,
                                   SpanningTree tree = SpanningTree::BreadthFirst);

// max over dual edges of |h'(x) - h'(y) - w'(x->y)|; zero on tree edges.
double cycle_residual(const DualGraph& dual, const ConjugateField& field);

}  // namespace sqtile
