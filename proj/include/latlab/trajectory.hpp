#pragma once

#include <functional>
#include <vector>

#include "latlab/height.hpp"

namespace latlab {

// Stepper for g_t u(w) x along increasing t. The basis is kept reduced and
// renormalized each step, so entries stay bounded as long as the trajectory
// does not dive too deep into the cusp.
class Trajectory {
 public:
  Trajectory(const FlowSpec& spec, const LatticePoint& x,
             const std::vector<double>& w)
      : spec_(spec), point_(spec.u(w) * x.basis), scale_(spec.d) {
    for (int k = 0; k < spec.d; ++k) scale_[k] = 0.0;
    reduce();
  }

  // Advance by dt (row scaling by the diagonal flow).
  void step(double dt) {
    for (int k = 0; k < spec_.d; ++k)
      point_.basis.row(k) *= std::exp(spec_.exponents[k] * dt);
    t_ += dt;
    reduce();
  }

  double time() const { return t_; }

  const LatticePoint& point() const { return point_; }

  // Shortest vector of the current lattice; the basis is kept reduced, and
  // for d = 2 Lagrange-Gauss reduction makes the first column minimal.
  double lambda1() const {
    if (spec_.d == 2)
      return std::min(point_.basis.col(0).norm(), point_.basis.col(1).norm());
    return shortest_vector_norm(point_.basis);
  }

  double height(const HeightParams& params) const {
    if (spec_.d == 2) return phi_of_norm(params, 1, lambda1());
    return alpha(params, point_);
  }

 private:
  void reduce() {
    if (spec_.d == 2)
      lagrange_gauss(point_.basis);
    else
      lll_reduce(point_.basis);
    point_.renormalize();
  }

  FlowSpec spec_;
  LatticePoint point_;
  std::vector<double> scale_;
  double t_ = 0.0;
};

}  // namespace latlab
