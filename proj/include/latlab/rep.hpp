#pragma once

#include <functional>
#include <string>
#include <vector>

#include "latlab/flow.hpp"

namespace latlab {

// Finite dimensional representation of SL_d in a basis that diagonalizes the
// one-parameter diagonal subgroup; z_weights[k] is the log-eigenvalue of g_1
// on basis vector k, so pi_+ is a coordinate projection.
struct Representation {
  std::string name;
  int dim = 0;
  std::vector<double> z_weights;
  std::function<Mat(const Mat&)> act;

  Vec project_plus(const Vec& v, double tol = 1e-12) const {
    Vec out = v;
    for (int k = 0; k < dim; ++k)
      if (z_weights[k] <= tol) out[k] = 0.0;
    return out;
  }
};

inline Representation make_wedge_rep(const FlowSpec& spec, int degree) {
  if (degree <= 0 || degree >= spec.d)
    throw usage_error("wedge representation: degree out of range");
  Representation rep;
  rep.name = "wedge" + std::to_string(degree);
  const auto subs = lex_subsets(spec.d, degree);
  rep.dim = static_cast<int>(subs.size());
  rep.z_weights.resize(rep.dim);
  for (int k = 0; k < rep.dim; ++k) {
    double wsum = 0.0;
    for (int idx : subs[k]) wsum += spec.exponents[idx];
    rep.z_weights[k] = wsum;
  }
  const int deg = degree;
  rep.act = [deg](const Mat& g) { return exterior_action(g, deg); };
  return rep;
}

// Adjoint representation on sl_d: basis { E_jk : j != k } in lexicographic
// (j,k) order followed by the traceless diagonals E_ll - E_{l+1,l+1}.
inline Representation make_adjoint_rep(const FlowSpec& spec) {
  const int d = spec.d;
  Representation rep;
  rep.name = "adjoint";
  rep.dim = d * d - 1;
  std::vector<Mat> basis;
  basis.reserve(rep.dim);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k)
      if (j != k) {
        Mat e = Mat::Zero(d, d);
        e(j, k) = 1.0;
        basis.push_back(e);
        rep.z_weights.push_back(spec.exponents[j] - spec.exponents[k]);
      }
  for (int l = 0; l + 1 < d; ++l) {
    Mat h = Mat::Zero(d, d);
    h(l, l) = 1.0;
    h(l + 1, l + 1) = -1.0;
    basis.push_back(h);
    rep.z_weights.push_back(0.0);
  }
  // Coordinate maps via the vectorized basis matrix.
  Eigen::MatrixXd S(d * d, rep.dim);
  for (int c = 0; c < rep.dim; ++c)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) S(j * d + k, c) = basis[c](j, k);
  Eigen::MatrixXd Spinv =
      (S.transpose() * S).ldlt().solve(S.transpose()).eval();
  rep.act = [d, basis, Spinv, dim = rep.dim](const Mat& g) {
    const Mat ginv = g.inverse();
    Mat out(dim, dim);
    for (int c = 0; c < dim; ++c) {
      const Mat conj = g * basis[c] * ginv;
      Eigen::VectorXd flat(d * d);
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) flat[j * d + k] = conj(j, k);
      out.col(c) = Spinv * flat;
    }
    return out;
  };
  return rep;
}

}  // namespace latlab
