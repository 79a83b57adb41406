#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "latlab/dominated.hpp"
#include "latlab/exterior.hpp"

namespace latlab {

inline Mat commutator(const Mat& A, const Mat& B) { return A * B - B * A; }

// Basis of sl_d: elementary E_jk (j != k) in lexicographic order, then the
// traceless diagonals E_ll - E_{l+1,l+1}.
inline std::vector<Mat> sl_basis(int d) {
  std::vector<Mat> basis;
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k)
      if (j != k) {
        Mat e = Mat::Zero(d, d);
        e(j, k) = 1.0;
        basis.push_back(e);
      }
  for (int l = 0; l + 1 < d; ++l) {
    Mat h = Mat::Zero(d, d);
    h(l, l) = 1.0;
    h(l + 1, l + 1) = -1.0;
    basis.push_back(h);
  }
  return basis;
}

namespace detail {

inline Vec vectorize(const Mat& A) {
  const int d = static_cast<int>(A.rows());
  Vec v(d * d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) v[r * d + c] = A(r, c);
  return v;
}

inline Mat unvectorize(const Vec& v, int d) {
  Mat A(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) A(r, c) = v[r * d + c];
  return A;
}

}  // namespace detail

// Smallest subalgebra containing the given matrices, as an orthonormal basis
// (Frobenius inner product) of matrices.
inline std::vector<Mat> bracket_closure(const std::vector<Mat>& generators) {
  if (generators.empty()) return {};
  const int d = static_cast<int>(generators[0].rows());
  std::vector<Vec> basis_vecs;
  std::vector<Mat> basis_mats;
  auto try_add = [&](const Mat& M) {
    Vec v = detail::vectorize(M);
    for (const auto& b : basis_vecs) v -= b.dot(v) * b;
    if (v.norm() > 1e-9 * (detail::vectorize(M).norm() + 1.0)) {
      v.normalize();
      basis_vecs.push_back(v);
      basis_mats.push_back(detail::unvectorize(v, d));
      return true;
    }
    return false;
  };
  for (const auto& g : generators) try_add(g);
  bool grew = true;
  while (grew) {
    grew = false;
    const std::size_t sz = basis_mats.size();
    for (std::size_t i = 0; i < sz && !grew; ++i)
      for (std::size_t j = i + 1; j < sz && !grew; ++j)
        grew = try_add(commutator(basis_mats[i], basis_mats[j]));
  }
  return basis_mats;
}

// Matrix of ad(A) = [A, .] restricted to span(basis); the span must be
// ad(A)-invariant.
inline Mat ad_matrix_on(const std::vector<Mat>& basis, const Mat& A) {
  const int n = static_cast<int>(basis.size());
  const int d = static_cast<int>(A.rows());
  Eigen::MatrixXd S(d * d, n);
  for (int c = 0; c < n; ++c) S.col(c) = detail::vectorize(basis[c]);
  const Eigen::MatrixXd pinv = (S.transpose() * S).ldlt().solve(S.transpose());
  Mat out(n, n);
  for (int c = 0; c < n; ++c) {
    const Vec img = detail::vectorize(commutator(A, basis[c]));
    const Vec coords = pinv * img;
    if ((S * coords - img).norm() > 1e-7 * (img.norm() + 1.0))
      throw numeric_error("ad_matrix_on: span is not ad-invariant");
    out.col(c) = coords;
  }
  return out;
}

struct KillingInfo {
  double min_singular = 0.0;
  double condition = 0.0;
};

// Killing form of the subalgebra spanned by `basis` (must be a subalgebra).
inline KillingInfo killing_info(const std::vector<Mat>& basis) {
  const int n = static_cast<int>(basis.size());
  std::vector<Mat> ads;
  ads.reserve(n);
  for (const auto& b : basis) ads.push_back(ad_matrix_on(basis, b));
  Mat K(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) K(i, j) = (ads[i] * ads[j]).trace();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(K);
  KillingInfo info;
  info.min_singular = svd.singularValues().minCoeff();
  info.condition = svd.singularValues().maxCoeff() / std::max(info.min_singular, 1e-300);
  return info;
}

// Output of the expanding-subalgebra construction for sl_d: the dominated
// diagonal decomposes over interval roots e_j - e_k; each positive
// coefficient contributes an sl_2 triple {z_i, E_jk, -E_kj}, and the E_jk
// with c_i > 0 span the abelian expanding subalgebra.
struct ExpandingConstruction {
  int d = 0;
  Mat z;
  std::vector<std::pair<int, int>> betas; // (j, k) meaning e_j - e_k
  std::vector<double> coeffs;
  std::vector<int> P; // indices with coeffs > 0
  std::vector<Mat> z_basis;
  std::vector<Mat> u_basis;     // one per element of P
  std::vector<Mat> theta_basis; // -E_kj per element of P
};

inline ExpandingConstruction build_expanding(
    int d, const std::vector<double>& z_diag,
    const std::optional<std::vector<int>>& sort_permutation = std::nullopt) {
  if (static_cast<int>(z_diag.size()) != d)
    throw usage_error("build_expanding: diagonal has wrong length");
  double trace = 0.0, scale = 0.0;
  for (double v : z_diag) {
    trace += v;
    scale = std::max(scale, std::abs(v));
  }
  if (scale == 0.0) throw usage_error("build_expanding: z must be nonzero");
  if (std::abs(trace) > 1e-9 * d * std::max(scale, 1.0))
    throw usage_error("build_expanding: z must be traceless");

  std::vector<int> perm(d);
  if (sort_permutation) {
    perm = *sort_permutation;
    if (static_cast<int>(perm.size()) != d)
      throw usage_error("build_expanding: permutation has wrong length");
  } else {
    for (int i = 0; i < d; ++i) perm[i] = i;
  }
  std::vector<double> sorted(d);
  for (int i = 0; i < d; ++i) sorted[i] = z_diag[perm[i]];
  for (int i = 0; i + 1 < d; ++i)
    if (sorted[i] < sorted[i + 1])
      throw usage_error(sort_permutation
                            ? "build_expanding: permutation does not sort z"
                            : "build_expanding: entries not sorted nonincreasing "
                              "(supply a sorting permutation)");

  // Simple-basis coefficients a_i = t_1 + ... + t_i of the dominated vector.
  std::vector<double> a(d - 1, 0.0);
  double prefix = 0.0;
  for (int i = 0; i + 1 < d; ++i) {
    prefix += sorted[i];
    a[i] = prefix;
  }
  const auto order = detail::path_merge_order(a);

  ExpandingConstruction out;
  out.d = d;
  out.z = Mat::Zero(d, d);
  for (int i = 0; i < d; ++i) out.z(perm[i], perm[i]) = sorted[i];

  int lo = order[0], hi = order[0];
  for (int i = 0; i < d - 1; ++i) {
    lo = std::min(lo, order[i]);
    hi = std::max(hi, order[i]);
    const double next = (i + 2 < d) ? a[order[i + 1]] : 0.0;
    const double c = a[order[i]] - next;
    const int j = perm[lo], k = perm[hi + 1];
    out.betas.emplace_back(j, k);
    out.coeffs.push_back(c);
    Mat zi = Mat::Zero(d, d);
    zi(j, j) = 1.0;
    zi(k, k) = -1.0;
    out.z_basis.push_back(zi);
    if (c > 1e-12) {
      out.P.push_back(i);
      Mat wi = Mat::Zero(d, d);
      wi(j, k) = 1.0;
      out.u_basis.push_back(wi);
      Mat ti = Mat::Zero(d, d);
      ti(k, j) = -1.0;
      out.theta_basis.push_back(ti);
    }
  }

  // Eq.-level contracts: the coefficients rebuild z and the u-basis commutes.
  Mat recon = Mat::Zero(d, d);
  for (std::size_t i = 0; i < out.betas.size(); ++i)
    recon += out.coeffs[i] * out.z_basis[i];
  if ((recon - out.z).norm() > 1e-10 * std::max(1.0, out.z.norm()))
    throw numeric_error("build_expanding: coroot reconstruction failed");
  for (std::size_t i = 0; i < out.u_basis.size(); ++i)
    for (std::size_t j = i + 1; j < out.u_basis.size(); ++j)
      if (commutator(out.u_basis[i], out.u_basis[j]).norm() > 1e-12)
        throw numeric_error("build_expanding: u-basis is not abelian");
  return out;
}

struct ExpandingCheckResult {
  bool pass = false;
  double max_residual = 0.0;
  Vec worst;      // offending vector in rep coordinates (if any)
  int dim_vplus = 0;
  int dim_vu = 0;
  int dim_fixed = 0;
};

namespace detail {

// Orthonormal basis of the joint kernel of the stacked operators.
inline Eigen::MatrixXd joint_kernel(const std::vector<Mat>& ops, int n, double rel_tol) {
  if (ops.empty()) return Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd stacked(static_cast<int>(ops.size()) * n, n);
  for (std::size_t i = 0; i < ops.size(); ++i)
    stacked.middleRows(static_cast<int>(i) * n, n) = ops[i];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = rel_tol * std::max(sv.size() > 0 ? sv(0) : 0.0, 1.0);
  int null_dim = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) <= cutoff) ++null_dim;
  if (null_dim == 0) return Eigen::MatrixXd::Zero(n, 0);
  return svd.matrixV().rightCols(null_dim);
}

}  // namespace detail

// The expanding criterion on one representation space: every U-fixed vector
// that is not fixed by the whole triple family must lie in the expanded
// eigenspace V^+ of rep_z. The fixed-space exclusion only applies when the
// theta-image operators are supplied; without them a joint-kernel vector
// cannot be certified as fixed by the full group, so nothing is excluded.
inline ExpandingCheckResult expanding_check(const Mat& rep_z,
                                            const std::vector<Mat>& rep_gens,
                                            const std::vector<Mat>& rep_thetas = {},
                                            double tol = 1e-8) {
  const int n = static_cast<int>(rep_z.rows());
  if (rep_z.cols() != n) throw usage_error("expanding_check: rep_z not square");
  for (const auto& g : rep_gens)
    if (g.rows() != n || g.cols() != n)
      throw usage_error("expanding_check: generator operator size mismatch");
  for (const auto& g : rep_thetas)
    if (g.rows() != n || g.cols() != n)
      throw usage_error("expanding_check: theta operator size mismatch");
  if (rep_gens.empty()) throw usage_error("expanding_check: no generators");

  ExpandingCheckResult res;

  // V^+ from the spectrum of rep_z (real spectrum; complex parts are dust).
  Eigen::EigenSolver<Eigen::MatrixXd> eig(rep_z);
  std::vector<Vec> plus_cols;
  for (int i = 0; i < n; ++i) {
    const auto lambda = eig.eigenvalues()(i);
    if (lambda.real() > 1e-9 * (1.0 + rep_z.norm())) {
      plus_cols.push_back(eig.eigenvectors().col(i).real());
      Vec im = eig.eigenvectors().col(i).imag();
      if (im.norm() > 1e-12) plus_cols.push_back(im);
    }
  }
  Eigen::MatrixXd Vplus(n, static_cast<int>(plus_cols.size()));
  for (std::size_t i = 0; i < plus_cols.size(); ++i)
    Vplus.col(static_cast<int>(i)) = plus_cols[i];
  if (Vplus.cols() > 0) {
    // Orthonormalize and drop dependent columns.
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Vplus, Eigen::ComputeThinU);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) > 1e-9 * svd.singularValues()(0)) ++rank;
    Vplus = svd.matrixU().leftCols(rank);
  }
  res.dim_vplus = static_cast<int>(Vplus.cols());

  Eigen::MatrixXd VU = detail::joint_kernel(rep_gens, n, 1e-9);
  res.dim_vu = static_cast<int>(VU.cols());

  Eigen::MatrixXd W = VU;
  if (!rep_thetas.empty()) {
    std::vector<Mat> all = rep_gens;
    all.push_back(rep_z);
    for (const auto& t : rep_thetas) all.push_back(t);
    const Eigen::MatrixXd fixed = detail::joint_kernel(all, n, 1e-9);
    res.dim_fixed = static_cast<int>(fixed.cols());
    if (fixed.cols() > 0 && VU.cols() > 0) {
      Eigen::MatrixXd proj = VU - fixed * (fixed.transpose() * VU);
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(proj, Eigen::ComputeThinU);
      int rank = 0;
      for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > 1e-9) ++rank;
      W = svd.matrixU().leftCols(rank);
    }
  }

  res.pass = true;
  res.max_residual = 0.0;
  for (int c = 0; c < W.cols(); ++c) {
    const Vec w = W.col(c);
    Vec resid = w;
    if (Vplus.cols() > 0) resid -= Vplus * (Vplus.transpose() * w);
    const double r = resid.norm();
    if (r > res.max_residual) {
      res.max_residual = r;
      res.worst = w;
    }
  }
  if (res.max_residual > tol) res.pass = false;
  return res;
}

}  // namespace latlab
