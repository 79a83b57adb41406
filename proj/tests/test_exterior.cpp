#include <doctest.h>

#include <latlab/exterior.hpp>
#include <latlab/rng.hpp>

using namespace latlab;

namespace {

Mat random_matrix(Rng& rng, int d) {
  Mat M(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) M(r, c) = rng.normal();
  return M;
}

Mat random_rotation(Rng& rng, int d) {
  const Mat M = random_matrix(rng, d);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(M);
  Eigen::MatrixXd Q = qr.householderQ();
  if (Q.determinant() < 0) Q.col(0) *= -1.0;
  return Q;
}

}  // namespace

TEST_CASE("exterior action basics") {
  // identity is functorial
  for (int d = 2; d <= 4; ++d)
    for (int i = 0; i <= d; ++i) {
      const Mat id = exterior_action(Mat::Identity(d, d), i);
      CHECK((id - Mat::Identity(id.rows(), id.cols())).norm() == doctest::Approx(0.0));
    }

  // diagonal action on wedges, d=3 i=2
  Mat D = Mat::Zero(3, 3);
  D(0, 0) = 2.0;
  D(1, 1) = 3.0;
  D(2, 2) = 5.0;
  const Mat W = exterior_action(D, 2);
  CHECK(W(0, 0) == doctest::Approx(6.0));  // e1^e2
  CHECK(W(1, 1) == doctest::Approx(10.0)); // e1^e3
  CHECK(W(2, 2) == doctest::Approx(15.0)); // e2^e3
  CHECK(W.norm() == doctest::Approx(std::sqrt(36.0 + 100.0 + 225.0)));

  // degree one is the matrix itself
  Rng rng(5);
  const Mat M = random_matrix(rng, 2);
  CHECK((exterior_action(M, 1) - M).norm() == doctest::Approx(0.0));

  CHECK_THROWS_AS(exterior_action(M, 3), usage_error);
}

TEST_CASE("exterior action is multiplicative and preserves determinants") {
  Rng rng(17);
  for (int d = 2; d <= 4; ++d) {
    for (int trial = 0; trial < 10; ++trial) {
      const Mat A = random_matrix(rng, d);
      const Mat B = random_matrix(rng, d);
      for (int i = 1; i < d; ++i) {
        const Mat lhs = exterior_action(A * B, i);
        const Mat rhs = exterior_action(A, i) * exterior_action(B, i);
        CHECK((lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()));

        const double detw = exterior_action(A, i).determinant();
        const double expect = std::pow(A.determinant(), binomial(d - 1, i - 1));
        CHECK(detw == doctest::Approx(expect).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("rotations act by isometries on wedge powers") {
  Rng rng(23);
  for (int d = 2; d <= 4; ++d)
    for (int i = 1; i < d; ++i) {
      const Mat Q = random_rotation(rng, d);
      MultiVector v(d, i);
      for (int k = 0; k < v.coords.size(); ++k) v.coords[k] = rng.normal();
      const MultiVector w = apply_exterior(Q, v);
      CHECK(w.norm() == doctest::Approx(v.norm()).epsilon(1e-10));
    }
}

TEST_CASE("wedge product") {
  const int d = 3;
  const MultiVector e1 = basis_multivector(d, {0});
  const MultiVector e2 = basis_multivector(d, {1});

  // alternating
  CHECK(wedge(e1, e1).norm() == doctest::Approx(0.0));

  // basis case with sign +1
  const MultiVector e12 = wedge(e1, e2);
  CHECK(e12.coords[0] == doctest::Approx(1.0)); // e1^e2 first in lex order
  CHECK(e12.norm() == doctest::Approx(1.0));

  // bilinearity: (e1 + e2) ^ e2 = e1 ^ e2
  MultiVector sum(d, 1);
  sum.coords[0] = 1.0;
  sum.coords[1] = 1.0;
  const MultiVector out = wedge(sum, e2);
  CHECK((out.coords - e12.coords).norm() == doctest::Approx(0.0));

  // graded anticommutativity on random inputs
  Rng rng(31);
  MultiVector u(4, 1), v(4, 2);
  for (int k = 0; k < u.coords.size(); ++k) u.coords[k] = rng.normal();
  for (int k = 0; k < v.coords.size(); ++k) v.coords[k] = rng.normal();
  const MultiVector uv = wedge(u, v);
  const MultiVector vu = wedge(v, u);
  const double sign = std::pow(-1.0, u.degree * v.degree);
  CHECK((uv.coords - sign * vu.coords).norm() <= 1e-12);

  const MultiVector top = wedge(uv, basis_multivector(4, {3})); // 3+1 = 4 is fine
  CHECK(top.degree == 4);
  CHECK_THROWS_AS(wedge(top, u), usage_error); // degree overflow
}
