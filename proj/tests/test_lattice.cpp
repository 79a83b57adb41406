#include <doctest.h>

#include <latlab/lattice.hpp>
#include <latlab/rng.hpp>

using namespace latlab;

namespace {

// Brute-force oracle: exhaustive integer coefficients in [-box, box]^d over
// i-tuples, independent of the reduction/enumeration path under test.
double oracle_minima(const Mat& B, int degree, int box) {
  const int d = static_cast<int>(B.cols());
  std::vector<Vec> vectors;
  std::vector<int> c(d, -box);
  for (;;) {
    bool nonzero = false, canonical = false;
    for (int j = 0; j < d; ++j)
      if (c[j] != 0) {
        nonzero = true;
        canonical = c[j] > 0;
        break;
      }
    if (nonzero && canonical) {
      Vec v = Vec::Zero(d);
      for (int j = 0; j < d; ++j) v += static_cast<double>(c[j]) * B.col(j);
      vectors.push_back(v);
    }
    int pos = d - 1;
    while (pos >= 0 && ++c[pos] > box) c[pos--] = -box;
    if (pos < 0) break;
  }
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> idx(degree, 0);
  std::vector<const Vec*> chosen(degree);
  auto rec = [&](auto&& self, int pos, std::size_t start) -> void {
    if (pos == degree) {
      Eigen::MatrixXd G(degree, degree);
      double side2 = 1.0;
      for (int a = 0; a < degree; ++a) {
        for (int b = 0; b < degree; ++b) G(a, b) = chosen[a]->dot(*chosen[b]);
        side2 *= G(a, a);
      }
      const double det = G.determinant();
      // relative threshold rejects numerically dependent tuples
      if (det > 1e-12 * side2) best = std::min(best, std::sqrt(det));
      return;
    }
    for (std::size_t j = start; j < vectors.size(); ++j) {
      chosen[pos] = &vectors[j];
      self(self, pos + 1, j + 1);
    }
  };
  rec(rec, 0, 0);
  return best;
}

Mat random_unimodular_basis(Rng& rng, int d, double max_condition = 1e3) {
  for (;;) {
    Mat B(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) B(r, c) = rng.normal();
    if (std::abs(B.determinant()) < 1e-3) continue;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(B);
    const double cond =
        svd.singularValues()(0) / svd.singularValues()(d - 1);
    if (cond > max_condition) continue;
    LatticePoint x(B);
    x.renormalize();
    return x.basis;
  }
}

}  // namespace

TEST_CASE("minima on axis-aligned examples") {
  // standard lattice: every degree gives 1
  for (int d = 2; d <= 4; ++d) {
    const LatticePoint zd = LatticePoint::standard(d);
    for (int i = 1; i < d; ++i) CHECK(minima(zd, i) == doctest::Approx(1.0));
  }

  Mat B2 = Mat::Zero(2, 2);
  B2(0, 0) = 0.5;
  B2(1, 1) = 2.0;
  CHECK(minima(LatticePoint(B2), 1) == doctest::Approx(0.5));

  Mat B3 = Mat::Zero(3, 3);
  B3(0, 0) = 2.0;
  B3(1, 1) = 1.0;
  B3(2, 2) = 0.5;
  CHECK(minima(LatticePoint(B3), 2) == doctest::Approx(0.5));
  CHECK(minima(LatticePoint(B3), 1) == doctest::Approx(0.5));

  CHECK_THROWS_AS(minima(LatticePoint::standard(3), 0), usage_error);
  CHECK_THROWS_AS(minima(LatticePoint::standard(3), 3), usage_error);
}

TEST_CASE("minima agrees with the brute-force oracle") {
  Rng rng(41);
  // d = 2 and 3: full [-5,5] coefficient boxes.
  for (int trial = 0; trial < 60; ++trial) {
    const int d = 2 + trial % 2;
    Mat B = random_unimodular_basis(rng, d);
    lll_reduce(B);
    const LatticePoint x(B);
    for (int i = 1; i < d; ++i) {
      const double expect = oracle_minima(B, i, 5);
      CHECK(minima(x, i) == doctest::Approx(expect).epsilon(1e-9));
    }
  }
  // d = 4: degree 1 against the big box, higher degrees against a reduced box
  // (the basis is LLL-reduced first, so minimizers have small coefficients).
  for (int trial = 0; trial < 12; ++trial) {
    Mat B = random_unimodular_basis(rng, 4);
    lll_reduce(B);
    const LatticePoint x(B);
    CHECK(minima(x, 1) == doctest::Approx(oracle_minima(B, 1, 5)).epsilon(1e-9));
    CHECK(minima(x, 2) == doctest::Approx(oracle_minima(B, 2, 2)).epsilon(1e-9));
    CHECK(minima(x, 3) == doctest::Approx(oracle_minima(B, 3, 2)).epsilon(1e-9));
  }
}

TEST_CASE("minima under linear maps obeys the operator-norm bound") {
  Rng rng(43);
  for (int trial = 0; trial < 25; ++trial) {
    const int d = 2 + trial % 3;
    const Mat B = random_unimodular_basis(rng, d);
    Mat G(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) G(r, c) = rng.normal();
    if (std::abs(G.determinant()) < 1e-3) continue;
    const LatticePoint x(B);
    const LatticePoint gx(G * B);
    for (int i = 1; i < d; ++i) {
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(exterior_action(G, i));
      const double opnorm = svd.singularValues()(0);
      CHECK(minima(gx, i) <= opnorm * minima(x, i) + 1e-8);
    }
  }
}

TEST_CASE("siegel_count on the standard plane lattice") {
  const LatticePoint z2 = LatticePoint::standard(2);
  CHECK(siegel_count(z2, 0.5) == 0);
  CHECK(siegel_count(z2, 1.0) == 4);
  CHECK(siegel_count(z2, 1.5) == 8);
  CHECK_THROWS_AS(siegel_count(z2, 0.0), usage_error);
}
