#include <doctest.h>

#include <latlab/height.hpp>
#include <latlab/stats.hpp>

using namespace latlab;

namespace {

LatticePoint diag_lattice(std::vector<double> entries) {
  const int d = static_cast<int>(entries.size());
  Mat B = Mat::Zero(d, d);
  for (int i = 0; i < d; ++i) B(i, i) = entries[i];
  return LatticePoint(B);
}

Mat random_sld(Rng& rng, int d) {
  for (;;) {
    Mat B(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) B(r, c) = rng.normal();
    if (std::abs(B.determinant()) < 1e-2) continue;
    LatticePoint x(B);
    x.renormalize();
    return x.basis;
  }
}

}  // namespace

TEST_CASE("height indices") {
  const FlowSpec f3 = make_flow({2.0}, {1.0, 1.0});
  const HeightParams p3 = make_height_params(f3, 0.5);
  CHECK(p3.delta[1] == doctest::Approx(2.0));
  CHECK(p3.delta[2] == doctest::Approx(2.0));
  CHECK(p3.delta_eta[1] == doctest::Approx(2.0));
  CHECK(p3.delta_eta[2] == doctest::Approx(1.0));
  CHECK(p3.sigma == doctest::Approx(1.0));
  CHECK(p3.sigma1 == doctest::Approx(0.5));

  const FlowSpec f2 = make_flow({1.0}, {1.0});
  const HeightParams p2 = make_height_params(f2, 0.1);
  CHECK(p2.delta_eta[1] == doctest::Approx(1.0));
  CHECK(p2.sigma == doctest::Approx(1.0));
  CHECK(p2.sigma1 == doctest::Approx(1.0));

  CHECK_THROWS_AS(make_height_params(f2, 1.5), usage_error);
}

TEST_CASE("phi formula and scaling") {
  const FlowSpec f2 = make_flow({1.0}, {1.0});
  const HeightParams p = make_height_params(f2, 0.1);

  MultiVector v(2, 1);
  v.coords[0] = 3.0;
  v.coords[1] = 4.0;
  CHECK(phi(p, v) == doctest::Approx(0.02));

  MultiVector e1 = basis_multivector(2, {0});
  CHECK(phi(p, e1) == doctest::Approx(0.1));

  const FlowSpec f3 = make_flow({2.0}, {1.0, 1.0});
  const HeightParams p3 = make_height_params(f3, 0.5);
  MultiVector e12 = basis_multivector(3, {0, 1});
  CHECK(phi(p3, e12) == doctest::Approx(0.25));

  // scaling: phi(c v) = |c|^{-1/delta_eta} phi(v), exactly
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    MultiVector w(3, 2);
    for (int k = 0; k < w.coords.size(); ++k) w.coords[k] = rng.normal();
    const double c = rng.uniform(0.1, 4.0) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
    MultiVector cw = w;
    cw.coords *= c;
    const double expect =
        std::pow(std::abs(c), -1.0 / p3.delta_eta[2]) * phi(p3, w);
    CHECK(phi(p3, cw) == doctest::Approx(expect).epsilon(1e-12));
  }

  MultiVector zero(2, 1);
  CHECK(std::isinf(phi(p, zero)));
  MultiVector top(2, 2);
  top.coords[0] = 1.0;
  CHECK_THROWS_AS(phi(p, top), usage_error);
}

TEST_CASE("alpha on lattices") {
  const FlowSpec f2 = make_flow({1.0}, {1.0});
  const HeightParams p = make_height_params(f2, 0.1);
  CHECK(alpha(p, LatticePoint::standard(2)) == doctest::Approx(0.1));
  CHECK(alpha(p, diag_lattice({0.5, 2.0})) == doctest::Approx(0.2));

  const FlowSpec f3 = make_flow({2.0}, {1.0, 1.0});
  const HeightParams p3 = make_height_params(f3, 0.5);
  CHECK(alpha(p3, diag_lattice({2.0, 1.0, 0.5})) ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));

  // invariance under integer unimodular basis change
  Rng rng(11);
  for (int trial = 0; trial < 15; ++trial) {
    const Mat B = random_sld(rng, 3);
    Mat U = Mat::Identity(3, 3);
    for (int k = 0; k < 6; ++k) {
      const int i = static_cast<int>(rng.below(3));
      const int j = static_cast<int>(rng.below(3));
      if (i == j) continue;
      Mat E = Mat::Identity(3, 3);
      E(i, j) = static_cast<double>(1 + rng.below(3)) * (rng.uniform() < 0.5 ? -1 : 1);
      U = U * E;
    }
    CHECK(alpha(p3, LatticePoint(B * U)) ==
          doctest::Approx(alpha(p3, LatticePoint(B))).epsilon(1e-8));
  }
}

TEST_CASE("contraction integral limits and decay") {
  const FlowSpec f2 = make_flow({1.0}, {1.0});
  const Representation rep = make_wedge_rep(f2, 1);
  QuadratureSpec quad;
  quad.points_per_axis = 512;

  // zeroth power: integrand is 1, unnormalized integral = 2^m
  CHECK(contraction_integral(f2, rep, 3.0, 0.0, quad, 4) == doctest::Approx(2.0));

  // t = 0 with v fixed by all u(w): u(w) e1 = e1, unit norm, contributes 2
  CHECK(contraction_integral(f2, rep, 0.0, 0.2, quad, 4) >=
        doctest::Approx(2.0).epsilon(1e-6));

  // decay between t = 2 and t = 4 with a positive fitted rate
  const double i2 = contraction_integral(f2, rep, 2.0, 0.1, quad, 8);
  const double i4 = contraction_integral(f2, rep, 4.0, 0.1, quad, 8);
  CHECK(i4 < i2);
  const double lambda_fit = -(std::log(i4) - std::log(i2)) / (0.1 * 2.0);
  CHECK(lambda_fit > 0.0);
}

TEST_CASE("contraction of phi^theta over the box") {
  const FlowSpec f2 = make_flow({1.0}, {1.0});
  const HeightParams p = make_height_params(f2, 0.3);
  const Representation rep = make_wedge_rep(f2, 1);
  const int points = 1024;
  const double theta = 0.5;
  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    MultiVector v(2, 1);
    v.coords[0] = rng.normal();
    v.coords[1] = rng.normal();
    if (v.norm() < 0.1) continue;
    const double base = std::pow(phi(p, v), theta);
    double prev = base;
    for (double t : {4.0, 6.0, 8.0}) {
      const Mat At = rep.act(f2.g(t));
      const double integral = box_integral_midpoint(
          Box::unit(1), points, [&](const std::vector<double>& w) {
            MultiVector img = v;
            img.coords = At * (rep.act(f2.u(w)) * v.coords);
            return std::pow(phi(p, img), theta);
          });
      CHECK(integral <= base);
      CHECK(integral < prev);
      prev = integral;
    }
  }
}

TEST_CASE("good sublevel measure closed form in the plane") {
  const FlowSpec f2 = make_flow({1.0}, {1.0});
  const Representation rep = make_wedge_rep(f2, 1);
  Vec e2 = Vec::Zero(2);
  e2[1] = 1.0;
  // pi_+(u(w) e2) = w e1, so the normalized measure is exactly r for r <= 1
  for (double r : {0.1, 0.25, 0.5, 0.9}) {
    const double est = good_sublevel_measure(f2, rep, e2, r, 40000, 3);
    CHECK(est == doctest::Approx(r).epsilon(0.05));
  }
  CHECK(good_sublevel_measure(f2, rep, e2, 2.0, 2000, 3) == doctest::Approx(1.0));
  CHECK(good_sublevel_measure(f2, rep, e2, 0.0, 2000, 3) == doctest::Approx(0.0));
}

TEST_CASE("good sublevel measures obey a power law") {
  // The bound of interest is uniform over unit vectors, so fit the sup over a
  // 50-vector sample of the measure against r.
  const FlowSpec f2 = make_flow({1.0}, {1.0});
  const Representation rep = make_wedge_rep(f2, 1);
  Rng rng(17);
  std::vector<Vec> sample;
  while (sample.size() < 50) {
    Vec v(2);
    v[0] = rng.normal();
    v[1] = rng.normal();
    if (v.norm() < 0.2) continue;
    v.normalize();
    sample.push_back(v);
  }
  std::vector<double> xs, ys;
  for (int k = 1; k <= 8; ++k) {
    const double r = std::pow(2.0, -k);
    double sup = 0.0;
    for (std::size_t j = 0; j < sample.size(); ++j)
      sup = std::max(sup, good_sublevel_measure(f2, rep, sample[j], r, 60000,
                                                100 + static_cast<int>(j)));
    REQUIRE(sup > 0.0);
    xs.push_back(std::log(r));
    ys.push_back(std::log(sup));
  }
  const LineFit fit = fit_line(xs, ys);
  CHECK(fit.slope > 0.0); // sup measure shrinks with a positive power of r
  CHECK(fit.r2 >= 0.9);
}

TEST_CASE("drift at t = 0 stays within the Lipschitz corridor") {
  const FlowSpec f2 = make_flow({1.0}, {1.0});
  const HeightParams p = make_height_params(f2, 0.1);
  QuadratureSpec quad;
  quad.points_per_axis = 256;
  const auto res = drift_check(f2, p, LatticePoint::standard(2), 0.0, quad);
  const double slack = measure_alpha_slack(f2, p, 8, 5, 5);
  CHECK(res.lhs <= slack * res.alpha_x * 1.05);
  CHECK(res.lhs >= res.alpha_x / slack * 0.95);
}

TEST_CASE("drift contracts high lattices") {
  const FlowSpec f2 = make_flow({1.0}, {1.0});
  const HeightParams p = make_height_params(f2, 0.1);
  QuadratureSpec quad;
  quad.points_per_axis = 2048;
  const auto res = drift_check(f2, p, diag_lattice({1e-3, 1e3}), 5.0, quad);
  CHECK(res.lhs / res.alpha_x < 1.0);
}
