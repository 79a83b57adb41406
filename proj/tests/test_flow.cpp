#include <doctest.h>

#include <latlab/flow.hpp>
#include <latlab/rng.hpp>
#include <latlab/trajectory.hpp>

using namespace latlab;

TEST_CASE("make_flow weights") {
  const FlowSpec f2 = make_flow({1.0}, {1.0});
  CHECK(f2.d == 2);
  REQUIRE(f2.weights.size() == 1);
  CHECK(f2.weights[0] == doctest::Approx(2.0));

  const FlowSpec f3 = make_flow({2.0}, {1.0, 1.0});
  CHECK(f3.d == 3);
  REQUIRE(f3.weights.size() == 2);
  CHECK(f3.weights[0] == doctest::Approx(3.0));
  CHECK(f3.weights[1] == doctest::Approx(3.0));

  const FlowSpec f4 = make_flow({1.0, 1.0}, {1.0, 1.0});
  CHECK(f4.d == 4);
  for (double w : f4.weights) CHECK(w == doctest::Approx(2.0));

  CHECK_THROWS_AS(make_flow({1.0}, {2.0}), usage_error);
  CHECK_THROWS_AS(make_flow({1.0, -1.0}, {0.0}), usage_error);
}

TEST_CASE("chart conjugation carries the expansion weights") {
  const FlowSpec spec = make_flow({2.0, 0.5}, {1.0, 1.5});
  const double t = 0.7;
  for (int k = 0; k < spec.chart_dim(); ++k) {
    std::vector<double> e_k(spec.chart_dim(), 0.0);
    e_k[k] = 1.0;
    const Mat conj = spec.g(t) * spec.u(e_k) * spec.g(-t);
    std::vector<double> scaled(spec.chart_dim(), 0.0);
    scaled[k] = std::exp(t * spec.weights[k]);
    CHECK((conj - spec.u(scaled)).norm() <= 1e-12 * conj.norm());
  }
}

TEST_CASE("apply_flow examples") {
  const FlowSpec spec = make_flow({1.0}, {1.0});
  const LatticePoint x = LatticePoint::standard(2);

  const LatticePoint same = apply_flow(spec, x, 0.0, {0.0});
  CHECK((same.basis - x.basis).norm() == doctest::Approx(0.0));

  const LatticePoint diag = apply_flow(spec, x, std::log(2.0), {0.0});
  CHECK(diag.basis(0, 0) == doctest::Approx(2.0));
  CHECK(diag.basis(1, 1) == doctest::Approx(0.5));

  const LatticePoint sheared = apply_flow(spec, x, 0.0, {0.5});
  CHECK(sheared.basis(0, 1) == doctest::Approx(0.5));
  CHECK(sheared.basis(0, 0) == doctest::Approx(1.0));
  CHECK(sheared.basis(1, 0) == doctest::Approx(0.0));

  CHECK_THROWS_AS(apply_flow(spec, x, 1000.0, {0.0}), numeric_error);
}

TEST_CASE("cocycle property without renormalization") {
  const FlowSpec spec = make_flow({1.0, 0.5}, {0.75, 0.75});
  Rng rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    Mat B(4, 4);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) B(r, c) = rng.normal();
    LatticePoint x(B);
    x.renormalize();
    std::vector<double> w{rng.uniform(-1, 1), rng.uniform(-1, 1),
                          rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const double s = 0.8, t = 1.3;
    const LatticePoint oneshot = apply_flow(spec, x, t + s, w, false);
    const LatticePoint composed =
        apply_flow(spec, apply_flow(spec, x, s, w, false), t,
                   std::vector<double>(4, 0.0), false);
    CHECK((oneshot.basis - composed.basis).norm() <=
          1e-8 * (1.0 + oneshot.basis.norm()));
  }
}

TEST_CASE("unimodularity is preserved along long trajectories") {
  const FlowSpec spec = make_flow({1.0}, {1.0});
  Trajectory traj(spec, LatticePoint::standard(2), {0.37});
  for (int step = 0; step < 100000; ++step) traj.step(0.01);
  CHECK(std::abs(traj.point().det() - 1.0) <= 1e-8);
}
