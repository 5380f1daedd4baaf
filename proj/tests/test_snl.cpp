#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>
#include <sstream>

#include "gdam/snl.hpp"
#include "helpers.hpp"

using gdam::Mat;
using gdam::Vec;

namespace {

// dense (n+2)×(n+2) assembly straight from the edge vectors
Mat dense_slack(const gdam::SnlInstance& inst, const Vec& v) {
  const int N = inst.n + 2;
  Mat S = Mat::Zero(N, N);
  S(0, 0) = -v[0];
  S(0, 1) = S(1, 0) = -v[1];
  S(1, 1) = -v[2];
  int e = 3;
  for (const auto& s : inst.ss) {
    Vec u = Vec::Zero(N);
    u[2 + s.i] = 1.0;
    u[2 + s.j] = -1.0;
    S -= v[e++] * u * u.transpose();
  }
  for (const auto& s : inst.sa) {
    Vec u = Vec::Zero(N);
    u.head(2) = inst.anchors.col(s.k);
    u[2 + s.j] = -1.0;
    S -= v[e++] * u * u.transpose();
  }
  return S;
}

// a dual point with S = c·I + (something small): V and y chosen so that
// the slack is comfortably positive definite
Vec feasible_dual(const gdam::SnlInstance& inst, std::mt19937_64& rng) {
  Vec v = testing::random_vec(rng, gdam::dual_dimension(inst), -0.05, 0.0);
  v[0] = -2.0;
  v[1] = 0.1;
  v[2] = -2.0;
  return v;
}

double min_eig(const Mat& S) {
  return Eigen::SelfAdjointEigenSolver<Mat>(S, Eigen::EigenvaluesOnly).eigenvalues()[0];
}

}  // namespace

TEST_CASE("instance generation") {
  const auto inst = gdam::generate_instance(2, 10.0, 5);
  CHECK(inst.ss.size() == 1);
  CHECK(inst.sa.size() == 8);
  CHECK(inst.num_edges() == 9);
  CHECK(gdam::is_connected(inst));
  CHECK(inst.anchors(0, 0) == 0.45);
  CHECK(inst.anchors(1, 3) == -0.45);

  const auto empty = gdam::generate_instance(5, 0.0, 1);
  CHECK(empty.num_edges() == 0);
  CHECK_FALSE(gdam::is_connected(empty));

  const auto big = gdam::generate_instance(100, 0.3, 1);
  CHECK(std::abs(big.num_edges() - 1058) <= 0.3 * 1058);
  for (const auto& e : big.ss) {
    CHECK(e.i < e.j);
    CHECK(e.d > 0.0);
    CHECK(e.d <= 0.3);
    CHECK(e.d == (big.sensors.col(e.i) - big.sensors.col(e.j)).norm());
  }
  const auto again = gdam::generate_instance(100, 0.3, 1);
  CHECK(again.sensors == big.sensors);
  CHECK(again.num_edges() == big.num_edges());
}

TEST_CASE("presolve scaling") {
  const auto inst = gdam::generate_instance(10, 0.5, 2);
  const auto same = gdam::presolve_scale(inst, 1.0);
  CHECK(same.sensors == inst.sensors);
  CHECK(same.scale == 1.0);
  const auto s = gdam::presolve_scale(inst, 10.0);
  CHECK(s.scale == 10.0);
  CHECK(s.anchors == 10.0 * inst.anchors);
  for (std::size_t e = 0; e < inst.ss.size(); ++e) CHECK(s.ss[e].d == 10.0 * inst.ss[e].d);
  gdam::SnlInstance one = inst;
  one.ss = {{0, 1, 0.25}};
  CHECK(gdam::presolve_scale(one, 10.0).ss[0].d == 2.5);
  CHECK_THROWS_AS(gdam::presolve_scale(inst, 0.0), gdam::Error);
}

TEST_CASE("slack assembly") {
  gdam::SnlInstance two;
  two.n = 2;
  two.anchors = Mat::Zero(2, 0);
  two.ss = {{0, 1, 1.0}};
  const Mat S0 = gdam::assemble_slack(two, Vec::Zero(1), -gdam::Mat2::Identity());
  Mat expect0 = Mat::Zero(4, 4);
  expect0.topLeftCorner(2, 2).setIdentity();
  CHECK(S0 == expect0);

  const Mat S1 = gdam::assemble_slack(two, Vec{{-1.0}}, gdam::Mat2::Zero());
  Mat E = Mat::Zero(2, 2);
  E << 1, -1, -1, 1;
  CHECK(S1.bottomRightCorner(2, 2) == E);
  CHECK_THROWS_AS(gdam::assemble_slack(two, Vec::Zero(3), gdam::Mat2::Zero()), gdam::Error);

  std::mt19937_64 rng(11);
  for (int n : {3, 6, 10}) {
    const auto inst = gdam::generate_instance(n, 0.6, 100 + n);
    const Vec v = testing::random_vec(rng, gdam::dual_dimension(inst));
    const Mat S = gdam::assemble_slack(inst, v);
    CHECK((S - dense_slack(inst, v)).cwiseAbs().maxCoeff() <= 1e-10);
    for (int t = 0; t < 5; ++t) {
      const Vec w = testing::random_vec(rng, n + 2);
      CHECK(std::abs(w.dot(S * w) - w.dot(dense_slack(inst, v) * w)) <= 1e-10);
    }
  }
}

TEST_CASE("dual objective and barrier") {
  const auto inst = gdam::generate_instance(5, 0.7, 3);
  std::mt19937_64 rng(4);
  const Vec v = feasible_dual(inst, rng);
  const auto obj = gdam::dual_objective(inst, v);
  CHECK(obj.gradient[0] == -1.0);
  CHECK(obj.gradient[1] == 0.0);
  CHECK(obj.gradient[2] == -1.0);
  CHECK(obj.value == doctest::Approx(obj.gradient.dot(v)));

  REQUIRE(min_eig(gdam::assemble_slack(inst, v)) > 0.0);
  const auto bar = gdam::dual_barrier(inst, v);
  const Vec fd = testing::fd_gradient(
      [&](const Vec& z) { return gdam::dual_barrier(inst, z).value; }, v);
  CHECK(testing::rel_err(bar.gradient, fd) <= 1e-5);
  CHECK(bar.min_pivot > 0.0);

  gdam::SnlInstance none;
  none.n = 3;
  none.anchors = Mat::Zero(2, 0);
  const Vec shift = gdam::pack_dual(-2.0 * gdam::Mat2::Identity(), Vec::Zero(0));
  CHECK_THROWS_AS(gdam::dual_barrier(none, shift), gdam::Error);
  try {
    gdam::dual_barrier(inst, gdam::pack_dual(-gdam::Mat2::Identity(),
                                             Vec::Zero(inst.num_edges())));
  } catch (const gdam::Error& e) {
    CHECK(e.code() == gdam::ErrorCode::kNotPositiveDefinite);
  }
}

TEST_CASE("barrier gradient of a diagonal slack") {
  // one edge per sensor to an anchor at the origin keeps S diagonal
  gdam::SnlInstance inst;
  inst.n = 3;
  inst.anchors = Mat::Zero(2, 1);
  for (int j = 0; j < 3; ++j) inst.sa.push_back({0, j, 1.0});
  const Vec v = gdam::pack_dual(-2.0 * gdam::Mat2::Identity(), Vec::Constant(3, -2.0));
  const Mat S = gdam::assemble_slack(inst, v);
  CHECK(S == 2.0 * Mat::Identity(5, 5));
  const auto bar = gdam::dual_barrier(inst, v);
  CHECK(bar.value == doctest::Approx(-5.0 * std::log(2.0)));
  CHECK(bar.gradient[0] == doctest::Approx(0.5));
  CHECK(bar.gradient[1] == doctest::Approx(0.0));
  CHECK(bar.gradient[3] == doctest::Approx(0.5));
}

TEST_CASE("barrier gradients match finite differences") {
  std::mt19937_64 rng(21);
  for (int n : {2, 4, 8}) {
    const auto inst = gdam::generate_instance(n, 0.8, 7 * n);
    const Vec v = feasible_dual(inst, rng);
    REQUIRE(min_eig(gdam::assemble_slack(inst, v)) > 0.0);
    const Vec g = gdam::dual_barrier(inst, v).gradient;
    const Vec fd = testing::fd_gradient(
        [&](const Vec& z) { return gdam::dual_barrier(inst, z).value; }, v);
    CHECK(testing::rel_err(g, fd) <= 1e-5);

    gdam::SnlDualModel model(inst);
    const auto p = model.evaluate(v);
    REQUIRE(p);
    CHECK((p->grad_barrier - g).norm() <= 1e-12 * g.norm());
    CHECK(model.objective(v) == doctest::Approx(gdam::dual_objective(inst, v).value));
  }
}

TEST_CASE("phase one") {
  gdam::SnlInstance trivial;
  trivial.n = 1;
  trivial.anchors = Mat::Zero(2, 1);
  trivial.anchors(0, 0) = 0.3;
  trivial.sa = {{0, 0, 0.2}};
  CHECK_THROWS_AS(gdam::phase1_initialize(trivial, {0.0, 500}), gdam::Error);

  const auto inst = gdam::presolve_scale(gdam::generate_instance(20, 0.4, 9));
  const auto p1 = gdam::phase1_initialize(inst, {10.0, 500});
  CHECK(p1.steps >= 1);
  CHECK(static_cast<bool>(gdam::spd_factorize(gdam::assemble_slack(inst, p1.v))));

  try {
    gdam::phase1_initialize(inst, {10.0, 0});
    FAIL("expected a phase-I failure");
  } catch (const gdam::Error& e) {
    CHECK(e.code() == gdam::ErrorCode::kPhase1Failure);
  }
}

TEST_CASE("rmsd") {
  Mat X = Mat::Random(2, 7);
  CHECK(gdam::rmsd(X, X) == 0.0);
  Mat Y = X;
  Y.row(0).array() += 0.3;
  Y.row(1).array() += 0.4;
  CHECK(gdam::rmsd(Y, X) == doctest::Approx(0.5));
  CHECK_THROWS_AS(gdam::rmsd(X, Mat::Zero(2, 6)), gdam::Error);
}

TEST_CASE("refinement") {
  const auto inst = gdam::generate_instance(30, 0.4, 12);
  REQUIRE(gdam::is_connected(inst));
  const auto exact = gdam::refine_positions(inst, inst.sensors);
  CHECK(exact.iterations == 0);
  CHECK(exact.residual <= 1e-20);

  std::mt19937_64 rng(5);
  std::normal_distribution<double> g(0.0, 1e-3);
  Mat X0 = inst.sensors;
  for (int j = 0; j < X0.cols(); ++j) X0.col(j) += Vec{{g(rng), g(rng)}};
  const auto r = gdam::refine_positions(inst, X0);
  CHECK(gdam::rmsd(r.X, inst.sensors) <= 1e-6);

  gdam::SnlInstance lonely = inst;
  lonely.n += 1;
  lonely.sensors.conservativeResize(2, lonely.n);
  lonely.sensors.col(lonely.n - 1) << 0.1, 0.1;
  Mat X1 = lonely.sensors;
  X1.col(lonely.n - 1) << 0.7, -0.2;
  const auto rl = gdam::refine_positions(lonely, X1);
  CHECK(rl.X.col(lonely.n - 1) == X1.col(lonely.n - 1));
  CHECK_THROWS_AS(gdam::refine_positions(inst, Mat::Zero(2, 3)), gdam::Error);
}

TEST_CASE("postsolve on a central point") {
  // S = ηZ⁻¹ with Z = [I X; Xᵀ XᵀX] + δI is exactly central; the recovered
  // positions differ from X by O(δ)
  const auto inst = gdam::generate_instance(6, 0.9, 8);
  const int N = inst.n + 2;
  Mat U(2, N);
  U << Mat::Identity(2, 2), inst.sensors;
  const double delta = 1e-7, eta = 1e-3;
  const Mat Z = U.transpose() * U + delta * Mat::Identity(N, N);
  gdam::DualState st;
  st.S = eta * Z.inverse();
  st.S = (0.5 * (st.S + st.S.transpose())).eval();
  st.v = Vec::Zero(gdam::dual_dimension(inst));
  gdam::SnlConfig cfg;
  cfg.polish = false;
  cfg.main.zeta = 1.0;
  const auto r = gdam::postsolve_recover(inst, st, cfg);
  CHECK(r.eta == doctest::Approx(eta).epsilon(1e-4));
  CHECK(gdam::rmsd(r.X, inst.sensors) <= 1e-5);
  CHECK((r.Z.topLeftCorner(2, 2) - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-6);
  CHECK(r.rank_proxy <= 1e-5);
}

TEST_CASE("eta from gradient norms") {
  const double eta = 0.9999 * 2.0 / 1000.0;
  CHECK(eta == doctest::Approx(1.9998e-3));
}

TEST_CASE("small instance pipeline") {
  const auto inst = gdam::generate_instance(20, 0.4, 1);
  REQUIRE(gdam::is_connected(inst));
  const auto r = gdam::localize(inst);
  CHECK(r.localizable);
  CHECK(r.rmsd_refined <= 1e-2);
  CHECK(r.iterations > 0);
  CHECK((r.Z.topLeftCorner(2, 2) - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-6);
  CHECK(r.rank_proxy <= 1e-2);
  CHECK(r.rmsd_sdp >= 0.0);
}

TEST_CASE("dual iterates stay feasible and diagnostics are consistent") {
  const auto inst = gdam::presolve_scale(gdam::generate_instance(12, 0.5, 3));
  const auto p1 = gdam::phase1_initialize(inst);
  gdam::SolverConfig c = gdam::SnlConfig::default_main();
  c.record_trajectory = true;
  c.max_iters = 300;
  long infeasible = 0;
  c.observer = [&](const gdam::IterationEvent& e) {
    if (!gdam::spd_factorize(gdam::assemble_slack(inst, *e.x))) ++infeasible;
  };
  const auto st = gdam::snl_main_solve(inst, p1.v, c);
  CHECK(infeasible == 0);
  for (const auto& t : st.solve.trajectory) {
    if (!std::isfinite(t.cos_theta)) continue;
    CHECK(t.residual * t.residual == doctest::Approx(2.0 * (1.0 + t.cos_theta)).epsilon(1e-9));
  }
}

TEST_CASE("tiny fully connected instance is solved deep in the neighborhood") {
  const auto inst = gdam::presolve_scale(gdam::generate_instance(3, 2.0, 4));
  const auto p1 = gdam::phase1_initialize(inst);
  const auto st = gdam::snl_main_solve(inst, p1.v, gdam::SnlConfig::default_main());
  CHECK(st.solve.diagnostics.cos_theta <= -0.99);
}

TEST_CASE("gradient ascent with zeta zero is monotone") {
  const auto inst = gdam::presolve_scale(gdam::generate_instance(8, 0.6, 6));
  const auto p1 = gdam::phase1_initialize(inst);
  gdam::SolverConfig c = gdam::SnlConfig::default_main();
  c.zeta = 0.0;
  c.momentum = 0.0;
  c.restart.enabled = false;
  c.max_iters = 200;
  bool monotone = true;
  c.observer = [&](const gdam::IterationEvent& e) { monotone &= e.f < e.previous_f; };
  gdam::snl_main_solve(inst, p1.v, c);
  CHECK(monotone);
}

TEST_CASE("presolve round trip") {
  const auto inst = gdam::generate_instance(5, 0.8, 2);
  gdam::SnlConfig scaled;
  const auto a = gdam::localize(inst, scaled);
  gdam::SnlConfig unit;
  unit.presolve = 1.0;
  const auto b = gdam::localize(gdam::presolve_scale(inst, scaled.presolve), unit);
  CHECK(std::abs(a.rmsd_refined - b.rmsd_refined) <= 1e-12);
  CHECK(std::abs(a.rmsd_sdp - b.rmsd_sdp) <= 1e-12);
}

TEST_CASE("unlocalizable instances") {
  const auto inst = gdam::generate_instance(5, 0.0, 1);
  const auto r = gdam::localize(inst);
  CHECK_FALSE(r.localizable);
  CHECK(r.X.cols() == 5);
}

TEST_CASE("instance and result files round trip") {
  const auto inst = gdam::generate_instance(15, 0.4, 6);
  std::stringstream ss;
  gdam::write_instance(ss, inst);
  const auto back = gdam::read_instance(ss);
  CHECK(back.n == inst.n);
  CHECK(back.seed == inst.seed);
  CHECK(back.radius == inst.radius);
  CHECK(back.anchors == inst.anchors);
  CHECK(back.sensors == inst.sensors);
  REQUIRE(back.ss.size() == inst.ss.size());
  REQUIRE(back.sa.size() == inst.sa.size());
  for (std::size_t e = 0; e < inst.ss.size(); ++e) {
    CHECK(back.ss[e].i == inst.ss[e].i);
    CHECK(back.ss[e].d == inst.ss[e].d);
  }
  for (std::size_t e = 0; e < inst.sa.size(); ++e) CHECK(back.sa[e].d == inst.sa[e].d);

  gdam::LocalizationResult r;
  r.X = inst.sensors;
  r.X_refined = inst.sensors;
  r.rmsd_sdp = 0.25;
  r.iterations = 17;
  std::stringstream rs;
  gdam::write_result(rs, inst, r);
  const auto stored = gdam::read_result(rs);
  CHECK(stored.X == inst.sensors);
  CHECK(stored.X_true == inst.sensors);
  bool found = false;
  for (const auto& [k, v] : stored.values) {
    if (k == "iterations") found = v == "17";
  }
  CHECK(found);

  std::stringstream bad("n 3\n[edges-ss] 1\n0 5 1.0\n");
  CHECK_THROWS_AS(gdam::read_instance(bad), gdam::Error);
  std::stringstream junk("n 3\nradius abc\n");
  try {
    gdam::read_instance(junk);
  } catch (const gdam::Error& e) {
    CHECK(e.code() == gdam::ErrorCode::kParseError);
    CHECK(*e.index() == 2);
  }
}
