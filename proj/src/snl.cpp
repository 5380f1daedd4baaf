#include "gdam/snl.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

namespace gdam {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_dual_size(const SnlInstance& inst, const Vec& v) {
  if (v.size() != dual_dimension(inst)) {
    throw Error(ErrorCode::kIndexMismatch,
                "dual vector has " + std::to_string(v.size()) + " entries, expected " +
                    std::to_string(dual_dimension(inst)));
  }
}

// Adds w·uuᵀ for every edge, u the edge vector, weights taken from y.
void add_edge_terms(const SnlInstance& inst, const Vec& y, double sign, Mat& S) {
  const int m_ss = static_cast<int>(inst.ss.size());
  for (int e = 0; e < m_ss; ++e) {
    const double w = sign * y[e];
    const int a = 2 + inst.ss[e].i, b = 2 + inst.ss[e].j;
    S(a, a) += w;
    S(b, b) += w;
    S(a, b) -= w;
    S(b, a) -= w;
  }
  for (std::size_t e = 0; e < inst.sa.size(); ++e) {
    const double w = sign * y[m_ss + e];
    const auto& edge = inst.sa[e];
    const double a0 = inst.anchors(0, edge.k), a1 = inst.anchors(1, edge.k);
    const int b = 2 + edge.j;
    S(0, 0) += w * a0 * a0;
    S(0, 1) += w * a0 * a1;
    S(1, 0) += w * a0 * a1;
    S(1, 1) += w * a1 * a1;
    S(0, b) -= w * a0;
    S(b, 0) -= w * a0;
    S(1, b) -= w * a1;
    S(b, 1) -= w * a1;
    S(b, b) += w;
  }
}

double fmt_free_parse(const std::string& tok, int line) {
  const char* s = tok.c_str();
  char* end = nullptr;
  const double v = std::strtod(s, &end);
  if (end == s || *end != '\0') {
    throw Error(ErrorCode::kParseError,
                "line " + std::to_string(line) + ": expected a number, got '" + tok + "'",
                line);
  }
  return v;
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

// ------------------------------------------------------------ instances

SnlInstance generate_instance(int n, double r, std::uint64_t seed,
                              const GenerateOptions& options) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "n must be positive");
  if (r < 0.0) throw Error(ErrorCode::kInvalidArgument, "radius must be >= 0");
  if (options.n_anchors < 0) throw Error(ErrorCode::kInvalidArgument, "anchor count < 0");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-0.5, 0.5);
  std::normal_distribution<double> gauss(0.0, 1.0);

  SnlInstance inst;
  inst.n = n;
  inst.radius = r;
  inst.seed = seed;
  inst.sensors.resize(2, n);
  for (int j = 0; j < n; ++j) {
    inst.sensors(0, j) = unif(rng);
    inst.sensors(1, j) = unif(rng);
  }
  inst.anchors.resize(2, options.n_anchors);
  static const double corners[4][2] = {{0.45, 0.45}, {0.45, -0.45}, {-0.45, 0.45}, {-0.45, -0.45}};
  for (int k = 0; k < options.n_anchors; ++k) {
    if (!options.random_anchors && k < 4) {
      inst.anchors(0, k) = corners[k][0];
      inst.anchors(1, k) = corners[k][1];
    } else {
      inst.anchors(0, k) = unif(rng);
      inst.anchors(1, k) = unif(rng);
    }
  }
  auto measure = [&](double d) {
    return options.noise > 0.0 ? d * (1.0 + options.noise * gauss(rng)) : d;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double d = (inst.sensors.col(i) - inst.sensors.col(j)).norm();
      if (d <= r && d > 0.0) inst.ss.push_back({i, j, measure(d)});
    }
  }
  for (int k = 0; k < options.n_anchors; ++k) {
    for (int j = 0; j < n; ++j) {
      const double d = (inst.anchors.col(k) - inst.sensors.col(j)).norm();
      if (d <= r && d > 0.0) inst.sa.push_back({k, j, measure(d)});
    }
  }
  return inst;
}

bool is_connected(const SnlInstance& inst) {
  // union-find over sensors plus one node standing for all anchors
  std::vector<int> parent(inst.n + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (const auto& e : inst.ss) parent[find(e.i)] = find(e.j);
  for (const auto& e : inst.sa) parent[find(e.j)] = find(inst.n);
  const int root = find(inst.n);
  for (int j = 0; j < inst.n; ++j) {
    if (find(j) != root) return false;
  }
  return true;
}

SnlInstance presolve_scale(const SnlInstance& inst, double scale) {
  if (!(scale > 0.0)) throw Error(ErrorCode::kInvalidArgument, "scale must be positive");
  SnlInstance out = inst;
  out.anchors *= scale;
  out.sensors *= scale;
  for (auto& e : out.ss) e.d *= scale;
  for (auto& e : out.sa) e.d *= scale;
  out.radius *= scale;
  out.scale *= scale;
  return out;
}

// ------------------------------------------------------------ dual model

int dual_dimension(const SnlInstance& inst) { return 3 + inst.num_edges(); }

Mat2 dual_V(const Vec& v) {
  Mat2 V;
  V << v[0], v[1], v[1], v[2];
  return V;
}

Vec pack_dual(const Mat2& V, const Vec& y) {
  Vec v(3 + y.size());
  v[0] = V(0, 0);
  v[1] = V(0, 1);
  v[2] = V(1, 1);
  v.tail(y.size()) = y;
  return v;
}

Mat assemble_slack(const SnlInstance& inst, const Vec& y, const Mat2& V) {
  if (y.size() != inst.num_edges()) {
    throw Error(ErrorCode::kIndexMismatch,
                "y has " + std::to_string(y.size()) + " entries for " +
                    std::to_string(inst.num_edges()) + " edges");
  }
  const int N = inst.n + 2;
  Mat S = Mat::Zero(N, N);
  S.topLeftCorner<2, 2>() = -V;
  add_edge_terms(inst, y, -1.0, S);
  return S;
}

Mat assemble_slack(const SnlInstance& inst, const Vec& v) {
  check_dual_size(inst, v);
  return assemble_slack(inst, v.tail(inst.num_edges()), dual_V(v));
}

LinearObjective dual_objective(const SnlInstance& inst, const Vec& v) {
  check_dual_size(inst, v);
  LinearObjective out;
  out.gradient.resize(v.size());
  out.gradient[0] = -1.0;
  out.gradient[1] = 0.0;
  out.gradient[2] = -1.0;
  int e = 3;
  for (const auto& s : inst.ss) out.gradient[e++] = -s.d * s.d;
  for (const auto& s : inst.sa) out.gradient[e++] = -s.d * s.d;
  out.value = out.gradient.dot(v);
  return out;
}

Vec slack_gradient(const SnlInstance& inst, const Mat& W) {
  Vec g(dual_dimension(inst));
  g[0] = W(0, 0);
  g[1] = 2.0 * W(0, 1);
  g[2] = W(1, 1);
  int e = 3;
  for (const auto& s : inst.ss) {
    const int a = 2 + s.i, b = 2 + s.j;
    g[e++] = W(a, a) + W(b, b) - 2.0 * W(a, b);
  }
  for (const auto& s : inst.sa) {
    const double a0 = inst.anchors(0, s.k), a1 = inst.anchors(1, s.k);
    const int b = 2 + s.j;
    g[e++] = a0 * a0 * W(0, 0) + 2.0 * a0 * a1 * W(0, 1) + a1 * a1 * W(1, 1) -
             2.0 * (a0 * W(0, b) + a1 * W(1, b)) + W(b, b);
  }
  return g;
}

namespace {

// S⁻¹ restricted to what slack_gradient reads. Below 500 rows a dense
// inverse is cheapest; above, only columns touched by some edge are solved.
Mat inverse_for_gradient(const SnlInstance& inst, const SpdFactor& factor) {
  const int N = factor.size();
  if (N < 500) return factor.inverse();
  std::vector<char> touched(N, 0);
  touched[0] = touched[1] = 1;
  for (const auto& s : inst.ss) touched[2 + s.i] = touched[2 + s.j] = 1;
  for (const auto& s : inst.sa) touched[2 + s.j] = 1;
  std::vector<int> cols;
  for (int c = 0; c < N; ++c)
    if (touched[c]) cols.push_back(c);
  Mat rhs = Mat::Zero(N, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t t = 0; t < cols.size(); ++t) rhs(cols[t], t) = 1.0;
  const Mat solved = factor.solve(rhs);
  Mat W = Mat::Zero(N, N);
  for (std::size_t t = 0; t < cols.size(); ++t) W.col(cols[t]) = solved.col(t);
  return W;
}

}  // namespace

LogDetBarrier dual_barrier(const SnlInstance& inst, const Vec& v) {
  const SpdFactorResult f = spd_factorize(assemble_slack(inst, v));
  if (!f) {
    throw Error(ErrorCode::kNotPositiveDefinite, "slack matrix is not positive definite",
                f.failing_pivot);
  }
  LogDetBarrier out;
  out.value = -f.factor->log_det();
  out.gradient = slack_gradient(inst, inverse_for_gradient(inst, *f.factor));
  out.min_pivot = f.factor->min_pivot();
  return out;
}

SnlDualModel::SnlDualModel(const SnlInstance& inst) : inst_(inst) {
  grad_f_ = dual_objective(inst, Vec::Zero(dual_dimension(inst))).gradient;
}

const SpdFactorResult& SnlDualModel::factor(const Vec& v) const {
  if (cached_v_.size() != v.size() || cached_v_ != v) {
    cached_ = spd_factorize(assemble_slack(inst_, v));
    cached_v_ = v;
    ++factorizations_;
  }
  return cached_;
}

bool SnlDualModel::feasible(const Vec& v) const { return static_cast<bool>(factor(v)); }

double SnlDualModel::objective(const Vec& v) const { return grad_f_.dot(v); }

std::optional<ModelPoint> SnlDualModel::evaluate(const Vec& v) const {
  const SpdFactorResult& f = factor(v);
  if (!f) return std::nullopt;
  ModelPoint p;
  p.f = grad_f_.dot(v);
  p.grad_f = grad_f_;
  p.barrier = -f.factor->log_det();
  p.grad_barrier = slack_gradient(inst_, inverse_for_gradient(inst_, *f.factor));
  return p;
}

Phase1Result phase1_initialize(const SnlInstance& inst, const Phase1Options& options) {
  if (!(options.lambda > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "phase-I shift lambda must be positive");
  }
  const int N = inst.n + 2;
  const Mat shift = options.lambda * Mat::Identity(N, N);
  Phase1Result out;
  out.v = Vec::Zero(dual_dimension(inst));
  while (!spd_factorize(assemble_slack(inst, out.v))) {
    if (out.steps >= options.budget) {
      throw Error(ErrorCode::kPhase1Failure,
                  "no positive definite slack within " + std::to_string(options.budget) +
                      " gradient steps");
    }
    const SpdFactorResult T = spd_factorize(shift + assemble_slack(inst, out.v));
    if (!T) throw Error(ErrorCode::kPhase1Failure, "shifted slack lost definiteness");
    const Vec g = slack_gradient(inst, T.factor->inverse());
    const double psi = -T.factor->log_det();
    double t = 1.0;
    Vec next;
    for (int halving = 0;; ++halving) {
      if (halving > 60) throw Error(ErrorCode::kPhase1Failure, "phase-I step underflow");
      next = out.v - t * g;
      const SpdFactorResult Tn = spd_factorize(shift + assemble_slack(inst, next));
      if (Tn && -Tn.factor->log_det() < psi) break;
      t *= 0.5;
    }
    out.v = std::move(next);
    ++out.steps;
  }
  return out;
}

// ------------------------------------------------------------ solve

SolverConfig SnlConfig::default_main() {
  SolverConfig c;
  c.zeta = 0.9999;
  c.beta = 16.18;
  c.beta_min = 1e-8;
  c.tau = 0.5;
  c.line_search = true;
  c.momentum = 0.9;
  c.max_iters = 750;
  c.restart.enabled = true;
  c.restart.kappa = 2.0;
  c.restart.monitor_period = 25;
  c.restart.slowdown_tol = 1e-6;
  c.step_rule = StepRule::kScaled;
  return c;
}

SolverConfig SnlConfig::default_polish() {
  SolverConfig c = default_main();
  c.zeta = 1.0;
  c.beta_min = 1e-10;
  c.max_iters = 200;
  return c;
}

DualState snl_main_solve(const SnlInstance& inst, const Vec& v0, const SolverConfig& config) {
  SnlDualModel model(inst);
  DualState st;
  st.solve = accelerated_solve(model, config, v0);
  st.v = st.solve.x;
  st.S = assemble_slack(inst, st.v);
  st.objective = st.solve.f;
  const SpdFactorResult f = spd_factorize(st.S);
  if (!f) throw Error(ErrorCode::kNotPositiveDefinite, "final slack is not positive definite");
  st.min_pivot = f.factor->min_pivot();
  return st;
}

double rmsd(const Mat& X, const Mat& X_true) {
  if (X.rows() != X_true.rows() || X.cols() != X_true.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "position matrices differ in shape");
  }
  if (X.cols() == 0) return 0.0;
  return std::sqrt((X - X_true).colwise().squaredNorm().sum() / static_cast<double>(X.cols()));
}

LocalizationResult postsolve_recover(const SnlInstance& inst, const DualState& state,
                                     const SnlConfig& config) {
  LocalizationResult out;
  DualState final_state = state;
  double zeta = config.main.zeta;
  if (config.polish) {
    SolverConfig pc = config.polish_config;
    final_state = snl_main_solve(inst, state.v, pc);
    out.polish_iterations = final_state.solve.iterations;
    zeta = pc.zeta;
  }
  const SpdFactorResult f = spd_factorize(final_state.S);
  if (!f) throw Error(ErrorCode::kNotPositiveDefinite, "slack is not positive definite");
  const Mat Sinv = f.factor->inverse();
  const Vec gb = slack_gradient(inst, Sinv);
  const Vec gf = dual_objective(inst, final_state.v).gradient;
  out.eta = zeta * gf.norm() / gb.norm();
  const Mat Z = out.eta * Sinv;

  Eigen::SelfAdjointEigenSolver<Mat2> es(Z.topLeftCorner<2, 2>());
  if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0) {
    throw Error(ErrorCode::kNotPositiveDefinite, "corner block of Z is not positive definite");
  }
  const Mat2 Binv_half = es.eigenvectors() *
                         es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
                         es.eigenvectors().transpose();
  const int N = inst.n + 2;
  Mat C = Mat::Identity(N, N);
  C.topLeftCorner<2, 2>() = Binv_half;
  out.Z = C * Z * C.transpose();
  out.X = out.Z.block(0, 2, 2, inst.n) / inst.scale;

  Eigen::SelfAdjointEigenSolver<Mat> ez(out.Z, Eigen::EigenvaluesOnly);
  const Vec ev = ez.eigenvalues();
  out.rank_proxy = N >= 3 ? ev[N - 3] / ev[N - 1] : 0.0;
  out.dual_objective = final_state.objective;
  out.min_pivot = final_state.min_pivot;
  out.iterations = state.solve.iterations;
  out.restarts = state.solve.restarts;
  out.termination = state.solve.termination;
  return out;
}

RefineResult refine_positions(const SnlInstance& inst, const Mat& X0, int max_iters) {
  if (X0.rows() != 2 || X0.cols() != inst.n) {
    throw Error(ErrorCode::kDimensionMismatch, "X0 must be 2 x n");
  }
  const Mat A = inst.anchors / inst.scale;
  const double s = inst.scale;
  auto residual = [&](const Mat& X, Mat* G) {
    double f = 0.0;
    if (G) G->setZero(2, inst.n);
    for (const auto& e : inst.ss) {
      const Eigen::Vector2d diff = X.col(e.i) - X.col(e.j);
      const double d = e.d / s;
      const double q = diff.squaredNorm() - d * d;
      f += q * q;
      if (G) {
        G->col(e.i) += 4.0 * q * diff;
        G->col(e.j) -= 4.0 * q * diff;
      }
    }
    for (const auto& e : inst.sa) {
      const Eigen::Vector2d diff = X.col(e.j) - A.col(e.k);
      const double d = e.d / s;
      const double q = diff.squaredNorm() - d * d;
      f += q * q;
      if (G) G->col(e.j) += 4.0 * q * diff;
    }
    return f;
  };
  RefineResult out;
  out.X = X0;
  Mat G;
  double f = residual(out.X, &G);
  double t = 1.0;
  for (; out.iterations < max_iters; ++out.iterations) {
    const double gn2 = G.squaredNorm();
    if (std::sqrt(gn2) <= 1e-8 * (1.0 + f)) break;
    t *= 2.0;
    Mat Xn;
    double fn = 0.0;
    for (int halving = 0;; ++halving) {
      Xn = out.X - t * G;
      fn = residual(Xn, nullptr);
      if (fn <= f - 1e-4 * t * gn2) break;
      t *= 0.5;
      if (halving > 60) {
        out.residual = f;
        return out;
      }
    }
    out.X = std::move(Xn);
    f = residual(out.X, &G);
  }
  out.residual = f;
  return out;
}

LocalizationResult localize(const SnlInstance& inst, const SnlConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  LocalizationResult out;
  if (inst.num_edges() == 0 || !is_connected(inst)) {
    out.localizable = false;
    out.X = Mat::Constant(2, inst.n, kNaN);
    out.X_refined = out.X;
    return out;
  }
  const SnlInstance scaled = presolve_scale(inst, config.presolve);
  const Phase1Result p1 = phase1_initialize(scaled, config.phase1);
  const DualState st = snl_main_solve(scaled, p1.v, config.main);
  out = postsolve_recover(scaled, st, config);
  out.phase1_steps = p1.steps;
  const RefineResult ref = refine_positions(inst, out.X, config.refine_max_iters);
  out.X_refined = ref.X;
  out.refine_iterations = ref.iterations;
  if (inst.has_truth()) {
    const Mat truth = inst.sensors / inst.scale;
    out.rmsd_sdp = rmsd(out.X, truth);
    out.rmsd_refined = rmsd(out.X_refined, truth);
  }
  out.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

// ------------------------------------------------------------ IO

void write_instance(std::ostream& out, const SnlInstance& inst) {
  out << "n " << inst.n << '\n';
  out << "radius " << g17(inst.radius) << '\n';
  out << "seed " << inst.seed << '\n';
  out << "scale " << g17(inst.scale) << '\n';
  out << "[anchors] " << inst.anchors.cols() << '\n';
  for (int k = 0; k < inst.anchors.cols(); ++k)
    out << g17(inst.anchors(0, k)) << ' ' << g17(inst.anchors(1, k)) << '\n';
  if (inst.has_truth()) {
    out << "[sensors] " << inst.n << '\n';
    for (int j = 0; j < inst.n; ++j)
      out << g17(inst.sensors(0, j)) << ' ' << g17(inst.sensors(1, j)) << '\n';
  }
  out << "[edges-ss] " << inst.ss.size() << '\n';
  for (const auto& e : inst.ss) out << e.i << ' ' << e.j << ' ' << g17(e.d) << '\n';
  out << "[edges-sa] " << inst.sa.size() << '\n';
  for (const auto& e : inst.sa) out << e.k << ' ' << e.j << ' ' << g17(e.d) << '\n';
}

namespace {

struct LineReader {
  std::istream& in;
  int line = 0;
  bool next(std::vector<std::string>& toks) {
    std::string s;
    while (std::getline(in, s)) {
      ++line;
      const auto hash = s.find('#');
      if (hash != std::string::npos) s.resize(hash);
      std::istringstream ls(s);
      toks.clear();
      std::string t;
      while (ls >> t) toks.push_back(t);
      if (!toks.empty()) return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::kParseError, "line " + std::to_string(line) + ": " + what, line);
  }
  long integer(const std::string& tok) const {
    const char* s = tok.c_str();
    char* end = nullptr;
    const long v = std::strtol(s, &end, 10);
    if (end == s || *end != '\0') fail("expected an integer, got '" + tok + "'");
    return v;
  }
  double real(const std::string& tok) const { return fmt_free_parse(tok, line); }
};

}  // namespace

SnlInstance read_instance(std::istream& in) {
  LineReader r{in};
  SnlInstance inst;
  bool have_n = false;
  std::vector<std::string> t;
  auto expect_fields = [&](std::size_t k) {
    if (!r.next(t)) r.fail("unexpected end of input");
    if (t.size() != k) r.fail("expected " + std::to_string(k) + " fields");
  };
  while (r.next(t)) {
    const std::string& key = t[0];
    if (t.size() != 2) r.fail("expected 'key value'");
    if (key == "n") {
      inst.n = static_cast<int>(r.integer(t[1]));
      if (inst.n < 1) r.fail("n must be positive");
      have_n = true;
    } else if (key == "radius") {
      inst.radius = r.real(t[1]);
    } else if (key == "seed") {
      inst.seed = static_cast<std::uint64_t>(std::strtoull(t[1].c_str(), nullptr, 10));
    } else if (key == "scale") {
      inst.scale = r.real(t[1]);
    } else if (key == "[anchors]") {
      const long K = r.integer(t[1]);
      inst.anchors.resize(2, K);
      for (long k = 0; k < K; ++k) {
        expect_fields(2);
        inst.anchors(0, k) = r.real(t[0]);
        inst.anchors(1, k) = r.real(t[1]);
      }
    } else if (key == "[sensors]") {
      if (!have_n) r.fail("[sensors] before n");
      const long cnt = r.integer(t[1]);
      if (cnt != inst.n) {
        throw Error(ErrorCode::kDimensionMismatch, "sensor table size differs from n", r.line);
      }
      inst.sensors.resize(2, cnt);
      for (long j = 0; j < cnt; ++j) {
        expect_fields(2);
        inst.sensors(0, j) = r.real(t[0]);
        inst.sensors(1, j) = r.real(t[1]);
      }
    } else if (key == "[edges-ss]") {
      const long cnt = r.integer(t[1]);
      for (long e = 0; e < cnt; ++e) {
        expect_fields(3);
        inst.ss.push_back({static_cast<int>(r.integer(t[0])),
                           static_cast<int>(r.integer(t[1])), r.real(t[2])});
      }
    } else if (key == "[edges-sa]") {
      const long cnt = r.integer(t[1]);
      for (long e = 0; e < cnt; ++e) {
        expect_fields(3);
        inst.sa.push_back({static_cast<int>(r.integer(t[0])),
                           static_cast<int>(r.integer(t[1])), r.real(t[2])});
      }
    } else {
      r.fail("unknown key '" + key + "'");
    }
  }
  if (!have_n) r.fail("missing 'n'");
  for (const auto& e : inst.ss) {
    if (e.i < 0 || e.j < 0 || e.i >= inst.n || e.j >= inst.n || e.i == e.j) {
      throw Error(ErrorCode::kIndexMismatch, "sensor edge index out of range");
    }
    if (!(e.d > 0.0)) throw Error(ErrorCode::kParseError, "distances must be positive");
  }
  for (const auto& e : inst.sa) {
    if (e.k < 0 || e.k >= inst.anchors.cols() || e.j < 0 || e.j >= inst.n) {
      throw Error(ErrorCode::kIndexMismatch, "anchor edge index out of range");
    }
    if (!(e.d > 0.0)) throw Error(ErrorCode::kParseError, "distances must be positive");
  }
  return inst;
}

void write_instance_file(const std::string& path, const SnlInstance& inst) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
  write_instance(out, inst);
}

SnlInstance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open " + path, 0);
  return read_instance(in);
}

void write_result(std::ostream& out, const SnlInstance& inst, const LocalizationResult& r) {
  out << "localizable " << (r.localizable ? 1 : 0) << '\n';
  out << "n " << inst.n << '\n';
  out << "edges " << inst.num_edges() << '\n';
  out << "rmsd_sdp " << g17(r.rmsd_sdp) << '\n';
  out << "rmsd_refined " << g17(r.rmsd_refined) << '\n';
  out << "rank_proxy " << g17(r.rank_proxy) << '\n';
  out << "eta " << g17(r.eta) << '\n';
  out << "dual_objective " << g17(r.dual_objective) << '\n';
  out << "min_pivot " << g17(r.min_pivot) << '\n';
  out << "phase1_steps " << r.phase1_steps << '\n';
  out << "iterations " << r.iterations << '\n';
  out << "restarts " << r.restarts << '\n';
  out << "polish_iterations " << r.polish_iterations << '\n';
  out << "refine_iterations " << r.refine_iterations << '\n';
  out << "termination " << to_string(r.termination) << '\n';
  out << "[positions] " << inst.n << '\n';
  for (int j = 0; j < inst.n; ++j) {
    auto at = [&](const Mat& M, int row) { return M.cols() == inst.n ? M(row, j) : kNaN; };
    out << j << ' ' << g17(at(r.X, 0)) << ' ' << g17(at(r.X, 1)) << ' '
        << g17(at(r.X_refined, 0)) << ' ' << g17(at(r.X_refined, 1)) << ' '
        << g17(at(inst.sensors, 0)) << ' ' << g17(at(inst.sensors, 1)) << '\n';
  }
}

StoredResult read_result(std::istream& in) {
  LineReader r{in};
  StoredResult out;
  std::vector<std::string> t;
  while (r.next(t)) {
    if (t[0] == "[positions]") {
      if (t.size() != 2) r.fail("expected '[positions] n'");
      const long n = r.integer(t[1]);
      out.X.resize(2, n);
      out.X_refined.resize(2, n);
      out.X_true.resize(2, n);
      for (long j = 0; j < n; ++j) {
        if (!r.next(t) || t.size() != 7) r.fail("expected 7 fields in position row");
        for (int c = 0; c < 2; ++c) {
          out.X(c, j) = r.real(t[1 + c]);
          out.X_refined(c, j) = r.real(t[3 + c]);
          out.X_true(c, j) = r.real(t[5 + c]);
        }
      }
    } else {
      if (t.size() != 2) r.fail("expected 'key value'");
      out.values.emplace_back(t[0], t[1]);
    }
  }
  return out;
}

}  // namespace gdam
