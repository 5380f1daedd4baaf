#include "gdam/problems.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include <Eigen/LU>

#include "gdam/linalg.hpp"

namespace gdam {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Inequality affine(Vec a, double c) {
  return {[a, c](const Vec& x) { return a.dot(x) - c; },
          [a](const Vec&) { return a; }};
}

Vec unit(int n, int i, double sign = 1.0) {
  Vec e = Vec::Zero(n);
  e[i] = sign;
  return e;
}

void add_bounds(Problem& p, const Vec& lower, const Vec& upper) {
  for (int i = 0; i < p.dimension; ++i) {
    if (std::isfinite(lower[i])) p.inequalities.push_back(affine(unit(p.dimension, i, -1.0), -lower[i]));
    if (std::isfinite(upper[i])) p.inequalities.push_back(affine(unit(p.dimension, i), upper[i]));
  }
}

}  // namespace

Problem analytic_2d_problem() {
  Problem p;
  p.name = "analytic";
  p.dimension = 2;
  p.objective = [](const Vec& x) { return 0.5 * x.squaredNorm(); };
  p.objective_gradient = [](const Vec& x) { return x; };
  p.inequalities.push_back(affine(Vec{{0.0, -1.0}}, -10.0));
  p.reference_optimum = 50.0;
  return p;
}

Problem nonconvex_2d_problem() {
  Problem p;
  p.name = "nonconvex";
  p.dimension = 2;
  p.objective = [](const Vec& x) {
    const double a = x[0], b = x[1];
    return 1.5 * a * a + b * b - 2.0 * a * b + 2.0 * a * a * a + 0.5 * a * a * a * a;
  };
  p.objective_gradient = [](const Vec& x) {
    const double a = x[0], b = x[1];
    return Vec{{3.0 * a - 2.0 * b + 6.0 * a * a + 2.0 * a * a * a, 2.0 * b - 2.0 * a}};
  };
  p.inequalities.push_back(
      {[](const Vec& x) { return x[0] * x[0] - x[1] - 2.2; },
       [](const Vec& x) { return Vec{{2.0 * x[0], -1.0}}; }});
  return p;
}

AnalyticTrajectory AnalyticTrajectory::make(double zeta, const Vec& x0) {
  if (x0.size() != 2) throw Error(ErrorCode::kDimensionMismatch, "x0 must be 2D");
  if (x0[0] == 0.0) {
    throw Error(ErrorCode::kDomainError, "trajectory needs x1 of the start != 0");
  }
  AnalyticTrajectory t;
  t.zeta = zeta;
  t.x0 = x0;
  t.xbar2 = 0.5 * (x0[1] + x0.norm());
  return t;
}

double AnalyticTrajectory::x2_at(double x1) const {
  const double rhs = 2.0 * xbar2 * std::pow(std::abs(x1 / x0[0]), 1.0 - zeta);
  // x₂ + √(x₁² + x₂²) = R  ⇒  x₂ = (R² - x₁²) / 2R
  return (rhs * rhs - x1 * x1) / (2.0 * rhs);
}

double trajectory_defect(const AnalyticTrajectory& traj, const Vec& point) {
  if (traj.x0.size() != 2 || traj.x0[0] == 0.0) {
    throw Error(ErrorCode::kDomainError, "trajectory needs x1 of the start != 0");
  }
  const double rhs =
      2.0 * traj.xbar2 * std::pow(std::abs(point[0] / traj.x0[0]), 1.0 - traj.zeta);
  return point[1] + point.norm() - rhs;
}

Vec trajectory_apex(double zeta, const Vec& x0) {
  if (!(zeta > 0.0 && zeta < 1.0)) {
    throw Error(ErrorCode::kDomainError, "apex requires zeta in (0, 1)");
  }
  const AnalyticTrajectory t = AnalyticTrajectory::make(zeta, x0);
  const double q = std::sqrt(1.0 - zeta * zeta) / zeta;
  const double x2_pow = 2.0 * zeta / (1.0 + zeta) * t.xbar2 /
                        std::pow(std::abs(x0[0]), 1.0 - zeta) *
                        std::pow(q, 1.0 - zeta);
  const double x2 = std::pow(x2_pow, 1.0 / zeta);
  // x₂ = ζ|x| ⇒ |x₁| = x₂ √(1-ζ²)/ζ
  return Vec{{std::copysign(x2 * q, x0[0]), x2}};
}

double apex_distance_bound(double zeta, const Vec& x0) {
  if (!(zeta > 0.0 && zeta <= 1.0)) {
    throw Error(ErrorCode::kDomainError, "bound requires zeta in (0, 1]");
  }
  const double xbar2 = 0.5 * (x0[1] + x0.norm());
  return xbar2 / zeta * std::sqrt(1.0 - zeta * zeta);
}

// ---------------------------------------------------------------- CEC 2006

namespace {

struct CecDef {
  CecInfo info;
  std::function<Problem()> build;
  Vec optimum;
  std::function<bool(const Vec&)> region;
};

Problem make_g01() {
  Problem p;
  p.dimension = 13;
  p.objective = [](const Vec& x) {
    double f = 0.0;
    for (int i = 0; i < 4; ++i) f += 5.0 * x[i] - 5.0 * x[i] * x[i];
    for (int i = 4; i < 13; ++i) f -= x[i];
    return f;
  };
  p.objective_gradient = [](const Vec& x) {
    Vec g = Vec::Constant(13, -1.0);
    for (int i = 0; i < 4; ++i) g[i] = 5.0 - 10.0 * x[i];
    return g;
  };
  auto row = [](std::initializer_list<std::pair<int, double>> entries) {
    Vec a = Vec::Zero(13);
    for (auto [i, v] : entries) a[i - 1] = v;
    return a;
  };
  p.inequalities = {
      affine(row({{1, 2}, {2, 2}, {10, 1}, {11, 1}}), 10.0),
      affine(row({{1, 2}, {3, 2}, {10, 1}, {12, 1}}), 10.0),
      affine(row({{2, 2}, {3, 2}, {11, 1}, {12, 1}}), 10.0),
      affine(row({{1, -8}, {10, 1}}), 0.0),
      affine(row({{2, -8}, {11, 1}}), 0.0),
      affine(row({{3, -8}, {12, 1}}), 0.0),
      affine(row({{4, -2}, {5, -1}, {10, 1}}), 0.0),
      affine(row({{6, -2}, {7, -1}, {11, 1}}), 0.0),
      affine(row({{8, -2}, {9, -1}, {12, 1}}), 0.0),
  };
  return p;
}

Problem make_g04() {
  Problem p;
  p.dimension = 5;
  p.objective = [](const Vec& x) {
    return 5.3578547 * x[2] * x[2] + 0.8356891 * x[0] * x[4] + 37.293239 * x[0] -
           40792.141;
  };
  p.objective_gradient = [](const Vec& x) {
    return Vec{{0.8356891 * x[4] + 37.293239, 0.0, 2.0 * 5.3578547 * x[2], 0.0,
                0.8356891 * x[0]}};
  };
  auto u = [](const Vec& x) {
    return 85.334407 + 0.0056858 * x[1] * x[4] + 0.0006262 * x[0] * x[3] -
           0.0022053 * x[2] * x[4];
  };
  auto du = [](const Vec& x) {
    return Vec{{0.0006262 * x[3], 0.0056858 * x[4], -0.0022053 * x[4],
                0.0006262 * x[0], 0.0056858 * x[1] - 0.0022053 * x[2]}};
  };
  auto v = [](const Vec& x) {
    return 80.51249 + 0.0071317 * x[1] * x[4] + 0.0029955 * x[0] * x[1] +
           0.0021813 * x[2] * x[2];
  };
  auto dv = [](const Vec& x) {
    return Vec{{0.0029955 * x[1], 0.0071317 * x[4] + 0.0029955 * x[0],
                2.0 * 0.0021813 * x[2], 0.0, 0.0071317 * x[1]}};
  };
  auto w = [](const Vec& x) {
    return 9.300961 + 0.0047026 * x[2] * x[4] + 0.0012547 * x[0] * x[2] +
           0.0019085 * x[2] * x[3];
  };
  auto dw = [](const Vec& x) {
    return Vec{{0.0012547 * x[2], 0.0,
                0.0047026 * x[4] + 0.0012547 * x[0] + 0.0019085 * x[3],
                0.0019085 * x[2], 0.0047026 * x[2]}};
  };
  p.inequalities = {
      {[u](const Vec& x) { return u(x) - 92.0; }, du},
      {[u](const Vec& x) { return -u(x); }, [du](const Vec& x) { return Vec(-du(x)); }},
      {[v](const Vec& x) { return v(x) - 110.0; }, dv},
      {[v](const Vec& x) { return 90.0 - v(x); }, [dv](const Vec& x) { return Vec(-dv(x)); }},
      {[w](const Vec& x) { return w(x) - 25.0; }, dw},
      {[w](const Vec& x) { return 20.0 - w(x); }, [dw](const Vec& x) { return Vec(-dw(x)); }},
  };
  return p;
}

Problem make_g06() {
  Problem p;
  p.dimension = 2;
  p.objective = [](const Vec& x) {
    return std::pow(x[0] - 10.0, 3) + std::pow(x[1] - 20.0, 3);
  };
  p.objective_gradient = [](const Vec& x) {
    return Vec{{3.0 * std::pow(x[0] - 10.0, 2), 3.0 * std::pow(x[1] - 20.0, 2)}};
  };
  p.inequalities = {
      {[](const Vec& x) {
         return -std::pow(x[0] - 5.0, 2) - std::pow(x[1] - 5.0, 2) + 100.0;
       },
       [](const Vec& x) { return Vec{{-2.0 * (x[0] - 5.0), -2.0 * (x[1] - 5.0)}}; }},
      {[](const Vec& x) {
         return std::pow(x[0] - 6.0, 2) + std::pow(x[1] - 5.0, 2) - 82.81;
       },
       [](const Vec& x) { return Vec{{2.0 * (x[0] - 6.0), 2.0 * (x[1] - 5.0)}}; }},
  };
  return p;
}

Problem make_g08() {
  constexpr double tp = 2.0 * std::numbers::pi;
  Problem p;
  p.dimension = 2;
  p.objective = [](const Vec& x) {
    const double s1 = std::sin(tp * x[0]);
    return -s1 * s1 * s1 * std::sin(tp * x[1]) /
           (x[0] * x[0] * x[0] * (x[0] + x[1]));
  };
  p.objective_gradient = [](const Vec& x) {
    const double s1 = std::sin(tp * x[0]), c1 = std::cos(tp * x[0]);
    const double s2 = std::sin(tp * x[1]), c2 = std::cos(tp * x[1]);
    const double num = s1 * s1 * s1 * s2;
    const double den = x[0] * x[0] * x[0] * (x[0] + x[1]);
    const double dnum1 = 3.0 * s1 * s1 * c1 * tp * s2;
    const double dnum2 = s1 * s1 * s1 * c2 * tp;
    const double dden1 = 4.0 * x[0] * x[0] * x[0] + 3.0 * x[0] * x[0] * x[1];
    const double dden2 = x[0] * x[0] * x[0];
    return Vec{{-(dnum1 * den - num * dden1) / (den * den),
                -(dnum2 * den - num * dden2) / (den * den)}};
  };
  p.inequalities = {
      {[](const Vec& x) { return x[0] * x[0] - x[1] + 1.0; },
       [](const Vec& x) { return Vec{{2.0 * x[0], -1.0}}; }},
      {[](const Vec& x) { return 1.0 - x[0] + std::pow(x[1] - 4.0, 2); },
       [](const Vec& x) { return Vec{{-1.0, 2.0 * (x[1] - 4.0)}}; }},
  };
  return p;
}

Problem make_g24() {
  Problem p;
  p.dimension = 2;
  p.objective = [](const Vec& x) { return -x[0] - x[1]; };
  p.objective_gradient = [](const Vec&) { return Vec{{-1.0, -1.0}}; };
  p.inequalities = {
      {[](const Vec& x) {
         const double a = x[0];
         return -2.0 * std::pow(a, 4) + 8.0 * a * a * a - 8.0 * a * a + x[1] - 2.0;
       },
       [](const Vec& x) {
         const double a = x[0];
         return Vec{{-8.0 * a * a * a + 24.0 * a * a - 16.0 * a, 1.0}};
       }},
      {[](const Vec& x) {
         const double a = x[0];
         return -4.0 * std::pow(a, 4) + 32.0 * a * a * a - 88.0 * a * a + 96.0 * a +
                x[1] - 36.0;
       },
       [](const Vec& x) {
         const double a = x[0];
         return Vec{{-16.0 * a * a * a + 96.0 * a * a - 176.0 * a + 96.0, 1.0}};
       }},
  };
  return p;
}

const std::vector<CecDef>& cec_table() {
  static const std::vector<CecDef> table = [] {
    std::vector<CecDef> t;
    {
      Vec lo = Vec::Zero(13), hi = Vec::Ones(13);
      hi[9] = hi[10] = hi[11] = 100.0;
      Vec opt = Vec::Ones(13);
      opt[9] = opt[10] = opt[11] = 3.0;
      t.push_back({{"G01", lo, hi, {0.002, 2362, -15.0, -14.7215, 1.74e-2}},
                   make_g01, opt, nullptr});
    }
    t.push_back({{"G04", Vec{{78, 33, 27, 27, 27}}, Vec{{102, 45, 45, 45, 45}},
                  {0.2, 136, -3.0665e4, -3.0657e4, 2.61e-4}},
                 make_g04,
                 Vec{{78.0, 33.0, 29.9952560256815985, 45.0, 36.7758129057882073}},
                 nullptr});
    t.push_back({{"G06", Vec{{13, 0}}, Vec{{100, 100}},
                  {0.002, 4826, -6.9618e3, -6.8371e3, 1.79e-2}},
                 make_g06, Vec{{14.09500000000000064, 0.8429607892154795668}},
                 nullptr});
    t.push_back({{"G08", Vec{{0, 0}}, Vec{{10, 10}},
                  {0.01, 66, -9.5825e-2, -9.5063e-2, 6.95e-4}},
                 make_g08, Vec{{1.22797135260752599, 4.24537336612274885}},
                 nullptr});
    // the feasible set has two components separated at x₁ = 1
    t.push_back({{"G24", Vec{{0, 0}}, Vec{{3, 4}},
                  {0.02, 268, -5.5080, -5.4147, 1.43e-2}},
                 make_g24, Vec{{2.329520197477623, 3.17849307411774}},
                 [](const Vec& x) { return x[0] > 1.0; }});
    return t;
  }();
  return table;
}

const CecDef& find_cec(std::string_view id) {
  for (const auto& d : cec_table()) {
    if (d.info.id == id) return d;
  }
  throw Error(ErrorCode::kUnknownProblemId, "unknown problem id '" + std::string(id) + "'");
}

}  // namespace

std::vector<std::string> cec_ids() {
  std::vector<std::string> ids;
  for (const auto& d : cec_table()) ids.push_back(d.info.id);
  return ids;
}

Problem cec_problem(std::string_view id) {
  const CecDef& d = find_cec(id);
  Problem p = d.build();
  p.name = d.info.id;
  add_bounds(p, d.info.lower, d.info.upper);
  p.reference_optimum = d.info.reference.f_star;
  return p;
}

CecInfo cec_info(std::string_view id) { return find_cec(id).info; }

Vec cec_optimum(std::string_view id) { return find_cec(id).optimum; }

Vec cec_random_start(std::string_view id, std::uint64_t seed, const Vec* away_from,
                     double min_distance) {
  const CecDef& d = find_cec(id);
  const Problem p = cec_problem(id);
  const Vec& lo = d.info.lower;
  const Vec& hi = d.info.upper;
  const double diag = (hi - lo).norm();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int attempt = 0; attempt < 10000000; ++attempt) {
    Vec x(lo.size());
    for (int i = 0; i < x.size(); ++i) x[i] = lo[i] + unif(rng) * (hi[i] - lo[i]);
    if (!strictly_feasible(p, x)) continue;
    if (d.region && !d.region(x)) continue;
    if (away_from && (x - *away_from).norm() < min_distance * diag) continue;
    return x;
  }
  throw Error(ErrorCode::kInfeasibleStart, "no feasible sample found");
}

// ---------------------------------------------------------------- QP

namespace {

struct Token {
  std::string text;
  int line = 0;
};

[[noreturn]] void parse_error(const std::string& what, int line) {
  throw Error(ErrorCode::kParseError, "line " + std::to_string(line) + ": " + what, line);
}

class TokenStream {
 public:
  explicit TokenStream(std::istream& in) {
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
      ++no;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      std::istringstream ls(line);
      std::string tok;
      while (ls >> tok) tokens_.push_back({tok, no});
    }
    last_line_ = no;
  }

  bool done() const { return pos_ >= tokens_.size(); }
  const Token& next() {
    if (done()) parse_error("unexpected end of input", last_line_);
    return tokens_[pos_++];
  }

  double real() {
    const Token& t = next();
    const char* s = t.text.c_str();
    char* end = nullptr;
    const double v = std::strtod(s, &end);
    if (end == s || *end != '\0' || std::isnan(v)) {
      parse_error("expected a number, got '" + t.text + "'", t.line);
    }
    return v;
  }

  long integer(long lo, long hi) {
    const Token& t = next();
    const char* s = t.text.c_str();
    char* end = nullptr;
    const long v = std::strtol(s, &end, 10);
    if (end == s || *end != '\0') {
      parse_error("expected an integer, got '" + t.text + "'", t.line);
    }
    if (v < lo || v > hi) parse_error("integer out of range: " + t.text, t.line);
    return v;
  }

  int line() const { return done() ? last_line_ : tokens_[pos_].line; }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int last_line_ = 0;
};

SparseMat read_triplets(TokenStream& ts, int rows, int cols) {
  const int line = ts.line();
  const long nnz = ts.integer(0, std::numeric_limits<int>::max());
  std::vector<Triplet> trip;
  trip.reserve(nnz);
  for (long k = 0; k < nnz; ++k) {
    const int l = ts.line();
    const long i = ts.integer(0, std::numeric_limits<int>::max());
    const long j = ts.integer(0, std::numeric_limits<int>::max());
    const double v = ts.real();
    if (i >= rows || j >= cols) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "line " + std::to_string(l) + ": entry outside the matrix", l);
    }
    if (!std::isfinite(v)) parse_error("matrix entries must be finite", l);
    trip.emplace_back(static_cast<int>(i), static_cast<int>(j), v);
  }
  (void)line;
  SparseMat m(rows, cols);
  m.setFromTriplets(trip.begin(), trip.end());
  m.makeCompressed();
  return m;
}

Vec read_vector(TokenStream& ts, int n) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = ts.real();
  return v;
}

std::string fmt17(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

QpProblem parse_qp(std::istream& in) {
  TokenStream ts(in);
  QpProblem qp;
  bool have_n = false, have_p = false;
  bool have_b = false;
  auto need_dims = [&](const Token& t) {
    if (!have_n || !have_p) parse_error("section '" + t.text + "' before n and p", t.line);
  };
  while (!ts.done()) {
    const Token t = ts.next();
    if (t.text == "name") {
      qp.name = ts.next().text;
    } else if (t.text == "n") {
      qp.n = static_cast<int>(ts.integer(1, 100000000));
      have_n = true;
      qp.H.resize(qp.n, qp.n);
      qp.c = Vec::Zero(qp.n);
      qp.l = Vec::Constant(qp.n, -kInf);
      qp.u = Vec::Constant(qp.n, kInf);
      if (have_p) qp.A.resize(qp.p, qp.n);
    } else if (t.text == "p") {
      qp.p = static_cast<int>(ts.integer(0, 100000000));
      have_p = true;
      qp.b = Vec::Zero(qp.p);
      if (have_n) qp.A.resize(qp.p, qp.n);
    } else if (t.text == "c0") {
      qp.c0 = ts.real();
      if (!std::isfinite(qp.c0)) parse_error("c0 must be finite", t.line);
    } else if (t.text == "H") {
      need_dims(t);
      qp.H = read_triplets(ts, qp.n, qp.n);
    } else if (t.text == "A") {
      need_dims(t);
      qp.A = read_triplets(ts, qp.p, qp.n);
    } else if (t.text == "c") {
      need_dims(t);
      qp.c = read_vector(ts, qp.n);
    } else if (t.text == "b") {
      need_dims(t);
      qp.b = read_vector(ts, qp.p);
      have_b = true;
    } else if (t.text == "l") {
      need_dims(t);
      qp.l = read_vector(ts, qp.n);
    } else if (t.text == "u") {
      need_dims(t);
      qp.u = read_vector(ts, qp.n);
    } else {
      parse_error("unknown section '" + t.text + "'", t.line);
    }
  }
  if (!have_n) parse_error("missing 'n'", 0);
  if (!have_p) {
    qp.p = 0;
    qp.A.resize(0, qp.n);
    qp.b = Vec::Zero(0);
  }
  if (qp.p > 0 && !have_b) parse_error("missing 'b' for p > 0", 0);
  for (int i = 0; i < qp.n; ++i) {
    if (qp.l[i] > qp.u[i]) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "lower bound exceeds upper bound at index " + std::to_string(i), i);
    }
    if (!std::isfinite(qp.c[i])) parse_error("c entries must be finite", 0);
  }
  return qp;
}

QpProblem read_qp_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open " + path, 0);
  return parse_qp(in);
}

void write_qp(std::ostream& out, const QpProblem& qp) {
  auto triplets = [&](const char* tag, const SparseMat& m) {
    out << tag << ' ' << m.nonZeros() << '\n';
    for (int k = 0; k < m.outerSize(); ++k) {
      for (SparseMat::InnerIterator it(m, k); it; ++it) {
        out << it.row() << ' ' << it.col() << ' ' << fmt17(it.value()) << '\n';
      }
    }
  };
  auto vec = [&](const char* tag, const Vec& v) {
    out << tag << '\n';
    for (int i = 0; i < v.size(); ++i) out << (i ? " " : "") << fmt17(v[i]);
    out << '\n';
  };
  out << "name " << qp.name << '\n';
  out << "n " << qp.n << '\n';
  out << "p " << qp.p << '\n';
  out << "c0 " << fmt17(qp.c0) << '\n';
  triplets("H", qp.H);
  vec("c", qp.c);
  triplets("A", qp.A);
  vec("b", qp.b);
  vec("l", qp.l);
  vec("u", qp.u);
}

void write_qp_file(const std::string& path, const QpProblem& qp) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
  write_qp(out, qp);
}

double qp_objective(const QpProblem& qp, const Vec& x) {
  return 0.5 * x.dot(qp.H * x) + qp.c.dot(x) + qp.c0;
}

Problem qp_to_problem(const QpProblem& qp) {
  auto data = std::make_shared<const QpProblem>(qp);
  Problem p;
  p.name = qp.name;
  p.dimension = qp.n;
  p.objective = [data](const Vec& x) { return qp_objective(*data, x); };
  p.objective_gradient = [data](const Vec& x) { return Vec(data->H * x + data->c); };
  add_bounds(p, qp.l, qp.u);
  if (qp.p > 0) p.equality = LinearEquality{qp.A, qp.b};
  return p;
}

Problem load_qp(const std::string& path) { return qp_to_problem(read_qp_file(path)); }

Vec qp_feasible_start(const QpProblem& qp) {
  const int n = qp.n;
  Vec mid(n);
  Vec half(n);
  for (int i = 0; i < n; ++i) {
    const bool fl = std::isfinite(qp.l[i]), fu = std::isfinite(qp.u[i]);
    if (fl && fu) {
      mid[i] = 0.5 * (qp.l[i] + qp.u[i]);
      half[i] = 0.5 * (qp.u[i] - qp.l[i]);
    } else if (fl) {
      mid[i] = qp.l[i] + 1.0;
      half[i] = kInf;
    } else if (fu) {
      mid[i] = qp.u[i] - 1.0;
      half[i] = kInf;
    } else {
      mid[i] = 0.0;
      half[i] = kInf;
    }
  }
  auto interior = [&](const Vec& x) {
    for (int i = 0; i < n; ++i) {
      if (!(x[i] > qp.l[i] && x[i] < qp.u[i])) return false;
    }
    return true;
  };
  if (qp.p == 0) {
    if (interior(mid)) return mid;
    throw Error(ErrorCode::kInfeasibleStart, "degenerate bounds: l_i = u_i");
  }
  const EqualityProjector proj(qp.A);
  const Vec base = proj.least_norm_solution(qp.b);
  auto onto_manifold = [&](const Vec& z) { return Vec(base + proj.project(z - base)); };
  Vec x = onto_manifold(mid);
  if (interior(x)) return x;

  double min_half = kInf;
  for (int i = 0; i < n; ++i) min_half = std::min(min_half, half[i]);
  double margin = std::isfinite(min_half) ? 0.5 * min_half : 0.5;
  for (int halving = 0; halving < 60; ++halving) {
    Vec z = x;
    for (int sweep = 0; sweep < 2000; ++sweep) {
      for (int i = 0; i < n; ++i) {
        const double lo = qp.l[i] + std::min(margin, half[i]);
        const double hi = qp.u[i] - std::min(margin, half[i]);
        z[i] = std::clamp(z[i], lo, hi);
      }
      z = onto_manifold(z);
      if (interior(z)) return z;
    }
    margin *= 0.5;
  }
  throw Error(ErrorCode::kInfeasibleStart, "no strictly interior point found");
}

SolverConfig qp_solver_config() {
  SolverConfig c;
  c.zeta = 0.999;
  c.beta = 5.0;
  c.tau = 0.3;
  c.line_search = true;
  c.momentum = 0.9;
  c.max_iters = 10000;
  c.restart.enabled = true;
  c.step_rule = StepRule::kScaled;
  return c;
}

QpProblem random_qp(int n, int p, std::uint64_t seed) {
  if (n < 1 || p < 0 || p > n) {
    throw Error(ErrorCode::kInvalidArgument, "random_qp needs 0 <= p <= n, n >= 1");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  QpProblem qp;
  qp.name = "rqp_" + std::to_string(n) + "_" + std::to_string(p) + "_" + std::to_string(seed);
  qp.n = n;
  qp.p = p;

  Mat M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = unif(rng) < 0.3 ? gauss(rng) : 0.0;
  Mat H = M.transpose() * M / n + 0.5 * Mat::Identity(n, n);
  qp.H = H.sparseView();
  qp.c = Vec(n);
  for (int i = 0; i < n; ++i) qp.c[i] = 3.0 * gauss(rng);
  qp.c0 = gauss(rng);

  qp.l = Vec(n);
  qp.u = Vec(n);
  for (int i = 0; i < n; ++i) {
    qp.l[i] = -1.0 - unif(rng);
    qp.u[i] = 1.0 + unif(rng);
    const double r = unif(rng);
    if (r < 0.1) qp.l[i] = -kInf;
    else if (r < 0.2) qp.u[i] = kInf;
  }
  // redrawn until the rows are independent
  do {
    std::vector<Triplet> trip;
    for (int i = 0; i < p; ++i) {
      for (int j = 0; j < n; ++j) {
        if (unif(rng) < 0.3 || j == i) trip.emplace_back(i, j, gauss(rng));
      }
    }
    qp.A = sparse_from_triplets(p, n, trip);
  } while (p > 0 && Mat(qp.A).fullPivLu().rank() < p);
  qp.A.makeCompressed();
  Vec xf(n);
  for (int i = 0; i < n; ++i) xf[i] = -0.5 + unif(rng);
  qp.b = qp.A * xf;
  return qp;
}

}  // namespace gdam
