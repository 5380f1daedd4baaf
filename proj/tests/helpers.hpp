#pragma once

#include <cmath>
#include <random>

#include "gdam/core.hpp"

namespace testing {

using gdam::Vec;

// central differences, step h
template <class F>
Vec fd_gradient(F&& f, const Vec& x, double h = 1e-6) {
  Vec g(x.size());
  for (int i = 0; i < x.size(); ++i) {
    Vec xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    g[i] = (f(xp) - f(xm)) / (2.0 * h);
  }
  return g;
}

inline double rel_err(const Vec& a, const Vec& b) {
  return (a - b).norm() / std::max(1.0, b.norm());
}

inline Vec random_vec(std::mt19937_64& rng, int n, double lo = -1.0,
                      double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = u(rng);
  return v;
}

// g(x) = a·x - c
inline gdam::Inequality affine(Vec a, double c) {
  return {[a, c](const Vec& x) { return a.dot(x) - c; },
          [a](const Vec&) { return a; }};
}

inline gdam::Problem scalar_problem(std::vector<gdam::Inequality> gs) {
  gdam::Problem p;
  p.name = "scalar";
  p.dimension = 1;
  p.objective = [](const Vec& x) { return x[0]; };
  p.objective_gradient = [](const Vec&) { return Vec::Ones(1); };
  p.inequalities = std::move(gs);
  return p;
}

}  // namespace testing
