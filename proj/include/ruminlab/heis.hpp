#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "ruminlab/rational.hpp"

namespace ruminlab {

/// A point of H^n in exponential coordinates (x, y, t). The scalar type is
/// either Rat (exact mode) or double (float mode); the two modes never mix
/// inside one operation.
template <class S>
struct PointT {
  int n = 1;
  std::vector<S> x, y;  // each of length n
  S t{};

  PointT() : x(1, S{}), y(1, S{}) {}
  explicit PointT(int n_) : n(n_), x(n_, S{}), y(n_, S{}) {
    if (n_ < 1) throw std::invalid_argument("PointT: n must be >= 1");
  }
  PointT(std::vector<S> x_, std::vector<S> y_, S t_)
      : n(static_cast<int>(x_.size())), x(std::move(x_)), y(std::move(y_)), t(std::move(t_)) {
    if (x.size() != y.size() || x.empty())
      throw std::invalid_argument("PointT: coordinate lengths must both equal n >= 1");
  }

  /// Homogeneous dimension Q = 2n+2.
  int Q() const { return 2 * n + 2; }

  bool operator==(const PointT& o) const { return n == o.n && x == o.x && y == o.y && t == o.t; }
};

using Point = PointT<Rat>;
using PointF = PointT<double>;

inline PointF to_float(const Point& p) {
  PointF q(p.n);
  for (int i = 0; i < p.n; ++i) {
    q.x[i] = to_double(p.x[i]);
    q.y[i] = to_double(p.y[i]);
  }
  q.t = to_double(p.t);
  return q;
}

template <class S>
void check_same_n(const PointT<S>& p, const PointT<S>& q, const char* op) {
  if (p.n != q.n) throw std::invalid_argument(std::string(op) + ": dimension mismatch");
}

/// Group law: (x,y,t)(x',y',t') = (x+x', y+y', t+t' + <x,y'>/2 - <x',y>/2).
template <class S>
PointT<S> group_mul(const PointT<S>& p, const PointT<S>& q) {
  check_same_n(p, q, "group_mul");
  PointT<S> r(p.n);
  S twist{};
  for (int i = 0; i < p.n; ++i) {
    r.x[i] = p.x[i] + q.x[i];
    r.y[i] = p.y[i] + q.y[i];
    twist += p.x[i] * q.y[i] - q.x[i] * p.y[i];
  }
  r.t = p.t + q.t + twist / 2;
  return r;
}

/// p^{-1} = -p in exponential coordinates.
template <class S>
PointT<S> group_inv(const PointT<S>& p) {
  PointT<S> r(p.n);
  for (int i = 0; i < p.n; ++i) {
    r.x[i] = -p.x[i];
    r.y[i] = -p.y[i];
  }
  r.t = -p.t;
  return r;
}

/// δ_λ(x,y,t) = (λx, λy, λ²t), λ > 0.
template <class S>
PointT<S> dilate(const S& lambda, const PointT<S>& p) {
  if (!(lambda > S(0))) throw std::invalid_argument("dilate: lambda must be positive");
  PointT<S> r(p.n);
  for (int i = 0; i < p.n; ++i) {
    r.x[i] = lambda * p.x[i];
    r.y[i] = lambda * p.y[i];
  }
  r.t = lambda * lambda * p.t;
  return r;
}

enum class MetricKind { dinf, koranyi };

struct Metric {
  MetricKind kind = MetricKind::dinf;
};

inline Metric metric_from_tag(const std::string& tag) {
  if (tag == "d-infinity" || tag == "dinf") return {MetricKind::dinf};
  if (tag == "koranyi") return {MetricKind::koranyi};
  throw std::invalid_argument("unknown metric tag '" + tag + "'");
}

template <class S>
S horizontal_sq(const PointT<S>& p) {
  S s{};
  for (int i = 0; i < p.n; ++i) s += p.x[i] * p.x[i] + p.y[i] * p.y[i];
  return s;
}

/// ||p||^2 for d_inf as an exact quantity: max(|(x,y)|^2, 4|t|).
inline Rat dinf_norm_sq(const Point& p) {
  Rat h = horizontal_sq(p);
  Rat v = 4 * abs_rat(p.t);
  return h > v ? h : v;
}

/// ||p||^4 for the Koranyi norm: (|x|^2+|y|^2)^2 + 16 t^2.
inline Rat koranyi_norm_pow4(const Point& p) {
  Rat h = horizontal_sq(p);
  return h * h + 16 * p.t * p.t;
}

inline double heis_norm(const Metric& m, const PointF& p) {
  double h = std::sqrt(horizontal_sq(p));
  if (m.kind == MetricKind::dinf) return std::max(h, 2.0 * std::sqrt(std::abs(p.t)));
  double h2 = horizontal_sq(p);
  return std::pow(h2 * h2 + 16.0 * p.t * p.t, 0.25);
}

inline double heis_norm(const Metric& m, const Point& p) { return heis_norm(m, to_float(p)); }

/// d(p,q) = ||p^{-1} q||; left-invariant and homogeneous for both kinds.
template <class S>
double distance(const Metric& m, const PointT<S>& p, const PointT<S>& q) {
  check_same_n(p, q, "distance");
  return heis_norm(m, group_mul(group_inv(p), q));
}

/// The splitting V = exp span{X_1..X_k}, W = complementary subgroup
/// {x_1 = ... = x_k = 0}, for codimension 1 <= k <= n.
struct Splitting {
  int n = 1;
  int k = 1;
  Splitting() = default;
  Splitting(int n_, int k_) : n(n_), k(k_) {
    if (n < 1 || k < 1 || k > n) throw std::invalid_argument("Splitting: need 1 <= k <= n");
  }
};

template <class S>
bool in_V(const PointT<S>& p, const Splitting& s) {
  for (int i = s.k; i < p.n; ++i)
    if (!(p.x[i] == S{})) return false;
  for (int i = 0; i < p.n; ++i)
    if (!(p.y[i] == S{})) return false;
  return p.t == S{};
}

template <class S>
bool in_W(const PointT<S>& p, const Splitting& s) {
  for (int i = 0; i < s.k; ++i)
    if (!(p.x[i] == S{})) return false;
  return true;
}

/// p = w · v with v = (x_1,…,x_k) ∈ V; exact in both modes.
template <class S>
std::pair<PointT<S>, PointT<S>> split(const PointT<S>& p, const Splitting& s) {
  if (p.n != s.n) throw std::invalid_argument("split: dimension mismatch");
  PointT<S> v(p.n);
  for (int i = 0; i < s.k; ++i) v.x[i] = p.x[i];
  PointT<S> w = group_mul(p, group_inv(v));
  return {w, v};
}

/// Membership in the closed cone C_alpha = {||p_V|| >= alpha ||p_W||}; exact
/// for rational points (comparison of squares / fourth powers).
inline bool cone_contains(const Rat& alpha, const Point& p, const Splitting& s, const Metric& m) {
  if (sgn(alpha) < 0) throw std::invalid_argument("cone_contains: alpha must be >= 0");
  auto [w, v] = split(p, s);
  if (m.kind == MetricKind::dinf) {
    // ||v|| = |v| since v is horizontal with t = 0.
    return horizontal_sq(v) >= alpha * alpha * dinf_norm_sq(w);
  }
  Rat vh = horizontal_sq(v);
  Rat a2 = alpha * alpha;
  return vh * vh >= a2 * a2 * koranyi_norm_pow4(w);
}

inline bool cone_contains(double alpha, const PointF& p, const Splitting& s, const Metric& m) {
  if (alpha < 0) throw std::invalid_argument("cone_contains: alpha must be >= 0");
  auto [w, v] = split(p, s);
  return heis_norm(m, v) >= alpha * heis_norm(m, w);
}

}  // namespace ruminlab
