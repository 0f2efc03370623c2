#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "ruminlab/heis.hpp"
#include "ruminlab/multivector.hpp"
#include "ruminlab/polynomial.hpp"

namespace ruminlab {

// ---------------------------------------------------------------------------
// W-coordinates. For the splitting (n, k) the subgroup W carries coordinates
// (x_{k+1},…,x_n, y_1,…,y_n, t), 2n+1−k of them in this order.
// ---------------------------------------------------------------------------

inline int w_dim(const Splitting& s) { return 2 * s.n + 1 - s.k; }

template <class S>
PointT<S> point_from_w(const Splitting& s, const std::vector<S>& w) {
  if (static_cast<int>(w.size()) != w_dim(s))
    throw std::invalid_argument("point_from_w: wrong coordinate count");
  PointT<S> p(s.n);
  int idx = 0;
  for (int i = s.k; i < s.n; ++i) p.x[i] = w[idx++];
  for (int i = 0; i < s.n; ++i) p.y[i] = w[idx++];
  p.t = w[idx];
  return p;
}

template <class S>
std::vector<S> w_from_point(const Splitting& s, const PointT<S>& p) {
  std::vector<S> w;
  w.reserve(w_dim(s));
  for (int i = s.k; i < s.n; ++i) w.push_back(p.x[i]);
  for (int i = 0; i < s.n; ++i) w.push_back(p.y[i]);
  w.push_back(p.t);
  return w;
}

template <class S>
PointT<S> point_from_v(const Splitting& s, const std::vector<S>& v) {
  if (static_cast<int>(v.size()) != s.k)
    throw std::invalid_argument("point_from_v: wrong coordinate count");
  PointT<S> p(s.n);
  for (int i = 0; i < s.k; ++i) p.x[i] = v[i];
  return p;
}

/// Index of the w-variable carrying w_H component j (j = k+1..2n in frame
/// numbering): x_j for j <= n, y_{j-n} for j > n.
inline int w_var_of_frame(const Splitting& s, int frame_j) {
  if (frame_j > s.k && frame_j <= s.n) return frame_j - s.k - 1;
  if (frame_j > s.n && frame_j <= 2 * s.n) return (s.n - s.k) + (frame_j - s.n - 1);
  throw std::invalid_argument("w_var_of_frame: index outside k+1..2n");
}

inline int w_tvar(const Splitting& s) { return w_dim(s) - 1; }

// ---------------------------------------------------------------------------
// Graph functions.
// ---------------------------------------------------------------------------

struct Grid {
  std::vector<double> origin, spacing;
  std::vector<int> counts;

  int dim() const { return static_cast<int>(counts.size()); }
  long size() const {
    long s = 1;
    for (int c : counts) s *= c;
    return s;
  }
  std::vector<double> node(long flat) const {
    std::vector<double> w(dim());
    for (int a = 0; a < dim(); ++a) {
      w[a] = origin[a] + spacing[a] * static_cast<double>(flat % counts[a]);
      flat /= counts[a];
    }
    return w;
  }
};

/// A map φ: W → V, either symbolic (k exact polynomials in the w-coordinates)
/// or sampled on a grid with k-vector values.
struct GraphFunction {
  Splitting split;
  std::vector<Polynomial> sym;               // size k in symbolic mode
  Grid grid;                                 // sampled mode
  std::vector<std::vector<double>> values;   // one k-vector per grid node
  std::optional<double> known_lip;

  bool symbolic() const { return !sym.empty(); }

  static GraphFunction make_symbolic(const Splitting& s, std::vector<Polynomial> phi) {
    if (static_cast<int>(phi.size()) != s.k)
      throw std::invalid_argument("GraphFunction: need k component polynomials");
    for (const auto& p : phi)
      if (p.nvars != w_dim(s))
        throw std::invalid_argument("GraphFunction: components must use the W variables");
    GraphFunction g;
    g.split = s;
    g.sym = std::move(phi);
    return g;
  }

  static GraphFunction make_sampled(const Splitting& s, Grid grid,
                                    std::vector<std::vector<double>> values) {
    if (static_cast<long>(values.size()) != grid.size())
      throw std::invalid_argument("GraphFunction: grid/value count mismatch");
    GraphFunction g;
    g.split = s;
    g.grid = std::move(grid);
    g.values = std::move(values);
    return g;
  }

  template <class S>
  std::vector<S> eval_phi(const std::vector<S>& w) const {
    if (!symbolic()) throw std::invalid_argument("eval_phi: symbolic mode required");
    std::vector<S> out;
    out.reserve(sym.size());
    for (const auto& p : sym) out.push_back(eval(p, w));
    return out;
  }
};

/// Graph map Φ(w) = w · φ(w), computed through the group law.
template <class S>
PointT<S> graph_map(const GraphFunction& phi, const std::vector<S>& w) {
  return group_mul(point_from_w(phi.split, w), point_from_v(phi.split, phi.eval_phi(w)));
}

/// The coordinate form of Φ printed in the sources: the V block, the
/// untouched W block, and t − <φ(w), (y_1..y_k)>/2.
template <class S>
PointT<S> graph_map_coordinate_formula(const GraphFunction& phi, const std::vector<S>& w) {
  const Splitting& s = phi.split;
  std::vector<S> v = phi.eval_phi(w);
  PointT<S> p = point_from_w(s, w);
  S shift{};
  for (int j = 0; j < s.k; ++j) shift += v[j] * p.y[j];
  PointT<S> out = p;
  for (int j = 0; j < s.k; ++j) out.x[j] = v[j];
  out.t = p.t - shift / 2;
  return out;
}

// ---------------------------------------------------------------------------
// Symbolic points: coordinates of H^n as polynomials in the w-variables, so
// translations of graphs stay exact.
// ---------------------------------------------------------------------------

using SymPoint = std::vector<Polynomial>;  // length 2n+1: x_1..x_n, y_1..y_n, t

inline SymPoint sym_point_const(int n, int nvars, const Point& p) {
  SymPoint out;
  for (int i = 0; i < n; ++i) out.emplace_back(nvars, p.x[i]);
  for (int i = 0; i < n; ++i) out.emplace_back(nvars, p.y[i]);
  out.emplace_back(nvars, p.t);
  return out;
}

/// The generic point of W as a symbolic point.
inline SymPoint sym_point_w(const Splitting& s) {
  int nv = w_dim(s);
  SymPoint out(2 * s.n + 1, Polynomial(nv));
  int idx = 0;
  for (int i = s.k; i < s.n; ++i) out[i] = Polynomial::variable(nv, idx++);
  for (int i = 0; i < s.n; ++i) out[s.n + i] = Polynomial::variable(nv, idx++);
  out[2 * s.n] = Polynomial::variable(nv, idx);
  return out;
}

inline SymPoint sym_group_mul(int n, const SymPoint& p, const SymPoint& q) {
  SymPoint r(2 * n + 1, Polynomial(p[0].nvars));
  Polynomial twist(p[0].nvars);
  for (int i = 0; i < n; ++i) {
    r[i] = p[i] + q[i];
    r[n + i] = p[n + i] + q[n + i];
    twist = twist + p[i] * q[n + i] - q[i] * p[n + i];
  }
  r[2 * n] = p[2 * n] + q[2 * n] + rat(1, 2) * twist;
  return r;
}

// ---------------------------------------------------------------------------
// Translations, dilations, blow-ups.
// ---------------------------------------------------------------------------

/// φ_{w̄}(w) = φ(w̄)^{-1} φ(p̄ w φ(w̄)^{-1}), p̄ = Φ(w̄); the translated graph
/// is Φ(w̄)^{-1}·gr_φ and φ_{w̄}(0) = 0. Exact in symbolic mode.
inline GraphFunction translate_graph(const GraphFunction& phi, const std::vector<Rat>& wbar) {
  if (!phi.symbolic()) throw std::invalid_argument("translate_graph: symbolic mode required");
  const Splitting& s = phi.split;
  int n = s.n, nv = w_dim(s);
  std::vector<Rat> vbar = phi.eval_phi(wbar);
  Point pbar = graph_map(phi, wbar);
  SymPoint u = sym_group_mul(
      n, sym_group_mul(n, sym_point_const(n, nv, pbar), sym_point_w(s)),
      sym_point_const(n, nv, group_inv(point_from_v(s, vbar))));
  // u lies in W: its V block must vanish identically
  for (int i = 0; i < s.k; ++i)
    if (!u[i].is_zero()) throw std::logic_error("translate_graph: image left W");
  std::vector<Polynomial> images;
  for (int i = s.k; i < n; ++i) images.push_back(u[i]);
  for (int i = 0; i < n; ++i) images.push_back(u[n + i]);
  images.push_back(u[2 * n]);
  std::vector<Polynomial> out;
  for (int j = 0; j < s.k; ++j) out.push_back(subst(phi.sym[j], images) - Polynomial(nv, vbar[j]));
  return GraphFunction::make_symbolic(s, std::move(out));
}

/// φ^r(w) = r φ(δ_{1/r} w); requires φ(0) = 0 so the dilated set is a graph
/// through the origin. gr(φ^r) = δ_r(gr_φ).
inline GraphFunction dilate_graph(const GraphFunction& phi, const Rat& r) {
  if (!phi.symbolic()) throw std::invalid_argument("dilate_graph: symbolic mode required");
  if (!(r > 0)) throw std::invalid_argument("dilate_graph: r must be positive");
  const Splitting& s = phi.split;
  int nv = w_dim(s);
  std::vector<Rat> at0(nv, Rat(0));
  for (const Rat& c : phi.eval_phi(at0))
    if (!is_zero(c)) throw std::invalid_argument("dilate_graph: phi(0) != 0");
  Rat inv = 1 / r;
  std::vector<Polynomial> images;
  for (int a = 0; a < nv; ++a) {
    Rat scale = (a == nv - 1) ? inv * inv : inv;
    images.push_back(scale * Polynomial::variable(nv, a));
  }
  std::vector<Polynomial> out;
  for (int j = 0; j < s.k; ++j) out.push_back(r * subst(phi.sym[j], images));
  return GraphFunction::make_symbolic(s, std::move(out));
}

// ---------------------------------------------------------------------------
// Intrinsic gradient and Jacobian.
// ---------------------------------------------------------------------------

/// ∇^φ_i φ_j as polynomials, i = k+1..2n columns, j = 1..k rows. The fields
/// are X_i for i <= n, Y_{i−n} + φ_{i−n} T for n < i <= n+k, Y_{i−n} above.
inline std::vector<std::vector<Polynomial>> intrinsic_gradient_sym(const GraphFunction& phi) {
  if (!phi.symbolic())
    throw std::invalid_argument("intrinsic_gradient_sym: symbolic mode required");
  const Splitting& s = phi.split;
  int n = s.n, k = s.k, nv = w_dim(s);
  int tv = w_tvar(s);
  std::vector<std::vector<Polynomial>> m(k, std::vector<Polynomial>(2 * n - k, Polynomial(nv)));
  for (int j = 0; j < k; ++j) {
    Polynomial dt = derive(phi.sym[j], tv);
    for (int i = k + 1; i <= 2 * n; ++i) {
      Polynomial e(nv);
      if (i <= n) {
        // X_i = ∂_{x_i} − (y_i/2) ∂_t
        e = derive(phi.sym[j], w_var_of_frame(s, i)) -
            rat(1, 2) * (Polynomial::variable(nv, (n - k) + (i - 1)) * dt);
      } else if (i <= n + k) {
        // Y_{i−n} + φ_{i−n} T = ∂_{y_{i−n}} + φ_{i−n} ∂_t  (x_{i−n} = 0 on W)
        e = derive(phi.sym[j], w_var_of_frame(s, i)) + phi.sym[i - n - 1] * dt;
      } else {
        // Y_{i−n} = ∂_{y_{i−n}} + (x_{i−n}/2) ∂_t
        e = derive(phi.sym[j], w_var_of_frame(s, i)) +
            rat(1, 2) * (Polynomial::variable(nv, (i - n) - k - 1) * dt);
      }
      m[j][i - k - 1] = std::move(e);
    }
  }
  return m;
}

/// The k×(2n−k) intrinsic gradient matrix ∇^φφ(w), exact at rational w.
inline Mat intrinsic_gradient(const GraphFunction& phi, const std::vector<Rat>& w) {
  auto ms = intrinsic_gradient_sym(phi);
  Mat out;
  for (const auto& row : ms) {
    Vec r;
    for (const auto& p : row) r.push_back(eval(p, w));
    out.push_back(std::move(r));
  }
  return out;
}

/// Finite-difference intrinsic gradient for sampled graphs: grid spacing as
/// step, central differences inside, one-sided at the boundary.
inline std::vector<std::vector<double>> intrinsic_gradient_fd(const GraphFunction& phi,
                                                              const std::vector<int>& node) {
  if (phi.symbolic()) throw std::invalid_argument("intrinsic_gradient_fd: sampled mode required");
  const Splitting& s = phi.split;
  const Grid& g = phi.grid;
  int n = s.n, k = s.k, d = g.dim();
  auto flat = [&](const std::vector<int>& ix) {
    long f = 0;
    for (int a = d - 1; a >= 0; --a) f = f * g.counts[a] + ix[a];
    return f;
  };
  auto value = [&](const std::vector<int>& ix, int j) { return phi.values[flat(ix)][j]; };
  auto partial = [&](int axis, const std::vector<int>& ix, int j) {
    std::vector<int> lo = ix, hi = ix;
    if (ix[axis] + 1 < g.counts[axis]) ++hi[axis];
    if (ix[axis] > 0) --lo[axis];
    double h = g.spacing[axis] * (hi[axis] - lo[axis]);
    if (h == 0.0) throw std::invalid_argument("intrinsic_gradient_fd: degenerate axis");
    return (value(hi, j) - value(lo, j)) / h;
  };
  std::vector<double> w = g.node(flat(node));
  std::vector<std::vector<double>> m(k, std::vector<double>(2 * n - k, 0.0));
  int tv = w_tvar(s);
  for (int j = 0; j < k; ++j) {
    double dt = partial(tv, node, j);
    for (int i = k + 1; i <= 2 * n; ++i) {
      double e;
      if (i <= n)
        e = partial(w_var_of_frame(s, i), node, j) - 0.5 * w[(n - k) + (i - 1)] * dt;
      else if (i <= n + k)
        e = partial(w_var_of_frame(s, i), node, j) + value(node, i - n - 1) * dt;
      else
        e = partial(w_var_of_frame(s, i), node, j) + 0.5 * w[(i - n) - k - 1] * dt;
      m[j][i - k - 1] = e;
    }
  }
  return m;
}

/// Intrinsic Jacobian determinant squared: 1 + Σ (det M)² over all square
/// minors of the gradient matrix. Exact.
inline Rat intrinsic_jacobian_sq(const Mat& grad) {
  int rows = static_cast<int>(grad.size());
  int cols = rows ? static_cast<int>(grad[0].size()) : 0;
  Rat acc(1);
  std::vector<int> ri, ci;
  auto det_minor = [&]() {
    Mat m(ri.size(), Vec(ci.size()));
    for (std::size_t a = 0; a < ri.size(); ++a)
      for (std::size_t b = 0; b < ci.size(); ++b) m[a][b] = grad[ri[a]][ci[b]];
    return det(std::move(m));
  };
  auto loop_cols = [&](auto&& self, int start, int need) -> void {
    if (need == 0) {
      Rat d = det_minor();
      acc += d * d;
      return;
    }
    for (int c = start; c <= cols - need; ++c) {
      ci.push_back(c);
      self(self, c + 1, need - 1);
      ci.pop_back();
    }
  };
  auto loop_rows = [&](auto&& self, int start, int need, int size) -> void {
    if (need == 0) {
      loop_cols(loop_cols, 0, size);
      return;
    }
    for (int r = start; r <= rows - need; ++r) {
      ri.push_back(r);
      self(self, r + 1, need - 1, size);
      ri.pop_back();
    }
  };
  for (int size = 1; size <= std::min(rows, cols); ++size)
    loop_rows(loop_rows, 0, size, size);
  return acc;
}

inline double intrinsic_jacobian(const Mat& grad) {
  return std::sqrt(to_double(intrinsic_jacobian_sq(grad)));
}

/// Tangent multivector ∇^φΦ(w) ∧ T = (W_{k+1}+Σ_h ∇^φ_{k+1}φ_h X_h) ∧ … ∧ T.
/// Simple, vertical, positively oriented: its W_{k+1}∧…∧W_{2n}∧T coefficient
/// is 1, so <t , W_{k+1}∧…∧W_{2n}∧T> > 0.
inline MultiVector tangent_multivector(const GraphFunction& phi, const std::vector<Rat>& w) {
  const Splitting& s = phi.split;
  int n = s.n, k = s.k;
  Mat grad = intrinsic_gradient(phi, w);
  MultiVector acc = scalar_element<Variance::vec>(n, Rat(1));
  for (int i = k + 1; i <= 2 * n; ++i) {
    MultiVector dir = frame_vector(n, i);
    for (int h = 1; h <= k; ++h) {
      const Rat& c = grad[h - 1][i - k - 1];
      if (!is_zero(c)) dir = dir + c * frame_vector(n, h);
    }
    acc = wedge(acc, dir);
  }
  return wedge(acc, frame_vector(n, 2 * n + 1));
}

/// Intrinsic-linear map ψ(w) = M w_H with a k×(2n−k) rational matrix.
inline GraphFunction intrinsic_linear(const Splitting& s, const Mat& m) {
  int nv = w_dim(s);
  std::vector<Polynomial> sym;
  for (int j = 0; j < s.k; ++j) {
    Polynomial p(nv);
    for (int i = s.k + 1; i <= 2 * s.n; ++i) {
      const Rat& c = m[j][i - s.k - 1];
      if (!is_zero(c)) p = p + c * Polynomial::variable(nv, w_var_of_frame(s, i));
    }
    sym.push_back(std::move(p));
  }
  return GraphFunction::make_symbolic(s, std::move(sym));
}

// ---------------------------------------------------------------------------
// The intrinsic Lipschitz estimate (analytic form of the cone condition).
// ---------------------------------------------------------------------------

/// Supremum over sample pairs of |φ(w)−φ(w')| / ||(Φ(w')^{-1}Φ(w))_W||; a
/// lower bound for the intrinsic Lipschitz constant. Throws when two equal
/// points carry different values.
inline double lip_constant_estimate(const Splitting& s,
                                    const std::vector<std::vector<double>>& ws,
                                    const std::vector<std::vector<double>>& vals,
                                    const Metric& metric = {}) {
  if (ws.size() < 2) throw std::invalid_argument("lip_constant_estimate: need >= 2 samples");
  double best = 0;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    PointF pi = group_mul(point_from_w(s, ws[i]), point_from_v(s, vals[i]));
    for (std::size_t j = i + 1; j < ws.size(); ++j) {
      PointF pj = group_mul(point_from_w(s, ws[j]), point_from_v(s, vals[j]));
      double dv = 0;
      for (int c = 0; c < s.k; ++c) dv += (vals[i][c] - vals[j][c]) * (vals[i][c] - vals[j][c]);
      dv = std::sqrt(dv);
      auto [w, v] = split(group_mul(group_inv(pj), pi), s);
      double den = heis_norm(metric, w);
      if (den == 0.0) {
        if (dv > 0.0)
          throw std::invalid_argument("lip_constant_estimate: duplicate point, differing values");
        continue;
      }
      best = std::max(best, dv / den);
    }
  }
  return best;
}

inline std::vector<std::vector<double>> grid_nodes(const Grid& g) {
  std::vector<std::vector<double>> out;
  out.reserve(g.size());
  for (long f = 0; f < g.size(); ++f) out.push_back(g.node(f));
  return out;
}

inline double lip_constant_estimate(const GraphFunction& phi,
                                    const std::vector<std::vector<double>>& ws) {
  std::vector<std::vector<double>> vals;
  if (phi.symbolic()) {
    for (const auto& w : ws) vals.push_back(phi.eval_phi(w));
    return lip_constant_estimate(phi.split, ws, vals);
  }
  return lip_constant_estimate(phi.split, grid_nodes(phi.grid), phi.values);
}

// ---------------------------------------------------------------------------
// Blow-ups.
// ---------------------------------------------------------------------------

struct BlowupReport {
  Mat gradient;                                   // candidate differential at w̄
  std::vector<std::pair<double, double>> dists;   // (r, sup window distance)
};

/// Sup-norm distance on a sample window between (φ_{w̄})^r and the intrinsic
/// linear candidate from the gradient; distances should decrease along radii
/// when φ is intrinsically differentiable at w̄.
inline BlowupReport blowup_probe(const GraphFunction& phi, const std::vector<Rat>& wbar,
                                 const std::vector<Rat>& radii, int window_pts = 5) {
  BlowupReport rep;
  rep.gradient = intrinsic_gradient(phi, wbar);
  GraphFunction centered = translate_graph(phi, wbar);
  GraphFunction lin = intrinsic_linear(phi.split, rep.gradient);
  int d = w_dim(phi.split);
  Grid window{std::vector<double>(d, -1.0),
              std::vector<double>(d, window_pts > 1 ? 2.0 / (window_pts - 1) : 0.0),
              std::vector<int>(d, window_pts)};
  for (const Rat& r : radii) {
    GraphFunction blown = dilate_graph(centered, r);
    double sup = 0;
    for (const auto& w : grid_nodes(window)) {
      auto a = blown.eval_phi(w);
      auto b = lin.eval_phi(w);
      double dv = 0;
      for (int c = 0; c < phi.split.k; ++c) dv += (a[c] - b[c]) * (a[c] - b[c]);
      sup = std::max(sup, std::sqrt(dv));
    }
    rep.dists.emplace_back(to_double(r), sup);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Cone functions, sup-envelopes, coercive zero finding: the extension
// pipeline.
// ---------------------------------------------------------------------------

/// Smooth-off-zero homogeneous pseudo-norm of step 2:
/// (Σ|x_i|⁴ + Σ|y_i|⁴ + t²)^{1/4}.
inline double star_norm(const PointF& p) {
  double s = 0;
  for (int i = 0; i < p.n; ++i) {
    s += p.x[i] * p.x[i] * p.x[i] * p.x[i];
    s += p.y[i] * p.y[i] * p.y[i] * p.y[i];
  }
  s += p.t * p.t;
  return std::pow(s, 0.25);
}

/// Monte-Carlo estimate of the equivalence constant C* between ||·||_H and
/// ||·||_*: max of both ratios over random points. Not certified; reported
/// for diagnostics only.
inline double estimate_Cstar(int n, const Metric& m, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double c = 1.0;
  for (int it = 0; it < samples; ++it) {
    PointF p(n);
    for (int i = 0; i < n; ++i) {
      p.x[i] = u(rng);
      p.y[i] = u(rng);
    }
    p.t = u(rng);
    double a = heis_norm(m, p), b = star_norm(p);
    if (a == 0 || b == 0) continue;
    c = std::max(c, std::max(a / b, b / a));
  }
  return c;
}

/// 1-homogeneous Lipschitz cone function f_{i,β,ε} with {f ≥ 0} inside the
/// cone C_{i,β,ε}; s = x_i + ε Σ_{j≠i} x_j against the gauge β||p_W||_*.
struct ConeField {
  Splitting split;
  int axis = 1;          // i in 1..k
  double beta = 1;
  double eps = 0.25;     // in (0,1); irrelevant for k = 1

  double operator()(const PointF& p) const {
    auto [w, v] = ruminlab::split(p, split);
    double s = v.x[axis - 1];
    for (int j = 0; j < split.k; ++j)
      if (j != axis - 1) s += eps * v.x[j];
    double gauge = beta * star_norm(w);
    if (s > 2 * gauge) return s;
    if (s < -2 * gauge) return 3 * s;
    return 2 * (s - gauge);
  }
};

inline double cone_function(int axis, double beta, double eps, const Splitting& s,
                            const PointF& p) {
  return ConeField{s, axis, beta, eps}(p);
}

/// f_{i,ε}(p) = max over sampled graph points y of f_{i,β,ε}(y^{-1} p);
/// vanishes on the samples and is coercive along V.
inline double sup_envelope(const std::vector<PointF>& graph_samples, int axis, double beta,
                           double eps, const Splitting& s, const PointF& p) {
  if (graph_samples.empty()) throw std::invalid_argument("sup_envelope: empty sample");
  ConeField f{s, axis, beta, eps};
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& y : graph_samples) best = std::max(best, f(group_mul(group_inv(y), p)));
  return best;
}

/// Unique zero of a coercive map F: R^k → R^k by the recursive
/// dimension-reduction of the uniqueness lemma: monotone 1-D root finding in
/// the last coordinate, recursion on the induced map. Residual <= tol.
inline std::vector<double> coercive_zero(
    const std::function<std::vector<double>(const std::vector<double>&)>& F, int k,
    double tol = 1e-12) {
  auto solve1 = [&](const std::function<double(double)>& g) {
    double lo = -1, hi = 1, span = 1;
    int guard = 0;
    while (g(lo) > 0 || g(hi) < 0) {
      span *= 2;
      lo = -span;
      hi = span;
      if (++guard > 60)
        throw std::runtime_error("coercive_zero: no sign change (input not coercive?)");
    }
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      double gv = g(mid);
      if (std::abs(gv) <= tol) return mid;
      (gv > 0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
  };
  if (k == 1) {
    double r = solve1([&](double u) { return F({u})[0]; });
    return {r};
  }
  auto inner = [&](const std::vector<double>& z) {
    return solve1([&](double u) {
      std::vector<double> arg = z;
      arg.push_back(u);
      return F(arg)[k - 1];
    });
  };
  auto H = [&](const std::vector<double>& z) {
    std::vector<double> arg = z;
    arg.push_back(inner(z));
    auto out = F(arg);
    out.pop_back();
    return out;
  };
  std::vector<double> z = coercive_zero(H, k - 1, tol);
  z.push_back(inner(z));
  return z;
}

struct ExtendParams {
  double beta = 0;   // 0: derive from the input Lipschitz estimate
  double eps = 0;    // 0: ε = 1/(6(k²−k)) for k ≥ 2, 1/2 for k = 1
  double tol = 1e-12;
};

/// Extension of a sampled intrinsic Lipschitz map to a target grid: for each
/// grid point w the value is the coercive zero of v ↦ (f_{1,ε},…,f_{k,ε})(w v)
/// with f_{i,ε} the sup-envelope of the sampled graph. Agrees with φ at the
/// sampled domain points up to the zero-finder tolerance.
inline GraphFunction extend(const Splitting& s,
                            const std::vector<std::vector<double>>& ws,
                            const std::vector<std::vector<double>>& vals, const Grid& target,
                            ExtendParams params = {}) {
  if (ws.empty() || ws.size() != vals.size())
    throw std::invalid_argument("extend: bad sample table");
  int k = s.k;
  double eps = params.eps > 0 ? params.eps : (k >= 2 ? 1.0 / (6.0 * (k * k - k)) : 0.5);
  double beta = params.beta;
  if (beta <= 0) {
    double lip = ws.size() >= 2 ? lip_constant_estimate(s, ws, vals) : 1.0;
    beta = 4.0 * k * std::max(lip, 0.5);
  }
  std::vector<PointF> graph;
  graph.reserve(ws.size());
  for (std::size_t i = 0; i < ws.size(); ++i)
    graph.push_back(group_mul(point_from_w(s, ws[i]), point_from_v(s, vals[i])));
  std::vector<std::vector<double>> out;
  out.reserve(target.size());
  for (long f = 0; f < target.size(); ++f) {
    PointF w = point_from_w(s, target.node(f));
    auto F = [&](const std::vector<double>& v) {
      PointF p = group_mul(w, point_from_v(s, v));
      std::vector<double> val(k);
      for (int i = 1; i <= k; ++i) val[i - 1] = sup_envelope(graph, i, beta, eps, s, p);
      return val;
    };
    out.push_back(coercive_zero(F, k, params.tol));
  }
  return GraphFunction::make_sampled(s, target, std::move(out));
}

}  // namespace ruminlab
