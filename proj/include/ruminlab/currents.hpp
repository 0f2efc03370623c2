#pragma once

#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <thread>
#include <vector>

#include "ruminlab/forms.hpp"
#include "ruminlab/graphs.hpp"

namespace ruminlab {

// ---------------------------------------------------------------------------
// Separable polynomial windows. The bump is Π_a g(u_a/R_a) with
// g(s) = (1−s²)⁴ on [−1,1] and 0 outside; g is C³ across the boundary, which
// is enough regularity for the second-order operator D.
// ---------------------------------------------------------------------------

struct WindowSpec {
  std::vector<Rat> radii;  // one per ambient coordinate (2n+1 of them)
};

namespace detail {

/// Coefficients of g^{(d)} where g(s) = (1−s²)⁴, as dense univariate tables.
inline const std::vector<Vec>& window_derivative_table() {
  static std::vector<Vec> table = [] {
    std::vector<Vec> t;
    Vec g = {Rat(1), Rat(0), Rat(-4), Rat(0), Rat(6), Rat(0), Rat(-4), Rat(0), Rat(1)};
    t.push_back(g);
    for (int d = 0; d < 10; ++d) {
      const Vec& prev = t.back();
      Vec next(prev.size() > 1 ? prev.size() - 1 : 1, Rat(0));
      for (std::size_t i = 1; i < prev.size(); ++i) next[i - 1] = Rat(long(i)) * prev[i];
      t.push_back(std::move(next));
    }
    return t;
  }();
  return table;
}

inline double window_factor(int order, double s) {
  if (std::abs(s) >= 1.0) return 0.0;
  const Vec& c = window_derivative_table()[order];
  double acc = 0.0, p = 1.0;
  for (const auto& coeff : c) {
    acc += to_double(coeff) * p;
    p *= s;
  }
  return acc;
}

}  // namespace detail

/// Coefficient ring of windowed test forms: finite sums of
/// p(u) · Π_a g^{(d_a)}(u_a/R_a), closed under frame derivatives, with exact
/// polynomial parts. Zero is the empty sum.
struct WindowedPoly {
  std::shared_ptr<const WindowSpec> win;           // null only when zero
  std::map<std::vector<int>, Polynomial> terms;    // derivative orders → factor

  bool is_zero() const { return terms.empty(); }

  WindowedPoly& add_term(std::vector<int> d, const Polynomial& p) {
    auto it = terms.find(d);
    if (it == terms.end()) {
      if (!p.is_zero()) terms.emplace(std::move(d), p);
    } else {
      it->second = it->second + p;
      if (it->second.is_zero()) terms.erase(it);
    }
    return *this;
  }

  bool operator==(const WindowedPoly& o) const { return terms == o.terms; }
};

inline WindowedPoly operator+(const WindowedPoly& a, const WindowedPoly& b) {
  WindowedPoly r = a;
  if (!r.win) r.win = b.win;
  else if (b.win && b.win->radii != r.win->radii)
    throw std::invalid_argument("WindowedPoly+: window mismatch");
  for (const auto& [d, p] : b.terms) r.add_term(d, p);
  return r;
}

inline WindowedPoly operator*(const Rat& c, const WindowedPoly& a) {
  WindowedPoly r;
  r.win = a.win;
  if (ruminlab::is_zero(c)) return r;
  for (const auto& [d, p] : a.terms) r.terms.emplace(d, c * p);
  return r;
}

inline WindowedPoly operator*(const Polynomial& g, const WindowedPoly& a) {
  WindowedPoly r;
  r.win = a.win;
  for (const auto& [d, p] : a.terms) r.add_term(d, g * p);
  return r;
}

inline WindowedPoly coordinate_derive(int v, const WindowedPoly& a) {
  WindowedPoly r;
  r.win = a.win;
  for (const auto& [d, p] : a.terms) {
    r.add_term(d, derive(p, v));
    std::vector<int> bumped = d;
    bumped[v] += 1;
    r.add_term(std::move(bumped), (1 / a.win->radii[v]) * p);
  }
  return r;
}

/// Frame derivative of a windowed coefficient: the chain factor 1/R stays
/// rational, so everything remains exact.
inline WindowedPoly frame_derive(int i, const WindowedPoly& a) {
  if (a.is_zero()) return a;
  int nvars = a.terms.begin()->second.nvars;
  int n = (nvars - 1) / 2;
  int tv = 2 * n;
  if (i == 2 * n + 1) return coordinate_derive(tv, a);
  WindowedPoly dt = coordinate_derive(tv, a);
  if (i <= n) {
    Polynomial y = Polynomial::variable(nvars, n + i - 1);
    return coordinate_derive(i - 1, a) + (rat(-1, 2) * y) * dt;
  }
  int j = i - n;
  Polynomial x = Polynomial::variable(nvars, j - 1);
  return coordinate_derive(n + j - 1, a) + (rat(1, 2) * x) * dt;
}

inline double eval_windowed(const WindowedPoly& a, const std::vector<double>& pt) {
  if (a.is_zero()) return 0.0;
  for (std::size_t v = 0; v < pt.size(); ++v)
    if (std::abs(pt[v]) >= to_double(a.win->radii[v])) return 0.0;
  double acc = 0.0;
  for (const auto& [d, p] : a.terms) {
    double factor = eval(p, pt);
    for (std::size_t v = 0; v < pt.size(); ++v) {
      if (factor == 0.0) break;
      factor *= detail::window_factor(d[v], pt[v] / to_double(a.win->radii[v]));
    }
    acc += factor;
  }
  return acc;
}

inline double window_value(const WindowSpec& win, const std::vector<double>& pt) {
  double acc = 1.0;
  for (std::size_t v = 0; v < pt.size(); ++v) {
    double s = pt[v] / to_double(win.radii[v]);
    if (std::abs(s) >= 1.0) return 0.0;
    acc *= detail::window_factor(0, s);
  }
  return acc;
}

using TestForm = Form<WindowedPoly>;

/// window · core as a Heisenberg test form. For degrees ≥ n+1 the core must
/// be pointwise in 𝓙; a degree-n core must be a horizontal representative.
inline TestForm make_test_form(const PolyForm& core, std::shared_ptr<const WindowSpec> win) {
  int n = core.n;
  if (static_cast<int>(win->radii.size()) != 2 * n + 1)
    throw std::invalid_argument("make_test_form: window radii count");
  if (core.degree >= n + 1) {
    if (!wedge_const(core, theta_const(n)).is_zero() ||
        !wedge_const(core, dtheta_const(n)).is_zero())
      throw std::invalid_argument("make_test_form: core is not pointwise in J");
  } else if (core.degree == n && !form_is_horizontal(core)) {
    throw std::invalid_argument("make_test_form: degree-n core must be horizontal");
  }
  TestForm out(n, core.degree);
  for (const auto& [m, p] : core.terms) {
    WindowedPoly c;
    c.win = win;
    c.add_term(std::vector<int>(2 * n + 1, 0), p);
    out.add_term(m, c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Quadrature.
// ---------------------------------------------------------------------------

enum class QuadRule { midpoint, gauss };

struct QuadratureSpec {
  std::vector<std::pair<double, double>> box;  // per W-coordinate
  int points_per_axis = 32;
  QuadRule rule = QuadRule::gauss;
  int panels = 1;  // composite Gauss cells per axis (points_per_axis total)
};

namespace detail {

/// Gauss–Legendre nodes and weights on [−1, 1], Newton on the recurrence.
inline const std::pair<std::vector<double>, std::vector<double>>& gauss_rule(int n) {
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<double> x(n), w(n);
  for (int i = 0; i < n; ++i) {
    double xi = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int it2 = 0; it2 < 100; ++it2) {
      double p0 = 1.0, p1 = xi;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2 * j - 1) * xi * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
      double step = p1 / dp;
      xi -= step;
      if (std::abs(step) < 1e-15) break;
    }
    double p0 = 1.0, p1 = xi;
    for (int j = 2; j <= n; ++j) {
      double p2 = ((2 * j - 1) * xi * p1 - (j - 1) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
    x[i] = xi;
    w[i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
  }
  return cache.emplace(n, std::make_pair(std::move(x), std::move(w))).first->second;
}

}  // namespace detail

/// Thread cap from RUMINLAB_THREADS (default 1).
inline int max_threads() {
  const char* env = std::getenv("RUMINLAB_THREADS");
  if (!env) return 1;
  int v = std::atoi(env);
  return v > 0 ? v : 1;
}

/// Tensorized quadrature of f over the box. Panels per axis subdivide each
/// interval into composite Gauss cells. Cells along the last axis are
/// distributed over at most RUMINLAB_THREADS workers; the reduction order is
/// fixed, so results do not depend on the thread count.
inline double quad_integrate(const QuadratureSpec& q,
                             const std::function<double(const std::vector<double>&)>& f) {
  int d = static_cast<int>(q.box.size());
  int n = q.points_per_axis;
  std::vector<std::vector<double>> nodes(d), weights(d);
  for (int a = 0; a < d; ++a) {
    double lo = q.box[a].first, hi = q.box[a].second;
    if (q.rule == QuadRule::gauss) {
      int panels = std::max(q.panels, 1);
      int per = std::max(n / panels, 1);
      const auto& [x, w] = detail::gauss_rule(per);
      double ph = (hi - lo) / panels;
      for (int pnl = 0; pnl < panels; ++pnl) {
        double mid = lo + (pnl + 0.5) * ph, half = 0.5 * ph;
        for (int i = 0; i < per; ++i) {
          nodes[a].push_back(mid + half * x[i]);
          weights[a].push_back(half * w[i]);
        }
      }
    } else {
      double h = (hi - lo) / n;
      for (int i = 0; i < n; ++i) {
        nodes[a].push_back(lo + (i + 0.5) * h);
        weights[a].push_back(h);
      }
    }
  }
  int outer = static_cast<int>(nodes[d - 1].size());
  std::vector<double> partial(outer, 0.0);
  auto run_slab = [&](int oi) {
    std::vector<int> ix(d - 1, 0);
    std::vector<double> pt(d);
    pt[d - 1] = nodes[d - 1][oi];
    double w_outer = weights[d - 1][oi];
    double acc = 0.0;
    while (true) {
      double w = w_outer;
      for (int a = 0; a < d - 1; ++a) {
        pt[a] = nodes[a][ix[a]];
        w *= weights[a][ix[a]];
      }
      acc += w * f(pt);
      int a = 0;
      while (a < d - 1 && ++ix[a] == static_cast<int>(nodes[a].size())) ix[a++] = 0;
      if (a == d - 1 || d == 1) break;
    }
    partial[oi] = acc;
  };
  int nthreads = std::min(max_threads(), outer);
  if (nthreads <= 1) {
    for (int oi = 0; oi < outer; ++oi) run_slab(oi);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t)
      pool.emplace_back([&, t] {
        for (int oi = t; oi < outer; oi += nthreads) run_slab(oi);
      });
    for (auto& th : pool) th.join();
  }
  double acc = 0.0;
  for (double p : partial) acc += p;
  return acc;
}

// ---------------------------------------------------------------------------
// Heisenberg and classical currents of smooth intrinsic graphs.
// ---------------------------------------------------------------------------

namespace detail {

/// Symbolic tangent ∇^φΦ ∧ T with polynomial coefficients, keyed by mask.
inline std::map<IndexMask, Polynomial> tangent_sym(const GraphFunction& phi) {
  const Splitting& s = phi.split;
  int n = s.n, k = s.k, nv = w_dim(s);
  auto grad = intrinsic_gradient_sym(phi);
  std::map<IndexMask, Polynomial> acc;
  acc.emplace(0, Polynomial(nv, Rat(1)));
  for (int i = k + 1; i <= 2 * n; ++i) {
    std::map<IndexMask, Polynomial> dir;
    dir.emplace(IndexMask(1) << (i - 1), Polynomial(nv, Rat(1)));
    for (int h = 1; h <= k; ++h)
      if (!grad[h - 1][i - k - 1].is_zero())
        dir.emplace(IndexMask(1) << (h - 1), grad[h - 1][i - k - 1]);
    std::map<IndexMask, Polynomial> next;
    for (const auto& [ma, pa] : acc)
      for (const auto& [mb, pb] : dir) {
        if (ma & mb) continue;
        Polynomial contrib = Rat(merge_sign(ma, mb)) * (pa * pb);
        auto it = next.find(ma | mb);
        if (it == next.end())
          next.emplace(ma | mb, std::move(contrib));
        else
          it->second = it->second + contrib;
      }
    acc = std::move(next);
  }
  std::map<IndexMask, Polynomial> out;
  IndexMask tbit = IndexMask(1) << (2 * n);
  for (auto& [m, p] : acc)
    if (!p.is_zero()) out.emplace(m | tbit, std::move(p));  // ∧T, sign +1 (largest index)
  return out;
}

inline std::vector<double> point_coords(const PointF& p) {
  std::vector<double> c;
  c.reserve(2 * p.n + 1);
  for (int i = 0; i < p.n; ++i) c.push_back(p.x[i]);
  for (int i = 0; i < p.n; ++i) c.push_back(p.y[i]);
  c.push_back(p.t);
  return c;
}

}  // namespace detail

/// ⟦gr_φ⟧(ω) = C_{n,k} ∫_W <∇^φΦ(w) ∧ T | ω(Φ(w))> dL^{2n+1−k} by quadrature.
inline double eval_graph_current(const GraphFunction& phi, const TestForm& omega,
                                 const QuadratureSpec& q, double Cnk) {
  const Splitting& s = phi.split;
  if (omega.degree != 2 * s.n + 1 - s.k)
    throw std::invalid_argument("eval_graph_current: form degree must be 2n+1-k");
  auto tangent = detail::tangent_sym(phi);
  return Cnk * quad_integrate(q, [&](const std::vector<double>& w) {
    PointF p = graph_map(phi, w);
    std::vector<double> pc = detail::point_coords(p);
    double acc = 0.0;
    for (const auto& [m, tp] : tangent) {
      auto it = omega.terms.find(m);
      if (it == omega.terms.end()) continue;
      double fv = eval_windowed(it->second, pc);
      if (fv != 0.0) acc += eval(tp, w) * fv;
    }
    return acc;
  });
}

/// ⟦gr_φ⟧_cl(ω) = ∫_W Φ*ω: the pull-back route, integrating the determinant
/// expansion of Φ* over the coordinate coframe. Independent of the pairing
/// route above.
inline double eval_classical_current(const GraphFunction& phi, const TestForm& omega,
                                     const QuadratureSpec& q) {
  const Splitting& s = phi.split;
  int n = s.n, k = s.k, nv = w_dim(s);
  int d = 2 * n + 1 - k;
  if (omega.degree != d)
    throw std::invalid_argument("eval_classical_current: form degree must be 2n+1-k");
  if (!phi.symbolic()) throw std::invalid_argument("eval_classical_current: symbolic mode");

  // coordinates of Φ as polynomials of w
  std::vector<Polynomial> coord(2 * n + 1, Polynomial(nv));
  for (int j = 0; j < k; ++j) coord[j] = phi.sym[j];
  for (int i = k; i < n; ++i) coord[i] = Polynomial::variable(nv, i - k);
  for (int i = 0; i < n; ++i) coord[n + i] = Polynomial::variable(nv, (n - k) + i);
  {
    Polynomial t = Polynomial::variable(nv, w_tvar(s));
    for (int j = 0; j < k; ++j)
      t = t - rat(1, 2) * (phi.sym[j] * Polynomial::variable(nv, (n - k) + j));
    coord[2 * n] = t;
  }
  // pulled coframe rows: Φ*(θ_i) = Σ_a P[i][a] dw_a
  std::vector<std::vector<Polynomial>> P(2 * n + 1, std::vector<Polynomial>(nv));
  for (int i = 0; i < 2 * n; ++i)
    for (int a = 0; a < nv; ++a) P[i][a] = derive(coord[i], a);
  for (int a = 0; a < nv; ++a) {
    Polynomial row = derive(coord[2 * n], a);
    for (int i = 0; i < n; ++i)
      row = row + rat(1, 2) * (coord[n + i] * derive(coord[i], a) -
                               coord[i] * derive(coord[n + i], a));
    P[2 * n][a] = row;
  }
  return quad_integrate(q, [&](const std::vector<double>& w) {
    PointF p = graph_map(phi, w);
    std::vector<double> pc = detail::point_coords(p);
    std::vector<std::vector<double>> Pv(2 * n + 1, std::vector<double>(nv));
    for (int i = 0; i <= 2 * n; ++i)
      for (int a = 0; a < nv; ++a) Pv[i][a] = eval(P[i][a], w);
    double acc = 0.0;
    for (const auto& [m, f] : omega.terms) {
      double fv = eval_windowed(f, pc);
      if (fv == 0.0) continue;
      std::vector<std::vector<double>> minor;
      for (int i : mask_indices(m)) minor.push_back(Pv[i - 1]);
      // in-place LU determinant
      double det = 1.0;
      for (int c = 0; c < d; ++c) {
        int piv = c;
        for (int r = c + 1; r < d; ++r)
          if (std::abs(minor[r][c]) > std::abs(minor[piv][c])) piv = r;
        if (minor[piv][c] == 0.0) {
          det = 0.0;
          break;
        }
        if (piv != c) {
          std::swap(minor[piv], minor[c]);
          det = -det;
        }
        det *= minor[c][c];
        for (int r = c + 1; r < d; ++r) {
          double fscale = minor[r][c] / minor[c][c];
          for (int cc = c; cc < d; ++cc) minor[r][cc] -= fscale * minor[c][cc];
        }
      }
      acc += fv * det;
    }
    return acc;
  });
}

/// ∂⟦gr_φ⟧(ω) = ⟦gr_φ⟧(d_C ω) for a test form of degree 2n−k.
inline double boundary_eval(const GraphFunction& phi, const TestForm& omega,
                            const QuadratureSpec& q, double Cnk) {
  const Splitting& s = phi.split;
  if (omega.degree != 2 * s.n - s.k)
    throw std::invalid_argument("boundary_eval: form degree must be 2n-k");
  return eval_graph_current(phi, d_C(omega), q, Cnk);
}

/// Reference scale for boundary smallness: C_{n,k} ∫ win(Φ) J^φφ dw, the
/// current mass of the window region.
inline double graph_mass_scale(const GraphFunction& phi, const WindowSpec& win,
                               const QuadratureSpec& q, double Cnk) {
  auto tangent = detail::tangent_sym(phi);
  return Cnk * quad_integrate(q, [&](const std::vector<double>& w) {
    PointF p = graph_map(phi, w);
    std::vector<double> pc = detail::point_coords(p);
    double wv = window_value(win, pc);
    if (wv == 0.0) return 0.0;
    double nsq = 0.0;
    for (const auto& [m, tp] : tangent) {
      double v = eval(tp, w);
      nsq += v * v;
    }
    return wv * std::sqrt(nsq);  // J^φφ = |∇^φΦ ∧ T|
  });
}

// ---------------------------------------------------------------------------
// The geometric constant C_{n,k}.
// ---------------------------------------------------------------------------

struct CnkEstimate {
  double value = 0;
  double ci = 0;  // 95% confidence radius propagated from the slice volumes
};

/// C_{n,k} = (sup_{p ∈ B(0,1)} L^{2n+1−k}(W ∩ B(p,1)))^{-1}: Monte-Carlo
/// maximization over centers with a Monte-Carlo volume per slice.
/// Deterministic under the seed; cached per (n, k, metric, seed).
inline CnkEstimate estimate_Cnk(int n, int k, const Metric& metric, long mc_samples,
                                std::uint64_t seed) {
  static std::map<std::tuple<int, int, int, long, std::uint64_t>, CnkEstimate> cache;
  static std::mutex mu;
  auto key = std::make_tuple(n, k, static_cast<int>(metric.kind), mc_samples, seed);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  Splitting s(n, k);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int d = w_dim(s);
  // Generous slice box: horizontal coordinates of W ∩ B(p,1) stay within 2,
  // and |t| within 3 after the group twist, for every center p in B(0,1).
  double boxvol = std::pow(4.0, d - 1) * 6.0;
  auto slice_volume = [&](const PointF& p, long samples) {
    long hits = 0;
    for (long i = 0; i < samples; ++i) {
      std::vector<double> wc(d);
      for (int a = 0; a < d - 1; ++a) wc[a] = 2.0 * u(rng);
      wc[d - 1] = 3.0 * u(rng);
      PointF w = point_from_w(s, wc);
      if (heis_norm(metric, group_mul(group_inv(p), w)) < 1.0) ++hits;
    }
    double frac = static_cast<double>(hits) / static_cast<double>(samples);
    double vol = boxvol * frac;
    double sd =
        boxvol * std::sqrt(std::max(frac * (1.0 - frac), 1e-12) / static_cast<double>(samples));
    return std::make_pair(vol, sd);
  };
  // coarse maximization over centers, then one refined estimate at the argmax
  long coarse = std::max(mc_samples / 8, long(1));
  PointF origin(n), argmax = origin;
  double best = slice_volume(origin, coarse).first;
  for (int trial = 0; trial < 64; ++trial) {
    PointF p(n);
    for (int i = 0; i < n; ++i) {
      p.x[i] = u(rng);
      p.y[i] = u(rng);
    }
    p.t = 0.25 * u(rng);
    if (heis_norm(metric, p) >= 1.0) continue;
    double vol = slice_volume(p, coarse).first;
    if (vol > best) {
      best = vol;
      argmax = p;
    }
  }
  auto [vol, sd] = slice_volume(argmax, mc_samples);
  CnkEstimate est;
  est.value = 1.0 / vol;
  est.ci = 1.96 * sd / (vol * vol);
  {
    std::lock_guard<std::mutex> lock(mu);
    cache[key] = est;
  }
  return est;
}

// ---------------------------------------------------------------------------
// Area cross-check: minors formula vs multivector norm, with the exact unit
// pairing <∇^φΦ ∧ T | β> = 1 as the bridge between the two routes.
// ---------------------------------------------------------------------------

struct AreaCheckReport {
  double minors_route = 0;     // C ∫ (h∘Φ) J via the squared-minors formula
  double norm_route = 0;       // C ∫ (h∘Φ) |∇^φΦ ∧ T| via the multivector norm
  double pairing_dev = 0;      // max |<∇^φΦ∧T | β> − 1| over quadrature nodes
  double rel_dev = 0;
};

/// β = dx_{k+1}∧…∧dx_n ∧ dy_1∧…∧dy_n ∧ θ, the constant form in 𝓙^{2n+1−k}
/// with <∇^φΦ(w)∧T | β> ≡ 1 for every φ.
inline CoVector unit_pairing_form(const Splitting& s) {
  IndexMask m = 0;
  for (int i = s.k + 1; i <= 2 * s.n + 1; ++i) m |= IndexMask(1) << (i - 1);
  return basis_covector(s.n, m);
}

inline AreaCheckReport area_cross_check(const GraphFunction& phi, const WindowSpec& win,
                                        const QuadratureSpec& q, double Cnk) {
  const Splitting& s = phi.split;
  auto tangent = detail::tangent_sym(phi);
  auto gradsym = intrinsic_gradient_sym(phi);
  CoVector beta = unit_pairing_form(s);
  IndexMask beta_mask = beta.terms.begin()->first;
  AreaCheckReport rep;
  int k = s.k, cols = 2 * s.n - s.k;
  rep.minors_route = Cnk * quad_integrate(q, [&](const std::vector<double>& w) {
    PointF p = graph_map(phi, w);
    double wv = window_value(win, detail::point_coords(p));
    if (wv == 0.0) return 0.0;
    std::vector<std::vector<double>> g(k, std::vector<double>(cols));
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < cols; ++c) g[r][c] = eval(gradsym[r][c], w);
    // 1 + sum of squared minors of every size, double arithmetic
    double acc = 1.0;
    std::vector<int> ri, ci;
    auto det_minor = [&]() {
      int m = static_cast<int>(ri.size());
      std::vector<std::vector<double>> a(m, std::vector<double>(m));
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) a[i][j] = g[ri[i]][ci[j]];
      double det = 1.0;
      for (int c = 0; c < m; ++c) {
        int piv = c;
        for (int r = c + 1; r < m; ++r)
          if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
        if (a[piv][c] == 0.0) return 0.0;
        if (piv != c) {
          std::swap(a[piv], a[c]);
          det = -det;
        }
        det *= a[c][c];
        for (int r = c + 1; r < m; ++r) {
          double f = a[r][c] / a[c][c];
          for (int cc = c; cc < m; ++cc) a[r][cc] -= f * a[c][cc];
        }
      }
      return det;
    };
    auto loop_cols = [&](auto&& self, int start, int need) -> void {
      if (need == 0) {
        double dv = det_minor();
        acc += dv * dv;
        return;
      }
      for (int c = start; c <= cols - need; ++c) {
        ci.push_back(c);
        self(self, c + 1, need - 1);
        ci.pop_back();
      }
    };
    for (int size = 1; size <= std::min(k, cols); ++size) {
      std::function<void(int, int)> rows_rec = [&](int start, int need) {
        if (need == 0) {
          loop_cols(loop_cols, 0, size);
          return;
        }
        for (int r = start; r <= k - need; ++r) {
          ri.push_back(r);
          rows_rec(r + 1, need - 1);
          ri.pop_back();
        }
      };
      rows_rec(0, size);
    }
    return wv * std::sqrt(acc);
  });
  rep.norm_route = Cnk * quad_integrate(q, [&](const std::vector<double>& w) {
    PointF p = graph_map(phi, w);
    double wv = window_value(win, detail::point_coords(p));
    if (wv == 0.0) return 0.0;
    double nsq = 0.0, beta_pair = 0.0;
    for (const auto& [m, tp] : tangent) {
      double v = eval(tp, w);
      nsq += v * v;
      if (m == beta_mask) beta_pair = v;
    }
    rep.pairing_dev = std::max(rep.pairing_dev, std::abs(beta_pair - 1.0));
    return wv * std::sqrt(nsq);
  });
  rep.rel_dev = std::abs(rep.minors_route - rep.norm_route) /
                std::max(std::abs(rep.minors_route), 1e-300);
  return rep;
}

}  // namespace ruminlab
