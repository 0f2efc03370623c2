#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ruminlab/forms.hpp"
#include "ruminlab/linalg.hpp"
#include "ruminlab/multivector.hpp"

namespace ruminlab {

/// H-linear map of H^n: exponential coordinates transform linearly, with a
/// 2n×2n block A on the horizontal layer (W-basis) and l(T) = cT on the
/// center. Bracket compatibility B(Av, Aw) = c·B(v, w) is the validity
/// condition, B being the symplectic form B(v,w) = <[v,w], T>.
struct HLinearMap {
  int n = 1;
  Mat A;  // 2n × 2n
  Rat c = 1;

  HLinearMap() = default;
  HLinearMap(int n_, Mat A_, Rat c_) : n(n_), A(std::move(A_)), c(std::move(c_)) {
    if (A.size() != std::size_t(2 * n) || A[0].size() != std::size_t(2 * n))
      throw std::invalid_argument("HLinearMap: A must be 2n x 2n");
  }

  static HLinearMap identity_map(int n) { return {n, identity(2 * n), Rat(1)}; }
  static HLinearMap dilation(int n, const Rat& lambda) {
    Mat a = zeros(2 * n, 2 * n);
    for (int i = 0; i < 2 * n; ++i) a[i][i] = lambda;
    return {n, std::move(a), lambda * lambda};
  }
};

/// B(W_i, W_j) on the horizontal layer: B(X_i, Y_j) = δ_ij.
inline Rat symplectic_B(int n, const Vec& u, const Vec& v) {
  Rat s(0);
  for (int i = 0; i < n; ++i) s += u[i] * v[n + i] - u[n + i] * v[i];
  return s;
}

/// Exact bracket-compatibility check: AᵀΩA = cΩ on all basis pairs.
inline bool validate(const HLinearMap& l) {
  int m = 2 * l.n;
  for (int i = 0; i < m; ++i) {
    Vec ai(m), aj(m);
    for (int r = 0; r < m; ++r) ai[r] = l.A[r][i];
    for (int j = 0; j < m; ++j) {
      for (int r = 0; r < m; ++r) aj[r] = l.A[r][j];
      Rat expected(0);
      if (j == i + l.n) expected = l.c;
      if (i == j + l.n) expected = -l.c;
      if (symplectic_B(l.n, ai, aj) != expected) return false;
    }
  }
  return true;
}

/// 𝓛_* on 1-vectors: column action of A on the horizontal layer, c on T.
inline MultiVector push_frame_vector(const HLinearMap& l, int i) {
  if (i == 2 * l.n + 1) return l.c * frame_vector(l.n, 2 * l.n + 1);
  MultiVector v(l.n);
  for (int r = 0; r < 2 * l.n; ++r)
    if (!is_zero(l.A[r][i - 1])) v.add_term(IndexMask(1) << r, l.A[r][i - 1]);
  return v;
}

/// Multiplicative extension 𝓛_*(v_1∧…∧v_k) = 𝓛_*v_1 ∧ … ∧ 𝓛_*v_k.
inline MultiVector push_multivector(const HLinearMap& l, const MultiVector& tau) {
  MultiVector out(l.n);
  for (const auto& [m, c] : tau.terms) {
    MultiVector acc = scalar_element<Variance::vec>(l.n, c);
    for (int i : mask_indices(m)) acc = wedge(acc, push_frame_vector(l, i));
    out = out + acc;
  }
  return out;
}

/// 𝓛^* on 1-covectors, defined by <τ | 𝓛^*λ> = <𝓛_*τ | λ>.
inline CoVector pull_frame_covector(const HLinearMap& l, int j) {
  if (j == 2 * l.n + 1) return l.c * frame_covector(l.n, 2 * l.n + 1);
  CoVector v(l.n);
  for (int i = 0; i < 2 * l.n; ++i)
    if (!is_zero(l.A[j - 1][i])) v.add_term(IndexMask(1) << i, l.A[j - 1][i]);
  return v;
}

inline CoVector pull_covector(const HLinearMap& l, const CoVector& lam) {
  CoVector out(l.n);
  for (const auto& [m, c] : lam.terms) {
    CoVector acc = scalar_element<Variance::cov>(l.n, c);
    for (int i : mask_indices(m)) acc = wedge(acc, pull_frame_covector(l, i));
    out = out + acc;
  }
  return out;
}

/// Pull-back of a polynomial-coefficient form: coordinate substitution
/// composed with the constant covector pull-back.
inline PolyForm pull_polyform(const HLinearMap& l, const PolyForm& omega) {
  int n = l.n;
  int nv = 2 * n + 1;
  std::vector<Polynomial> images;
  images.reserve(nv);
  for (int v = 0; v < 2 * n; ++v) {
    Polynomial img(nv);
    for (int u = 0; u < 2 * n; ++u)
      if (!is_zero(l.A[v][u])) img = img + l.A[v][u] * Polynomial::variable(nv, u);
    images.push_back(std::move(img));
  }
  images.push_back(l.c * Polynomial::variable(nv, 2 * n));
  PolyForm out(n, omega.degree);
  for (const auto& [m, f] : omega.terms) {
    Polynomial fl = subst(f, images);
    CoVector pulled = pull_covector(l, basis_covector(n, m));
    for (const auto& [mp, cp] : pulled.terms) out.add_term(mp, cp * fl);
  }
  return out;
}

inline HLinearMap compose(const HLinearMap& l1, const HLinearMap& l2) {
  if (l1.n != l2.n) throw std::invalid_argument("compose: dimension mismatch");
  return {l1.n, mat_mul(l1.A, l2.A), l1.c * l2.c};
}

// ---------------------------------------------------------------------------
// Constructive normalization (radical + symplectic Gram-Schmidt + Witt
// completion), everything exact over Q.
// ---------------------------------------------------------------------------

struct NormalizeResult {
  int a = 0, b = 0;
  HLinearMap map;
};

namespace detail {

/// Reduce u against constructed symplectic pairs: after this,
/// B(xs[i], u) = B(ys[i], u) = 0 for all i.
inline Vec symplectic_reduce(int n, Vec u, const std::vector<Vec>& xs,
                             const std::vector<Vec>& ys) {
  for (std::size_t i = 0; i < ys.size(); ++i) {
    Rat bx = symplectic_B(n, u, xs[i]);
    Rat by = symplectic_B(n, u, ys[i]);
    for (int r = 0; r < 2 * n; ++r) u[r] += bx * ys[i][r] - by * xs[i][r];
  }
  return u;
}

inline bool vec_is_zero(const Vec& v) {
  for (const auto& c : v)
    if (!is_zero(c)) return false;
  return v.size() > 0;
}

/// Partner of xs[j] (0-based): solves B(xs[i], w) = δ_ij for all i,
/// B(ys[i], w) = 0 for i < j. Free variables are zeroed (lowest-index-first
/// determinism).
inline Vec witt_partner(int n, const std::vector<Vec>& xs, const std::vector<Vec>& ys,
                        std::size_t j) {
  Mat rows;
  Vec rhs;
  auto constraint = [&](const Vec& v, Rat target) {
    Vec row(2 * n, Rat(0));
    for (int i = 0; i < n; ++i) {
      row[n + i] += v[i];
      row[i] -= v[n + i];
    }
    rows.push_back(std::move(row));
    rhs.push_back(std::move(target));
  };
  for (std::size_t i = 0; i < xs.size(); ++i) constraint(xs[i], i == j ? Rat(1) : Rat(0));
  for (std::size_t i = 0; i < j && i < ys.size(); ++i) constraint(ys[i], Rat(0));
  auto w = solve(std::move(rows), std::move(rhs));
  if (!w) throw std::logic_error("witt_partner: inconsistent system");
  return *w;
}

}  // namespace detail

/// Lemma-style normal form of a horizontal subspace V: computes the radical
/// rad V = {X ∈ V : B(X, V) = 0}, runs symplectic Gram-Schmidt on a
/// complement, completes to a full symplectic basis of 𝔥₁, and returns
/// (a, b, 𝔩) with dim V = 2a+b, 𝔩 validating with c = 1 and
/// 𝔩(V) = Span{X_1..X_{a+b}, Y_1..Y_a}.
inline NormalizeResult symplectic_normalize(const PlaneSpan& V) {
  if (!V.is_horizontal()) throw std::invalid_argument("symplectic_normalize: V not horizontal");
  if (V.dim() < 1) throw std::invalid_argument("symplectic_normalize: V must have dim >= 1");
  int n = V.n;
  int d = V.dim();
  std::vector<Vec> vbasis;
  for (const auto& r : V.basis) vbasis.emplace_back(r.begin(), r.begin() + 2 * n);

  // radical: kernel of the Gram matrix of B on V
  Mat gram = zeros(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) gram[i][j] = symplectic_B(n, vbasis[i], vbasis[j]);
  std::vector<Vec> radc = kernel_basis(std::move(gram));
  std::vector<Vec> rad;
  for (const auto& c : radc) {
    Vec v(2 * n, Rat(0));
    for (int i = 0; i < d; ++i)
      for (int r = 0; r < 2 * n; ++r) v[r] += c[i] * vbasis[i][r];
    rad.push_back(std::move(v));
  }
  int b = static_cast<int>(rad.size());

  // complement U of rad in V, greedy lowest-index-first
  std::vector<Vec> pool;
  {
    Mat acc(rad.begin(), rad.end());
    for (const auto& v : vbasis) {
      Mat test = acc;
      test.push_back(v);
      if (rank(test) > rank(acc)) {
        acc.push_back(v);
        pool.push_back(v);
      }
    }
  }

  // symplectic Gram-Schmidt on U
  std::vector<Vec> xs, ys;
  while (!pool.empty()) {
    Vec u = detail::symplectic_reduce(n, pool.front(), xs, ys);
    pool.erase(pool.begin());
    if (detail::vec_is_zero(u)) continue;
    std::size_t partner = pool.size();
    Rat bval;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      Vec w = detail::symplectic_reduce(n, pool[i], xs, ys);
      bval = symplectic_B(n, u, w);
      if (!is_zero(bval)) {
        partner = i;
        pool[i] = std::move(w);
        break;
      }
    }
    if (partner == pool.size())
      throw std::logic_error("symplectic_normalize: non-singular part has no partner");
    Vec y = pool[partner];
    pool.erase(pool.begin() + partner);
    Rat inv = 1 / bval;
    for (auto& cy : y) cy *= inv;
    xs.push_back(std::move(u));
    ys.push_back(std::move(y));
  }
  int a = static_cast<int>(xs.size());
  if (2 * a + b != d) throw std::logic_error("symplectic_normalize: dimension bookkeeping");

  // radical vectors become X_{a+1}..X_{a+b}
  for (auto& v : rad) xs.push_back(std::move(v));

  // Witt completion: partners for the radical block, then fresh pairs
  for (std::size_t j = ys.size(); j < xs.size(); ++j)
    ys.push_back(detail::witt_partner(n, xs, ys, j));
  while (static_cast<int>(xs.size()) < n) {
    Mat rows;
    for (const auto& v : xs) {
      Vec row(2 * n, Rat(0));
      for (int i = 0; i < n; ++i) {
        row[n + i] += v[i];
        row[i] -= v[n + i];
      }
      rows.push_back(std::move(row));
    }
    for (const auto& v : ys) {
      Vec row(2 * n, Rat(0));
      for (int i = 0; i < n; ++i) {
        row[n + i] += v[i];
        row[i] -= v[n + i];
      }
      rows.push_back(std::move(row));
    }
    auto ker = kernel_basis(std::move(rows));
    if (ker.empty()) throw std::logic_error("symplectic_normalize: completion stuck");
    xs.push_back(ker.front());
    ys.push_back(detail::witt_partner(n, xs, ys, xs.size() - 1));
  }

  // A maps the constructed basis to the standard one: A = P^{-1},
  // P = [X~_1 .. X~_n  Y~_1 .. Y~_n] as columns.
  Mat p = zeros(2 * n, 2 * n);
  for (int j = 0; j < n; ++j)
    for (int r = 0; r < 2 * n; ++r) {
      p[r][j] = xs[j][r];
      p[r][n + j] = ys[j][r];
    }
  auto pinv = inverse(std::move(p));
  if (!pinv) throw std::logic_error("symplectic_normalize: constructed basis is singular");
  return {a, b, HLinearMap(n, std::move(*pinv), Rat(1))};
}

/// Normal form of a vertical plane P ∋ T: the horizontal trace V = P ∩ 𝔥₁ is
/// normalized and the map extended by 𝔩(T) = T, so 𝓛*θ = θ, 𝓛*dθ = dθ and
/// 𝓛(P) = P_{a,b} = Span{X_1..X_{a+b}, Y_1..Y_a, T}.
inline NormalizeResult canonicalize_vertical_plane(const PlaneSpan& P) {
  if (!P.contains_T()) throw std::invalid_argument("canonicalize_vertical_plane: T not in P");
  int n = P.n;
  Mat hrows;
  for (const auto& r : P.basis) {
    if (is_zero(r[2 * n])) hrows.push_back(r);
    // the RREF row with t-pivot is exactly e_T and is dropped
  }
  PlaneSpan V(n, std::move(hrows));
  if (V.dim() + 1 != P.dim())
    throw std::invalid_argument("canonicalize_vertical_plane: P is not vertical");
  return symplectic_normalize(V);
}

/// Model plane P_{a,b} = Span{X_1..X_{a+b}, Y_1..Y_a} (+T when with_T).
inline PlaneSpan model_plane(int n, int a, int b, bool with_T) {
  Mat rows;
  auto e = [&](int i) {
    Vec v(2 * n + 1, Rat(0));
    v[i] = 1;
    return v;
  };
  for (int i = 0; i < a + b; ++i) rows.push_back(e(i));
  for (int i = 0; i < a; ++i) rows.push_back(e(n + i));
  if (with_T) rows.push_back(e(2 * n));
  return PlaneSpan(n, std::move(rows));
}

// ---------------------------------------------------------------------------
// Float-mode isometric normalization for Abelian subspaces. Over Q an exact
// isometry rarely exists (normalization needs square roots), so this variant
// returns a double orthogonal symplectic matrix.
// ---------------------------------------------------------------------------

using MatF = std::vector<std::vector<double>>;

/// For [V,V] = 0: returns a numerically orthogonal A with A(V) ≈
/// span{X_1..X_b}, built from Gram-Schmidt plus the pairing J(X) = -Y,
/// J(Y) = X (partners are -J of the orthonormal basis).
inline MatF isometric_normalize(const PlaneSpan& V) {
  if (!V.is_horizontal()) throw std::invalid_argument("isometric_normalize: V not horizontal");
  int n = V.n;
  int b = V.dim();
  for (int i = 0; i < b; ++i)
    for (int j = 0; j < b; ++j) {
      Vec vi(V.basis[i].begin(), V.basis[i].begin() + 2 * n);
      Vec vj(V.basis[j].begin(), V.basis[j].begin() + 2 * n);
      if (!is_zero(symplectic_B(n, vi, vj)))
        throw std::invalid_argument("isometric_normalize: V is not Abelian");
    }
  auto dot = [&](const std::vector<double>& u, const std::vector<double>& v) {
    double s = 0;
    for (int i = 0; i < 2 * n; ++i) s += u[i] * v[i];
    return s;
  };
  auto minus_j = [&](const std::vector<double>& v) {
    std::vector<double> w(2 * n);
    for (int i = 0; i < n; ++i) {
      w[i] = -v[n + i];
      w[n + i] = v[i];
    }
    return w;  // -J(x,y) = (-y, x); B(v, -Jv) = |v|^2
  };
  std::vector<std::vector<double>> xs, ys;
  auto orthonormal_insert = [&](std::vector<double> v) {
    for (const auto& u : xs)
      for (int r = 0; r < 2 * n; ++r) v[r] -= dot(v, u) * u[r];
    // intentionally also orthogonalize against the ys
    for (const auto& u : ys) {
      double d = dot(v, u);
      for (int r = 0; r < 2 * n; ++r) v[r] -= d * u[r];
    }
    double nrm = std::sqrt(dot(v, v));
    if (nrm < 1e-12) return false;
    for (auto& c : v) c /= nrm;
    xs.push_back(v);
    ys.push_back(minus_j(v));
    return true;
  };
  for (int i = 0; i < b; ++i) {
    std::vector<double> v(2 * n);
    for (int r = 0; r < 2 * n; ++r) v[r] = to_double(V.basis[i][r]);
    if (!orthonormal_insert(std::move(v)))
      throw std::invalid_argument("isometric_normalize: dependent basis");
  }
  for (int r = 0; r < 2 * n && static_cast<int>(xs.size()) < n; ++r) {
    std::vector<double> v(2 * n, 0.0);
    v[r] = 1.0;
    orthonormal_insert(std::move(v));
  }
  if (static_cast<int>(xs.size()) != n)
    throw std::logic_error("isometric_normalize: completion failed");
  // A = P^T since P is orthogonal
  MatF A(2 * n, std::vector<double>(2 * n, 0.0));
  for (int j = 0; j < n; ++j)
    for (int r = 0; r < 2 * n; ++r) {
      A[j][r] = xs[j][r];
      A[n + j][r] = ys[j][r];
    }
  return A;
}

}  // namespace ruminlab
