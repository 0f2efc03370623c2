#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ruminlab/index_set.hpp"
#include "ruminlab/linalg.hpp"
#include "ruminlab/rational.hpp"

namespace ruminlab {

enum class Variance { vec, cov };

/// Element of Λ_* 𝔥 (Variance::vec, basis W_I) or Λ^* 𝔥* (Variance::cov,
/// basis θ_I), with exact rational coefficients keyed by strictly increasing
/// index sets. Zero coefficients are never stored, so equality of canonical
/// forms is structural equality. Algebraically meaningful inputs are
/// homogeneous; mixed-grade sums are tolerated as containers (the CLI grammar
/// allows them) and rejected by the operations that need a pure grade.
template <Variance V>
struct GExt {
  int n = 1;
  std::map<IndexMask, Rat> terms;

  GExt() = default;
  explicit GExt(int n_) : n(n_) {
    if (n_ < 1) throw std::invalid_argument("GExt: n must be >= 1");
  }

  int dim() const { return 2 * n + 1; }
  bool is_zero() const { return terms.empty(); }

  /// Common grade of all terms; −1 for the zero element.
  int grade() const {
    if (terms.empty()) return -1;
    int g = grade_of(terms.begin()->first);
    for (const auto& [m, c] : terms)
      if (grade_of(m) != g) throw std::logic_error("GExt: mixed grades where one was required");
    return g;
  }

  bool is_homogeneous() const {
    if (terms.empty()) return true;
    int g = grade_of(terms.begin()->first);
    for (const auto& [m, c] : terms)
      if (grade_of(m) != g) return false;
    return true;
  }

  bool operator==(const GExt& o) const { return n == o.n && terms == o.terms; }

  GExt& add_term(IndexMask m, const Rat& c) {
    auto it = terms.find(m);
    if (it == terms.end()) {
      if (!ruminlab::is_zero(c)) terms.emplace(m, c);
    } else {
      it->second += c;
      if (ruminlab::is_zero(it->second)) terms.erase(it);
    }
    return *this;
  }

  Rat coeff(IndexMask m) const {
    auto it = terms.find(m);
    return it == terms.end() ? Rat(0) : it->second;
  }
};

using MultiVector = GExt<Variance::vec>;
using CoVector = GExt<Variance::cov>;

template <Variance V>
GExt<V> basis_element(int n, IndexMask m) {
  GExt<V> g(n);
  g.terms.emplace(m, Rat(1));
  return g;
}

inline MultiVector basis_vector(int n, IndexMask m) { return basis_element<Variance::vec>(n, m); }
inline CoVector basis_covector(int n, IndexMask m) { return basis_element<Variance::cov>(n, m); }

/// W_i (1-based frame index, W_{2n+1} = T).
inline MultiVector frame_vector(int n, int i) { return basis_vector(n, IndexMask(1) << (i - 1)); }
inline CoVector frame_covector(int n, int i) { return basis_covector(n, IndexMask(1) << (i - 1)); }

template <Variance V>
GExt<V> scalar_element(int n, const Rat& c) {
  GExt<V> g(n);
  g.add_term(0, c);
  return g;
}

template <Variance V>
GExt<V> operator*(const Rat& c, const GExt<V>& a) {
  GExt<V> r(a.n);
  if (ruminlab::is_zero(c)) return r;
  for (const auto& [m, v] : a.terms) r.terms.emplace(m, c * v);
  return r;
}

template <Variance V>
GExt<V> operator-(const GExt<V>& a) {
  return Rat(-1) * a;
}

template <Variance V>
GExt<V> operator+(const GExt<V>& a, const GExt<V>& b) {
  if (a.n != b.n) throw std::invalid_argument("GExt+: dimension mismatch");
  GExt<V> r = a;
  for (const auto& [m, v] : b.terms) r.add_term(m, v);
  return r;
}

template <Variance V>
GExt<V> operator-(const GExt<V>& a, const GExt<V>& b) {
  return a + (-b);
}

/// Exterior product; graded-anticommutative, associative, bilinear.
template <Variance V>
GExt<V> wedge(const GExt<V>& a, const GExt<V>& b) {
  if (a.n != b.n) throw std::invalid_argument("wedge: dimension mismatch");
  GExt<V> r(a.n);
  for (const auto& [ma, ca] : a.terms)
    for (const auto& [mb, cb] : b.terms) {
      if (ma & mb) continue;
      r.add_term(ma | mb, Rat(merge_sign(ma, mb)) * ca * cb);
    }
  return r;
}

/// Duality pairing <W_I | θ_J> = δ_IJ, extended bilinearly. Nonzero
/// arguments must carry equal grades.
inline Rat pair(const MultiVector& tau, const CoVector& lam) {
  if (tau.n != lam.n) throw std::invalid_argument("pair: dimension mismatch");
  if (!tau.is_zero() && !lam.is_zero() && tau.grade() != lam.grade())
    throw std::invalid_argument("pair: grade mismatch");
  Rat s(0);
  if (tau.terms.size() <= lam.terms.size()) {
    for (const auto& [m, c] : tau.terms) s += c * lam.coeff(m);
  } else {
    for (const auto& [m, c] : lam.terms) s += c * tau.coeff(m);
  }
  return s;
}

/// Inner product making the W_I (resp. θ_I) orthonormal.
template <Variance V>
Rat inner(const GExt<V>& a, const GExt<V>& b) {
  if (a.n != b.n) throw std::invalid_argument("inner: dimension mismatch");
  Rat s(0);
  for (const auto& [m, c] : a.terms) {
    auto it = b.terms.find(m);
    if (it != b.terms.end()) s += c * it->second;
  }
  return s;
}

template <Variance V>
Rat norm_sq(const GExt<V>& a) {
  return inner(a, a);
}

/// Metric dual v ↦ v*: <w | v*> = <w, v>.
inline CoVector metric_dual(const MultiVector& v) {
  CoVector c(v.n);
  c.terms = v.terms;
  return c;
}

inline MultiVector metric_dual(const CoVector& v) {
  MultiVector c(v.n);
  c.terms = v.terms;
  return c;
}

/// Hodge star: *W_I = (−1)^{σ(I)} W_{I*}, so that v ∧ *v = |v|² W_{1..2n+1};
/// an involution since the ambient dimension 2n+1 is odd.
template <Variance V>
GExt<V> hodge_star(const GExt<V>& a) {
  int dim = 2 * a.n + 1;
  GExt<V> r(a.n);
  for (const auto& [m, c] : a.terms) {
    IndexMask mc = full_mask(dim) & ~m;
    r.add_term(mc, Rat(complement_sign(m, dim)) * c);
  }
  return r;
}

/// Unique decomposition τ = τ_{𝔥₁} + σ ∧ T with τ_{𝔥₁}, σ horizontal.
template <Variance V>
std::pair<GExt<V>, GExt<V>> horizontal_split(const GExt<V>& a) {
  IndexMask tbit = IndexMask(1) << (2 * a.n);
  GExt<V> h(a.n);
  GExt<V> sigma(a.n);
  for (const auto& [m, c] : a.terms) {
    // W_{m'} ∧ T carries sign +1 since T is the largest index.
    if (m & tbit)
      sigma.add_term(m & ~tbit, c);
    else
      h.add_term(m, c);
  }
  return {h, sigma};
}

template <Variance V>
bool is_horizontal(const GExt<V>& a) {
  IndexMask tbit = IndexMask(1) << (2 * a.n);
  for (const auto& [m, c] : a.terms)
    if (m & tbit) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Subspaces of 𝔥: canonical reduced-row-echelon spans.
// ---------------------------------------------------------------------------

/// An m-dimensional linear subspace of 𝔥 ≅ ℝ^{2n+1}, held as the canonical
/// RREF basis; equality of subspaces is equality of representations.
struct PlaneSpan {
  int n = 1;
  Mat basis;  // RREF rows, each of length 2n+1

  PlaneSpan() = default;
  PlaneSpan(int n_, Mat rows) : n(n_) {
    rref(rows);
    for (auto& r : rows) {
      bool nonzero = false;
      for (const auto& c : r) nonzero = nonzero || !ruminlab::is_zero(c);
      if (nonzero) basis.push_back(r);
    }
  }

  int dim() const { return static_cast<int>(basis.size()); }
  bool operator==(const PlaneSpan& o) const { return n == o.n && basis == o.basis; }
  bool operator<(const PlaneSpan& o) const { return basis < o.basis; }

  bool contains_T() const {
    Vec t(2 * n + 1, Rat(0));
    t[2 * n] = 1;
    Mat m = basis;
    m.push_back(t);
    return rank(std::move(m)) == dim();
  }

  /// True when the span lies inside the horizontal layer 𝔥₁.
  bool is_horizontal() const {
    for (const auto& r : basis)
      if (!ruminlab::is_zero(r[2 * n])) return false;
    return true;
  }
};

inline MultiVector vector_from_coords(int n, const Vec& v) {
  MultiVector m(n);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!is_zero(v[i])) m.add_term(IndexMask(1) << i, v[i]);
  return m;
}

/// Wedge of the canonical basis rows; tangent multivector of the span.
inline MultiVector plane_tangent(const PlaneSpan& p) {
  if (p.dim() == 0) throw std::invalid_argument("plane_tangent: zero subspace");
  MultiVector t = vector_from_coords(p.n, p.basis[0]);
  for (int i = 1; i < p.dim(); ++i) t = wedge(t, vector_from_coords(p.n, p.basis[i]));
  return t;
}

inline int intersection_dim(const PlaneSpan& a, const PlaneSpan& b) {
  if (a.n != b.n) throw std::invalid_argument("intersection_dim: dimension mismatch");
  Mat stacked = a.basis;
  for (const auto& r : b.basis) stacked.push_back(r);
  return a.dim() + b.dim() - static_cast<int>(rank(std::move(stacked)));
}

/// dim(P1 ∩ P2) >= m − 1 for equal-dimensional planes.
inline bool rank_one_connected(const PlaneSpan& a, const PlaneSpan& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("rank_one_connected: dims differ");
  return intersection_dim(a, b) >= a.dim() - 1;
}

/// Span τ = {v : v ∧ τ = 0}; τ is simple iff this space has dimension equal
/// to the grade. One kernel computation, grade-agnostic.
inline std::vector<Vec> annihilator_basis(const MultiVector& tau) {
  int dim = 2 * tau.n + 1;
  std::map<IndexMask, std::size_t> rows;
  for (const auto& [m, c] : tau.terms)
    for (int i = 0; i < dim; ++i) {
      IndexMask bit = IndexMask(1) << i;
      if (!(m & bit)) rows.try_emplace(m | bit, rows.size());
    }
  Mat a = zeros(rows.size(), dim);
  for (const auto& [m, c] : tau.terms)
    for (int i = 0; i < dim; ++i) {
      IndexMask bit = IndexMask(1) << i;
      if (m & bit) continue;
      a[rows.at(m | bit)][i] += Rat(merge_sign(bit, m)) * c;
    }
  return kernel_basis(std::move(a));
}

inline bool is_simple(const MultiVector& tau) {
  if (tau.is_zero()) throw std::invalid_argument("is_simple: zero multivector");
  int g = tau.grade();  // throws on mixed grades
  if (g == 0) throw std::invalid_argument("is_simple: grade must be >= 1");
  return static_cast<int>(annihilator_basis(tau).size()) == g;
}

inline std::optional<PlaneSpan> span_if_simple(const MultiVector& tau) {
  if (tau.is_zero()) throw std::invalid_argument("span_if_simple: zero multivector");
  auto ker = annihilator_basis(tau);
  if (static_cast<int>(ker.size()) != tau.grade()) return std::nullopt;
  return PlaneSpan(tau.n, Mat(ker.begin(), ker.end()));
}

/// Cross-validation predicate: rank-one connectedness of two planes must
/// agree with simplicity of the difference of their canonical tangent
/// multivectors (0 counts as simple). Always true on valid inputs.
inline bool whyrank1_check(const PlaneSpan& p1, const PlaneSpan& p2) {
  bool roc = rank_one_connected(p1, p2);
  MultiVector d = plane_tangent(p1) - plane_tangent(p2);
  bool simple = d.is_zero() ? true : is_simple(d);
  return roc == simple;
}

// ---------------------------------------------------------------------------
// Text rendering (shared literal grammar with the CLI).
// ---------------------------------------------------------------------------

template <Variance V>
std::string to_string(const GExt<V>& a) {
  if (a.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : a.terms) {
    Rat ac = abs_rat(c);
    if (first) {
      if (sgn(c) < 0) out += "-";
      first = false;
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    std::string mono;
    for (int i : mask_indices(m)) {
      if (!mono.empty()) mono += "^";
      mono += frame_name(i, a.n, V == Variance::cov);
    }
    if (mono.empty()) {
      out += to_string(ac);
    } else if (ac == 1) {
      out += mono;
    } else {
      out += to_string(ac) + "*" + mono;
    }
  }
  return out;
}

}  // namespace ruminlab
