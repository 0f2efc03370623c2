#pragma once

#include <map>
#include <mutex>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "ruminlab/linalg.hpp"
#include "ruminlab/multivector.hpp"
#include "ruminlab/tableau.hpp"

namespace ruminlab {

/// Contact form θ = θ_{2n+1} as a constant covector.
inline CoVector theta_const(int n) { return frame_covector(n, 2 * n + 1); }

/// dθ = −Σ_i dx_i ∧ dy_i (minus the standard symplectic form).
inline CoVector dtheta_const(int n) {
  CoVector d(n);
  for (int i = 1; i <= n; ++i) {
    IndexMask m = (IndexMask(1) << (i - 1)) | (IndexMask(1) << (n + i - 1));
    d.add_term(m, Rat(-1));
  }
  return d;
}

/// dxy_i = dx_i ∧ dy_i.
inline CoVector dxy(int n, int i) {
  IndexMask m = (IndexMask(1) << (i - 1)) | (IndexMask(1) << (n + i - 1));
  return basis_covector(n, m);
}

/// Lefschetz operator L(λ) = λ ∧ dθ.
inline CoVector lefschetz(const CoVector& lam) { return wedge(lam, dtheta_const(lam.n)); }

/// Covector α_R of a two-row tableau: product over height-2 columns of
/// (dxy_{R¹_j} − dxy_{R²_j}), then the remaining dxy factors of row 1.
/// α of the empty tableau is the scalar 1.
inline CoVector alpha_R(int n, const YoungTableau& r) {
  CoVector acc = scalar_element<Variance::cov>(n, Rat(1));
  for (std::size_t j = 0; j < r.row2.size(); ++j)
    acc = wedge(acc, dxy(n, r.row1[j]) - dxy(n, r.row2[j]));
  for (std::size_t j = r.row2.size(); j < r.row1.size(); ++j) acc = wedge(acc, dxy(n, r.row1[j]));
  return acc;
}

namespace detail {

/// Horizontal masks of a given grade, ascending.
inline std::vector<IndexMask> horizontal_masks(int n, int grade) {
  std::vector<IndexMask> out;
  for (IndexMask m = 0; m <= full_mask(2 * n); ++m)
    if ((m & ~full_mask(2 * n)) == 0 && grade_of(m) == grade) out.push_back(m);
  return out;
}

/// Matrix of L : Λ^{g}𝔥₁ → Λ^{g+2}𝔥₁ over the ordered monomial bases.
inline Mat lefschetz_matrix(int n, int g) {
  auto dom = horizontal_masks(n, g);
  auto cod = horizontal_masks(n, g + 2);
  std::map<IndexMask, std::size_t> row_of;
  for (std::size_t i = 0; i < cod.size(); ++i) row_of[cod[i]] = i;
  Mat m = zeros(cod.size(), dom.size());
  for (std::size_t j = 0; j < dom.size(); ++j) {
    CoVector img = lefschetz(basis_covector(n, dom[j]));
    for (const auto& [mask, c] : img.terms) m[row_of.at(mask)][j] = c;
  }
  return m;
}

/// Cached inverse of the bijective L : Λ^{n−1}𝔥₁ → Λ^{n+1}𝔥₁.
inline const Mat& lefschetz_inverse_matrix(int n) {
  static std::map<int, Mat> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) {
    auto inv = inverse(lefschetz_matrix(n, n - 1));
    if (!inv) throw std::logic_error("Lefschetz operator not bijective at degree n-1");
    it = cache.emplace(n, std::move(*inv)).first;
  }
  return it->second;
}

}  // namespace detail

/// Inverse of L on horizontal covectors of degree n+1 (the unique bijective
/// degree). Throws on other degrees or non-horizontal input.
inline CoVector lefschetz_inv(const CoVector& mu) {
  int n = mu.n;
  if (!mu.is_zero() && mu.grade() != n + 1)
    throw std::invalid_argument("lefschetz_inv: degree must be n+1");
  if (!is_horizontal(mu)) throw std::invalid_argument("lefschetz_inv: input must be horizontal");
  auto dom = detail::horizontal_masks(n, n - 1);
  auto cod = detail::horizontal_masks(n, n + 1);
  Vec b(cod.size(), Rat(0));
  for (std::size_t i = 0; i < cod.size(); ++i) b[i] = mu.coeff(cod[i]);
  Vec x = mat_vec(detail::lefschetz_inverse_matrix(n), b);
  CoVector out(n);
  for (std::size_t j = 0; j < dom.size(); ++j)
    if (!is_zero(x[j])) out.add_term(dom[j], x[j]);
  return out;
}

// ---------------------------------------------------------------------------
// The basis of J^{2n+1-k}.
// ---------------------------------------------------------------------------

/// One basis element dx_I ∧ dy_J ∧ α_R ∧ θ of 𝓙^{2n+1−k}.
struct RuminBasisElement {
  std::vector<int> I, J;
  YoungTableau R;
  CoVector covector;
};

namespace detail {

/// Subsets of {1..n}, each sorted ascending, in lexicographic vector order.
inline std::vector<std::vector<int>> subsets_lex(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    out.push_back(cur);
    for (int i = start; i <= n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

inline CoVector dz_product(int n, const std::vector<int>& idx, bool is_y) {
  CoVector acc = scalar_element<Variance::cov>(n, Rat(1));
  for (int i : idx) acc = wedge(acc, frame_covector(n, is_y ? n + i : i));
  return acc;
}

}  // namespace detail

/// Basis of 𝓙^{2n+1−k} indexed by triples (I, J, R): I, J disjoint subsets of
/// {1..n} with |I|+|J| ≤ k and k−|I|−|J| even, R a standard Young tableau on
/// the remaining indices with rows of length (2n−k−|I|−|J|)/2 and
/// (k−|I|−|J|)/2. Ordered lexicographically in (I, J, row1 of R).
inline std::vector<RuminBasisElement> basis_J(int n, int k) {
  if (k < 1 || k > n) throw std::invalid_argument("basis_J: need 1 <= k <= n");
  std::vector<RuminBasisElement> out;
  CoVector th = theta_const(n);
  auto subsets = detail::subsets_lex(n);
  for (const auto& I : subsets) {
    for (const auto& J : subsets) {
      int ij = static_cast<int>(I.size() + J.size());
      if (ij > k || (k - ij) % 2 != 0) continue;
      bool disjoint = true;
      for (int a : I)
        for (int b : J) disjoint = disjoint && a != b;
      if (!disjoint) continue;
      std::vector<int> rest;
      for (int i = 1; i <= n; ++i) {
        bool used = false;
        for (int a : I) used = used || a == i;
        for (int b : J) used = used || b == i;
        if (!used) rest.push_back(i);
      }
      int l1 = (2 * n - k - ij) / 2;
      CoVector head = wedge(detail::dz_product(n, I, false), detail::dz_product(n, J, true));
      for (auto& R : syt_enumerate(rest, l1)) {
        RuminBasisElement e{I, J, R, wedge(wedge(head, alpha_R(n, R)), th)};
        out.push_back(std::move(e));
      }
    }
  }
  return out;
}

/// m = 2n+1−k variant, n+1 ≤ m ≤ 2n.
inline std::vector<RuminBasisElement> basis_J_of_degree(int n, int m) {
  int k = 2 * n + 1 - m;
  if (k < 1 || k > n) throw std::invalid_argument("basis_J_of_degree: m out of range");
  return basis_J(n, k);
}

/// Exact membership in 𝓙^k = {λ : λ∧θ = λ∧dθ = 0}.
inline bool in_J(const CoVector& lam) {
  return wedge(lam, theta_const(lam.n)).is_zero() && wedge(lam, dtheta_const(lam.n)).is_zero();
}

/// Exact membership in 𝓘^k = {λ∧θ + μ∧dθ}. For k' = 2n+1−k with k ≤ n this is
/// all of Λ^{k'}𝔥.
inline bool in_I(const CoVector& lam, int k) {
  if (lam.is_zero()) return true;
  if (lam.grade() != k) throw std::invalid_argument("in_I: grade/k mismatch");
  int n = lam.n;
  std::vector<CoVector> gens;
  CoVector th = theta_const(n), dth = dtheta_const(n);
  if (k >= 1)
    for (IndexMask m = 0; m <= full_mask(2 * n + 1); ++m)
      if (grade_of(m) == k - 1) gens.push_back(wedge(basis_covector(n, m), th));
  if (k >= 2)
    for (IndexMask m = 0; m <= full_mask(2 * n + 1); ++m)
      if (grade_of(m) == k - 2) gens.push_back(wedge(basis_covector(n, m), dth));
  std::vector<IndexMask> masks;
  for (IndexMask m = 0; m <= full_mask(2 * n + 1); ++m)
    if (grade_of(m) == k) masks.push_back(m);
  Mat a = zeros(masks.size(), gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j)
    for (std::size_t i = 0; i < masks.size(); ++i) a[i][j] = gens[j].coeff(masks[i]);
  Mat aug = a;
  for (std::size_t i = 0; i < masks.size(); ++i) aug[i].push_back(lam.coeff(masks[i]));
  return rank(std::move(a)) == rank(std::move(aug));
}

/// Minimal-norm representative of the class of a horizontal degree-n covector
/// modulo {μ∧dθ : μ ∈ Λ^{n−2}𝔥₁}: orthogonal projection onto the complement.
/// Returns the representative and its squared norm (exact).
inline std::pair<CoVector, Rat> quotient_min_norm(const CoVector& lam) {
  int n = lam.n;
  if (!lam.is_zero() && lam.grade() != n)
    throw std::invalid_argument("quotient_min_norm: degree must be n");
  if (!is_horizontal(lam)) throw std::invalid_argument("quotient_min_norm: input not horizontal");
  std::vector<CoVector> gens;
  if (n >= 2)
    for (IndexMask m : detail::horizontal_masks(n, n - 2))
      gens.push_back(lefschetz(basis_covector(n, m)));
  if (gens.empty()) return {lam, norm_sq(lam)};
  Mat gram = zeros(gens.size(), gens.size());
  Vec rhs(gens.size(), Rat(0));
  for (std::size_t i = 0; i < gens.size(); ++i) {
    rhs[i] = inner(gens[i], lam);
    for (std::size_t j = 0; j < gens.size(); ++j) gram[i][j] = inner(gens[i], gens[j]);
  }
  auto c = solve(std::move(gram), std::move(rhs));
  if (!c) throw std::logic_error("quotient_min_norm: Gram system inconsistent");
  CoVector rep = lam;
  for (std::size_t j = 0; j < gens.size(); ++j) rep = rep - (*c)[j] * gens[j];
  return {rep, norm_sq(rep)};
}

// ---------------------------------------------------------------------------
// J-duality classes and the tangency census.
// ---------------------------------------------------------------------------

/// [τ]_𝓙 as the vector of exact pairings against the ordered basis of
/// 𝓙^{2n+1−k}. The Euclidean norm of this vector is the library's choice of
/// norm on 𝓙_m.
struct JClass {
  int n = 1, k = 1;
  Vec pairings;

  bool operator==(const JClass& o) const { return n == o.n && k == o.k && pairings == o.pairings; }
  bool is_zero() const {
    for (const auto& p : pairings)
      if (!ruminlab::is_zero(p)) return false;
    return true;
  }
};

inline JClass project_J(const MultiVector& tau,
                        const std::vector<RuminBasisElement>& basis, int k) {
  if (tau.grade() < tau.n + 1)
    throw std::invalid_argument("project_J: degree must be at least n+1");
  JClass c{tau.n, k, Vec()};
  c.pairings.reserve(basis.size());
  for (const auto& e : basis) c.pairings.push_back(pair(tau, e.covector));
  return c;
}

inline JClass project_J(const MultiVector& tau) {
  int k = 2 * tau.n + 1 - tau.grade();
  return project_J(tau, basis_J(tau.n, k), k);
}

/// True when p = c·q for some nonzero rational c.
inline bool proportional_nonzero(const Vec& p, const Vec& q) {
  std::size_t i0 = q.size();
  for (std::size_t i = 0; i < q.size(); ++i)
    if (!is_zero(q[i])) {
      i0 = i;
      break;
    }
  if (i0 == q.size()) return false;  // q = 0
  if (is_zero(p[i0])) return false;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] * q[i0] != p[i0] * q[i]) return false;
  return true;
}

/// Pairings of X_1∧…∧X_{a+b} ∧ Y_1∧…∧Y_a ∧ T against the basis of
/// 𝓙^{2a+b+1}; exactly one entry is nonzero, at the triple
/// (I = {a+1..a+b}, J = ∅, R = (1..a | a+b+1..n)).
inline std::vector<std::pair<RuminBasisElement, Rat>> canonical_pairing_table(int a, int b,
                                                                              int n) {
  if (a < 0 || b < 0 || a + b > n || 2 * a + b < n || 2 * a + b > 2 * n)
    throw std::invalid_argument("canonical_pairing_table: infeasible (a,b)");
  int k = 2 * n - 2 * a - b;
  MultiVector tau = scalar_element<Variance::vec>(n, Rat(1));
  for (int i = 1; i <= a + b; ++i) tau = wedge(tau, frame_vector(n, i));
  for (int i = 1; i <= a; ++i) tau = wedge(tau, frame_vector(n, n + i));
  tau = wedge(tau, frame_vector(n, 2 * n + 1));
  std::vector<std::pair<RuminBasisElement, Rat>> out;
  for (auto& e : basis_J(n, k)) {
    Rat p = pair(tau, e.covector);
    out.emplace_back(std::move(e), std::move(p));
  }
  return out;
}

/// The (I, J, R) triple carrying the unique nonzero canonical pairing.
inline RuminBasisElement canonical_triple(int a, int b, int n) {
  std::vector<int> I;
  for (int i = a + 1; i <= a + b; ++i) I.push_back(i);
  YoungTableau R;
  for (int i = 1; i <= a; ++i) R.row1.push_back(i);
  for (int i = a + b + 1; i <= n; ++i) R.row2.push_back(i);
  CoVector cov = wedge(wedge(detail::dz_product(n, I, false), alpha_R(n, R)), theta_const(n));
  return RuminBasisElement{I, {}, R, cov};
}

struct CensusResult {
  std::vector<PlaneSpan> planes;
  long hits = 0;    // trials whose class matched ζ (before dedup)
  long trials = 0;
};

/// Randomized search for vertical (2n+1−k)-planes whose tangent class is a
/// nonzero multiple of ζ: wedges of random small rational horizontal vectors,
/// exact proportionality filter on the J-pairings, deduplication by canonical
/// span. Enforces the at-most-one (k<n) / at-most-two, not rank-one connected
/// (k=n) bounds, so a violation of the bound throws.
inline CensusResult tangency_census(int n, int k, const JClass& zeta, long trials,
                                    std::uint64_t seed) {
  if (zeta.is_zero()) throw std::invalid_argument("tangency_census: zeta must be nonzero");
  auto basis = basis_J(n, k);
  if (zeta.pairings.size() != basis.size())
    throw std::invalid_argument("tangency_census: zeta length mismatch");
  std::mt19937_64 rng(seed);
  // zero-heavy small values keep simple wedges of special planes reachable
  static const Rat table[10] = {Rat(0), Rat(0), Rat(0), Rat(0), Rat(1),
                                Rat(-1), Rat(2), Rat(-2), rat(1, 2), rat(-1, 2)};
  std::uniform_int_distribution<int> pick(0, 9);
  int h = 2 * n - k;  // number of horizontal factors
  std::set<PlaneSpan> found;
  CensusResult res;
  res.trials = trials;
  MultiVector T = frame_vector(n, 2 * n + 1);
  for (long trial = 0; trial < trials; ++trial) {
    Mat rows(h, Vec(2 * n + 1, Rat(0)));
    for (int i = 0; i < h; ++i)
      for (int j = 0; j < 2 * n; ++j) rows[i][j] = table[pick(rng)];
    MultiVector tau = vector_from_coords(n, rows[0]);
    for (int i = 1; i < h && !tau.is_zero(); ++i)
      tau = wedge(tau, vector_from_coords(n, rows[i]));
    if (tau.is_zero()) continue;
    JClass cls = project_J(wedge(tau, T), basis, k);
    if (!proportional_nonzero(cls.pairings, zeta.pairings)) continue;
    ++res.hits;
    Vec tvec(2 * n + 1, Rat(0));
    tvec[2 * n] = 1;
    rows.push_back(tvec);
    found.insert(PlaneSpan(n, rows));
  }
  res.planes.assign(found.begin(), found.end());
  std::size_t bound = (k < n) ? 1 : 2;
  if (res.planes.size() > bound)
    throw std::logic_error("tangency_census: plane bound violated");
  for (std::size_t i = 0; i < res.planes.size(); ++i)
    for (std::size_t j = i + 1; j < res.planes.size(); ++j)
      if (rank_one_connected(res.planes[i], res.planes[j]))
        throw std::logic_error("tangency_census: distinct census planes are rank-one connected");
  return res;
}

}  // namespace ruminlab
