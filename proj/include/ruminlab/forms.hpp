#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ruminlab/multivector.hpp"
#include "ruminlab/polynomial.hpp"
#include "ruminlab/rumin.hpp"

namespace ruminlab {

/// Differential form on H^n in the left-invariant coframe {dx, dy, θ}, with
/// coefficients in a ring R (exact polynomials, or windowed polynomials for
/// compactly supported test forms). Homogeneous degree; θ-terms and the
/// horizontal/vertical split are coefficient filters on the T bit.
template <class R>
struct Form {
  int n = 1;
  int degree = 0;
  std::map<IndexMask, R> terms;

  Form() = default;
  Form(int n_, int degree_) : n(n_), degree(degree_) {
    if (degree_ < 0 || degree_ > 2 * n_ + 1) throw std::invalid_argument("Form: bad degree");
  }

  bool is_zero() const { return terms.empty(); }

  Form& add_term(IndexMask m, const R& f) {
    if (f.is_zero()) return *this;
    if (grade_of(m) != degree) throw std::invalid_argument("Form: term grade mismatch");
    auto it = terms.find(m);
    if (it == terms.end()) {
      terms.emplace(m, f);
    } else {
      it->second = it->second + f;
      if (it->second.is_zero()) terms.erase(it);
    }
    return *this;
  }

  bool operator==(const Form& o) const {
    return n == o.n && degree == o.degree && terms == o.terms;
  }
};

using PolyForm = Form<Polynomial>;

template <class R>
Form<R> operator+(const Form<R>& a, const Form<R>& b) {
  if (a.n != b.n) throw std::invalid_argument("Form+: dimension mismatch");
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.degree != b.degree) throw std::invalid_argument("Form+: degree mismatch");
  Form<R> r = a;
  for (const auto& [m, f] : b.terms) r.add_term(m, f);
  return r;
}

template <class R>
Form<R> operator*(const Rat& c, const Form<R>& a) {
  Form<R> r(a.n, a.degree);
  for (const auto& [m, f] : a.terms) r.add_term(m, c * f);
  return r;
}

template <class R>
Form<R> operator-(const Form<R>& a) {
  return Rat(-1) * a;
}

template <class R>
Form<R> operator-(const Form<R>& a, const Form<R>& b) {
  return a + (-b);
}

/// Wedge with a constant covector on the right.
template <class R>
Form<R> wedge_const(const Form<R>& a, const CoVector& c) {
  if (a.n != c.n) throw std::invalid_argument("wedge_const: dimension mismatch");
  int g = a.degree + c.grade();
  if (g > 2 * a.n + 1) return Form<R>(a.n, 2 * a.n + 1);
  Form<R> r(a.n, g);
  for (const auto& [ma, f] : a.terms)
    for (const auto& [mc, v] : c.terms) {
      if (ma & mc) continue;
      r.add_term(ma | mc, (Rat(merge_sign(ma, mc)) * v) * f);
    }
  return r;
}

template <class R>
Form<R> scale_form(const R& g, const Form<R>& a) {
  Form<R> r(a.n, a.degree);
  for (const auto& [m, f] : a.terms) r.add_term(m, g * f);
  return r;
}

/// Coefficient filter on the T bit: the horizontal component ω_{𝔥₁}.
template <class R>
Form<R> horizontal_part(const Form<R>& a) {
  IndexMask tbit = IndexMask(1) << (2 * a.n);
  Form<R> r(a.n, a.degree);
  for (const auto& [m, f] : a.terms)
    if (!(m & tbit)) r.add_term(m, f);
  return r;
}

template <class R>
bool form_is_horizontal(const Form<R>& a) {
  IndexMask tbit = IndexMask(1) << (2 * a.n);
  for (const auto& [m, f] : a.terms)
    if (m & tbit) return false;
  return true;
}

/// θ ∧ ω as a form (θ is the largest coframe index, so its left wedge is
/// (−1)^{deg ω} times the T-bit insertion).
template <class R>
Form<R> theta_wedge_left(const Form<R>& a) {
  IndexMask tbit = IndexMask(1) << (2 * a.n);
  Form<R> r(a.n, a.degree + 1);
  Rat s = (a.degree % 2) ? Rat(-1) : Rat(1);
  for (const auto& [m, f] : a.terms) {
    if (m & tbit) throw std::invalid_argument("theta_wedge_left: form already contains θ");
    r.add_term(m | tbit, s * f);
  }
  return r;
}

/// Exterior derivative in the left-invariant coframe:
/// d(f θ_I) = Σ_i (W_i f) θ_i ∧ θ_I + f · dθ_I, where the structure equation
/// contributes dθ_I = (−1)^{|I|−1} θ_{I∖T} ∧ dθ when T ∈ I.
template <class R>
Form<R> exterior_d(const Form<R>& a) {
  int dim = 2 * a.n + 1;
  if (a.degree >= dim) return Form<R>(a.n, dim);
  Form<R> r(a.n, a.degree + 1);
  IndexMask tbit = IndexMask(1) << (2 * a.n);
  CoVector dth = dtheta_const(a.n);
  for (const auto& [m, f] : a.terms) {
    for (int i = 1; i <= dim; ++i) {
      IndexMask bit = IndexMask(1) << (i - 1);
      if (m & bit) continue;
      R df = frame_derive(i, f);
      if (df.is_zero()) continue;
      r.add_term(m | bit, Rat(merge_sign(bit, m)) * df);
    }
    if (m & tbit) {
      IndexMask rest = m & ~tbit;
      Rat s = (grade_of(rest) % 2) ? Rat(-1) : Rat(1);  // (−1)^{|I|−1}, |I| = |rest|+1
      for (const auto& [md, c] : dth.terms) {
        if (rest & md) continue;
        r.add_term(rest | md, s * Rat(merge_sign(rest, md)) * c * f);
      }
    }
  }
  return r;
}

namespace detail {

/// L^{-1} on a horizontal degree-(n+1) form, coefficient-ring generic:
/// applies the cached rational inverse of L : Λ^{n−1}𝔥₁ → Λ^{n+1}𝔥₁.
template <class R>
Form<R> lefschetz_inv_form(const Form<R>& mu) {
  int n = mu.n;
  if (!mu.is_zero() && (mu.degree != n + 1 || !form_is_horizontal(mu)))
    throw std::invalid_argument("lefschetz_inv_form: need horizontal degree n+1");
  auto dom = horizontal_masks(n, n - 1);
  auto cod = horizontal_masks(n, n + 1);
  const Mat& inv = lefschetz_inverse_matrix(n);
  Form<R> out(n, n - 1);
  for (std::size_t j = 0; j < dom.size(); ++j) {
    std::optional<R> acc;
    for (std::size_t i = 0; i < cod.size(); ++i) {
      auto it = mu.terms.find(cod[i]);
      if (it == mu.terms.end() || is_zero(inv[j][i])) continue;
      R contrib = inv[j][i] * it->second;
      acc = acc ? (*acc + contrib) : contrib;
    }
    if (acc && !acc->is_zero()) out.add_term(dom[j], *acc);
  }
  return out;
}

}  // namespace detail

/// Rumin operator D ω = d(ω − θ ∧ L^{-1}((dω)_{𝔥₁})) on a horizontal
/// degree-n representative. The output satisfies Dω∧θ = Dω∧dθ = 0 and
/// D(β∧dθ) = 0, so D is well defined on classes.
template <class R>
Form<R> rumin_D(const Form<R>& omega) {
  int n = omega.n;
  if (!omega.is_zero() && (omega.degree != n || !form_is_horizontal(omega)))
    throw std::invalid_argument("rumin_D: need a horizontal degree-n representative");
  Form<R> da = exterior_d(omega);
  Form<R> corr = detail::lefschetz_inv_form(horizontal_part(da));
  return exterior_d(omega - theta_wedge_left(corr));
}

/// The complex differential d_C: d away from degree n, D at degree n. At the
/// arrival degree n the canonical horizontal representative of the class is
/// returned; inputs of degree ≥ n+1 must be pointwise in 𝓙.
template <class R>
Form<R> d_C(const Form<R>& omega) {
  int n = omega.n;
  if (omega.is_zero() || omega.degree < n) {
    Form<R> d = exterior_d(omega);
    return d.degree == n ? horizontal_part(d) : d;
  }
  if (omega.degree == n) return rumin_D(omega);
  if (!wedge_const(omega, theta_const(n)).is_zero() ||
      !wedge_const(omega, dtheta_const(n)).is_zero())
    throw std::invalid_argument("d_C: degree >= n+1 input is not pointwise in J");
  return exterior_d(omega);
}

/// Constant-covector embedding: each covector term becomes a constant
/// polynomial coefficient.
inline PolyForm polyform_from_covector(const CoVector& c) {
  PolyForm f(c.n, c.is_zero() ? 0 : c.grade());
  for (const auto& [m, v] : c.terms) f.add_term(m, Polynomial(2 * c.n + 1, v));
  return f;
}

/// Pointwise value of a form at a point: the covector with double
/// coefficients, represented sparsely.
template <class R>
std::vector<std::pair<IndexMask, double>> form_eval(const Form<R>& a,
                                                    const std::vector<double>& pt) {
  std::vector<std::pair<IndexMask, double>> out;
  out.reserve(a.terms.size());
  for (const auto& [m, f] : a.terms) {
    double v = eval(f, pt);
    if (v != 0.0) out.emplace_back(m, v);
  }
  return out;
}

}  // namespace ruminlab
