#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ruminlab/rational.hpp"

namespace ruminlab {

/// Sparse multivariate polynomial with exact rational coefficients. Monomials
/// are exponent vectors in canonical (map) order; zero coefficients absent.
struct Polynomial {
  int nvars = 0;
  std::map<std::vector<int>, Rat> terms;

  Polynomial() = default;
  explicit Polynomial(int nv) : nvars(nv) {}
  Polynomial(int nv, const Rat& c) : nvars(nv) {
    if (!ruminlab::is_zero(c)) terms.emplace(std::vector<int>(nv, 0), c);
  }

  static Polynomial variable(int nv, int v) {
    Polynomial p(nv);
    std::vector<int> e(nv, 0);
    e[v] = 1;
    p.terms.emplace(std::move(e), Rat(1));
    return p;
  }

  bool is_zero() const { return terms.empty(); }
  bool is_constant() const {
    return terms.empty() ||
           (terms.size() == 1 && terms.begin()->first == std::vector<int>(nvars, 0));
  }
  Rat constant_value() const {
    auto it = terms.find(std::vector<int>(nvars, 0));
    return it == terms.end() ? Rat(0) : it->second;
  }

  int total_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms) {
      int s = 0;
      for (int x : e) s += x;
      d = std::max(d, s);
    }
    return d;
  }

  Polynomial& add_term(std::vector<int> e, const Rat& c) {
    auto it = terms.find(e);
    if (it == terms.end()) {
      if (!ruminlab::is_zero(c)) terms.emplace(std::move(e), c);
    } else {
      it->second += c;
      if (ruminlab::is_zero(it->second)) terms.erase(it);
    }
    return *this;
  }

  bool operator==(const Polynomial& o) const { return nvars == o.nvars && terms == o.terms; }
};

inline Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  if (a.nvars != b.nvars) throw std::invalid_argument("Polynomial+: nvars mismatch");
  Polynomial r = a;
  for (const auto& [e, c] : b.terms) r.add_term(e, c);
  return r;
}

inline Polynomial operator*(const Rat& c, const Polynomial& a) {
  Polynomial r(a.nvars);
  if (ruminlab::is_zero(c)) return r;
  for (const auto& [e, v] : a.terms) r.terms.emplace(e, c * v);
  return r;
}

inline Polynomial operator-(const Polynomial& a) { return Rat(-1) * a; }
inline Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

inline Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.nvars != b.nvars) throw std::invalid_argument("Polynomial*: nvars mismatch");
  Polynomial r(a.nvars);
  for (const auto& [ea, ca] : a.terms)
    for (const auto& [eb, cb] : b.terms) {
      std::vector<int> e(a.nvars);
      for (int i = 0; i < a.nvars; ++i) e[i] = ea[i] + eb[i];
      r.add_term(std::move(e), ca * cb);
    }
  return r;
}

inline Polynomial pow(const Polynomial& a, int k) {
  Polynomial r(a.nvars, Rat(1));
  for (int i = 0; i < k; ++i) r = r * a;
  return r;
}

inline Polynomial derive(const Polynomial& a, int v) {
  Polynomial r(a.nvars);
  for (const auto& [e, c] : a.terms) {
    if (e[v] == 0) continue;
    std::vector<int> d = e;
    d[v] -= 1;
    r.add_term(std::move(d), Rat(e[v]) * c);
  }
  return r;
}

/// Simultaneous substitution of each variable by a polynomial (all images over
/// a common variable set).
inline Polynomial subst(const Polynomial& a, const std::vector<Polynomial>& images) {
  if (static_cast<int>(images.size()) != a.nvars)
    throw std::invalid_argument("subst: image count mismatch");
  int nv = images.empty() ? 0 : images[0].nvars;
  Polynomial r(nv);
  for (const auto& [e, c] : a.terms) {
    Polynomial term(nv, c);
    for (int v = 0; v < a.nvars; ++v)
      if (e[v] > 0) term = term * pow(images[v], e[v]);
    r = r + term;
  }
  return r;
}

template <class S>
S eval(const Polynomial& a, const std::vector<S>& pt) {
  if (static_cast<int>(pt.size()) != a.nvars) throw std::invalid_argument("eval: point size");
  S acc{};
  for (const auto& [e, c] : a.terms) {
    S m;
    if constexpr (std::is_same_v<S, double>)
      m = to_double(c);
    else
      m = c;
    for (int v = 0; v < a.nvars; ++v)
      for (int j = 0; j < e[v]; ++j) m = m * pt[v];
    acc += m;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Left-invariant frame derivatives on H^n. Polynomials on the ambient group
// use 2n+1 variables ordered x_1..x_n, y_1..y_n, t.
// ---------------------------------------------------------------------------

inline int ambient_n(const Polynomial& f) {
  if (f.nvars % 2 == 0 || f.nvars < 3)
    throw std::invalid_argument("ambient polynomial needs 2n+1 variables");
  return (f.nvars - 1) / 2;
}

/// W_i f: X_j = ∂_{x_j} − (y_j/2)∂_t, Y_j = ∂_{y_j} + (x_j/2)∂_t, T = ∂_t.
inline Polynomial frame_derive(int i, const Polynomial& f) {
  int n = ambient_n(f);
  int tv = 2 * n;
  if (i < 1 || i > 2 * n + 1) throw std::invalid_argument("frame_derive: bad frame index");
  if (i == 2 * n + 1) return derive(f, tv);
  Polynomial dt = derive(f, tv);
  if (i <= n) {
    return derive(f, i - 1) - rat(1, 2) * (Polynomial::variable(f.nvars, n + i - 1) * dt);
  }
  int j = i - n;
  return derive(f, n + j - 1) + rat(1, 2) * (Polynomial::variable(f.nvars, j - 1) * dt);
}

inline std::string to_string(const Polynomial& a,
                             const std::function<std::string(int)>& var_name) {
  if (a.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : a.terms) {
    Rat ac = abs_rat(c);
    if (first) {
      if (sgn(c) < 0) out += "-";
      first = false;
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    std::string mono;
    for (int v = 0; v < a.nvars; ++v) {
      if (e[v] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += var_name(v);
      if (e[v] > 1) mono += "^" + std::to_string(e[v]);
    }
    if (mono.empty())
      out += to_string(ac);
    else if (ac == 1)
      out += mono;
    else
      out += to_string(ac) + "*" + mono;
  }
  return out;
}

/// Names variables x1..xn, y1..yn, t of the ambient group.
inline std::string ambient_var_name(int v, int n) {
  if (v < n) return "x" + std::to_string(v + 1);
  if (v < 2 * n) return "y" + std::to_string(v - n + 1);
  return "t";
}

inline std::string to_string_ambient(const Polynomial& a) {
  int n = ambient_n(a);
  return to_string(a, [n](int v) { return ambient_var_name(v, n); });
}

}  // namespace ruminlab
