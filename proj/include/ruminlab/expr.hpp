#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ruminlab/forms.hpp"
#include "ruminlab/multivector.hpp"
#include "ruminlab/polynomial.hpp"

namespace ruminlab {

/// Value of an expression: scalars, polynomials in x_i/y_i/t, multivectors
/// over X_i/Y_i/T, covectors over dx_i/dy_i/th, or polynomial-coefficient
/// forms. `^` is the wedge on (co)vectors and the power on scalars.
using ExprValue = std::variant<Rat, Polynomial, MultiVector, CoVector, PolyForm>;

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg + " at " + std::to_string(line_) + ":" + std::to_string(col_)),
        line(line_),
        col(col_) {}
};

namespace detail_expr {

struct Token {
  enum Kind { num, ident, plus, minus, star, caret, slash, lparen, rparen, end } kind;
  std::string text;
  int line, col;
};

inline std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto push = [&](Token::Kind k, std::string t, int l, int c) {
    out.push_back({k, std::move(t), l, c});
  };
  while (i < src.size()) {
    char ch = src[i];
    if (ch == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++col;
      ++i;
      continue;
    }
    int c0 = col;
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::string t;
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
        t += src[i++];
        ++col;
      }
      push(Token::num, t, line, c0);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      std::string t;
      while (i < src.size() && std::isalnum(static_cast<unsigned char>(src[i]))) {
        t += src[i++];
        ++col;
      }
      push(Token::ident, t, line, c0);
      continue;
    }
    Token::Kind k;
    switch (ch) {
      case '+': k = Token::plus; break;
      case '-': k = Token::minus; break;
      case '*': k = Token::star; break;
      case '^': k = Token::caret; break;
      case '/': k = Token::slash; break;
      case '(': k = Token::lparen; break;
      case ')': k = Token::rparen; break;
      default: throw ParseError(std::string("unexpected character '") + ch + "'", line, col);
    }
    push(k, std::string(1, ch), line, c0);
    ++i;
    ++col;
  }
  push(Token::end, "", line, col);
  return out;
}

}  // namespace detail_expr

class ExpressionParser {
 public:
  ExpressionParser(const std::string& src, int n)
      : n_(n), toks_(detail_expr::lex(src)), pos_(0) {}

  ExprValue parse() {
    ExprValue v = parse_sum();
    expect(detail_expr::Token::end, "end of input");
    return v;
  }

 private:
  using Token = detail_expr::Token;
  int n_;
  std::vector<Token> toks_;
  std::size_t pos_;

  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }
  void expect(Token::Kind k, const char* what) {
    if (peek().kind != k)
      throw ParseError(std::string("expected ") + what + ", got '" + peek().text + "'",
                       peek().line, peek().col);
    take();
  }

  [[noreturn]] void fail(const std::string& msg, const Token& t) {
    throw ParseError(msg, t.line, t.col);
  }

  // --- value algebra with coercions ------------------------------------

  Polynomial as_poly(const ExprValue& v, const Token& at) {
    if (std::holds_alternative<Rat>(v)) return Polynomial(2 * n_ + 1, std::get<Rat>(v));
    if (std::holds_alternative<Polynomial>(v)) return std::get<Polynomial>(v);
    fail("expected a scalar/polynomial", at);
  }

  PolyForm as_form(const ExprValue& v, const Token& at) {
    if (std::holds_alternative<PolyForm>(v)) return std::get<PolyForm>(v);
    if (std::holds_alternative<CoVector>(v)) return polyform_from_covector(std::get<CoVector>(v));
    fail("expected a form", at);
  }

  ExprValue add(const ExprValue& a, const ExprValue& b, bool subtract, const Token& at) {
    auto go = [&](auto&& x, auto&& y) -> ExprValue {
      return subtract ? ExprValue(x - y) : ExprValue(x + y);
    };
    try {
      if (std::holds_alternative<Rat>(a) && std::holds_alternative<Rat>(b))
        return go(std::get<Rat>(a), std::get<Rat>(b));
      if (std::holds_alternative<MultiVector>(a) && std::holds_alternative<MultiVector>(b))
        return go(std::get<MultiVector>(a), std::get<MultiVector>(b));
      if (std::holds_alternative<CoVector>(a) && std::holds_alternative<CoVector>(b))
        return go(std::get<CoVector>(a), std::get<CoVector>(b));
      if ((std::holds_alternative<PolyForm>(a) || std::holds_alternative<CoVector>(a)) &&
          (std::holds_alternative<PolyForm>(b) || std::holds_alternative<CoVector>(b)))
        return go(as_form(a, at), as_form(b, at));
      if ((std::holds_alternative<Rat>(a) || std::holds_alternative<Polynomial>(a)) &&
          (std::holds_alternative<Rat>(b) || std::holds_alternative<Polynomial>(b)))
        return go(as_poly(a, at), as_poly(b, at));
    } catch (const std::invalid_argument& e) {
      fail(e.what(), at);
    }
    fail("incompatible operands for +/-", at);
  }

  ExprValue mul(const ExprValue& a, const ExprValue& b, const Token& at) {
    try {
      if (std::holds_alternative<Rat>(a)) {
        const Rat& c = std::get<Rat>(a);
        if (std::holds_alternative<Rat>(b)) return Rat(c * std::get<Rat>(b));
        if (std::holds_alternative<Polynomial>(b)) return c * std::get<Polynomial>(b);
        if (std::holds_alternative<MultiVector>(b)) return c * std::get<MultiVector>(b);
        if (std::holds_alternative<CoVector>(b)) return c * std::get<CoVector>(b);
        return c * std::get<PolyForm>(b);
      }
      if (std::holds_alternative<Rat>(b)) return mul(b, a, at);
      if (std::holds_alternative<Polynomial>(a)) {
        const Polynomial& p = std::get<Polynomial>(a);
        if (std::holds_alternative<Polynomial>(b)) return p * std::get<Polynomial>(b);
        if (std::holds_alternative<CoVector>(b) || std::holds_alternative<PolyForm>(b))
          return scale_form(p, as_form(b, at));
      }
      if (std::holds_alternative<Polynomial>(b)) return mul(b, a, at);
    } catch (const std::invalid_argument& e) {
      fail(e.what(), at);
    }
    fail("incompatible operands for *", at);
  }

  ExprValue wedge_or_pow(const ExprValue& a, const ExprValue& b, const Token& at) {
    try {
      if (std::holds_alternative<MultiVector>(a) && std::holds_alternative<MultiVector>(b))
        return wedge(std::get<MultiVector>(a), std::get<MultiVector>(b));
      if (std::holds_alternative<CoVector>(a) && std::holds_alternative<CoVector>(b))
        return wedge(std::get<CoVector>(a), std::get<CoVector>(b));
      if ((std::holds_alternative<PolyForm>(a) || std::holds_alternative<CoVector>(a)) &&
          (std::holds_alternative<PolyForm>(b) || std::holds_alternative<CoVector>(b))) {
        PolyForm fa = as_form(a, at), fb = as_form(b, at);
        PolyForm out(fa.n, std::min(fa.degree + fb.degree, 2 * fa.n + 1));
        for (const auto& [mb, pb] : fb.terms) {
          CoVector unit = basis_covector(fb.n, mb);
          out = out + wedge_const(scale_form(pb, fa), unit);
        }
        return out;
      }
      // power on scalars: exponent must be a non-negative integer literal
      if ((std::holds_alternative<Rat>(a) || std::holds_alternative<Polynomial>(a)) &&
          std::holds_alternative<Rat>(b)) {
        const Rat& e = std::get<Rat>(b);
        if (e.get_den() != 1 || sgn(e) < 0) fail("exponent must be a non-negative integer", at);
        long k = e.get_num().get_si();
        if (std::holds_alternative<Rat>(a)) {
          Rat r(1);
          for (long i = 0; i < k; ++i) r *= std::get<Rat>(a);
          return r;
        }
        return pow(std::get<Polynomial>(a), static_cast<int>(k));
      }
    } catch (const std::invalid_argument& e) {
      fail(e.what(), at);
    }
    fail("incompatible operands for ^", at);
  }

  // --- grammar ----------------------------------------------------------

  ExprValue parse_sum() {
    ExprValue v = parse_product();
    while (peek().kind == Token::plus || peek().kind == Token::minus) {
      Token op = take();
      ExprValue rhs = parse_product();
      v = add(v, rhs, op.kind == Token::minus, op);
    }
    return v;
  }

  ExprValue parse_product() {
    ExprValue v = parse_wedge();
    while (peek().kind == Token::star) {
      Token op = take();
      v = mul(v, parse_wedge(), op);
    }
    return v;
  }

  ExprValue parse_wedge() {
    ExprValue v = parse_atom();
    while (peek().kind == Token::caret) {
      Token op = take();
      v = wedge_or_pow(v, parse_atom(), op);
    }
    return v;
  }

  ExprValue parse_atom() {
    const Token& t = peek();
    if (t.kind == Token::minus) {
      Token op = take();
      ExprValue v = parse_atom();
      return mul(ExprValue(Rat(-1)), v, op);
    }
    if (t.kind == Token::num) {
      Token numtok = take();
      Rat r = rat_parse(numtok.text);
      if (peek().kind == Token::slash) {
        take();
        if (peek().kind != Token::num) fail("expected denominator", peek());
        Token den = take();
        Rat d = rat_parse(den.text);
        if (sgn(d) == 0) fail("zero denominator", den);
        r /= d;
      }
      return r;
    }
    if (t.kind == Token::lparen) {
      take();
      ExprValue v = parse_sum();
      expect(Token::rparen, "')'");
      return v;
    }
    if (t.kind == Token::ident) return parse_ident(take());
    fail("expected an atom", t);
  }

  ExprValue parse_ident(const Token& t) {
    const std::string& s = t.text;
    auto index_of = [&](std::size_t from) -> int {
      if (from >= s.size()) fail("generator needs an index", t);
      int idx = 0;
      for (std::size_t i = from; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) fail("bad generator index", t);
        idx = idx * 10 + (s[i] - '0');
      }
      if (idx < 1 || idx > n_) fail("generator index out of range for n=" + std::to_string(n_), t);
      return idx;
    };
    if (s == "t") return Polynomial::variable(2 * n_ + 1, 2 * n_);
    if (s == "T") return frame_vector(n_, 2 * n_ + 1);
    if (s == "th") return frame_covector(n_, 2 * n_ + 1);
    if (s.size() >= 2 && s[0] == 'd' && (s[1] == 'x' || s[1] == 'y')) {
      int i = index_of(2);
      return frame_covector(n_, s[1] == 'x' ? i : n_ + i);
    }
    if (s[0] == 'x') return Polynomial::variable(2 * n_ + 1, index_of(1) - 1);
    if (s[0] == 'y') return Polynomial::variable(2 * n_ + 1, n_ + index_of(1) - 1);
    if (s[0] == 'X') return frame_vector(n_, index_of(1));
    if (s[0] == 'Y') return frame_vector(n_, n_ + index_of(1));
    fail("unknown generator '" + s + "'", t);
  }
};

inline ExprValue parse_expression(const std::string& text, int n) {
  return ExpressionParser(text, n).parse();
}

/// Inverse of the parser on canonical objects.
inline std::string to_string(const PolyForm& f) {
  if (f.is_zero()) return "0";
  int n = f.n;
  std::string out;
  bool first = true;
  for (const auto& [m, p] : f.terms) {
    std::string mono;
    for (int i : mask_indices(m)) {
      if (!mono.empty()) mono += "^";
      mono += frame_name(i, n, true);
    }
    std::string coeff;
    if (p.is_constant()) {
      Rat c = p.constant_value();
      if (!first) {
        out += sgn(c) < 0 ? " - " : " + ";
        c = abs_rat(c);
      } else if (sgn(c) < 0) {
        out += "-";
        c = abs_rat(c);
      }
      if (mono.empty())
        out += to_string(c);
      else if (c == 1)
        out += mono;
      else
        out += to_string(c) + "*" + mono;
    } else {
      if (!first) out += " + ";
      std::string ps = "(" + to_string_ambient(p) + ")";
      out += mono.empty() ? ps : ps + "*" + mono;
    }
    first = false;
  }
  return out;
}

}  // namespace ruminlab
