#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ruminlab {

/// Exact rational scalar. All algebraic layers of the library compute in Rat;
/// conversion to binary64 is explicit via to_double().
using Rat = mpq_class;

/// Canonicalized rational n/d.
inline Rat rat(long n, long d = 1) {
  if (d == 0) throw std::invalid_argument("rat: zero denominator");
  Rat q(n, d);
  q.canonicalize();
  return q;
}

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on bad input.
inline Rat rat_parse(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("rat_parse: bad rational '" + s + "'");
  if (q.get_den() == 0) throw std::invalid_argument("rat_parse: zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

inline double to_double(const Rat& q) { return q.get_d(); }

inline std::string to_string(const Rat& q) { return q.get_str(); }

inline bool is_zero(const Rat& q) { return sgn(q) == 0; }

inline Rat abs_rat(const Rat& q) { return sgn(q) < 0 ? Rat(-q) : q; }

}  // namespace ruminlab
