#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ruminlab/currents.hpp"
#include "ruminlab/graphs.hpp"
#include "ruminlab/heis.hpp"
#include "ruminlab/hlinear.hpp"
#include "ruminlab/rumin.hpp"

namespace ruminlab {

using nlohmann::json;

/// Points serialize as JSON arrays [x…, y…, t].
inline json to_json(const PointF& p) {
  json a = json::array();
  for (int i = 0; i < p.n; ++i) a.push_back(p.x[i]);
  for (int i = 0; i < p.n; ++i) a.push_back(p.y[i]);
  a.push_back(p.t);
  return a;
}

inline PointF pointf_from_json(const json& a) {
  if (!a.is_array() || a.size() % 2 == 0 || a.size() < 3)
    throw std::invalid_argument("point JSON must be an odd-length array [x..,y..,t]");
  int n = (static_cast<int>(a.size()) - 1) / 2;
  PointF p(n);
  for (int i = 0; i < n; ++i) p.x[i] = a[i].get<double>();
  for (int i = 0; i < n; ++i) p.y[i] = a[n + i].get<double>();
  p.t = a[2 * n].get<double>();
  return p;
}

/// Rationals travel as strings "p/q" (or "p").
inline json to_json(const Rat& r) { return to_string(r); }

inline Rat rat_from_json(const json& j) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  return rat_parse(j.get<std::string>());
}

inline json to_json(const JClass& c) {
  json a = json::array();
  for (const auto& p : c.pairings) a.push_back(to_json(p));
  return json{{"n", c.n}, {"k", c.k}, {"pairings", a}};
}

inline JClass jclass_from_json(const json& j) {
  JClass c;
  c.n = j.at("n").get<int>();
  c.k = j.at("k").get<int>();
  for (const auto& e : j.at("pairings")) c.pairings.push_back(rat_from_json(e));
  return c;
}

/// HLinearMap as {A: row-major rationals, c: rational}.
inline json to_json(const HLinearMap& l) {
  json a = json::array();
  for (const auto& row : l.A)
    for (const auto& e : row) a.push_back(to_json(e));
  return json{{"n", l.n}, {"A", a}, {"c", to_json(l.c)}};
}

inline HLinearMap hlinear_from_json(const json& j) {
  int n = j.at("n").get<int>();
  const auto& a = j.at("A");
  if (a.size() != std::size_t(4 * n * n))
    throw std::invalid_argument("HLinearMap JSON: A must have (2n)^2 entries");
  Mat m = zeros(2 * n, 2 * n);
  std::size_t idx = 0;
  for (int r = 0; r < 2 * n; ++r)
    for (int c = 0; c < 2 * n; ++c) m[r][c] = rat_from_json(a[idx++]);
  return HLinearMap(n, std::move(m), rat_from_json(j.at("c")));
}

/// Grids as {origin, spacing, counts}.
inline json to_json(const Grid& g) {
  return json{{"origin", g.origin}, {"spacing", g.spacing}, {"counts", g.counts}};
}

inline Grid grid_from_json(const json& j) {
  Grid g;
  g.origin = j.at("origin").get<std::vector<double>>();
  g.spacing = j.at("spacing").get<std::vector<double>>();
  g.counts = j.at("counts").get<std::vector<int>>();
  if (g.origin.size() != g.spacing.size() || g.origin.size() != g.counts.size())
    throw std::invalid_argument("grid JSON: mismatched lengths");
  return g;
}

/// Sampled graphs as JSON-lines {"w": [...], "phi": [...]}.
inline void write_samples_jsonl(std::ostream& os, const std::vector<std::vector<double>>& ws,
                                const std::vector<std::vector<double>>& vals) {
  for (std::size_t i = 0; i < ws.size(); ++i)
    os << json{{"w", ws[i]}, {"phi", vals[i]}}.dump() << "\n";
}

inline void read_samples_jsonl(std::istream& is, std::vector<std::vector<double>>& ws,
                               std::vector<std::vector<double>>& vals) {
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    ws.push_back(j.at("w").get<std::vector<double>>());
    vals.push_back(j.at("phi").get<std::vector<double>>());
  }
}

inline json to_json(const QuadratureSpec& q) {
  json box = json::array();
  for (const auto& [lo, hi] : q.box) box.push_back(json::array({lo, hi}));
  return json{{"box", box},
              {"points_per_axis", q.points_per_axis},
              {"panels", q.panels},
              {"rule", q.rule == QuadRule::gauss ? "gauss" : "midpoint"}};
}

inline QuadratureSpec quadspec_from_json(const json& j) {
  QuadratureSpec q;
  for (const auto& e : j.at("box")) q.box.emplace_back(e[0].get<double>(), e[1].get<double>());
  q.points_per_axis = j.value("points_per_axis", 32);
  q.panels = j.value("panels", 1);
  std::string rule = j.value("rule", std::string("gauss"));
  if (rule == "gauss")
    q.rule = QuadRule::gauss;
  else if (rule == "midpoint")
    q.rule = QuadRule::midpoint;
  else
    throw std::invalid_argument("quadrature rule must be gauss or midpoint");
  return q;
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

}  // namespace ruminlab
