// Command-line front end: every subcommand prints a reproducibility header
// (version, seed, invocation) and supports --json for machine-readable
// output. Exit codes: 0 success, 1 domain error, 2 usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "ruminlab/ruminlab.hpp"

using namespace ruminlab;
using nlohmann::json;

namespace {

struct CommonOpts {
  bool json_out = false;
  std::uint64_t seed = 0;
};

void print_header(const CommonOpts& c, const std::string& invocation) {
  if (c.json_out) return;
  std::cout << "# ruminlab " << kVersion << " seed=" << c.seed << " cmd: " << invocation << "\n";
}

std::string join_args(int argc, char** argv) {
  std::string s;
  for (int i = 1; i < argc; ++i) {
    if (i > 1) s += " ";
    s += argv[i];
  }
  return s;
}

/// Polynomial in W-coordinates parsed from ambient variable names; variables
/// x_1..x_k are rejected (they do not exist on W).
Polynomial parse_w_polynomial(const std::string& text, const Splitting& s) {
  ExprValue v = parse_expression(text, s.n);
  Polynomial amb(2 * s.n + 1);
  if (std::holds_alternative<Rat>(v))
    amb = Polynomial(2 * s.n + 1, std::get<Rat>(v));
  else if (std::holds_alternative<Polynomial>(v))
    amb = std::get<Polynomial>(v);
  else
    throw std::invalid_argument("expected a polynomial expression");
  Polynomial out(w_dim(s));
  for (const auto& [e, c] : amb.terms) {
    std::vector<int> we(w_dim(s), 0);
    for (int v2 = 0; v2 < amb.nvars; ++v2) {
      if (e[v2] == 0) continue;
      if (v2 < s.k)
        throw std::invalid_argument("variable x" + std::to_string(v2 + 1) +
                                    " does not exist on W");
      if (v2 < s.n)
        we[v2 - s.k] = e[v2];
      else if (v2 < 2 * s.n)
        we[(s.n - s.k) + (v2 - s.n)] = e[v2];
      else
        we[w_dim(s) - 1] = e[v2];
    }
    out.add_term(std::move(we), c);
  }
  return out;
}

GraphFunction load_phi(const std::string& path) {
  json j = load_json_file(path);
  Splitting s(j.at("n").get<int>(), j.at("k").get<int>());
  std::vector<Polynomial> comps;
  for (const auto& e : j.at("phi")) comps.push_back(parse_w_polynomial(e.get<std::string>(), s));
  return GraphFunction::make_symbolic(s, std::move(comps));
}

std::shared_ptr<const WindowSpec> load_window(const json& j, int n) {
  auto w = std::make_shared<WindowSpec>();
  for (const auto& e : j.at("radii")) w->radii.push_back(rat_from_json(e));
  if (static_cast<int>(w->radii.size()) != 2 * n + 1)
    throw std::invalid_argument("window radii must have 2n+1 entries");
  return w;
}

TestForm load_omega(const std::string& path, int n) {
  json j = load_json_file(path);
  ExprValue v = parse_expression(j.at("core").get<std::string>(), n);
  PolyForm core;
  if (std::holds_alternative<PolyForm>(v))
    core = std::get<PolyForm>(v);
  else if (std::holds_alternative<CoVector>(v))
    core = polyform_from_covector(std::get<CoVector>(v));
  else
    throw std::invalid_argument("omega core must be a form expression");
  return make_test_form(core, load_window(j.at("window"), n));
}

std::string ijr_string(const RuminBasisElement& e) {
  auto set = [](const std::vector<int>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "}";
  };
  return "I=" + set(e.I) + " J=" + set(e.J) + " R=" + to_string(e.R);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ruminlab: exact Rumin-complex algebra and intrinsic-graph numerics on H^n"};
  app.require_subcommand(1);
  CommonOpts common;
  app.add_flag("--json", common.json_out, "machine-readable JSON output");
  app.add_option("--seed", common.seed, "seed for randomized commands (default 0, echoed)");

  // ---- basis ----
  auto* basis_cmd = app.add_subcommand("basis", "basis of J^{2n+1-k}");
  int b_n = 2, b_k = 2;
  basis_cmd->add_option("--n", b_n, "group index")->required();
  basis_cmd->add_option("--k", b_k, "codimension")->required();

  // ---- tableaux ----
  auto* tab_cmd = app.add_subcommand("tableaux", "standard Young tableaux on {1..m}");
  int t_m = 3, t_l = 2;
  tab_cmd->add_option("--m", t_m, "number of entries")->required();
  tab_cmd->add_option("--l", t_l, "length of row 1")->required();

  // ---- dcheck ----
  auto* dchk_cmd = app.add_subcommand("dcheck", "verify D∘d = 0 and d∘D = 0 on random forms");
  int dc_n = 1, dc_trials = 20, dc_deg = 3;
  dchk_cmd->add_option("--n", dc_n)->required();
  dchk_cmd->add_option("--trials", dc_trials);
  dchk_cmd->add_option("--coeff-degree", dc_deg);

  // ---- rumin-apply ----
  auto* ra_cmd = app.add_subcommand("rumin-apply", "apply d_C to a form expression");
  int ra_n = 1;
  std::string ra_expr;
  ra_cmd->add_option("--n", ra_n)->required();
  ra_cmd->add_option("--expr", ra_expr, "form literal")->required();

  // ---- pairing-table ----
  auto* pt_cmd = app.add_subcommand("pairing-table", "canonical pairings of X_1..X_{a+b} Y_1..Y_a T");
  int pt_a = 1, pt_b = 0, pt_n = 2;
  pt_cmd->add_option("--a", pt_a)->required();
  pt_cmd->add_option("--b", pt_b)->required();
  pt_cmd->add_option("--n", pt_n)->required();

  // ---- census ----
  auto* cen_cmd = app.add_subcommand("census", "tangency census for a J-class");
  int cen_n = 2, cen_k = 2;
  long cen_trials = 100000;
  std::string cen_zeta;
  cen_cmd->add_option("--n", cen_n)->required();
  cen_cmd->add_option("--k", cen_k)->required();
  cen_cmd->add_option("--zeta", cen_zeta, "JSON vector of rationals, or @file")->required();
  cen_cmd->add_option("--trials", cen_trials);

  // ---- normalize ----
  auto* nor_cmd = app.add_subcommand("normalize", "symplectic normal form of a subspace");
  int nor_n = 2;
  std::string nor_rows;
  bool nor_vertical = false;
  nor_cmd->add_option("--n", nor_n)->required();
  nor_cmd->add_option("--plane", nor_rows, "JSON rows of rationals, or @file")->required();
  nor_cmd->add_flag("--vertical", nor_vertical, "treat as vertical plane containing T");

  // ---- lip ----
  auto* lip_cmd = app.add_subcommand("lip", "intrinsic Lipschitz estimate of samples");
  int lip_n = 1, lip_k = 1;
  std::string lip_in;
  lip_cmd->add_option("--n", lip_n)->required();
  lip_cmd->add_option("--k", lip_k)->required();
  lip_cmd->add_option("--in", lip_in, "JSON-lines samples {w, phi}")->required();

  // ---- extend ----
  auto* ext_cmd = app.add_subcommand("extend", "extend a sampled graph to a grid");
  int ext_n = 1, ext_k = 1;
  std::string ext_in, ext_grid, ext_out;
  double ext_beta = 0, ext_eps = 0;
  ext_cmd->add_option("--n", ext_n)->required();
  ext_cmd->add_option("--k", ext_k)->required();
  ext_cmd->add_option("--in", ext_in, "JSON-lines samples")->required();
  ext_cmd->add_option("--grid", ext_grid, "grid JSON {origin,spacing,counts}")->required();
  ext_cmd->add_option("--out", ext_out, "output JSON-lines")->required();
  ext_cmd->add_option("--beta", ext_beta);
  ext_cmd->add_option("--eps", ext_eps);

  // ---- blowup ----
  auto* blo_cmd = app.add_subcommand("blowup", "blow-up convergence report");
  std::string blo_phi, blo_wbar, blo_radii = "1,2,4,8,16";
  blo_cmd->add_option("--phi", blo_phi, "phi JSON file {n,k,phi:[...]}")->required();
  blo_cmd->add_option("--wbar", blo_wbar, "comma-separated rationals")->required();
  blo_cmd->add_option("--radii", blo_radii, "comma-separated rationals");

  // ---- current ----
  auto* cur_cmd = app.add_subcommand("current", "evaluate the Heisenberg current of a graph");
  std::string cur_phi, cur_omega, cur_quad;
  double cur_cnk = 0;
  long cur_mc = 200000;
  cur_cmd->add_option("--phi", cur_phi)->required();
  cur_cmd->add_option("--omega", cur_omega)->required();
  cur_cmd->add_option("--quad", cur_quad, "quadrature spec JSON")->required();
  cur_cmd->add_option("--cnk", cur_cnk, "C_{n,k} override (default: estimate)");
  cur_cmd->add_option("--cnk-samples", cur_mc);

  // ---- boundary ----
  auto* bnd_cmd = app.add_subcommand("boundary", "evaluate the boundary current");
  std::string bnd_phi, bnd_omega, bnd_quad;
  double bnd_cnk = 0;
  long bnd_mc = 200000;
  bnd_cmd->add_option("--phi", bnd_phi)->required();
  bnd_cmd->add_option("--omega", bnd_omega)->required();
  bnd_cmd->add_option("--quad", bnd_quad)->required();
  bnd_cmd->add_option("--cnk", bnd_cnk);
  bnd_cmd->add_option("--cnk-samples", bnd_mc);

  // ---- cnk ----
  auto* cnk_cmd = app.add_subcommand("cnk", "estimate the constant C_{n,k}");
  int cnk_n = 1, cnk_k = 1;
  std::string cnk_metric = "d-infinity";
  long cnk_samples = 400000;
  cnk_cmd->add_option("--n", cnk_n)->required();
  cnk_cmd->add_option("--k", cnk_k)->required();
  cnk_cmd->add_option("--metric", cnk_metric, "d-infinity | koranyi");
  cnk_cmd->add_option("--samples", cnk_samples);

  // ---- area-check ----
  auto* ac_cmd = app.add_subcommand("area-check", "area formula cross-check");
  std::string ac_phi, ac_window, ac_quad;
  double ac_cnk = 0;
  long ac_mc = 200000;
  ac_cmd->add_option("--phi", ac_phi)->required();
  ac_cmd->add_option("--window", ac_window, "window JSON {radii:[...]} or @file")->required();
  ac_cmd->add_option("--quad", ac_quad)->required();
  ac_cmd->add_option("--cnk", ac_cnk);
  ac_cmd->add_option("--cnk-samples", ac_mc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto inline_or_file = [](const std::string& s) -> json {
    if (!s.empty() && s[0] == '@') return load_json_file(s.substr(1));
    return json::parse(s);
  };

  try {
    print_header(common, join_args(argc, argv));

    if (*basis_cmd) {
      auto basis = basis_J(b_n, b_k);
      if (common.json_out) {
        json arr = json::array();
        for (const auto& e : basis)
          arr.push_back({{"I", e.I},
                         {"J", e.J},
                         {"R1", e.R.row1},
                         {"R2", e.R.row2},
                         {"covector", to_string(e.covector)}});
        std::cout << json{{"n", b_n}, {"k", b_k}, {"dim", basis.size()}, {"basis", arr}}.dump(2)
                  << "\n";
      } else {
        for (const auto& e : basis)
          std::cout << to_string(e.covector) << "    # " << ijr_string(e) << "\n";
        std::cout << "# dim J^" << (2 * b_n + 1 - b_k) << " in H^" << b_n << " = " << basis.size()
                  << "\n";
      }
    } else if (*tab_cmd) {
      std::vector<int> elems(t_m);
      for (int i = 0; i < t_m; ++i) elems[i] = i + 1;
      auto ts = syt_enumerate(elems, t_l);
      if (common.json_out) {
        json arr = json::array();
        for (const auto& t : ts) arr.push_back({{"row1", t.row1}, {"row2", t.row2}});
        std::cout << json{{"m", t_m}, {"l", t_l}, {"count", ts.size()}, {"tableaux", arr}}.dump(2)
                  << "\n";
      } else {
        for (const auto& t : ts) std::cout << to_string(t) << "\n";
        std::cout << "# count = " << ts.size() << " (hook-length " << syt_count(t_m, t_l)
                  << ")\n";
      }
    } else if (*dchk_cmd) {
      std::mt19937_64 rng(common.seed);
      std::uniform_int_distribution<int> coeff(-3, 3);
      int nv = 2 * dc_n + 1;
      auto rand_poly = [&]() {
        Polynomial p(nv);
        for (int t = 0; t < 4; ++t) {
          std::vector<int> e(nv, 0);
          int deg = std::uniform_int_distribution<int>(0, dc_deg)(rng);
          for (int d = 0; d < deg; ++d) e[std::uniform_int_distribution<int>(0, nv - 1)(rng)]++;
          p.add_term(std::move(e), Rat(coeff(rng)));
        }
        return p;
      };
      int ok = 0;
      for (int t = 0; t < dc_trials; ++t) {
        // D(d(random degree n-1 form)) and d(D(random horizontal degree-n form))
        PolyForm low(dc_n, dc_n - 1);
        for (IndexMask m = 0; m <= full_mask(2 * dc_n + 1); ++m)
          if (grade_of(m) == dc_n - 1) low.add_term(m, rand_poly());
        PolyForm mid(dc_n, dc_n);
        for (IndexMask m = 0; m <= full_mask(2 * dc_n); ++m)
          if (grade_of(m) == dc_n && !(m >> (2 * dc_n))) mid.add_term(m, rand_poly());
        bool good = rumin_D(d_C(low)).is_zero() && exterior_d(rumin_D(mid)).is_zero();
        ok += good;
      }
      if (common.json_out)
        std::cout << json{{"n", dc_n}, {"trials", dc_trials}, {"ok", ok}}.dump() << "\n";
      else
        std::cout << (ok == dc_trials ? "OK" : "FAIL") << ": D∘d=0, d∘D=0 (" << ok << "/"
                  << dc_trials << " exact)\n";
      if (ok != dc_trials) return 1;
    } else if (*ra_cmd) {
      ExprValue v = parse_expression(ra_expr, ra_n);
      PolyForm f;
      if (std::holds_alternative<PolyForm>(v))
        f = std::get<PolyForm>(v);
      else if (std::holds_alternative<CoVector>(v))
        f = polyform_from_covector(std::get<CoVector>(v));
      else
        throw std::invalid_argument("rumin-apply: expression must be a form");
      PolyForm out = d_C(f);
      if (common.json_out)
        std::cout << json{{"n", ra_n}, {"degree", f.degree}, {"d_C", to_string(out)}}.dump()
                  << "\n";
      else
        std::cout << to_string(out) << "\n";
    } else if (*pt_cmd) {
      auto table = canonical_pairing_table(pt_a, pt_b, pt_n);
      json arr = json::array();
      for (const auto& [e, val] : table) {
        if (common.json_out)
          arr.push_back({{"I", e.I}, {"J", e.J}, {"R1", e.R.row1}, {"R2", e.R.row2},
                         {"pairing", to_string(val)}});
        else
          std::cout << ijr_string(e) << "  ->  " << to_string(val) << "\n";
      }
      if (common.json_out)
        std::cout << json{{"a", pt_a}, {"b", pt_b}, {"n", pt_n}, {"table", arr}}.dump(2) << "\n";
    } else if (*cen_cmd) {
      json zj = inline_or_file(cen_zeta);
      JClass zeta{cen_n, cen_k, {}};
      for (const auto& e : zj) zeta.pairings.push_back(rat_from_json(e));
      auto res = tangency_census(cen_n, cen_k, zeta, cen_trials, common.seed);
      if (common.json_out) {
        json planes = json::array();
        for (const auto& p : res.planes) {
          json rows = json::array();
          for (const auto& r : p.basis) {
            json row = json::array();
            for (const auto& c : r) row.push_back(to_json(c));
            rows.push_back(row);
          }
          planes.push_back(rows);
        }
        std::cout << json{{"planes", planes}, {"hits", res.hits}, {"trials", res.trials}}.dump(2)
                  << "\n";
      } else {
        std::cout << "hits " << res.hits << "/" << res.trials << ", planes: " << res.planes.size()
                  << "\n";
        for (const auto& p : res.planes)
          std::cout << "  tangent " << to_string(plane_tangent(p)) << "\n";
      }
    } else if (*nor_cmd) {
      json rows = inline_or_file(nor_rows);
      Mat m;
      for (const auto& r : rows) {
        Vec row;
        for (const auto& c : r) row.push_back(rat_from_json(c));
        m.push_back(std::move(row));
      }
      PlaneSpan plane(nor_n, std::move(m));
      NormalizeResult nr =
          nor_vertical ? canonicalize_vertical_plane(plane) : symplectic_normalize(plane);
      json out{{"a", nr.a}, {"b", nr.b}, {"map", to_json(nr.map)},
               {"valid", validate(nr.map)}};
      std::cout << (common.json_out ? out.dump(2) : out.dump()) << "\n";
    } else if (*lip_cmd) {
      std::ifstream in(lip_in);
      if (!in) throw std::runtime_error("cannot open " + lip_in);
      std::vector<std::vector<double>> ws, vals;
      read_samples_jsonl(in, ws, vals);
      double est = lip_constant_estimate(Splitting(lip_n, lip_k), ws, vals);
      if (common.json_out)
        std::cout << json{{"estimate", est}, {"samples", ws.size()}}.dump() << "\n";
      else
        std::cout << "lip estimate (lower bound): " << est << " over " << ws.size()
                  << " samples\n";
    } else if (*ext_cmd) {
      std::ifstream in(ext_in);
      if (!in) throw std::runtime_error("cannot open " + ext_in);
      std::vector<std::vector<double>> ws, vals;
      read_samples_jsonl(in, ws, vals);
      Grid grid = grid_from_json(load_json_file(ext_grid));
      ExtendParams pr;
      pr.beta = ext_beta;
      pr.eps = ext_eps;
      GraphFunction ext = extend(Splitting(ext_n, ext_k), ws, vals, grid, pr);
      std::ofstream out(ext_out);
      write_samples_jsonl(out, grid_nodes(ext.grid), ext.values);
      double lip_in_est = ws.size() >= 2
                              ? lip_constant_estimate(Splitting(ext_n, ext_k), ws, vals)
                              : 0.0;
      double lip_out_est = lip_constant_estimate(ext, {});
      json rep{{"grid_points", ext.grid.size()},
               {"lip_in", lip_in_est},
               {"lip_out", lip_out_est},
               {"out", ext_out}};
      std::cout << (common.json_out ? rep.dump(2) : rep.dump()) << "\n";
    } else if (*blo_cmd) {
      GraphFunction phi = load_phi(blo_phi);
      auto parse_rats = [](const std::string& s) {
        std::vector<Rat> out;
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) out.push_back(rat_parse(tok));
        return out;
      };
      auto rep = blowup_probe(phi, parse_rats(blo_wbar), parse_rats(blo_radii));
      json dists = json::array();
      for (auto [r, d] : rep.dists) dists.push_back({{"r", r}, {"dist", d}});
      json out{{"dists", dists}};
      if (common.json_out)
        std::cout << out.dump(2) << "\n";
      else
        for (auto [r, d] : rep.dists) std::cout << "r=" << r << "  sup-dist=" << d << "\n";
    } else if (*cur_cmd || *bnd_cmd) {
      bool is_boundary = static_cast<bool>(*bnd_cmd);
      GraphFunction phi = load_phi(is_boundary ? bnd_phi : cur_phi);
      const Splitting& s = phi.split;
      TestForm omega = load_omega(is_boundary ? bnd_omega : cur_omega, s.n);
      QuadratureSpec q = quadspec_from_json(load_json_file(is_boundary ? bnd_quad : cur_quad));
      double cnk = is_boundary ? bnd_cnk : cur_cnk;
      if (cnk <= 0)
        cnk = estimate_Cnk(s.n, s.k, Metric{}, is_boundary ? bnd_mc : cur_mc, common.seed).value;
      double value = is_boundary ? boundary_eval(phi, omega, q, cnk)
                                 : eval_graph_current(phi, omega, q, cnk);
      QuadratureSpec qc = q;
      qc.points_per_axis = std::max(q.points_per_axis / 2, 2);
      double coarse = is_boundary ? boundary_eval(phi, omega, qc, cnk)
                                  : eval_graph_current(phi, omega, qc, cnk);
      json out{{"value", value}, {"est_error", std::abs(value - coarse)}, {"cnk", cnk}};
      std::cout << (common.json_out ? out.dump(2) : out.dump()) << "\n";
    } else if (*cnk_cmd) {
      auto est = estimate_Cnk(cnk_n, cnk_k, metric_from_tag(cnk_metric), cnk_samples, common.seed);
      json out{{"n", cnk_n}, {"k", cnk_k}, {"metric", cnk_metric},
               {"value", est.value}, {"ci95", est.ci}};
      std::cout << (common.json_out ? out.dump(2) : out.dump()) << "\n";
    } else if (*ac_cmd) {
      GraphFunction phi = load_phi(ac_phi);
      auto win = load_window(inline_or_file(ac_window), phi.split.n);
      QuadratureSpec q = quadspec_from_json(load_json_file(ac_quad));
      double cnk = ac_cnk;
      if (cnk <= 0) cnk = estimate_Cnk(phi.split.n, phi.split.k, Metric{}, ac_mc, common.seed).value;
      auto rep = area_cross_check(phi, *win, q, cnk);
      json out{{"minors_route", rep.minors_route},
               {"norm_route", rep.norm_route},
               {"pairing_dev", rep.pairing_dev},
               {"rel_dev", rep.rel_dev},
               {"cnk", cnk}};
      std::cout << (common.json_out ? out.dump(2) : out.dump()) << "\n";
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
