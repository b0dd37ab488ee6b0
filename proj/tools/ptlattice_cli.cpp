// Command-line front end: discrete spectra, parameter sweeps, exceptional
// points, bound states and PT norms, scattering, perfect transmission,
// PT currents, Jost states, and the data tables behind the standard figures.
// Output is CSV (default) or JSON, deterministic byte-for-byte for a fixed
// configuration: stable orderings, floats at 12 significant digits.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ptlattice/ptlattice.hpp"

namespace {

using namespace ptlattice;
using json = nlohmann::json;

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (v == 0.0) return "0";  // normalize negative zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double round12(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(fmt(v).c_str(), nullptr);
}

struct Value {
  enum Kind { Num, Cpx, Str } kind;
  double num = 0.0;
  cplx z{};
  std::string str;
  Value(double v) : kind(Num), num(v) {}
  Value(int v) : kind(Num), num(v) {}
  Value(cplx v) : kind(Cpx), z(v) {}
  Value(std::string v) : kind(Str), str(std::move(v)) {}
  Value(const char* v) : kind(Str), str(v) {}
};

struct Table {
  std::string command;
  std::vector<std::pair<std::string, char>> cols;  // name, 'n' | 'c' | 's'
  std::vector<std::vector<Value>> rows;

  void col(const std::string& name, char kind) { cols.push_back({name, kind}); }
  void row(std::vector<Value> r) { rows.push_back(std::move(r)); }
};

void write_csv(const Table& t, std::ostream& os) {
  bool first = true;
  for (const auto& [name, kind] : t.cols) {
    if (!first) os << ',';
    first = false;
    if (kind == 'c')
      os << "re_" << name << ",im_" << name;
    else
      os << name;
  }
  os << '\n';
  for (const auto& r : t.rows) {
    first = true;
    for (size_t i = 0; i < r.size(); ++i) {
      if (!first) os << ',';
      first = false;
      switch (r[i].kind) {
        case Value::Num: os << fmt(r[i].num); break;
        case Value::Cpx: os << fmt(r[i].z.real()) << ',' << fmt(r[i].z.imag()); break;
        case Value::Str: os << r[i].str; break;
      }
    }
    os << '\n';
  }
}

void write_json(const Table& t, std::ostream& os) {
  json out;
  out["schema"] = "pt-lattice/1";
  out["command"] = t.command;
  json rows = json::array();
  for (const auto& r : t.rows) {
    json obj = json::object();
    for (size_t i = 0; i < r.size(); ++i) {
      const auto& [name, kind] = t.cols[i];
      switch (r[i].kind) {
        case Value::Num: obj[name] = round12(r[i].num); break;
        case Value::Cpx:
          obj[name] = {{"re", round12(r[i].z.real())}, {"im", round12(r[i].z.imag())}};
          break;
        case Value::Str: obj[name] = r[i].str; break;
      }
    }
    rows.push_back(std::move(obj));
  }
  out["rows"] = std::move(rows);
  os << out.dump(2) << '\n';
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> g(n);
  if (n == 1) {
    g[0] = lo;
    return g;
  }
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * double(i) / double(n - 1);
  return g;
}

void spectrum_columns(Table& t) {
  t.col("lambda", 'c');
  t.col("k", 'c');
  t.col("E", 'c');
  t.col("sheet", 's');
  t.col("class", 's');
}

void spectrum_row(std::vector<Value>& r, const SpectralPoint& pt) {
  r.emplace_back(pt.lambda);
  r.emplace_back(pt.k);
  r.emplace_back(pt.energy);
  r.emplace_back(to_string(pt.sheet));
  r.emplace_back(to_string(pt.cls));
}

Table cmd_spectrum(const ModelParams& p) {
  Table t;
  t.command = "spectrum";
  spectrum_columns(t);
  for (const auto& pt : solve_discrete_spectrum(p)) {
    std::vector<Value> r;
    spectrum_row(r, pt);
    t.row(std::move(r));
  }
  return t;
}

Table cmd_sweep(const ModelParams& p, SweepAxis axis, const std::string& axis_name,
                double lo, double hi, int n) {
  Table t;
  t.command = "sweep";
  t.col("axis", 's');
  t.col("value", 'n');
  t.col("branch", 'n');
  spectrum_columns(t);
  const auto grid = linspace(lo, hi, n);
  for (const auto& row : sweep_spectrum(p, axis, grid)) {
    std::vector<Value> r{axis_name, row.axis_value, row.branch};
    spectrum_row(r, row.point);
    t.row(std::move(r));
  }
  return t;
}

Table cmd_eps(const ModelParams& p, double lo, double hi, int n) {
  Table t;
  t.command = "eps";
  t.col("gamma_bar", 'n');
  t.col("e_bar", 'c');
  t.col("kind", 's');
  t.col("puiseux_coeff_abs", 'n');
  t.col("pair_count", 'n');
  for (const auto& ep : find_eps_general(p.eps0, p.eps1, {lo, hi}, n)) {
    t.row({ep.gamma_bar, ep.e_bar, to_string(ep.kind), std::abs(ep.puiseux_coeff),
           ep.pair_count});
  }
  return t;
}

Table cmd_bound(const ModelParams& p, bool norms_only) {
  Table t;
  t.command = norms_only ? "ptnorm" : "bound";
  t.col("lambda", 'n');
  t.col("kappa", 'n');
  t.col("delta", 'n');
  t.col("energy", 'n');
  if (!norms_only) {
    t.col("B", 'c');
    t.col("C", 'c');
    t.col("theta", 'n');
    t.col("kind", 's');
  }
  t.col("n_pt", 'n');
  t.col("c_eigenvalue", 'n');
  for (const auto& s : find_bound_states(p)) {
    const bool has_norm = !s.is_virtual();
    if (norms_only && !has_norm) continue;
    double n_pt = std::numeric_limits<double>::quiet_NaN();
    int c_eig = 0;
    if (has_norm) {
      const auto rec = pt_norm(s);
      n_pt = rec.n_pt;
      c_eig = rec.c_eigenvalue;
    }
    std::vector<Value> r{s.lambda(), s.kappa, s.delta, s.energy()};
    if (!norms_only) {
      r.emplace_back(s.b_coeff);
      r.emplace_back(s.c_coeff);
      r.emplace_back(s.theta);
      r.emplace_back(s.is_virtual() ? "virtual" : "bound");
    }
    r.emplace_back(n_pt);
    r.emplace_back(c_eig);
    t.row(std::move(r));
  }
  return t;
}

Table cmd_scatter(const ModelParams& p, double k, Direction dir) {
  const auto s = solve_scattering(p, k, dir);
  Table t;
  t.command = "scatter";
  t.col("k", 'n');
  t.col("direction", 's');
  for (const char* name : {"A", "B", "C", "D", "psi0", "t", "r"}) t.col(name, 'c');
  t.col("T", 'n');
  t.col("R", 'n');
  t.row({k, to_string(dir), s.A, s.B, s.C, s.D, s.psi0, s.t, s.r, s.T, s.R});
  return t;
}

Table cmd_perfect(const ModelParams& p, Direction dir) {
  Table t;
  t.command = "perfect";
  t.col("ktilde", 'n');
  t.col("gamma_independent", 'n');
  t.col("T", 'n');
  t.col("R", 'n');
  t.col("invisible", 'n');
  t.col("phase_shift", 'n');
  t.col("response", 'c');
  const auto set = perfect_transmission(p, dir);
  for (double kt : set.ktildes) {
    bool gindep = false;
    for (double g : set.gamma_independent) gindep = gindep || g == kt;
    const auto s = solve_scattering(p, kt, dir);
    const bool invisible = std::abs(s.t - 1.0) < 1e-10;
    const cplx response = s.psi0 / (dir == Direction::LtoR ? s.A : s.D);
    t.row({kt, int(gindep), s.T, s.R, int(invisible), std::arg(s.t), response});
  }
  return t;
}

Table cmd_ptcurrent(const ModelParams& p, double k, Direction dir) {
  const auto s = solve_scattering(p, k, dir);
  const auto w = s.wave();
  Table t;
  t.command = "ptcurrent";
  t.col("bond", 'n');
  t.col("j_std", 'n');
  t.col("j_pt", 'c');
  for (int bond = -6; bond <= 5; ++bond)
    t.row({bond, standard_current(w, bond), pt_current(w, bond)});
  return t;
}

Table cmd_jost(const ModelParams& p, double k) {
  if (std::abs(p.eps0) > 1e-14 || std::abs(p.eps1) > 1e-14)
    throw precondition_error("jost: requires eps0 = eps1 = 0");
  const auto [j, w] = jost_pt_state(p.gamma, k);
  Table t;
  t.command = "jost";
  t.col("gamma", 'n');
  t.col("k", 'n');
  t.col("alpha_plus", 'c');
  t.col("alpha_minus", 'c');
  t.col("f0_plus", 'c');
  t.col("f0_minus", 'c');
  t.col("F_plus", 'n');
  t.col("F_minus", 'n');
  t.col("A_plus", 'c');
  t.col("A_minus", 'c');
  t.row({p.gamma, k, j.alpha_plus, j.alpha_minus, j.f0_plus, j.f0_minus, j.F_plus, j.F_minus,
         j.A_plus, j.A_minus});
  return t;
}

Table figure_fig3() {
  Table t;
  t.command = "figure";
  t.col("gamma", 'n');
  t.col("branch", 'n');
  t.col("E", 'c');
  t.col("k", 'c');
  for (const auto& row :
       sweep_spectrum({0.0, 0.0, 0.0}, SweepAxis::Gamma, linspace(0.0, 3.0, 600)))
    t.row({row.axis_value, row.branch, row.point.energy, row.point.k});
  return t;
}

Table figure_fig4() {
  Table t;
  t.command = "figure";
  t.col("eps1", 'n');
  t.col("gamma", 'n');
  t.col("branch", 'n');
  t.col("E", 'c');
  t.col("k", 'c');
  for (double e1 : {0.2, 0.6})
    for (const auto& row :
         sweep_spectrum({0.0, e1, 0.0}, SweepAxis::Gamma, linspace(0.0, 3.0, 600)))
      t.row({e1, row.axis_value, row.branch, row.point.energy, row.point.k});
  return t;
}

Table figure_fig5() {
  // RIC wavenumber trajectories: k+ heads to pi/2, k- reaches the band edge at
  // eps1 = 1/2 and splits into a bound/virtual pair (complex k = pi +- i kappa)
  Table t;
  t.command = "figure";
  t.col("eps1", 'n');
  t.col("branch", 's');
  t.col("gamma_ric", 'n');
  t.col("k", 'c');
  for (double e1 : linspace(0.0, 1.5, 151)) {
    const auto rg = ric_gammas(e1);
    const auto plus = describe_ric({0.0, e1, rg.gamma_plus});
    for (double k : plus.wavenumbers) t.row({e1, "plus", rg.gamma_plus, cplx(k, 0.0)});
    if (std::isnan(rg.gamma_minus)) continue;
    if (rg.minus_valid) {
      const auto minus = describe_ric({0.0, e1, rg.gamma_minus});
      for (double k : minus.wavenumbers) t.row({e1, "minus", rg.gamma_minus, cplx(k, 0.0)});
    } else {
      for (const auto& pt : solve_discrete_spectrum({0.0, e1, rg.gamma_minus}))
        if (pt.lambda.imag() == 0.0 && pt.lambda.real() < 0.0)
          t.row({e1, pt.k.imag() > 0.0 ? "minus_bound" : "minus_virtual", rg.gamma_minus,
                 pt.k});
    }
  }
  return t;
}

Table figure_fig6() {
  Table t;
  t.command = "figure";
  t.col("gamma", 'n');
  t.col("branch", 'n');
  t.col("lambda", 'c');
  t.col("unbroken_bound_pair", 'n');
  const auto grid = linspace(0.0, 1.0, 501);
  const auto rows = sweep_spectrum({0.05, -1.1, 0.0}, SweepAxis::Gamma, grid);
  // the real bound pair in (0,1) merges at Gamma ~ 0.448 (Fig. 6 caption: 0.45)
  std::map<double, int> real_unit_pairs;
  for (const auto& row : rows)
    if (row.point.lambda.imag() == 0.0 && 0.0 < row.point.lambda.real() &&
        row.point.lambda.real() < 1.0)
      real_unit_pairs[row.axis_value]++;
  for (const auto& row : rows)
    t.row({row.axis_value, row.branch, row.point.lambda,
           real_unit_pairs[row.axis_value] == 2 ? 1 : 0});
  return t;
}

Table figure_fig7() {
  struct Case {
    const char* name;
    ModelParams p;
    Direction dir;
  };
  const Case cases[] = {
      {"a", {0.0, 0.0, 0.0}, Direction::LtoR},
      {"b", {0.0, 0.0, 0.0}, Direction::RtoL},
      {"c", {0.0, 0.08, 0.0}, Direction::LtoR},
      {"d", {-0.1, 0.0, 0.0}, Direction::LtoR},
  };
  Table t;
  t.command = "figure";
  t.col("case", 's');
  t.col("gamma", 'n');
  t.col("kind", 's');
  t.col("k", 'c');
  for (const auto& c : cases) {
    for (double g : linspace(0.0, 3.0, 301)) {
      ModelParams p = c.p;
      p.gamma = g;
      for (double kt : perfect_transmission(p, c.dir).ktildes)
        t.row({c.name, g, "perfect", cplx(kt, 0.0)});
      for (const auto& pt : solve_discrete_spectrum(p))
        t.row({c.name, g, "spectrum", pt.k});
    }
  }
  return t;
}

Table figure_fig8() {
  Table t;
  t.command = "figure";
  t.col("k", 'n');
  t.col("gamma", 'n');
  t.col("jpt_over_B2", 'n');
  const int nk = 240, ng = 100;
  for (int i = 0; i < nk; ++i) {
    const double k = -pi + (2.0 * i + 1.0) * pi / nk;  // midpoints avoid 0, +-pi/2, pi
    for (int j = 1; j <= ng; ++j) {
      const double g = 5.0 * double(j) / ng;
      double v = std::numeric_limits<double>::quiet_NaN();
      try {
        const auto s = solve_scattering({0.0, 0.0, g}, k, Direction::LtoR);
        if (std::norm(s.B) > 0.0)
          v = pt_current(s.wave(), 2).real() / std::norm(s.B);
      } catch (const error&) {
      }
      t.row({k, g, v});
    }
  }
  return t;
}

Table cmd_figure(const std::string& which) {
  if (which == "fig3") return figure_fig3();
  if (which == "fig4") return figure_fig4();
  if (which == "fig5") return figure_fig5();
  if (which == "fig6") return figure_fig6();
  if (which == "fig7") return figure_fig7();
  if (which == "fig8") return figure_fig8();
  throw precondition_error("figure: unknown figure id (fig3..fig8)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PT-symmetric tight-binding defect chain: spectra, exceptional points, "
               "scattering, and PT currents"};
  app.set_config("--config");

  double eps0 = 0.0, eps1 = 0.0, gamma = 0.0, k = 0.0;
  double lo = 0.0, hi = 3.0;
  int n = 601;
  std::string direction = "lr", axis = "gamma", format = "csv", out_path, figure_id;

  app.add_option("--eps0", eps0, "on-site energy at x = 0");
  app.add_option("--eps1", eps1, "on-site energy at x = +-1");
  app.add_option("--gamma", gamma, "gain/loss strength");
  app.add_option("--k", k, "wavenumber in (-pi, pi), k != 0");
  app.add_option("--direction", direction, "incidence direction")
      ->check(CLI::IsMember({"lr", "rl"}));
  app.add_option("--axis", axis, "sweep axis")->check(CLI::IsMember({"gamma", "eps0", "eps1"}));
  app.add_option("--min", lo, "grid lower bound");
  app.add_option("--max", hi, "grid upper bound");
  app.add_option("--n", n, "grid size")->check(CLI::PositiveNumber);
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out_path, "output path (default stdout)");

  app.require_subcommand(1);
  const char* names[] = {"spectrum", "sweep",  "eps",       "bound", "scatter",
                         "perfect",  "ptnorm", "ptcurrent", "jost",  "figure"};
  const char* descs[] = {"discrete spectrum at fixed parameters",
                         "spectrum swept along one parameter axis",
                         "exceptional points on a gamma interval",
                         "bound and virtual bound states with PT data",
                         "scattering solution at fixed k",
                         "perfect-transmission wavenumbers",
                         "PT norms of the bound states",
                         "standard and PT currents per bond",
                         "PT-symmetric scattering state via Jost solutions",
                         "data table behind one of the standard figures"};
  for (size_t i = 0; i < std::size(names); ++i) {
    auto* sub = app.add_subcommand(names[i], descs[i]);
    sub->fallthrough();
    if (std::string(names[i]) == "figure")
      sub->add_option("id", figure_id, "fig3..fig8")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  }

  const bool needs_k = app.got_subcommand("scatter") || app.got_subcommand("ptcurrent") ||
                       app.got_subcommand("jost");
  if (needs_k && app.count("--k") == 0) {
    std::cerr << "usage error: this subcommand requires --k\n";
    return 2;
  }
  if ((app.got_subcommand("sweep") || app.got_subcommand("eps")) && hi < lo) {
    std::cerr << "usage error: --min must not exceed --max\n";
    return 2;
  }

  try {
    const ModelParams params{eps0, eps1, gamma};
    if (!params.finite()) throw precondition_error("parameters must be finite");
    Table t;
    if (app.got_subcommand("spectrum")) t = cmd_spectrum(params);
    else if (app.got_subcommand("sweep")) {
      const SweepAxis ax = axis == "gamma" ? SweepAxis::Gamma
                          : axis == "eps0" ? SweepAxis::Eps0
                                           : SweepAxis::Eps1;
      t = cmd_sweep(params, ax, axis, lo, hi, n);
    } else if (app.got_subcommand("eps")) t = cmd_eps(params, lo, hi, n);
    else if (app.got_subcommand("bound")) t = cmd_bound(params, false);
    else if (app.got_subcommand("ptnorm")) t = cmd_bound(params, true);
    else if (app.got_subcommand("scatter"))
      t = cmd_scatter(params, k, direction == "lr" ? Direction::LtoR : Direction::RtoL);
    else if (app.got_subcommand("perfect"))
      t = cmd_perfect(params, direction == "lr" ? Direction::LtoR : Direction::RtoL);
    else if (app.got_subcommand("ptcurrent"))
      t = cmd_ptcurrent(params, k, direction == "lr" ? Direction::LtoR : Direction::RtoL);
    else if (app.got_subcommand("jost")) t = cmd_jost(params, k);
    else if (app.got_subcommand("figure")) t = cmd_figure(figure_id);

    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!out_path.empty()) {
      file.open(out_path, std::ios::binary);
      if (!file) throw precondition_error("cannot open output path: " + out_path);
      os = &file;
    }
    if (format == "json")
      write_json(t, *os);
    else
      write_csv(t, *os);
    return 0;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
