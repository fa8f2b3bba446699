#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "algebra.hpp"
#include "setcalc/catalog.hpp"
#include "setcalc/completion.hpp"
#include "setcalc/envelope.hpp"
#include "setcalc/errors.hpp"
#include "setcalc/gradient.hpp"
#include "setcalc/io.hpp"
#include "setcalc/metric.hpp"
#include "setcalc/polyline.hpp"
#include "setcalc/verify.hpp"

namespace {

using namespace setcalc;

// All numeric output funnels through one shape-preserving format so
// identical configurations produce byte-identical files.
std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct RunConfig {
  double a = -1.0, b = 1.0;
  int n = 2001;
  std::vector<double> ks;
  int dirs = 64;
  double tol = 0.0;  // 0 = derive from grid and Lipschitz data
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 2026;
  bool no2d = false;

  std::string grid_spec;  // raw --grid value, parsed in grid()

  Grid1D grid() const {
    double ga = a, gb = b;
    int gn = n;
    if (!grid_spec.empty()) {
      char extra;
      if (std::sscanf(grid_spec.c_str(), "%lf,%lf,%d%c", &ga, &gb, &gn, &extra) != 3)
        throw BadConfig("--grid expects 'a,b,n', got '" + grid_spec + "'");
    }
    if (gn < 16) throw BadConfig("grids below n = 16 are not supported");
    if (!(ga < gb)) throw BadConfig("--grid needs a < b");
    return Grid1D(ga, gb, gn);
  }

  std::vector<double> schedule() const {
    if (ks.empty()) return default_k_schedule();
    for (double k : ks)
      if (!(k > 0.0)) throw BadConfig("--ks entries must be positive");
    return ks;
  }
};

void add_common(CLI::App* sub, RunConfig& rc) {
  sub->add_option("--grid", rc.grid_spec, "domain as a,b,n (default -1,1,2001)");
  sub->add_option("--n", rc.n, "node count shorthand, keeps a and b");
  sub->add_option("--ks", rc.ks, "moduli schedule for metrics")->expected(-1);
  sub->add_option("--dirs", rc.dirs, "direction count for vector reductions");
  sub->add_option("--tol", rc.tol, "absolute tolerance floor for reports");
  sub->add_option("--out", rc.out, "output file (grad: path prefix)");
  sub->add_option("--format", rc.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--seed", rc.seed, "seed for randomized suites");
}

void write_to(const std::string& path,
              const std::function<void(std::ostream&)>& body) {
  if (path.empty()) {
    body(std::cout);
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw BadConfig("cannot open output file '" + path + "'");
  body(os);
}

// ------------------------------------------------------------ envelope

int run_envelope(const RunConfig& rc, const std::string& fn, double k) {
  if (!(k > 0.0)) throw BadConfig("--k must be positive");
  const Grid1D grid = rc.grid();
  const CatalogEntry e = make_catalog_entry(fn, grid);
  const SampledFn lo = lip_lower_envelope(e.fn.lower, k);
  const SampledFn hi = lip_upper_envelope(e.fn.upper, k);
  const double gap = graph_hausdorff(lo, hi);

  write_to(rc.out, [&](std::ostream& os) {
    if (rc.format == "json") {
      os << "{\"fn\":\"" << fn << "\",\"k\":" << num(k)
         << ",\"gap\":" << num(gap)
         << ",\"tol_rep\":" << num(e.fn.tol_rep())
         << ",\"grid\":{\"a\":" << num(grid.a) << ",\"b\":" << num(grid.b)
         << ",\"n\":" << grid.n << "},\"f\":[";
      for (int i = 0; i < grid.n; ++i)
        os << (i ? "," : "") << num(e.fn.lower.values[i]);
      os << "],\"lower\":[";
      for (int i = 0; i < grid.n; ++i)
        os << (i ? "," : "") << num(lo.values[i]);
      os << "],\"upper\":[";
      for (int i = 0; i < grid.n; ++i)
        os << (i ? "," : "") << num(hi.values[i]);
      os << "]}\n";
    } else {
      os << "# grid a=" << num(grid.a) << " b=" << num(grid.b)
         << " n=" << grid.n << "\n";
      os << "# fn=" << fn << " k=" << num(k) << " gap=" << num(gap)
         << " tol_rep=" << num(e.fn.tol_rep()) << "\n";
      os << "index,x,f,lower,upper\n";
      for (int i = 0; i < grid.n; ++i)
        os << i << ',' << num(grid.x(i)) << ',' << num(e.fn.lower.values[i])
           << ',' << num(lo.values[i]) << ',' << num(hi.values[i]) << "\n";
    }
  });
  if (!rc.out.empty()) std::cout << "gap " << num(gap) << "\n";
  return 0;
}

// -------------------------------------------------------------- metric

int run_metric(const RunConfig& rc, const std::string& which,
               const std::string& fn1, const std::string& fn2) {
  if (which != "s" && which != "r")
    throw BadConfig("--which must be s or r");
  const Grid1D grid = rc.grid();
  const CatalogEntry e1 = make_catalog_entry(fn1, grid);
  const CatalogEntry e2 = make_catalog_entry(fn2, grid);
  const std::vector<double> ks = rc.schedule();
  const MetricReport r = which == "s" ? s_metric(e1.fn, e2.fn, ks)
                                      : r_metric(e1.fn, e2.fn, ks);
  const double trunc_floor = rc.tol > 0.0 ? rc.tol : 1e-6;
  const bool trunc_ok =
      r.truncation_bound < std::max(0.1 * r.value, trunc_floor);

  write_to(rc.out, [&](std::ostream& os) {
    os << "{\"which\":\"" << which << "\",\"fn1\":\"" << fn1
       << "\",\"fn2\":\"" << fn2 << "\",\"report\":" << metric_report_json(r)
       << ",\"truncation_acceptable\":" << (trunc_ok ? "true" : "false")
       << ",\"tolerances\":{\"tol_rep_fn1\":" << num(e1.fn.tol_rep())
       << ",\"tol_rep_fn2\":" << num(e2.fn.tol_rep())
       << ",\"grid_h\":" << num(grid.h()) << "}}\n";
  });
  return 0;
}

// --------------------------------------------------------------- value

int run_value(const RunConfig& rc, const std::string& fn, double x) {
  const Grid1D grid = rc.grid();
  const CatalogEntry e = make_catalog_entry(fn, grid);
  const IntervalValue v = value_at(e.fn, x);
  write_to(rc.out, [&](std::ostream& os) {
    os << "{\"fn\":\"" << fn << "\",\"x\":" << num(x) << ",\"lo\":" << num(v.lo)
       << ",\"hi\":" << num(v.hi) << ",\"width\":" << num(v.width())
       << ",\"tol_rep\":" << num(e.fn.tol_rep()) << "}\n";
  });
  return 0;
}

// ---------------------------------------------------------------- grad

int run_grad(const RunConfig& rc, const std::string& mode,
             const std::string& arg) {
  const Grid1D grid = rc.grid();
  std::optional<GradientField> field;
  std::optional<ClosureDiagnostic> diag;
  double tol_grad = 0.0;

  if (mode == "clarke") {
    const CatalogEntry e = make_catalog_entry(arg, grid);
    field = clarke_gradient(e.fn.lower);
    tol_grad = slope_tol(e.fn);
  } else if (mode == "closure") {
    const CatalogEntry e = make_catalog_entry(arg, grid);
    tol_grad = slope_tol(e.fn);
    const ClosureResult res =
        closure_gradient(e.fn.lower, SmoothingSchedule::standard(grid), rc.schedule());
    diag = res.diag;
    if (res.field) field = *res.field;
  } else if (mode == "algebra") {
    cli::AlgebraResult ar = cli::eval_algebra(arg, grid);
    tol_grad = slope_tol(ar.fn);
    field = std::move(ar.grad);
  } else {
    throw BadConfig("--mode must be clarke, closure or algebra");
  }

  const auto emit_json = [&](std::ostream& os) {
    os << "{\"mode\":\"" << mode << "\",\"arg\":\"" << arg
       << "\",\"tol_grad\":" << num(tol_grad) << ",\"field\":";
    if (field)
      os << class_to_json(field->component(0));
    else
      os << "null";
    if (diag) os << ",\"diagnostic\":" << closure_diagnostic_json(*diag);
    os << "}\n";
  };
  const auto emit_csv = [&](std::ostream& os) { write_grad_csv(os, *field); };

  if (!rc.out.empty()) {
    write_to(rc.out + ".json", emit_json);
    if (field) write_to(rc.out + ".csv", emit_csv);
  } else if (rc.format == "json" || !field) {
    emit_json(std::cout);
  } else {
    emit_csv(std::cout);
  }
  return field ? 0 : 4;
}

// ------------------------------------------------------------ complete

int run_complete(const RunConfig& rc, const std::string& fn, double eps,
                 const std::string& metric_name, int levels) {
  const Grid1D grid = rc.grid();
  const LipschitzTower::Metric metric =
      metric_name == "graph-integral" ? LipschitzTower::Metric::graph_integral
                                      : LipschitzTower::Metric::graph;
  if (metric_name != "graph" && metric_name != "graph-integral")
    throw BadConfig("--metric must be graph or graph-integral");
  const LipschitzTower tower(grid, metric, levels);
  const CatalogEntry e = make_catalog_entry(fn, grid);
  const TowerElement elem = class_element(tower, e.fn);

  std::optional<SampledFn> approx;
  try {
    approx = density_approx(tower, elem, eps);
  } catch (const PrecisionUnreachable&) {
  }

  write_to(rc.out, [&](std::ostream& os) {
    os << "{\"fn\":\"" << fn << "\",\"eps\":" << num(eps)
       << ",\"levels\":" << levels << ",\"element\":" << tower_element_json(elem);
    if (approx) {
      int level = 0;
      while (level < tower.depth() && !tower.in_level(*approx, level)) ++level;
      const TowerElement back = embed(tower, *approx);
      const double dist =
          rho_tilde(tower, back, elem) + rho_tilde_tail(back, elem);
      os << ",\"approx\":{\"level_k\":" << num(tower.level_k(level))
         << ",\"distance\":" << num(dist) << ",\"values\":[";
      for (std::size_t i = 0; i < approx->values.size(); ++i)
        os << (i ? "," : "") << num(approx->values[i]);
      os << "]}";
    } else {
      os << ",\"approx\":null";
    }
    os << "}\n";
  });
  return approx ? 0 : 4;
}

// -------------------------------------------------------------- verify

int run_verify(const RunConfig& rc, const std::string& suite) {
  SuiteConfig cfg;
  cfg.grid = rc.grid();
  cfg.seed = rc.seed;
  cfg.dirs = rc.dirs;
  cfg.demo2d = !rc.no2d;
  const std::vector<SuiteReport> reports = run_suites(suite, cfg);

  bool all = true;
  std::ostringstream text;
  for (const SuiteReport& rep : reports) {
    int passed = 0;
    for (const SuiteCheck& c : rep.checks) {
      passed += c.pass;
      text << (c.pass ? "[PASS] " : "[FAIL] ") << rep.suite << '/' << c.name
           << " measured=" << num(c.measured) << " tol=" << num(c.tol);
      if (!c.note.empty()) text << "  (" << c.note << ")";
      text << "\n";
    }
    text << "suite " << rep.suite << ": " << passed << '/' << rep.checks.size()
         << " checks passed\n";
    all = all && rep.all_pass;
  }
  text << (all ? "verify: all suites passed\n" : "verify: FAILURES above\n");
  std::cout << text.str();

  if (!rc.out.empty()) {
    write_to(rc.out, [&](std::ostream& os) {
      os << "{\"suites\":[";
      for (std::size_t i = 0; i < reports.size(); ++i) {
        const SuiteReport& rep = reports[i];
        os << (i ? "," : "") << "{\"suite\":\"" << rep.suite
           << "\",\"all_pass\":" << (rep.all_pass ? "true" : "false")
           << ",\"checks\":[";
        for (std::size_t j = 0; j < rep.checks.size(); ++j) {
          const SuiteCheck& c = rep.checks[j];
          os << (j ? "," : "") << "{\"name\":\"" << c.name
             << "\",\"pass\":" << (c.pass ? "true" : "false")
             << ",\"measured\":" << num(c.measured) << ",\"tol\":" << num(c.tol)
             << ",\"note\":\"" << c.note << "\"}";
        }
        os << "]}";
      }
      os << "],\"all_pass\":" << (all ? "true" : "false") << "}\n";
    });
  }
  return all ? 0 : 1;
}

// ------------------------------------------------------------- catalog

int run_catalog(const RunConfig& rc) {
  const Grid1D grid = rc.grid();
  write_to(rc.out, [&](std::ostream& os) {
    if (rc.format == "json") {
      os << "[";
      bool first = true;
      for (const std::string& name : catalog_names()) {
        const CatalogEntry e = make_catalog_entry(name, grid);
        os << (first ? "" : ",") << "{\"name\":\"" << name
           << "\",\"lip\":" << num(std::max(e.fn.lower.lip, e.fn.upper.lip))
           << ",\"bound\":" << num(e.fn.lower.bound)
           << ",\"jumps\":" << e.fn.jumps().size()
           << ",\"closed_gradient\":" << (e.has_closed_gradient ? "true" : "false")
           << "}";
        first = false;
      }
      os << "]\n";
    } else {
      os << "name,lip,bound,jumps,closed_gradient\n";
      for (const std::string& name : catalog_names()) {
        const CatalogEntry e = make_catalog_entry(name, grid);
        os << name << ',' << num(std::max(e.fn.lower.lip, e.fn.upper.lip))
           << ',' << num(e.fn.lower.bound) << ',' << e.fn.jumps().size() << ','
           << (e.has_closed_gradient ? 1 : 0) << "\n";
      }
    }
  });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"set-valued calculus over sampled functions"};
  app.require_subcommand(1);
  app.set_config("--config")->envname("SETCALC_CONFIG");

  RunConfig rc;

  std::string fn_name, fn2_name, which = "s", mode = "clarke", suite = "all";
  std::string metric_name = "graph";
  double k = 4.0, x = 0.0, eps = 0.05;
  int levels = 12;

  CLI::App* c_env = app.add_subcommand("envelope", "Lipschitz envelope pair of a catalog function");
  c_env->add_option("--fn", fn_name, "catalog entry")->required();
  c_env->add_option("--k", k, "Lipschitz modulus")->required();
  add_common(c_env, rc);

  CLI::App* c_met = app.add_subcommand("metric", "graph distance between two classes");
  c_met->add_option("--which", which, "s or r");
  c_met->add_option("fn1", fn_name, "first entry")->required();
  c_met->add_option("fn2", fn2_name, "second entry")->required();
  add_common(c_met, rc);

  CLI::App* c_val = app.add_subcommand("value", "set value of a class at a point");
  c_val->add_option("--fn", fn_name, "catalog entry")->required();
  c_val->add_option("--x", x, "evaluation point")->required();
  add_common(c_val, rc);

  CLI::App* c_grad = app.add_subcommand("grad", "set-valued derivative of an entry or expression");
  c_grad->add_option("--mode", mode, "clarke, closure or algebra");
  c_grad->add_option("fn", fn_name, "entry name, or expression in algebra mode")->required();
  add_common(c_grad, rc);

  CLI::App* c_comp = app.add_subcommand("complete", "tower embedding and density approximation");
  c_comp->add_option("--fn", fn_name, "catalog entry")->required();
  c_comp->add_option("--eps", eps, "target approximation error");
  c_comp->add_option("--metric", metric_name, "graph or graph-integral");
  c_comp->add_option("--levels", levels, "tower depth");
  add_common(c_comp, rc);

  CLI::App* c_ver = app.add_subcommand("verify", "run property suites");
  c_ver->add_option("--suite", suite, "core, envelope, metric, gradient, completion or all");
  c_ver->add_flag("--no-2d", rc.no2d, "skip the two-variable demo");
  add_common(c_ver, rc);

  CLI::App* c_cat = app.add_subcommand("catalog", "list shipped functions");
  add_common(c_cat, rc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (c_env->parsed()) return run_envelope(rc, fn_name, k);
    if (c_met->parsed()) return run_metric(rc, which, fn_name, fn2_name);
    if (c_val->parsed()) return run_value(rc, fn_name, x);
    if (c_grad->parsed()) return run_grad(rc, mode, fn_name);
    if (c_comp->parsed()) return run_complete(rc, fn_name, eps, metric_name, levels);
    if (c_ver->parsed()) return run_verify(rc, suite);
    if (c_cat->parsed()) return run_catalog(rc);
  } catch (const UnknownFunction& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const BadConfig& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const PrecisionUnreachable& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
