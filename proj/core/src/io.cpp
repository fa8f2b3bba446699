#include "setcalc/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "setcalc/errors.hpp"

namespace setcalc {

namespace {

using nlohmann::json;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json grid_json(const Grid1D& g) {
  return json{{"a", g.a}, {"b", g.b}, {"n", g.n}};
}

Grid1D grid_from(const json& j) {
  return Grid1D(j.at("a").get<double>(), j.at("b").get<double>(),
                j.at("n").get<int>());
}

json fn_json(const SampledFn& f) {
  return json{{"grid", grid_json(f.grid)},
              {"values", f.values},
              {"jumps", f.jumps},
              {"lip", f.lip},
              {"bound", f.bound}};
}

}  // namespace

void write_fn_csv(std::ostream& os, const SampledFn& f) {
  os << "# grid a=" << num(f.grid.a) << " b=" << num(f.grid.b)
     << " n=" << f.grid.n << " lip=" << num(f.lip)
     << " bound=" << num(f.bound) << "\n";
  for (int i = 0; i < f.n(); ++i) {
    os << i << ',' << num(f.grid.x(i)) << ','
       << num(f.values[static_cast<std::size_t>(i)]) << ','
       << (f.is_jump(i) ? 1 : 0) << "\n";
  }
}

SampledFn read_fn_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw BadConfig("empty function CSV");
  double a = 0, b = 0, lip = 0, bound = 0;
  int n = 0;
  if (std::sscanf(line.c_str(), "# grid a=%lf b=%lf n=%d lip=%lf bound=%lf",
                  &a, &b, &n, &lip, &bound) != 5)
    throw BadConfig("bad function CSV header: " + line);
  Grid1D grid(a, b, n);
  std::vector<double> values(static_cast<std::size_t>(n));
  std::vector<int> jumps;
  int seen = 0;
  while (seen < n && std::getline(is, line)) {
    if (line.empty()) continue;
    const char* p = line.c_str();
    char* end = nullptr;
    const long idx = std::strtol(p, &end, 10);
    if (end == p || *end != ',' || idx != seen)
      throw BadConfig("bad row index in function CSV: " + line);
    p = end + 1;
    std::strtod(p, &end);  // derived x column, ignored
    if (end == p || *end != ',') throw BadConfig("bad x in CSV row: " + line);
    p = end + 1;
    const double v = std::strtod(p, &end);
    if (end == p || *end != ',')
      throw BadConfig("bad value in CSV row: " + line);
    p = end + 1;
    const long flag = std::strtol(p, &end, 10);
    if (end == p || (flag != 0 && flag != 1))
      throw BadConfig("bad is_jump flag in CSV row: " + line);
    values[static_cast<std::size_t>(seen)] = v;
    if (flag == 1) jumps.push_back(seen);
    ++seen;
  }
  if (seen != n) throw BadConfig("function CSV ended before n rows");
  return SampledFn(grid, std::move(values), std::move(jumps), lip, bound);
}

std::string class_to_json(const ClassPair& f) {
  json j{{"grid", grid_json(f.grid())},
         {"lower", f.lower.values},
         {"upper", f.upper.values},
         {"jumps", f.jumps()}};
  return j.dump();
}

ClassPair class_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
    Grid1D grid = grid_from(j.at("grid"));
    std::vector<double> lower = j.at("lower").get<std::vector<double>>();
    std::vector<double> upper = j.at("upper").get<std::vector<double>>();
    std::vector<int> jumps = j.at("jumps").get<std::vector<int>>();
    SampledFn lo = SampledFn::inferred(grid, std::move(lower), jumps);
    SampledFn hi = SampledFn::inferred(grid, std::move(upper), std::move(jumps));
    return ClassPair(std::move(lo), std::move(hi));
  } catch (const json::exception& e) {
    throw BadConfig(std::string("malformed class JSON: ") + e.what());
  }
}

std::string metric_report_json(const MetricReport& r) {
  json per = json::array();
  for (const PerKTerm& t : r.per_k)
    per.push_back(json{{"k", t.k}, {"lower", t.lower_term}, {"upper", t.upper_term}});
  json dirs = json::array();
  for (const auto& d : r.directions) dirs.push_back(d);
  json j{{"value", r.value},
         {"per_k", per},
         {"truncation_bound", r.truncation_bound},
         {"directions", dirs}};
  return j.dump();
}

std::string envelope_family_json(const EnvelopeFamily& fam) {
  json lowers = json::array(), uppers = json::array();
  for (const SampledFn& f : fam.lowers) lowers.push_back(fn_json(f));
  for (const SampledFn& f : fam.uppers) uppers.push_back(fn_json(f));
  json j{{"source", json::parse(class_to_json(fam.source))},
         {"ks", fam.ks},
         {"lowers", lowers},
         {"uppers", uppers},
         {"gaps", fam.gaps}};
  return j.dump();
}

std::string closure_diagnostic_json(const ClosureDiagnostic& d) {
  json j{{"stage_dists", d.stage_dists},
         {"stage_gaps", d.stage_gaps},
         {"converged", d.converged},
         {"in_domain_hint", d.in_domain_hint}};
  return j.dump();
}

std::string tower_element_json(const TowerElement& e) {
  json pairs = json::array();
  json fns = json::object();
  for (int n = 0; n < e.depth(); ++n) {
    const std::string lo = "L" + std::to_string(n) + "-";
    const std::string hi = "L" + std::to_string(n) + "+";
    pairs.push_back(json{{"level", n}, {"lower_ref", lo}, {"upper_ref", hi}});
    fns[lo] = fn_json(e.pairs[static_cast<std::size_t>(n)].lower);
    fns[hi] = fn_json(e.pairs[static_cast<std::size_t>(n)].upper);
  }
  json j{{"depth", e.depth()},
         {"pairs", pairs},
         {"gap", e.gap},
         {"tail", e.tail},
         {"functions", fns}};
  return j.dump();
}

void write_grad_csv(std::ostream& os, const GradientField& g) {
  if (g.m() != 1)
    throw DimensionMismatch("plot CSV is defined for scalar fields");
  const ClassPair& c = g.component(0);
  os << "# x,lower,upper\n";
  for (int i = 0; i < c.n(); ++i) {
    os << num(c.grid().x(i)) << ','
       << num(c.lower.values[static_cast<std::size_t>(i)]) << ','
       << num(c.upper.values[static_cast<std::size_t>(i)]) << "\n";
  }
}

}  // namespace setcalc
