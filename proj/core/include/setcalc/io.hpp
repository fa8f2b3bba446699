#pragma once

#include <iosfwd>
#include <string>

#include "setcalc/class_pair.hpp"
#include "setcalc/completion.hpp"
#include "setcalc/envelope.hpp"
#include "setcalc/gradient.hpp"
#include "setcalc/metric.hpp"

namespace setcalc {

// CSV function format: one header line
//   # grid a=<a> b=<b> n=<n> lip=<L> bound=<M>
// followed by one `index,x,value,is_jump` row per node. Doubles are
// printed with 17 significant digits, so write -> read reproduces every
// finite double bit-exactly (the x column is derived and ignored by the
// reader).
void write_fn_csv(std::ostream& os, const SampledFn& f);
SampledFn read_fn_csv(std::istream& is);

// {grid:{a,b,n}, lower:[...], upper:[...], jumps:[...]}. The reader
// re-derives lip and bound from the samples.
std::string class_to_json(const ClassPair& f);
ClassPair class_from_json(const std::string& text);

std::string metric_report_json(const MetricReport& r);
std::string envelope_family_json(const EnvelopeFamily& fam);
std::string closure_diagnostic_json(const ClosureDiagnostic& d);

// Self-contained bundle: the element skeleton references per-level
// functions by key into its own "functions" map.
std::string tower_element_json(const TowerElement& e);

// Plot rows `x,lower,upper`, one per node; the two endpoints separate
// exactly at the field's jump nodes (vertical segments of the graph).
void write_grad_csv(std::ostream& os, const GradientField& g);

}  // namespace setcalc
