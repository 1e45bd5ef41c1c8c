// Copyright 2026 The hodgecalc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "hodge/render.hpp"

#include <sstream>

namespace hodge {

Json validation_to_json(const ValidationReport& r) {
  return Json{{"ok", r.ok()}, {"errors", r.errors}, {"warnings", r.warnings}};
}

Json tables_to_json(const InvariantTables& t) {
  Json pts = Json::array();
  for (const auto& [x, pt] : t.points) {
    pts.push_back({{"at", x.str()},
                   {"nu", residue_table_to_json(pt.nu)},
                   {"mu_zero", graded_to_json(pt.mu_zero)},
                   {"omega", graded_to_json(pt.omega)},
                   {"omega_ss", graded_to_json(pt.omega_ss)},
                   {"omega_u", graded_to_json(pt.omega_u)},
                   {"kappa", graded_to_json(pt.kappa)},
                   {"omega_by_residue", residue_table_to_json(pt.omega_by_residue)}});
  }
  Json absent = Json::array();
  for (const auto& x : t.absent_points) absent.push_back(x.str());
  Json j = {{"points", pts},
            {"absent", absent},
            {"omega_not_infty", graded_to_json(t.omega_not_infty)}};
  if (t.complete()) {
    j["omega_total"] = graded_to_json(t.omega_total);
    j["omega"] = t.omega_scalar;
  } else {
    j["omega_total"] = "unknown";
    j["omega"] = "unknown";
  }
  return j;
}

Json tensor_to_json(const TensorGlobal& g, const BlockSet* infinity) {
  Json o = Json::object();
  for (const auto& [x, v] : g.o_terms) o[x.str()] = graded_to_json(v);
  Json j = {{"h", graded_to_json(g.h)},
            {"delta", g.delta ? graded_to_json(*g.delta) : Json("unknown")},
            {"o_terms", o}};
  if (infinity) j["infinity"] = blocks_to_json(*infinity);
  return Json{{"tensor", j}};
}

Json skyscraper_to_json(const Skyscraper& s) {
  return Json{{"c", format_rational(s.c)},
              {"q", s.q},
              {"epsilon", graded_to_json(s.epsilon)},
              {"verdict", "possible"}};
}

Json report_to_json(const ConvolutionReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.cross_checks) {
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"details", c.details}});
  }
  Json gen = Json::array();
  for (const auto& g : r.genericity) {
    gen.push_back({{"comparison", g.comparison}, {"coincident", g.coincident}});
  }
  Json body;
  body["result"] = module_to_json(r.result);
  body["punctual"] = r.punctual;
  body["skyscraper"] = r.skyscraper ? skyscraper_to_json(*r.skyscraper) : Json(nullptr);
  body["cross_checks"] = checks;
  body["genericity"] = gen;
  body["notes"] = r.notes;
  return Json{{"report", body}};
}

Json kunneth_to_json(const KunnethVerdict& k) {
  Json d = Json::array();
  for (const auto& x : k.degrees) d.push_back({{"l", x.l}, {"lhs", x.lhs}, {"rhs", x.rhs}});
  return Json{{"pass", k.pass}, {"degrees", d}};
}

std::string validation_to_text(const ValidationReport& r) {
  std::ostringstream s;
  s << (r.ok() ? "valid" : "invalid") << "\n";
  for (const auto& e : r.errors) s << "error: " << e << "\n";
  for (const auto& w : r.warnings) s << "warning: " << w << "\n";
  return s.str();
}

namespace {

std::string local_text(const LocalData& d) {
  if (const auto* b = std::get_if<BlockSet>(&d)) return b->str();
  if (const auto* a = std::get_if<Aggregate>(&d)) {
    std::ostringstream s;
    s << "nu:";
    for (const auto& [k, v] : a->nu_nonzero) s << " (" << k.p << "," << k.a.str() << ")=" << v;
    s << "  mu_0: " << a->mu_zero.str();
    return s.str();
  }
  return "unknown";
}

}  // namespace

std::string module_to_text(const ModuleData& m) {
  std::ostringstream s;
  s << "name   " << m.name << "\n";
  s << "h      " << m.h.str() << "\n";
  s << "delta  " << (m.delta ? m.delta->str() : "unknown") << "\n";
  if (m.h1par) s << "h1par  " << m.h1par->str() << "\n";
  for (const auto& [x, d] : m.points) {
    s << "  " << x.str() << " [" << local_kind(d) << "] " << local_text(d) << "\n";
  }
  return s.str();
}

std::string tables_to_text(const InvariantTables& t) {
  std::ostringstream s;
  for (const auto& [x, pt] : t.points) {
    s << "point " << x.str() << "\n";
    s << "  nu       ";
    for (const auto& [k, v] : pt.nu) s << " (" << k.p << "," << k.a.str() << ")=" << v;
    s << "\n  mu_0      " << pt.mu_zero.str() << "\n";
    s << "  omega     " << pt.omega.str() << "\n";
    s << "  omega_ss  " << pt.omega_ss.str() << "\n";
    s << "  omega_u   " << pt.omega_u.str() << "\n";
    s << "  kappa     " << pt.kappa.str() << "\n";
  }
  for (const auto& x : t.absent_points) s << "point " << x.str() << ": data absent\n";
  s << "omega_not_infty " << t.omega_not_infty.str() << "\n";
  if (t.complete()) {
    s << "omega_total     " << t.omega_total.str() << "\n";
    s << "omega           " << t.omega_scalar << "\n";
  }
  return s.str();
}

std::string tensor_to_text(const TensorGlobal& g, const BlockSet* infinity) {
  std::ostringstream s;
  s << "h      " << g.h.str() << "\n";
  s << "delta  " << (g.delta ? g.delta->str() : "unknown") << "\n";
  for (const auto& [x, v] : g.o_terms) s << "o_" << x.str() << "  " << v.str() << "\n";
  if (infinity) s << "inf    " << infinity->str() << "\n";
  return s.str();
}

std::string report_to_text(const ConvolutionReport& r) {
  std::ostringstream s;
  if (r.punctual) s << "punctual convolution\n";
  s << module_to_text(r.result);
  if (r.skyscraper) {
    s << "skyscraper c=" << format_rational(r.skyscraper->c) << " q=" << r.skyscraper->q
      << " (possible)\n";
  }
  for (const auto& c : r.cross_checks) {
    s << (c.pass ? "  ok   " : "  FAIL ") << c.name << ": " << c.details << "\n";
  }
  for (const auto& g : r.genericity) {
    s << "  generic? " << g.comparison << (g.coincident ? " COINCIDENT" : "") << "\n";
  }
  for (const auto& n : r.notes) s << "  note: " << n << "\n";
  return s.str();
}

}  // namespace hodge
