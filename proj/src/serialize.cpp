// Copyright 2026 The hodgecalc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "hodge/serialize.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace hodge {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  fail(ErrorKind::kParse, where + ": " + what);
}

void reject_unknown(const Json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  if (!obj.is_object()) bad(where, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) bad(where, "unknown field '" + key + "'");
  }
}

long long parse_integer_text(std::string_view s, const std::string& where) {
  long long v = 0;
  const char* first = s.data();
  if (!s.empty() && s.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || first == ptr) {
    bad(where, "malformed integer '" + std::string(s) + "'");
  }
  return v;
}

long long integer_of(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return j.get<long long>();
  if (j.is_string()) return parse_integer_text(j.get<std::string>(), where);
  bad(where, "expected an integer");
}

int degree_of(const Json& j, const std::string& where) {
  long long v = integer_of(j, where);
  if (v < -1000000 || v > 1000000) bad(where, "degree out of range");
  return static_cast<int>(v);
}

int degree_of_key(const std::string& key, const std::string& where) {
  long long v = parse_integer_text(key, where);
  if (v < -1000000 || v > 1000000) bad(where, "degree out of range");
  return static_cast<int>(v);
}

std::string string_of(const Json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "expected a string");
  return j.get<std::string>();
}

Residue residue_of(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Residue::parse(std::to_string(j.get<long long>()));
  return Residue::parse(string_of(j, where));
}

Count nonneg_of(const Json& j, const std::string& where) {
  long long v = integer_of(j, where);
  if (v < 0) bad(where, "negative multiplicity");
  return v;
}

Aggregate aggregate_from_json(const Json& j, const std::string& where) {
  reject_unknown(j, {"nu_nonzero", "mu_zero"}, where);
  Aggregate a;
  if (j.contains("nu_nonzero")) {
    for (const auto& e : j.at("nu_nonzero")) {
      reject_unknown(e, {"p", "a", "mult"}, where + ".nu_nonzero");
      Residue r = residue_of(e.at("a"), where);
      if (r.is_zero()) bad(where, "nu_nonzero entry with residue 0");
      table_add(a.nu_nonzero, r, degree_of(e.at("p"), where),
                nonneg_of(e.at("mult"), where));
    }
  }
  if (j.contains("mu_zero")) {
    for (const auto& e : j.at("mu_zero")) {
      reject_unknown(e, {"p", "mult"}, where + ".mu_zero");
      a.mu_zero.add(degree_of(e.at("p"), where), nonneg_of(e.at("mult"), where));
    }
  }
  return a;
}

Flags flags_from_json(const Json& j) {
  reject_unknown(j, {"irreducible", "nonconstant", "minimal_extension",
                     "irreducibility_waived"},
                 "flags");
  Flags f;
  auto get = [&](const char* key, bool& out) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_boolean()) bad("flags", std::string(key) + " must be boolean");
    out = j.at(key).get<bool>();
  };
  get("irreducible", f.irreducible);
  get("nonconstant", f.nonconstant);
  get("minimal_extension", f.minimal_extension);
  get("irreducibility_waived", f.irreducibility_waived);
  return f;
}

}  // namespace

GradedVector graded_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object degree -> integer");
  GradedVector g;
  std::set<int> seen;
  for (const auto& [key, value] : j.items()) {
    int p = degree_of_key(key, where);
    if (!seen.insert(p).second) bad(where, "duplicate degree " + key);
    g.add(p, integer_of(value, where));
  }
  return g;
}

BlockSet blocks_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "blocks must be an array");
  BlockSet b;
  for (const auto& e : j) {
    reject_unknown(e, {"p", "a", "l", "mult"}, where);
    long long l = integer_of(e.at("l"), where);
    if (l < 1 || l > 100000) bad(where, "block size must be >= 1");
    Count mult = e.contains("mult") ? nonneg_of(e.at("mult"), where) : 1;
    if (mult < 1) bad(where, "block multiplicity must be >= 1");
    b.add(degree_of(e.at("p"), where), residue_of(e.at("a"), where),
          static_cast<int>(l), mult);
  }
  return b;
}

ModuleData module_from_json(const Json& doc) {
  reject_unknown(doc, {"name", "h", "delta", "points", "h1par", "flags",
                       "annotations"},
                 "module");
  ModuleData m;
  try {
    m.name = doc.contains("name") ? string_of(doc.at("name"), "name") : "";
    if (!doc.contains("h")) bad("module", "missing field 'h'");
    m.h = graded_from_json(doc.at("h"), "h");
    if (doc.contains("delta")) {
      const Json& d = doc.at("delta");
      if (d.is_string() && d.get<std::string>() == "unknown") {
        m.delta.reset();
      } else {
        m.delta = graded_from_json(d, "delta");
      }
    } else {
      bad("module", "missing field 'delta' (use \"unknown\" for partial data)");
    }
    if (doc.contains("points")) {
      const Json& pts = doc.at("points");
      if (!pts.is_array()) bad("points", "expected an array");
      for (const auto& e : pts) {
        reject_unknown(e, {"at", "blocks", "aggregate", "unknown"}, "points");
        Point x = Point::parse(string_of(e.at("at"), "points.at"));
        std::string where = "point " + x.str();
        int forms = static_cast<int>(e.contains("blocks")) +
                    static_cast<int>(e.contains("aggregate")) +
                    static_cast<int>(e.contains("unknown"));
        if (forms != 1) bad(where, "exactly one of blocks/aggregate/unknown");
        LocalData data;
        if (e.contains("blocks")) {
          data = blocks_from_json(e.at("blocks"), where);
        } else if (e.contains("aggregate")) {
          data = aggregate_from_json(e.at("aggregate"), where);
        } else {
          if (!e.at("unknown").is_boolean() || !e.at("unknown").get<bool>()) {
            bad(where, "'unknown' must be true");
          }
          data = Absent{};
        }
        if (!m.points.emplace(x, std::move(data)).second) {
          bad("points", "duplicate point entry " + x.str());
        }
      }
    }
    if (doc.contains("h1par")) m.h1par = graded_from_json(doc.at("h1par"), "h1par");
    if (doc.contains("flags")) m.flags = flags_from_json(doc.at("flags"));
    if (doc.contains("annotations")) {
      const Json& a = doc.at("annotations");
      if (!a.is_object()) bad("annotations", "expected an object");
      for (const auto& [key, value] : a.items()) {
        m.annotations[key] = integer_of(value, "annotations");
      }
    }
  } catch (const Json::exception& e) {
    bad("module", e.what());
  }
  return m;
}

ModuleData parse_module(std::string_view document) {
  Json doc;
  try {
    doc = Json::parse(document);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::kParse, std::string("malformed JSON: ") + e.what());
  }
  return module_from_json(doc);
}

Json graded_to_json(const GradedVector& g) {
  Json j = Json::object();
  for (const auto& [p, v] : g.entries()) j[std::to_string(p)] = v;
  return j;
}

Json blocks_to_json(const BlockSet& b) {
  Json j = Json::array();
  for (const auto& blk : b.blocks()) {
    j.push_back({{"p", blk.p}, {"a", blk.a.str()}, {"l", blk.l}, {"mult", blk.mult}});
  }
  return j;
}

Json residue_table_to_json(const ResidueTable& t) {
  Json j = Json::array();
  for (const auto& [k, v] : t) {
    if (v != 0) j.push_back({{"p", k.p}, {"a", k.a.str()}, {"mult", v}});
  }
  return j;
}

Json aggregate_to_json(const Aggregate& a) {
  Json mu = Json::array();
  for (const auto& [p, v] : a.mu_zero.entries()) mu.push_back({{"p", p}, {"mult", v}});
  return Json{{"nu_nonzero", residue_table_to_json(a.nu_nonzero)}, {"mu_zero", mu}};
}

Json local_to_json(const Point& x, const LocalData& d) {
  Json j = {{"at", x.str()}};
  if (const auto* b = std::get_if<BlockSet>(&d)) {
    j["blocks"] = blocks_to_json(*b);
  } else if (const auto* a = std::get_if<Aggregate>(&d)) {
    j["aggregate"] = aggregate_to_json(*a);
  } else {
    j["unknown"] = true;
  }
  return j;
}

Json module_to_json(const ModuleData& m) {
  Json j;
  j["name"] = m.name;
  j["h"] = graded_to_json(m.h);
  j["delta"] = m.delta ? graded_to_json(*m.delta) : Json("unknown");
  Json pts = Json::array();
  for (const auto& [x, d] : m.points) pts.push_back(local_to_json(x, d));
  j["points"] = pts;
  if (m.h1par) j["h1par"] = graded_to_json(*m.h1par);
  j["flags"] = {{"irreducible", m.flags.irreducible},
                {"nonconstant", m.flags.nonconstant},
                {"minimal_extension", m.flags.minimal_extension},
                {"irreducibility_waived", m.flags.irreducibility_waived}};
  if (!m.annotations.empty()) {
    Json a = Json::object();
    for (const auto& [k, v] : m.annotations) a[k] = v;
    j["annotations"] = a;
  }
  return j;
}

std::string serialize_module(const ModuleData& m) {
  return module_to_json(m).dump(2) + "\n";
}

std::string normalize_document(std::string_view document) {
  return serialize_module(parse_module(document));
}

ModuleData read_module_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) fail(ErrorKind::kIo, "cannot read " + path);
  return parse_module(buf.str());
}

}  // namespace hodge
