// Copyright 2026 The hodgecalc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "hodge/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hodge/convolution.hpp"
#include "hodge/hypergeometric.hpp"
#include "hodge/render.hpp"
#include "hodge/selfcheck.hpp"

namespace hodge {

namespace {

struct Context {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
  bool json = false;
};

ModuleData load(Context& ctx, const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << ctx.in.rdbuf();
    return parse_module(buf.str());
  }
  return read_module_file(path);
}

ModuleData load_valid(Context& ctx, const std::string& path) {
  ModuleData m = load(ctx, path);
  require_valid(m);
  return m;
}

void emit(Context& ctx, const Json& j, const std::string& text) {
  if (ctx.json) {
    ctx.out << j.dump(2) << "\n";
  } else {
    ctx.out << text;
  }
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::kValidation: return 1;
    case ErrorKind::kPrecondition: return 2;
    default: return 3;
  }
}

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::kValidation: return "validation";
    case ErrorKind::kPrecondition: return "precondition";
    case ErrorKind::kParse: return "parse";
    default: return "io";
  }
}

// Refuse to print a result that does not validate.
int emit_report(Context& ctx, const ConvolutionReport& r, const Json& extra) {
  if (!r.punctual) {
    ValidationReport v = validate_module(r.result);
    if (!v.ok()) {
      ctx.err << "error: convolution result fails validation\n" << validation_to_text(v);
      return 1;
    }
  }
  Json j = report_to_json(r);
  for (const auto& [k, v] : extra.items()) j["report"][k] = v;
  std::string text = report_to_text(r);
  if (extra.contains("kunneth")) {
    text += std::string("  kunneth: ") + (extra["kunneth"]["pass"].get<bool>() ? "pass" : "FAIL") + "\n";
  }
  emit(ctx, j, text);
  if (!r.checks_pass()) {
    ctx.err << "error: report cross-checks failed\n";
    return 1;
  }
  return 0;
}

std::pair<Rational, int> parse_skyscraper(const std::string& s) {
  auto comma = s.rfind(',');
  if (comma == std::string::npos) fail(ErrorKind::kParse, "--skyscraper expects c,q");
  Rational q = parse_rational(s.substr(comma + 1));
  if (!is_integer(q)) fail(ErrorKind::kParse, "--skyscraper: q must be an integer");
  return {parse_rational(s.substr(0, comma)),
          static_cast<int>(boost::multiprecision::numerator(q))};
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
            std::ostream& err) {
  Context ctx{in, out, err};
  std::string format = "text";
  if (const char* env = std::getenv("HODGECALC_FORMAT")) format = env;

  CLI::App app{"Exact calculus for numerical Hodge data under middle convolution"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", format, "output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));

  std::string file_a, file_b;
  std::optional<std::string> shift, sky, mu_text;
  bool assume_none = false, near_one = false, allow_nongeneric = false;
  int hyper_m = 1;
  std::string hyper_a;
  int cases = 50;
  std::uint64_t seed = 1;

  auto* validate = app.add_subcommand("validate", "validate a module descriptor");
  validate->add_option("module", file_a)->required();
  auto* derive = app.add_subcommand("derive", "print derived invariant tables");
  derive->add_option("module", file_a)->required();
  auto* tensor = app.add_subcommand("tensor", "global data of a tensor product");
  tensor->add_option("V", file_a)->required();
  tensor->add_option("L", file_b)->required();
  tensor->add_option("--shift", shift, "relocate L along y -> t - y");
  auto* convolve = app.add_subcommand("convolve", "middle convolution report");
  convolve->add_option("V", file_a)->required();
  convolve->add_option("L", file_b)->required();
  auto* sky_opt = convolve->add_option("--skyscraper", sky, "declared skyscraper c,q");
  convolve->add_flag("--assume-no-skyscraper", assume_none)->excludes(sky_opt);
  auto* kummer = app.add_subcommand("kummer", "convolution with a Kummer module");
  kummer->add_option("V", file_a)->required();
  auto* mu_opt = kummer->add_option("--mu", mu_text, "Kummer residue p/q");
  kummer->add_flag("--near-one", near_one, "closed forms for mu near 1")->excludes(mu_opt);
  kummer->add_flag("--allow-nongeneric", allow_nongeneric, "waive the genericity check");
  auto* h1par = app.add_subcommand("h1par", "Hodge numbers of parabolic cohomology");
  h1par->add_option("module", file_a)->required();
  auto* hyper = app.add_subcommand("hyper", "hypergeometric descriptor");
  hyper->add_option("--m", hyper_m, "rank")->required();
  hyper->add_option("--a", hyper_a, "residue at infinity")->required();
  auto* selfcheck = app.add_subcommand("selfcheck", "randomized property suite");
  selfcheck->add_option("--cases", cases)->check(CLI::PositiveNumber);
  selfcheck->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 3;
  }
  ctx.json = format == "json";

  try {
    if (validate->parsed()) {
      ModuleData m = load(ctx, file_a);
      ValidationReport r = validate_module(m);
      emit(ctx, validation_to_json(r), validation_to_text(r));
      for (const auto& e : r.errors) err << "error: " << e << "\n";
      return r.ok() ? 0 : 1;
    }
    if (derive->parsed()) {
      InvariantTables t = derive_tables(load_valid(ctx, file_a));
      emit(ctx, tables_to_json(t), tables_to_text(t));
      return 0;
    }
    if (tensor->parsed()) {
      ModuleData v = load_valid(ctx, file_a), l = load_valid(ctx, file_b);
      std::optional<Rational> t;
      if (shift) t = parse_rational(*shift);
      TensorGlobal g = tensor_global(v, l, t);
      std::optional<BlockSet> inf;
      auto iv = v.points.find(Point::infinity()), il = l.points.find(Point::infinity());
      if (iv != v.points.end() && il != l.points.end() &&
          std::holds_alternative<BlockSet>(iv->second) &&
          std::holds_alternative<BlockSet>(il->second)) {
        inf = tensor_at_infinity(v, l);
      }
      emit(ctx, tensor_to_json(g, inf ? &*inf : nullptr),
           tensor_to_text(g, inf ? &*inf : nullptr));
      return 0;
    }
    if (convolve->parsed()) {
      ModuleData v = load_valid(ctx, file_a), l = load_valid(ctx, file_b);
      SkyscraperMode mode = SkyscraperUnspecified{};
      if (assume_none) mode = AssumeNoSkyscraper{};
      if (sky) {
        auto [c, q] = parse_skyscraper(*sky);
        mode = DeclaredSkyscraper{c, q};
      }
      ConvolutionReport r = middle_convolution(v, l, mode);
      return emit_report(ctx, r, Json{{"kunneth", kunneth_to_json(kunneth_check(v, l, r))}});
    }
    if (kummer->parsed()) {
      ModuleData v = load_valid(ctx, file_a);
      if (!mu_text && !near_one) fail(ErrorKind::kParse, "kummer needs --mu p/q or --near-one");
      KummerParameter p = NearOne{};
      if (mu_text) p = Residue::parse(*mu_text);
      ConvolutionReport r = kummer_mc(
          v, p, allow_nongeneric ? GenericityPolicy::kWaive : GenericityPolicy::kEnforce);
      return emit_report(ctx, r, Json::object());
    }
    if (h1par->parsed()) {
      GradedVector g = h1par_hodge(load_valid(ctx, file_a));
      emit(ctx, Json{{"h1par", graded_to_json(g)}}, "h1par " + g.str() + "\n");
      return 0;
    }
    if (hyper->parsed()) {
      ModuleData m = make_hypergeometric({hyper_m, Residue::parse(hyper_a)});
      emit(ctx, module_to_json(m), module_to_text(m));
      return 0;
    }
    if (selfcheck->parsed()) {
      SelfcheckOutcome o = run_selfcheck(cases, seed);
      Json j = Json::array();
      for (const auto& t : o.tallies) {
        j.push_back({{"property", t.name}, {"passed", t.passed}, {"failed", t.failed},
                     {"skipped", t.skipped}, {"failures", t.failures}});
      }
      emit(ctx, Json{{"selfcheck", {{"cases", o.cases}, {"seed", o.seed},
                                    {"properties", j}, {"discarded", o.discards.size()},
                                    {"pass", o.ok()}}}},
           format_selfcheck(o));
      return o.ok() ? 0 : 1;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    if (ctx.json) {
      Json j = {{"error", {{"kind", kind_name(e.kind())}, {"message", e.what()}}}};
      if (const auto* p = dynamic_cast<const PunctualConvolution*>(&e); p && p->skyscraper()) {
        j["error"]["skyscraper"] = skyscraper_to_json(*p->skyscraper());
      }
      out << j.dump(2) << "\n";
    }
    return exit_code(e.kind());
  }
  return 3;
}

}  // namespace hodge
