#include "arclift/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "arclift/arcs.hpp"
#include "arclift/desing.hpp"
#include "arclift/error.hpp"
#include "arclift/oracle.hpp"
#include "arclift/problem.hpp"
#include "arclift/random.hpp"
#include "arclift/text.hpp"

namespace arclift {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kDefaultSearchDepth = 8;

struct Options {
  std::string command;
  std::string file;
  bool json = false;
  std::optional<int> n_work;
  std::string out_path;
  std::string t_free;
  std::string params;
  std::vector<std::uint64_t> random;
  std::string reference;
  std::string arc;
  int search_depth = kDefaultSearchDepth;
  std::uint64_t seed = 1;
  int count = 20;
  std::optional<int> jet_order;
  int samples = 10;
};

/// Non-fatal end states that still carry a meaningful report.
struct CommandFailure {
  int exit_code;
};

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::UnknownVariable:
      return kExitParse;
    case ErrorKind::OrderTooHigh:
      return kExitCertificate;
    default:
      return kExitFailure;
  }
}

Json series_list(std::span<const Series> values) {
  Json out = Json::array();
  for (const auto& s : values) out.push_back(s.to_string());
  return out;
}

Json checks_json(const std::vector<Check>& checks) {
  Json out = Json::array();
  for (const auto& c : checks) {
    Json entry = {{"name", c.name}, {"passed", c.passed}};
    if (!c.detail.empty()) entry["detail"] = c.detail;
    out.push_back(entry);
  }
  return out;
}

Json lift_json(const LiftResult& lift) {
  return {{"y", series_list(lift.y)},
          {"t", series_list(lift.t)},
          {"prec", lift.prec},
          {"residual_f", lift.residual_f},
          {"residual_ideal", lift.residual_ideal},
          {"strict", lift.strict},
          {"iterations", lift.iterations}};
}

void render_scalar(const Json& v, std::string& out) {
  if (v.is_string()) {
    out += v.get<std::string>();
  } else {
    out += v.dump();
  }
}

void render_text(const Json& doc, const std::string& indent, std::string& out) {
  for (const auto& [key, value] : doc.items()) {
    if (value.is_object()) {
      out += indent + "[" + key + "]\n";
      render_text(value, indent + "  ", out);
    } else if (value.is_array()) {
      if (value.empty()) {
        out += indent + key + " = (none)\n";
        continue;
      }
      for (std::size_t i = 0; i < value.size(); ++i) {
        const Json& item = value[i];
        if (item.is_object()) {
          out += indent + "[" + key + " " + std::to_string(i + 1) + "]\n";
          render_text(item, indent + "  ", out);
        } else if (item.is_array()) {
          for (std::size_t j = 0; j < item.size(); ++j) {
            out += indent + key + "[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "] = ";
            render_scalar(item[j], out);
            out += "\n";
          }
        } else {
          out += indent + key + std::to_string(i + 1) + " = ";
          render_scalar(item, out);
          out += "\n";
        }
      }
    } else {
      out += indent + key + " = ";
      render_scalar(value, out);
      out += "\n";
    }
  }
}

std::string render(const Json& report, bool as_json) {
  if (as_json) return report.dump(2) + "\n";
  std::string out;
  render_text(report, "", out);
  return out;
}

Json validation_json(const ValidationReport& rep) {
  Json out;
  out["c"] = rep.c;
  out["c_given"] = rep.c_was_given;
  out["e"] = rep.e ? Json(*rep.e) : Json(nullptr);
  out["checks"] = checks_json(rep.checks);
  return out;
}

void require_valid(const Problem& problem, Json& report) {
  ValidationReport rep = validate_problem(problem);
  report["validation"] = validation_json(rep);
  if (!rep.all_passed()) throw CommandFailure{rep.exit_code()};
}

SeriesVector parse_vector(const std::string& text, const BaseRing& ring, int expected, const char* what) {
  SeriesVector out = parse_series_list(text, ring);
  if (static_cast<int>(out.size()) != expected) {
    throw Error(ErrorKind::ParseError, std::string(what) + " needs " + std::to_string(expected) + " series, got " +
                                           std::to_string(out.size()));
  }
  return out;
}

/// Strict reference from --reference, or from the bounded search.
std::optional<LiftResult> resolve_reference(const SmoothModel& model, const Options& opt, Json& report) {
  if (!opt.reference.empty()) {
    auto arc = parse_vector(opt.reference, model.ring, model.n, "--reference");
    LiftResult ref = reference_from_arc(model, arc);
    report["reference"] = {{"source", "given"}, {"y", series_list(ref.y)}};
    return ref;
  }
  StrictSearch found = find_strict_reference(model, opt.search_depth);
  Json info;
  info["source"] = "search";
  info["stage"] = found.stage;
  info["note"] = found.note;
  if (found.lift) info["y"] = series_list(found.lift->y);
  report["reference"] = info;
  return found.lift;
}

Json model_json(const SmoothModel& m) {
  Json out;
  out["param_count"] = m.param_count();
  Json order = Json::array();
  for (int col : m.columns.order()) order.push_back(col + 1);
  out["column_order"] = order;
  out["e"] = m.e;
  out["shift"] = m.shift;
  out["N_norm"] = m.columns.to_external(m.n_norm).to_string();
  out["P"] = m.columns.to_external(m.p).to_string();
  out["d"] = m.d.to_string();
  Json h = Json::array();
  Json gy = Json::array();
  for (std::size_t i = 0; i < static_cast<std::size_t>(m.n); ++i) {
    Json h_row = Json::array();
    Json gy_row = Json::array();
    for (std::size_t j = 0; j < static_cast<std::size_t>(m.n); ++j) {
      h_row.push_back(m.columns.to_external(m.h.at(i, j)).to_string());
      gy_row.push_back(m.gy.at(i, j).to_string());
    }
    h.push_back(h_row);
    gy.push_back(gy_row);
  }
  out["H"] = h;
  out["Gy"] = gy;
  out["a"] = series_list(m.a);
  Json q = Json::array();
  Json g = Json::array();
  for (const auto& p : m.q) q.push_back(p.to_string());
  for (const auto& p : m.eqs) g.push_back(p.to_string());
  out["Q"] = q;
  out["g"] = g;
  out["loc_s"] = m.loc_s.to_string();
  out["loc_s_prime"] = m.loc_s_prime.to_string();
  return out;
}

int cmd_validate(const Problem& problem, Json& report) {
  ValidationReport rep = validate_problem(problem);
  report["validation"] = validation_json(rep);
  return rep.exit_code();
}

int cmd_desingularize(const Problem& problem, Json& report) {
  require_valid(problem, report);
  SmoothModel model = build_model(problem);
  report["model"] = model_json(model);
  VerificationReport ver = verify_model(model);
  report["verification"] = checks_json(ver.checks);
  return ver.all_passed() ? kExitOk : kExitFailure;
}

int cmd_lift(const Problem& problem, const Options& opt, Json& report) {
  int modes = static_cast<int>(!opt.t_free.empty()) + static_cast<int>(!opt.params.empty()) +
              static_cast<int>(!opt.random.empty());
  if (modes != 1) throw Error(ErrorKind::ParseError, "lift needs exactly one of --t-free, --params, --random");
  require_valid(problem, report);
  SmoothModel model = build_model(problem);
  report["param_count"] = model.param_count();
  Json lifts = Json::array();
  if (!opt.t_free.empty()) {
    report["mode"] = "t_free";
    auto t_free = parse_vector(opt.t_free, model.ring, model.param_count(), "--t-free");
    lifts.push_back(lift_json(make_lift(model, t_free)));
  } else if (!opt.random.empty()) {
    report["mode"] = "random";
    report["seed"] = opt.random[0];
    SeededDraw draw(opt.random[0]);
    for (std::uint64_t i = 0; i < opt.random[1]; ++i) {
      auto t_free = draw.series_vector(model.ring, model.param_count());
      Json entry = lift_json(make_lift(model, t_free));
      entry["t_free"] = series_list(t_free);
      lifts.push_back(entry);
    }
  } else {
    report["mode"] = "params";
    auto z = parse_vector(opt.params, model.ring, model.param_count(), "--params");
    auto ref = resolve_reference(model, opt, report);
    if (!ref) {
      report["status"] = "NotFound";
      return kExitNotFound;
    }
    lifts.push_back(lift_json(offset_lift(model, *ref, z)));
  }
  report["lifts"] = lifts;
  return kExitOk;
}

int cmd_extract(const Problem& problem, const Options& opt, Json& report) {
  if (opt.arc.empty()) throw Error(ErrorKind::ParseError, "extract needs --arc");
  require_valid(problem, report);
  SmoothModel model = build_model(problem);
  auto arc = parse_vector(opt.arc, model.ring, model.n, "--arc");
  report["t"] = series_list(extract_t(model, arc));
  if (opt.reference.empty()) return kExitOk;
  auto ref = resolve_reference(model, opt, report);
  report["z"] = series_list(extract_params(model, *ref, arc));
  return kExitOk;
}

int cmd_roundtrip(const Problem& problem, const Options& opt, Json& report) {
  require_valid(problem, report);
  SmoothModel model = build_model(problem);
  auto ref = resolve_reference(model, opt, report);
  if (!ref) {
    report["status"] = "NotFound";
    return kExitNotFound;
  }
  const int contract = model.ring.n_work - 4 * model.c - 1;
  SeededDraw draw(opt.seed);
  int worst = 0;
  int min_prec_seen = model.ring.n_work;
  for (int i = 0; i < opt.count; ++i) {
    auto z = draw.series_vector(model.ring, model.param_count());
    LiftResult lifted = offset_lift(model, *ref, z);
    SeriesVector back = extract_params(model, *ref, lifted.y);
    int mismatches = 0;
    for (std::size_t j = 0; j < z.size(); ++j) {
      min_prec_seen = std::min(min_prec_seen, back[j].prec());
      for (int k = 0; k < contract; ++k) {
        bool known = k < back[j].prec();
        if (!known || !(back[j].coeff(k) == z[j].coeff(k))) ++mismatches;
      }
    }
    worst = std::max(worst, mismatches);
  }
  report["seed"] = opt.seed;
  report["count"] = opt.count;
  report["contract_prec"] = contract;
  report["min_recovered_prec"] = model.param_count() > 0 ? min_prec_seen : contract;
  report["max_discrepancy"] = worst;
  return worst == 0 ? kExitOk : kExitFailure;
}

int cmd_oracle(const Problem& problem, const Options& opt, Json& report) {
  ValidationReport rep = validate_problem(problem);
  report["validation"] = validation_json(rep);
  if (!rep.all_passed()) return rep.exit_code();
  const int m = opt.jet_order.value_or(2 * rep.c + 3);
  JetSet jets = oracle_enumerate(problem, rep.c, m);
  report["m"] = m;
  report["candidates"] = jets.candidates;
  report["jet_count"] = jets.jets.size();
  Json lines = Json::array();
  for (const auto& line : jets.lines()) lines.push_back(line);
  report["jets"] = lines;

  SmoothModel model = build_model(problem);
  auto ref = resolve_reference(model, opt, report);
  if (!ref) {
    report["status"] = "NotFound";
    return kExitNotFound;
  }
  // Odd draws go through make_lift, even ones through offset_lift; a
  // make_lift that is not strict falls back to the offset family.
  SeededDraw draw(opt.seed);
  int contained = 0;
  Json misses = Json::array();
  for (int i = 0; i < opt.samples; ++i) {
    auto values = draw.series_vector(model.ring, model.param_count());
    std::optional<LiftResult> lift;
    if (i % 2 == 1) {
      LiftResult plain = make_lift(model, values);
      if (plain.strict) lift = std::move(plain);
    }
    if (!lift) lift = offset_lift(model, *ref, values);
    Jet truncated = truncate_arc(lift->y, m);
    if (jets.contains(truncated)) {
      ++contained;
    } else {
      misses.push_back(jet_to_string(truncated));
    }
  }
  report["samples"] = opt.samples;
  report["contained"] = contained;
  report["missing"] = misses;
  return contained == opt.samples ? kExitOk : kExitFailure;
}

int dispatch(const Options& opt, Json& report) {
  Problem problem = load_problem_file(opt.file, opt.n_work);
  report["field"] = problem.ring.field.name();
  report["n"] = problem.n;
  report["r"] = problem.r();
  report["n_work"] = problem.ring.n_work;
  if (opt.command == "validate") return cmd_validate(problem, report);
  if (opt.command == "desingularize") return cmd_desingularize(problem, report);
  if (opt.command == "lift") return cmd_lift(problem, opt, report);
  if (opt.command == "extract") return cmd_extract(problem, opt, report);
  if (opt.command == "roundtrip") return cmd_roundtrip(problem, opt, report);
  return cmd_oracle(problem, opt, report);
}

void add_common(CLI::App* sub, Options& opt) {
  sub->add_option("problem", opt.file, "problem file (JSON)")->required();
  sub->add_flag("--json", opt.json, "print the report as JSON");
  sub->add_option("--n-work", opt.n_work, "working precision");
}

}  // namespace

CliResult run_cli(const std::vector<std::string>& args) {
  Options opt;
  CLI::App app{"Arc lifting through a smooth model of a singular point", "arclift"};
  app.require_subcommand(1, 1);

  auto* validate = app.add_subcommand("validate", "check the certificate, the jet and the order condition");
  add_common(validate, opt);
  validate->add_option("--prec", opt.n_work, "working precision");

  auto* desing = app.add_subcommand("desingularize", "build and verify the smooth model");
  add_common(desing, opt);
  desing->add_option("--prec", opt.n_work, "working precision");
  desing->add_option("--out", opt.out_path, "also write the report to this file");

  auto* lift = app.add_subcommand("lift", "lift free coordinates or offset parameters to arcs");
  add_common(lift, opt);
  lift->add_option("--prec", opt.n_work, "working precision");
  lift->add_option("--t-free", opt.t_free, "free T coordinates, comma separated");
  lift->add_option("--params", opt.params, "offset parameters z, comma separated");
  lift->add_option("--random", opt.random, "seed and count of random t_free draws")->expected(2);
  lift->add_option("--reference", opt.reference, "strict reference arc for --params");
  lift->add_option("--search-depth", opt.search_depth, "coefficient depth of the strict reference search");

  auto* extract = app.add_subcommand("extract", "recover t (and z) from an arc");
  add_common(extract, opt);
  extract->add_option("--prec", opt.n_work, "working precision");
  extract->add_option("--arc", opt.arc, "arc coordinates, comma separated");
  extract->add_option("--reference", opt.reference, "strict reference arc for z");

  auto* roundtrip = app.add_subcommand("roundtrip", "offset_lift then extract_params on seeded draws");
  add_common(roundtrip, opt);
  roundtrip->add_option("--prec", opt.n_work, "working precision");
  roundtrip->add_option("--seed", opt.seed, "generator seed");
  roundtrip->add_option("--count", opt.count, "number of draws");
  roundtrip->add_option("--reference", opt.reference, "strict reference arc");
  roundtrip->add_option("--search-depth", opt.search_depth, "coefficient depth of the strict reference search");

  auto* oracle = app.add_subcommand("oracle", "enumerate m-jets over F_p and test sampled lifts against them");
  add_common(oracle, opt);
  oracle->add_option("--prec", opt.jet_order, "jet order m");
  oracle->add_option("--samples", opt.samples, "number of sampled lifts");
  oracle->add_option("--seed", opt.seed, "generator seed");
  oracle->add_option("--reference", opt.reference, "strict reference arc");
  oracle->add_option("--search-depth", opt.search_depth, "coefficient depth of the strict reference search");

  CliResult result;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    result.out = app.help();
    return result;
  } catch (const CLI::ParseError& e) {
    result.exit_code = kExitParse;
    result.err = std::string("usage: ") + e.what() + "\n";
    return result;
  }
  for (auto* sub : app.get_subcommands()) opt.command = sub->get_name();

  Json report;
  report["command"] = opt.command;
  try {
    result.exit_code = dispatch(opt, report);
  } catch (const CommandFailure& failure) {
    result.exit_code = failure.exit_code;
  } catch (const Error& e) {
    result.exit_code = exit_code_for(e.kind());
    report["error"] = {{"kind", to_string(e.kind())}, {"message", e.detail()}};
  }
  if (!report.contains("status")) report["status"] = result.exit_code == kExitOk ? "ok" : "failed";
  report["exit_code"] = result.exit_code;
  result.out = render(report, opt.json);

  if (!opt.out_path.empty()) {
    std::ofstream file(opt.out_path, std::ios::binary);
    if (!file) {
      result.err += "cannot write " + opt.out_path + "\n";
      result.exit_code = kExitFailure;
    } else {
      file << result.out;
    }
  }
  return result;
}

}  // namespace arclift
