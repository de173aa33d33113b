// qcause command-line tool: bounds, scan, region, verify, construct.

#include <unistd.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <numbers>
#include <sstream>

#include "qcause/acceptance.hpp"
#include "qcause/bounds.hpp"
#include "qcause/constructions.hpp"
#include "qcause/error.hpp"
#include "qcause/io.hpp"
#include "qcause/kernels.hpp"
#include "qcause/polytopes.hpp"
#include "qcause/tolerances.hpp"

namespace {

using qcause::io::json;

enum Exit { kOk = 0, kInput = 2, kConstraint = 3, kVerification = 4 };

constexpr const char* kScanHelp =
    "CSV columns (radians, 12 significant digits):\n"
    "  alpha curve: alpha,violation,phi0,theta0\n"
    "    alpha in [0, pi/4]; state cos(alpha)|00> + sin(alpha)|11>;\n"
    "    phi0, theta0 are the maximizing Bob/Alice angles.\n"
    "  phi curve:   phi,violation,alpha,theta0,theta1\n"
    "    phi in [0, pi/2]; Bob measures along +phi and -phi.";

constexpr const char* kRegionHelp =
    "Slice p(1,0|x) = 0, p(0,1|x) = 1/2 - p(0,0|x), p(1,1|x) = 1/2 over\n"
    "(p(0,0|0), p(0,0|1)) in [0, 1/2]^2, row-major in p(0,0|0).\n"
    "CSV columns: p000,p001,classical,quantum,nonsignaling,\n"
    "  classical_positive,quantum_positive,ns_nonnegative\n"
    "Flags are 0/1: bound > 1e-9, bound > 1e-9, bound >= -1e-9.\n"
    "A summary of the flag counts goes to stderr.";

bool use_color() { return std::getenv("NO_COLOR") == nullptr && isatty(STDOUT_FILENO) == 1; }

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    std::cout.flush();
  } else {
    qcause::io::write_text_file(out, text);
  }
}

std::vector<double> split_numbers(const std::string& list) {
  std::vector<double> out;
  std::stringstream ss(list);
  ss.imbue(std::locale::classic());
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::istringstream is(item);
    is.imbue(std::locale::classic());
    double v = 0.0;
    if (!(is >> v) || !(is >> std::ws).eof()) {
      throw qcause::Error(qcause::Errc::parse, "not a number: \"" + item + "\"");
    }
    out.push_back(v);
  }
  return out;
}

struct BoundsArgs {
  std::string behavior;
  std::string out;
  bool oracle = false;
  bool strict = false;
};

int cmd_bounds(const BoundsArgs& args) {
  const auto file = qcause::io::behavior_from_json(qcause::io::read_json_file(args.behavior));
  if (const auto msg = qcause::diagnose(file.behavior); !msg.empty()) {
    std::cerr << "qcause bounds: invalid behavior: " << msg << "\n";
    return kInput;
  }
  const double slack = qcause::instrumental_inequality_slack(file.behavior);
  if (args.strict && slack > qcause::tol::kPositive) {
    std::cerr << "qcause bounds: instrumental inequality violated (slack "
              << qcause::io::format_number(slack) << ")\n";
    return kConstraint;
  }
  json j;
  try {
    j = qcause::io::report_to_json(qcause::bound_report(file.behavior));
  } catch (const qcause::Error& e) {
    // Only the quantum bound is undefined off the instrumental-feasible set.
    if (e.code() != qcause::Errc::domain) throw;
    const auto six = qcause::cace_lower_bounds(file.behavior);
    const double cmax = *std::max_element(six.begin(), six.end());
    const double ns = qcause::nace_lower_bound(file.behavior);
    j = {{"classical_six", six},
         {"classical_max", cmax},
         {"classical_max_clamped", std::max(cmax, 0.0)},
         {"quantum", nullptr},
         {"quantum_clamped", nullptr},
         {"quantum_error", e.what()},
         {"nonsignaling", ns},
         {"nonsignaling_clamped", std::max(ns, 0.0)},
         {"instrumental_slack", slack}};
  }
  j["nonsignaling_relabeled"] = qcause::nace_lower_bound_relabeled(file.behavior);
  if (file.table) {
    qcause::validate(*file.table);
    j["ace"] = qcause::ace(*file.table);
    j["ace_signed"] = qcause::ace_signed(*file.table);
    j["consistent"] = qcause::consistent_pair(file.behavior, *file.table, qcause::tol::kPositive);
  }
  if (args.oracle) {
    j["classical_tight"] = qcause::io::interval_to_json(qcause::cace_tight_interval(file.behavior));
    j["nonsignaling_tight"] =
        qcause::io::interval_to_json(qcause::nace_tight_interval(file.behavior));
  }
  emit(j.dump(2) + "\n", args.out);
  return kOk;
}

struct ScanArgs {
  std::string curve = "alpha";
  int steps = 101;
  std::string out;
};

int cmd_scan(const ScanArgs& args) {
  std::string text;
  if (args.curve == "alpha") {
    text = "alpha,violation,phi0,theta0\n";
    for (const auto& p : qcause::alpha_curve(args.steps, qcause::Exec::parallel)) {
      text += qcause::io::csv_row({p.parameter, p.violation, p.argmax[0], p.argmax[1]}) + "\n";
    }
  } else {
    text = "phi,violation,alpha,theta0,theta1\n";
    for (const auto& p : qcause::phi_curve(args.steps, qcause::Exec::parallel)) {
      text += qcause::io::csv_row({p.parameter, p.violation, p.argmax[0], p.argmax[1], p.argmax[2]}) +
              "\n";
    }
  }
  emit(text, args.out);
  return kOk;
}

struct RegionArgs {
  int grid = 101;
  std::string out;
};

int cmd_region(const RegionArgs& args) {
  const auto cells = qcause::region_grid(args.grid, qcause::Exec::parallel);
  std::string text =
      "p000,p001,classical,quantum,nonsignaling,classical_positive,quantum_positive,ns_nonnegative\n";
  for (const auto& c : cells) {
    text += qcause::io::csv_row({c.p000, c.p001, c.classical, c.quantum, c.nonsignaling}) + "," +
            (c.classical_positive ? "1" : "0") + "," + (c.quantum_positive ? "1" : "0") + "," +
            (c.ns_nonnegative ? "1" : "0") + "\n";
  }
  emit(text, args.out);
  const auto counts = qcause::region_counts(cells, args.grid);
  std::cerr << "cells " << cells.size() << ": classical>0 " << counts.classical << ", quantum>0 "
            << counts.quantum << ", nonsignaling>=0 " << counts.nonsignaling << ", quantum-only "
            << counts.quantum_only << ", classical-only " << counts.classical_only
            << ", nonsignaling set is the two boundary lines: "
            << (counts.ns_exactly_on_lines ? "yes" : "no") << "\n";
  return kOk;
}

struct VerifyArgs {
  std::vector<std::string> only;
  std::vector<std::string> tamper;
  bool json_output = false;
};

int cmd_verify(const VerifyArgs& args) {
  qcause::AcceptanceOptions options;
  for (const auto& f : args.only) {
    std::stringstream ss(f);
    std::string item;
    while (std::getline(ss, item, ',')) options.only.push_back(item);
  }
  for (const auto& t : args.tamper) {
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw qcause::Error(qcause::Errc::parse, "--tamper expects NAME=VALUE, got \"" + t + "\"");
    }
    const auto v = split_numbers(t.substr(eq + 1));
    if (v.size() != 1) throw qcause::Error(qcause::Errc::parse, "--tamper: one value expected");
    const auto name = t.substr(0, eq);
    const auto& known = qcause::overridable_constants();
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      throw qcause::Error(qcause::Errc::parse, "--tamper: unknown constant \"" + name + "\"");
    }
    options.overrides[name] = v[0];
  }
  std::ostringstream log;
  const auto results = qcause::run_acceptance(options, args.json_output ? log : std::cout);
  bool all = true;
  for (const auto& r : results) all = all && r.passed;
  if (args.json_output) {
    json arr = json::array();
    for (const auto& r : results) {
      arr.push_back({{"id", r.id},
                     {"name", r.name},
                     {"passed", r.passed},
                     {"seconds", r.seconds},
                     {"details", r.details}});
    }
    std::cout << json{{"passed", all}, {"criteria", arr}}.dump(2) << "\n";
  } else {
    const bool color = use_color();
    const char* on = color ? (all ? "\033[32m" : "\033[31m") : "";
    const char* off = color ? "\033[0m" : "";
    std::size_t passed = 0;
    for (const auto& r : results) passed += r.passed;
    std::cout << on << passed << "/" << results.size() << " criteria passed" << off << "\n";
  }
  if (results.empty()) {
    std::cerr << "qcause verify: no criterion matches the --only filter\n";
    return kInput;
  }
  return all ? kOk : kVerification;
}

struct ConstructArgs {
  std::string which = "optimal";
  std::string coeffs;
  std::string out;
};

json model_bundle(const qcause::QuantumInstrumentModel& model) {
  const auto beh = qcause::behavior(model);
  const auto table = qcause::do_table(model);
  return {{"model", qcause::io::model_to_json(model)},
          {"behavior", qcause::io::behavior_to_json(beh, table)}};
}

int cmd_construct(const ConstructArgs& args) {
  json j;
  if (args.which == "optimal") {
    const auto opt = qcause::optimal_two_qubit();
    j = model_bundle(opt.model);
    j["metadata"] = {{"alpha", opt.alpha},         {"theta", opt.angles.theta},
                     {"phi", opt.angles.phi},      {"qace", opt.qace},
                     {"violation", opt.violation}, {"classical_max", qcause::bound_report(opt.behavior).classical_max}};
  } else if (args.which == "maxent") {
    const double alpha = std::numbers::pi / 4.0;
    const auto best = qcause::v_alpha(alpha);
    const qcause::XzAngles angles{alpha, {best.argmax[1], -std::numbers::pi / 2.0},
                                  {best.argmax[0], -best.argmax[0]}};
    const auto model = qcause::xz_model(angles);
    j = model_bundle(model);
    j["metadata"] = {{"alpha", alpha},
                     {"theta", angles.theta},
                     {"phi", angles.phi},
                     {"qace", qcause::qace(model)},
                     {"violation", best.violation}};
  } else {
    if (args.coeffs.empty()) {
      throw qcause::Error(qcause::Errc::parse, "--which schmidt requires --coeffs");
    }
    const auto state = qcause::schmidt_state(split_numbers(args.coeffs));
    const auto g = qcause::guaranteed_violation(state);
    j = model_bundle(g.model);
    j["metadata"] = {{"coeffs", state.coeffs},
                     {"lambda", state.params.lambda},
                     {"gamma", state.params.gamma},
                     {"theta1", g.theta1},
                     {"qace", qcause::qace(g.model)},
                     {"violation", g.violation},
                     {"formula", g.formula}};
  }
  emit(j.dump(2) + "\n", args.out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lower bounds on the average causal effect in the instrumental scenario"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  int jobs = 0;
  app.add_option("--jobs", jobs, "Worker threads (default: logical cores)")
      ->check(CLI::NonNegativeNumber);

  BoundsArgs bounds;
  auto* sub_bounds = app.add_subcommand("bounds", "Classical, quantum and non-signaling bounds for a behavior");
  sub_bounds->add_option("--behavior", bounds.behavior,
                         "JSON file {\"pabx\": [a][b][x], \"do\": [b][a] (optional)}, or construct output")
      ->required();
  sub_bounds->add_flag("--oracle", bounds.oracle, "Add LP-tight classical and non-signaling intervals");
  sub_bounds->add_flag("--strict", bounds.strict,
                       "Exit 3 if the behavior violates an instrumental inequality");
  sub_bounds->add_option("--out", bounds.out, "Output file (default: stdout)");

  ScanArgs scan;
  auto* sub_scan = app.add_subcommand("scan", "Violation curves of the classical bound");
  sub_scan->footer(kScanHelp);
  sub_scan->add_option("--curve", scan.curve, "alpha or phi")
      ->check(CLI::IsMember({"alpha", "phi"}));
  sub_scan->add_option("--steps", scan.steps, "Grid points including both endpoints")
      ->check(CLI::Range(2, 1000000));
  sub_scan->add_option("--out", scan.out, "Output CSV (default: stdout)");

  RegionArgs region;
  auto* sub_region = app.add_subcommand("region", "Where each bound is non-trivial on a 2-D slice");
  sub_region->footer(kRegionHelp);
  sub_region->add_option("--grid", region.grid, "Points per axis")->check(CLI::Range(2, 100000));
  sub_region->add_option("--out", region.out, "Output CSV (default: stdout)");

  VerifyArgs verify;
  auto* sub_verify = app.add_subcommand("verify", "Run the acceptance criteria");
  sub_verify->add_option("--only", verify.only,
                         "Criterion ids, names or tags (comma-separated or repeated)");
  sub_verify->add_option("--tamper", verify.tamper,
                         "NAME=VALUE replaces a reference constant (optimal_violation, "
                         "maxent_violation, maxent_gap, bob_angle, noise_threshold)");
  sub_verify->add_flag("--json", verify.json_output, "Emit a JSON report instead of text");

  ConstructArgs construct;
  auto* sub_construct = app.add_subcommand("construct", "Emit a quantum model with its behavior and do-table");
  sub_construct->add_option("--which", construct.which, "optimal, maxent or schmidt")
      ->check(CLI::IsMember({"optimal", "maxent", "schmidt"}));
  sub_construct->add_option("--coeffs", construct.coeffs,
                            "Schmidt coefficients, comma-separated, non-increasing, unit norm");
  sub_construct->add_option("--out", construct.out, "Output JSON (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  qcause::set_thread_count(jobs);
  try {
    if (sub_bounds->parsed()) return cmd_bounds(bounds);
    if (sub_scan->parsed()) return cmd_scan(scan);
    if (sub_region->parsed()) return cmd_region(region);
    if (sub_verify->parsed()) return cmd_verify(verify);
    if (sub_construct->parsed()) return cmd_construct(construct);
  } catch (const qcause::Error& e) {
    std::cerr << "qcause: " << qcause::to_string(e.code()) << ": " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "qcause: " << e.what() << "\n";
    return kInput;
  }
  return kOk;
}
