#pragma once

// Command-line front end. Kept in a header so tests can drive it in-process.
//
// Exit codes: 0 ok, 1 verification failure, 2 invalid state, 3 bad
// arguments, 4 I/O, 5 no threshold bracket.

#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qcorr/qcorr.hpp"

namespace qcorr::app {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kInvalidState = 2,
  kBadArguments = 3,
  kIoFailure = 4,
  kNoRoot = 5,
};

namespace detail {

inline Model parse_model(const std::string& name) {
  if (name == "isodm") return Model::IsoDM;
  if (name == "xxz") return Model::XXZ;
  throw InvalidArgument("unknown model '" + name + "'");
}

inline void print_row(std::ostream& out, const char* key, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%-9s", key);
  out << buf << format_number(v) << '\n';
}

inline void print_report(std::ostream& out, const MeasureReport& r) {
  print_row(out, "C", r.concurrence);
  print_row(out, "N", r.min_value);
  print_row(out, "Q", r.gmod_lower);
  print_row(out, "D_exact", r.gmod_exact);
  out << "branch   " << to_string(r.branch) << '\n';
}

inline void print_model_report(std::ostream& out, const ModelReport& r) {
  print_row(out, "C", r.concurrence);
  print_row(out, "N", r.min_value);
  print_row(out, "Q", r.gmod_lower);
  print_row(out, "Q_paper", r.gmod_paper);
  print_row(out, "Q_gap", r.proportionality_gap());
  print_row(out, "D_exact", r.gmod_exact);
  out << "branch   " << to_string(r.pipeline.branch) << '\n';
}

struct Options {
  std::string model = "isodm";
  double j = 0.0, d = 0.0, delta = 0.0, b = 0.0;
  double j_start = -5.0, j_end = 5.0;
  std::size_t j_steps = 201;
  std::string series;
  std::string out;
  std::string state;
  std::uint64_t seed = 1;
  std::size_t count = 100;
  std::size_t grid_points = 2000;
  std::string config;
};

inline void add_config(CLI::App* cmd, std::string& path) {
  cmd->add_option("--config", path, "key=value file; command-line flags take precedence");
}

/// Splices `--key value` pairs from every `--config FILE` into the argument
/// list, skipping keys already given as flags.
inline std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  std::vector<std::string> files;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      files.push_back(args[++i]);
    } else if (args[i].rfind("--config=", 0) == 0) {
      files.push_back(args[i].substr(9));
    } else {
      out.push_back(args[i]);
    }
  }
  const auto given = [&](const std::string& key) {
    for (const auto& a : out)
      if (a == "--" + key || a.rfind("--" + key + "=", 0) == 0) return true;
    return false;
  };
  for (const auto& file : files) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot open config file " + file);
    std::string line;
    while (std::getline(in, line)) {
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      const auto trim = [](std::string v) {
        const auto b = v.find_first_not_of(" \t\r");
        if (b == std::string::npos) return std::string();
        return v.substr(b, v.find_last_not_of(" \t\r") - b + 1);
      };
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw InvalidArgument("config line without '=': " + line);
      const std::string key = trim(line.substr(0, eq));
      if (key.empty() || given(key)) continue;
      out.push_back("--" + key);
      out.push_back(trim(line.substr(eq + 1)));
    }
  }
  return out;
}

inline void add_model_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--model", o.model, "isodm or xxz")->check(CLI::IsMember({"isodm", "xxz"}));
  cmd->add_option("--d", o.d, "D/kT (isodm)");
  cmd->add_option("--delta", o.delta, "anisotropy (xxz)");
  cmd->add_option("--b", o.b, "B/kT (xxz)");
}

} // namespace detail

/// Runs the CLI with argv-style arguments (args[0] is the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  detail::Options o;
  CLI::App app{"Two-qubit correlation measures for Heisenberg spin models", "qcorr"};
  app.require_subcommand(1);

  auto* measures = app.add_subcommand("measures", "Concurrence, MIN and geometric discord of one state or model point");
  detail::add_model_flags(measures, o);
  measures->add_option("--j", o.j, "J/kT");
  auto* state_opt = measures->add_option("--state", o.state, "state file (16 lines of 're im')");
  detail::add_config(measures, o.config);

  auto* sweep = app.add_subcommand("sweep", "Sweep j and write CSV");
  detail::add_model_flags(sweep, o);
  sweep->add_option("--j-start", o.j_start, "first j");
  sweep->add_option("--j-end", o.j_end, "last j");
  sweep->add_option("--j-steps", o.j_steps, "number of j points (>= 2)");
  sweep->add_option("--series", o.series, "isodm: d list '0,2'; xxz: delta:b list '0:0,0:1'")->required();
  sweep->add_option("--out", o.out, "output CSV path")->required();
  detail::add_config(sweep, o.config);

  auto* critical = app.add_subcommand("critical", "Coupling j_c at which concurrence vanishes");
  detail::add_model_flags(critical, o);
  detail::add_config(critical, o.config);

  auto* verify = app.add_subcommand("verify", "Check closed forms against brute-force oracles on random states");
  verify->add_option("--seed", o.seed, "generator seed");
  verify->add_option("--count", o.count, "number of random states");
  verify->add_option("--grid-points", o.grid_points, "Fibonacci sphere points");
  detail::add_config(verify, o.config);

  std::vector<std::string> expanded;
  try {
    expanded = detail::expand_config(args);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  }
  std::vector<const char*> argv;
  argv.reserve(expanded.size());
  for (const auto& a : expanded) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kBadArguments;
  }

  try {
    if (measures->parsed()) {
      if (*state_opt) {
        const auto state = TwoQubitState::from_matrix_projected(read_state_file(o.state), kStateFileTol);
        const auto r = report(state);
        out << "state    " << o.state << '\n';
        detail::print_report(out, r);
      } else if (detail::parse_model(o.model) == Model::IsoDM) {
        const auto r = measures_isodm({o.j, o.d});
        out << "model    isodm j=" << format_number(o.j) << " d=" << format_number(o.d) << '\n';
        detail::print_model_report(out, r);
      } else {
        const auto r = measures_xxz({o.j, o.delta, o.b});
        out << "model    xxz j=" << format_number(o.j) << " delta=" << format_number(o.delta)
            << " b=" << format_number(o.b) << '\n';
        detail::print_model_report(out, r);
      }
      return kOk;
    }

    if (sweep->parsed()) {
      SweepSpec spec;
      spec.model = detail::parse_model(o.model);
      spec.j_start = o.j_start;
      spec.j_end = o.j_end;
      spec.j_steps = o.j_steps;
      spec.series = parse_series(spec.model, o.series);
      const auto rows = run_sweep(spec);
      write_file_atomic(o.out, sweep_csv(spec, rows));
      out << "wrote " << rows.size() << " rows to " << o.out << '\n';
      return kOk;
    }

    if (critical->parsed()) {
      const double jc = detail::parse_model(o.model) == Model::IsoDM ? critical_coupling_isodm(o.d)
                                                                     : critical_coupling_xxz(o.delta, o.b);
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.9f", jc);
      out << buf << '\n';
      return kOk;
    }

    if (verify->parsed()) {
      const VerifyOptions opt{o.seed, o.count, o.grid_points};
      if (opt.grid_points == 0) throw InvalidArgument("verify: grid-points must be positive");
      const auto res = run_verify(opt);
      out << format_verify(opt, res);
      return res.ok() ? kOk : kVerifyFailed;
    }
  } catch (const InvalidState& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidState;
  } catch (const NonFiniteParameter& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const NoSignChange& e) {
    err << "error: " << e.what() << '\n';
    return kNoRoot;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kVerifyFailed;
  }
  return kBadArguments;
}

} // namespace qcorr::app
