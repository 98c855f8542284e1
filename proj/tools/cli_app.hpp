#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hotelling/hotelling.hpp"
#include "hotelling/io.hpp"

namespace hotelling::cli {

using io::json;

enum ExitCode : int {
  kSuccess = 0,
  kNotEquilibrium = 1,
  kUsage = 2,
  kDisagreement = 3,
  kBudgetRefused = 4,
};

enum class Format { json_lines, csv };

struct Streams {
  std::ostream& out;
  std::ostream& err;
  std::optional<std::string> env_mode;  // value of HOTELLING_MODE, if set
};

namespace detail {

inline std::string csv_positions(const json& positions) {
  std::string s;
  for (const auto& p : positions) {
    if (!s.empty()) s += ' ';
    s += p.is_string() ? p.get<std::string>() : p.dump();
  }
  return s;
}

inline std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

/// Writes records either as JSON lines or as CSV rows under a fixed header.
class RecordWriter {
 public:
  RecordWriter(std::ostream& os, Format fmt) : os_(os), fmt_(fmt) {}

  void json_record(const json& j) {
    if (fmt_ == Format::json_lines) os_ << j.dump() << '\n';
  }
  void csv_header(const std::vector<std::string>& cols) {
    if (fmt_ != Format::csv) return;
    for (std::size_t i = 0; i < cols.size(); ++i) os_ << (i ? "," : "") << cols[i];
    os_ << '\n';
  }
  void csv_row(const std::vector<std::string>& cells) {
    if (fmt_ != Format::csv) return;
    for (std::size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << cells[i];
    os_ << '\n';
  }
  Format format() const { return fmt_; }

 private:
  std::ostream& os_;
  Format fmt_;
};

}  // namespace detail

/// Runs the command line `args` (args[0] is the program name) and returns
/// the process exit code.
inline int run(const std::vector<std::string>& args, Streams io_streams) {
  std::ostream& out = io_streams.out;
  std::ostream& err = io_streams.err;

  CLI::App app{"Hotelling location game on the unit circle"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(io::kVersion));

  std::string mode_text;
  std::string format_text = "json-lines";
  std::string out_path;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--mode", mode_text, "Numeric mode: exact or float (default from HOTELLING_MODE, else exact)")
        ->check(CLI::IsMember({"exact", "float"}));
    sub->add_option("--format", format_text, "Output format")->check(CLI::IsMember({"json-lines", "csv"}));
    sub->add_option("--out", out_path, "Write output to this file instead of stdout");
  };

  std::string positions_text;
  std::string input_path;
  auto add_profile_input = [&](CLI::App* sub) {
    auto* pos = sub->add_option("--positions", positions_text, "Vendor positions, e.g. \"0,1/2,1/2\"");
    auto* in = sub->add_option("--input", input_path, "Profile document (JSON); '-' reads stdin");
    pos->excludes(in);
  };

  auto* profit = app.add_subcommand("profit", "Vendor profits (closed form, optionally the integral oracle)");
  std::uint64_t oracle_resolution = 0;
  add_common(profit);
  add_profile_input(profit);
  profit->add_option("--oracle-resolution", oracle_resolution, "Midpoint samples for the integral oracle")
      ->check(CLI::PositiveNumber);

  auto* check = app.add_subcommand("check", "Decide equilibrium by the gap condition and by best responses");
  add_common(check);
  add_profile_input(check);

  auto* br = app.add_subcommand("best-response", "Best response of one vendor");
  std::int64_t vendor = 0;
  add_common(br);
  add_profile_input(br);
  br->add_option("--vendor", vendor, "Vendor index, 1-based")->required();

  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::int64_t grid = 0;

  auto* sample = app.add_subcommand("sample", "Random profiles, optionally rejection-sampled equilibria");
  std::uint64_t count = 1;
  std::uint64_t max_tries = 1'000'000;
  bool want_equilibrium = false;
  add_common(sample);
  sample->add_option("--n", n, "Number of vendors")->required()->check(CLI::Range(2, 1'000'000));
  sample->add_option("--seed", seed, "Base seed; record i uses seed + i");
  sample->add_option("--count", count, "Number of records")->check(CLI::PositiveNumber);
  auto* eq_flag = sample->add_flag("--equilibrium", want_equilibrium, "Rejection-sample equilibria on the gap simplex");
  auto* tries_opt = sample->add_option("--max-tries", max_tries, "Rejection budget per record")->check(CLI::PositiveNumber);
  auto* sample_grid = sample->add_option("--grid", grid, "Grid denominator for exact uniform sampling (default 360)")
                          ->check(CLI::PositiveNumber);
  sample_grid->excludes(eq_flag);
  tries_opt->needs(eq_flag);

  auto* enumerate = app.add_subcommand("enumerate", "All canonical grid equilibria");
  std::uint64_t budget = kDefaultEnumerationBudget;
  add_common(enumerate);
  enumerate->add_option("--n", n, "Number of vendors")->required()->check(CLI::Range(2, 1'000'000));
  enumerate->add_option("--grid", grid, "Grid denominator m")->required()->check(CLI::Range(2, 1'000'000));
  enumerate->add_option("--budget", budget, "Maximum candidate count");

  auto* dyn = app.add_subcommand("dynamics", "Iterated best-response dynamics");
  std::uint64_t max_steps = 1000;
  std::string schedule_text = "round-robin";
  add_common(dyn);
  auto* dyn_n = dyn->add_option("--n", n, "Number of vendors for a random start")->check(CLI::Range(2, 1'000'000));
  auto* dyn_pos = dyn->add_option("--positions", positions_text, "Explicit start profile");
  dyn_pos->excludes(dyn_n);
  dyn->add_option("--seed", seed, "Seed for the random start and the random schedule");
  dyn->add_option("--max-steps", max_steps, "Step budget")->check(CLI::PositiveNumber);
  dyn->add_option("--schedule", schedule_text, "round-robin or random")
      ->check(CLI::IsMember({"round-robin", "random"}));
  dyn->add_option("--grid", grid, "Grid denominator of the random start (exact mode)")->check(CLI::PositiveNumber);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    io::ModeRequest mode = io::parse_mode(mode_text);
    if (mode == io::ModeRequest::unspecified && io_streams.env_mode && !io_streams.env_mode->empty())
      mode = io::parse_mode(*io_streams.env_mode);
    const Format fmt = format_text == "csv" ? Format::csv : Format::json_lines;

    std::ofstream file;
    if (!out_path.empty()) {
      file.open(out_path);
      if (!file) {
        err << "error: cannot open '" << out_path << "' for writing\n";
        return kUsage;
      }
    }
    std::ostream& sink = out_path.empty() ? out : file;
    detail::RecordWriter writer(sink, fmt);

    auto load_profile = [&]() -> io::ProfileInput {
      io::ProfileInput in = [&] {
        if (!positions_text.empty()) return io::parse_position_list(positions_text, mode);
        if (input_path.empty()) throw io::ParseError("one of --positions or --input is required");
        std::stringstream buf;
        if (input_path == "-") {
          buf << std::cin.rdbuf();
        } else {
          std::ifstream f(input_path);
          if (!f) throw io::ParseError("cannot read '" + input_path + "'");
          buf << f.rdbuf();
        }
        json doc;
        try {
          doc = json::parse(buf.str());
        } catch (const json::parse_error& e) {
          throw io::ParseError(std::string("invalid JSON: ") + e.what());
        }
        return io::parse_profile_document(doc, mode);
      }();
      if (in.decimal_fallback) err << "warning: decimal positions given; using floating mode\n";
      return in;
    };

    auto emit_analysis = [&](const io::Analysis& a) {
      writer.json_record(a.report);
      writer.csv_header({"vendor", "position", "profit", "best_value", "best_class", "witness", "improving"});
      const auto& positions = a.report["input"]["profile"]["positions"];
      const auto& profits = a.report["profits"];
      for (std::size_t k = 0; k < positions.size(); ++k) {
        const auto& b = a.report["best_responses"][k];
        writer.csv_row({std::to_string(k + 1), detail::csv_cell(positions[k]), detail::csv_cell(profits[k]),
                        detail::csv_cell(b["best_value"]), b["best_class"].get<std::string>(),
                        detail::csv_cell(b["witness"]), b["improving"].get<bool>() ? "true" : "false"});
      }
    };

    if (profit->parsed() || check->parsed() || br->parsed()) {
      const auto in = load_profile();
      const std::string command = profit->parsed() ? "profit" : check->parsed() ? "check" : "best-response";
      return std::visit(
          [&](const auto& p) -> int {
            using T = typename std::decay_t<decltype(p)>::scalar_type;
            auto a = io::analyze(p, command, in.raw);
            if (profit->parsed() && oracle_resolution > 0) {
              const auto closed = profit_closed_form(p);
              const auto oracle = profit_integral_oracle(p, oracle_resolution);
              double dev = 0.0;
              for (std::size_t k = 0; k < p.size(); ++k)
                dev = std::max(dev, std::abs(to_double<T>(closed[k]) - to_double<T>(oracle[k])));
              a.report["oracle"] = {{"resolution", oracle_resolution},
                                    {"profits", io::scalars_json(oracle.values())},
                                    {"max_deviation", dev},
                                    {"bound", 2.0 * static_cast<double>(p.size()) / static_cast<double>(oracle_resolution)}};
            }
            if (br->parsed()) {
              if (vendor < 1 || vendor > static_cast<std::int64_t>(p.size())) {
                err << "error: --vendor must be in 1.." << p.size() << '\n';
                return kUsage;
              }
              a.report["best_response"] = a.report["best_responses"][static_cast<std::size_t>(vendor - 1)];
            }
            emit_analysis(a);
            if (!a.agreement()) {
              err << "error: gap condition and best-response oracle disagree\n";
              return kDisagreement;
            }
            if (check->parsed()) return a.oracle ? kSuccess : kNotEquilibrium;
            return kSuccess;
          },
          in.profile);
    }

    if (sample->parsed()) {
      const bool use_float = mode == io::ModeRequest::floating;
      if (want_equilibrium) {
        writer.csv_header({"seed", "n", "tries", "accepted", "positions"});
      } else {
        writer.csv_header({"seed", "n", "positions"});
      }
      std::uint64_t total_tries = 0;
      std::uint64_t accepted = 0;
      auto emit = [&](const auto& profile_or_null, std::uint64_t s, std::uint64_t tries) {
        json rec{{"record", "sample"}, {"seed", s}};
        if (profile_or_null) {
          rec.update(io::profile_document(*profile_or_null));
        } else {
          rec["n"] = n;
          rec["positions"] = nullptr;
        }
        if (want_equilibrium) {
          rec["tries"] = tries;
          rec["accepted"] = static_cast<bool>(profile_or_null);
        }
        writer.json_record(rec);
        if (want_equilibrium) {
          writer.csv_row({std::to_string(s), std::to_string(n), std::to_string(tries),
                          profile_or_null ? "true" : "false",
                          profile_or_null ? detail::csv_positions(rec["positions"]) : ""});
        } else {
          writer.csv_row({std::to_string(s), std::to_string(n), detail::csv_positions(rec["positions"])});
        }
      };
      for (std::uint64_t i = 0; i < count; ++i) {
        const std::uint64_t s = seed + i;
        if (want_equilibrium) {
          if (use_float) {
            const auto r = sample_equilibrium<double>(n, s, max_tries);
            total_tries += r.tries;
            accepted += r.profile ? 1 : 0;
            emit(r.profile, s, r.tries);
          } else {
            const auto r = sample_equilibrium<Rational>(n, s, max_tries);
            total_tries += r.tries;
            accepted += r.profile ? 1 : 0;
            emit(r.profile, s, r.tries);
          }
        } else if (use_float) {
          emit(std::optional(sample_random<double>(n, s)), s, 0);
        } else {
          emit(std::optional(sample_random<Rational>(n, s, grid > 0 ? grid : kDefaultSampleGrid)), s, 0);
        }
      }
      if (want_equilibrium) {
        writer.json_record({{"record", "summary"},
                            {"n", n},
                            {"accepted", accepted},
                            {"tries", total_tries},
                            {"acceptance_rate", static_cast<double>(accepted) / static_cast<double>(total_tries)},
                            {"metadata", {{"seed", seed}, {"mode", use_float ? "float" : "exact"},
                                          {"version", std::string(io::kVersion)}}}});
      }
      return kSuccess;
    }

    if (enumerate->parsed()) {
      if (mode == io::ModeRequest::floating) {
        err << "error: enumeration requires exact mode\n";
        return kUsage;
      }
      const auto m = static_cast<std::size_t>(grid);
      const auto result = grid_enumerate_equilibria<Rational>(n, m, budget);
      if (result.refused) {
        err << "error: " << result.candidate_count << " candidates exceed the budget of " << budget << '\n';
        writer.json_record({{"record", "refused"}, {"candidates", result.candidate_count}, {"budget", budget}});
        return kBudgetRefused;
      }
      writer.csv_header({"index", "n", "positions"});
      std::size_t idx = 0;
      for (const auto& c : result.equilibria) {
        ++idx;
        json rec{{"record", "equilibrium"}, {"index", idx}};
        rec.update(io::profile_document(c.profile()));
        writer.json_record(rec);
        writer.csv_row({std::to_string(idx), std::to_string(n), detail::csv_positions(rec["positions"])});
      }
      writer.json_record({{"record", "summary"},
                          {"n", n},
                          {"grid", m},
                          {"candidates", result.candidate_count},
                          {"equilibria", result.equilibria.size()},
                          {"metadata", {{"mode", "exact"}, {"version", std::string(io::kVersion)}}}});
      return kSuccess;
    }

    if (dyn->parsed()) {
      if (positions_text.empty() && n == 0) throw io::ParseError("dynamics needs --n or --positions");
      const Schedule schedule = schedule_text == "random" ? Schedule::random(seed) : Schedule::round_robin();
      io::AnyProfile start = [&]() -> io::AnyProfile {
        if (!positions_text.empty()) {
          auto in = io::parse_position_list(positions_text, mode);
          if (in.decimal_fallback) err << "warning: decimal positions given; using floating mode\n";
          return in.profile;
        }
        if (mode == io::ModeRequest::floating) return sample_random<double>(n, seed);
        return sample_random<Rational>(n, seed, grid > 0 ? grid : kDefaultSampleGrid);
      }();
      return std::visit(
          [&](const auto& p) -> int {
            const auto trace = run_dynamics(p, schedule, max_steps);
            const json meta{{"seed", seed}, {"mode", io::mode_name(p.mode())}, {"version", std::string(io::kVersion)}};
            json start_rec{{"record", "start"}, {"schedule", std::string(io::schedule_name(schedule))},
                           {"max_steps", max_steps}, {"metadata", meta}};
            start_rec.update(io::profile_document(p));
            writer.json_record(start_rec);
            writer.csv_header({"event", "step", "mover", "from", "to", "profit_before", "profit_after"});
            for (const auto& mv : trace.moves) {
              json rec = io::move_json(mv);
              rec["record"] = "move";
              writer.json_record(rec);
              writer.csv_row({"move", std::to_string(mv.step), std::to_string(mv.mover + 1),
                              detail::csv_cell(rec["from"]), detail::csv_cell(rec["to"]),
                              detail::csv_cell(rec["profit_before"]), detail::csv_cell(rec["profit_after"])});
            }
            const bool cond = gap_condition(trace.final_profile).holds;
            const bool oracle = is_equilibrium(trace.final_profile);
            json outcome = io::outcome_json(trace.outcome);
            json end_rec{{"record", "outcome"},
                         {"outcome", outcome},
                         {"final", io::profile_document(trace.final_profile)},
                         {"verdicts", {{"condition", cond}, {"oracle", oracle}, {"agreement", cond == oracle}}}};
            writer.json_record(end_rec);
            writer.csv_row({outcome["kind"].get<std::string>(), "", "", "", "", "", ""});
            if (cond != oracle) {
              err << "error: gap condition and best-response oracle disagree on the final profile\n";
              return kDisagreement;
            }
            return kSuccess;
          },
          start);
    }
  } catch (const io::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

inline int run_main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  std::optional<std::string> env;
  if (const char* v = std::getenv("HOTELLING_MODE")) env = v;
  return run(args, {std::cout, std::cerr, env});
}

}  // namespace hotelling::cli
