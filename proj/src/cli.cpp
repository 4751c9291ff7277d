#include "steadycheck/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "steadycheck/convergence.hpp"
#include "steadycheck/fractional_filter.hpp"
#include "steadycheck/ingest.hpp"
#include "steadycheck/report.hpp"
#include "steadycheck/reverse_stats.hpp"
#include "steadycheck/synth.hpp"
#include "steadycheck/transient.hpp"

namespace steadycheck {

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

namespace {

constexpr int kExitUsage = 2;

struct AnalysisFlags {
  std::string path;
  double confidence = 0.95;
  std::optional<double> tolerance;
  std::optional<double> detection_threshold;
  std::size_t min_filter_length = 2;
  std::string strategy = "finest_level";
  std::string acf_truncation = "full";
  bool no_trend_check = false;
  double max_cut_fraction = 0.5;
  std::optional<std::string> value_column;
  std::optional<std::string> time_column;
  bool no_time = false;
  std::string header = "auto";
  std::optional<std::string> delimiter;
};

void add_analysis_flags(CLI::App& cmd, AnalysisFlags& f) {
  cmd.add_option("file", f.path, "Input table (CSV or whitespace-delimited)")->required();
  cmd.add_option("--confidence", f.confidence, "Confidence level C in (0, 1)")->capture_default_str();
  cmd.add_option("--tolerance", f.tolerance, "Tolerance on the CI half-width and the trend")
      ->required();
  cmd.add_option("--detection-threshold", f.detection_threshold,
                 "Local-spread threshold for validating minima (default: --tolerance)");
  cmd.add_option("--min-filter-length", f.min_filter_length, "Shortest pyramid level")
      ->capture_default_str();
  cmd.add_option("--strategy", f.strategy, "finest_level | last_level | majority_vote")
      ->check(CLI::IsMember({"finest_level", "last_level", "majority_vote"}))
      ->capture_default_str();
  cmd.add_option("--acf-truncation", f.acf_truncation, "full | first_negative")
      ->check(CLI::IsMember({"full", "first_negative"}))
      ->capture_default_str();
  cmd.add_flag("--no-trend-check", f.no_trend_check, "Skip the trend-line condition");
  cmd.add_option("--max-cut-fraction", f.max_cut_fraction,
                 "Report drifting when the cutoff lies beyond this fraction of the series (1: off)")
      ->capture_default_str();
  cmd.add_option("--value-column", f.value_column, "Value column: header name or 1-based position");
  cmd.add_option("--time-column", f.time_column, "Time column: header name or 1-based position");
  cmd.add_flag("--no-time", f.no_time, "Ignore time columns and number samples 1..N");
  cmd.add_option("--header", f.header, "auto | yes | no")
      ->check(CLI::IsMember({"auto", "yes", "no"}))
      ->capture_default_str();
  cmd.add_option("--delimiter", f.delimiter, "Field delimiter: ',' or 'whitespace' (default: auto)");
}

AnalysisConfig to_config(const AnalysisFlags& f) {
  AnalysisConfig c;
  c.confidence = f.confidence;
  c.tolerance = *f.tolerance;
  c.detection_threshold = f.detection_threshold;
  c.min_filter_length = f.min_filter_length;
  c.candidate_strategy = parse_candidate_strategy(f.strategy).value();
  c.acf_truncation = parse_acf_truncation(f.acf_truncation).value();
  c.trend_check_enabled = !f.no_trend_check;
  c.max_cut_fraction = f.max_cut_fraction;
  c.validate();
  return c;
}

IngestOptions to_ingest_options(const AnalysisFlags& f) {
  IngestOptions o;
  o.value_column = f.value_column;
  o.time_column = f.time_column;
  o.synthesize_time = f.no_time;
  o.header = f.header == "yes" ? HeaderMode::Present
             : f.header == "no" ? HeaderMode::Absent
                                : HeaderMode::Auto;
  if (f.delimiter) {
    if (*f.delimiter == ",") {
      o.delimiter = Delimiter::Comma;
    } else if (*f.delimiter == "whitespace") {
      o.delimiter = Delimiter::Whitespace;
    } else {
      throw Error(ErrorCode::InvalidConfig, "delimiter must be ',' or 'whitespace'");
    }
  }
  return o;
}

InputDescriptor describe(const std::string& path, const IngestResult& r) {
  InputDescriptor d;
  d.path = path;
  d.value_column = r.value_column;
  d.time_column = r.time_column;
  d.samples = r.rows;
  return d;
}

void write_csv_row(std::ostream& os, std::initializer_list<std::string> fields) {
  bool first = true;
  for (const std::string& f : fields) {
    if (!first) os << ',';
    os << f;
    first = false;
  }
  os << '\n';
}

int analyze(const AnalysisFlags& flags, const std::string& format,
            const std::optional<std::string>& export_dir, std::ostream& out) {
  const AnalysisConfig config = to_config(flags);
  const IngestResult data = ingest(flags.path, to_ingest_options(flags));
  const AnalysisReportDocument doc = make_report(describe(flags.path, data), config, data.series);
  if (export_dir && data.series.size() >= kMinDetectionLength) {
    export_curves(data.series, config, *export_dir);
  }
  out << (format == "text" ? format_text(doc) : serialize_report(doc));
  return exit_code_for(doc.status);
}

struct WatchFlags {
  double poll_interval = 1.0;
  std::size_t min_new_samples = 16;
  double max_wait = 0.0;
};

int watch(const AnalysisFlags& flags, const WatchFlags& w, std::ostream& out, std::ostream& err) {
  using clock = std::chrono::steady_clock;
  const AnalysisConfig config = to_config(flags);
  IngestOptions options = to_ingest_options(flags);
  options.complete_lines_only = true;

  const auto start = clock::now();
  const auto poll = std::chrono::duration<double>(w.poll_interval);
  std::optional<std::size_t> last_evaluated;
  std::optional<Status> last_status;
  int failures_in_row = 0;
  std::size_t evaluation = 0;

  while (true) {
    std::optional<AnalysisReportDocument> doc;
    std::size_t samples = 0;
    try {
      std::optional<IngestResult> data;
      try {
        data = ingest(flags.path, options);
        samples = data->rows;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::EmptySeries) throw;
      }
      failures_in_row = 0;
      const bool grown = !last_evaluated || samples >= *last_evaluated + w.min_new_samples;
      const bool starved = last_status == Status::InsufficientData;
      if (grown || starved) {
        if (data) {
          doc = make_report(describe(flags.path, *data), config, data->series);
        } else {
          AnalysisReportDocument empty;
          empty.input.path = flags.path;
          empty.config = config;
          empty.status = Status::InsufficientData;
          empty.message = "no samples yet";
          doc = std::move(empty);
        }
        last_evaluated = samples;
      }
    } catch (const Error& e) {
      if (++failures_in_row >= 2) {
        err << "steadycheck watch: " << e.what() << "\n";
        return kExitUsage;
      }
    }

    if (doc) {
      ++evaluation;
      last_status = doc->status;
      nlohmann::json line = {{"evaluation", evaluation},
                             {"samples", samples},
                             {"status", to_string(doc->status)}};
      if (doc->transient) {
        line["t_cut"] = doc->transient->t_cut;
        line["cut_index"] = doc->transient->cut_index;
      }
      if (doc->convergence) {
        const ConvergenceReport& c = *doc->convergence;
        line["mean"] = c.mean;
        line["ci_half_width"] = std::isfinite(c.ci_half_width) ? nlohmann::json(c.ci_half_width)
                                                                : nlohmann::json(nullptr);
        line["n_eff"] = c.n_eff;
        line["accumulated_trend"] = c.accumulated_trend;
      }
      if (doc->message) line["message"] = *doc->message;
      out << line.dump() << std::endl;
      if (doc->status == Status::Converged) return 0;
    }

    if (w.max_wait > 0.0 &&
        std::chrono::duration<double>(clock::now() - start).count() >= w.max_wait) {
      return 1;
    }
    std::this_thread::sleep_for(poll);
  }
}

// `key = value` lines; '#' starts a comment.
void apply_signal_config(const std::string& path, SignalSpec& spec) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::FileNotFound, "cannot open '" + path + "'");
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    if (trim(line).empty()) continue;
    if (eq == std::string::npos) {
      throw Error(ErrorCode::ParseError, path + ":" + std::to_string(number) + ": expected key = value",
                  number);
    }
    std::string key = trim(line.substr(0, eq));
    std::replace(key.begin(), key.end(), '-', '_');
    const std::string value = trim(line.substr(eq + 1));
    auto num = [&]() {
      try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, path + ":" + std::to_string(number) + ": bad number '" + value + "'",
                    number);
      }
    };
    if (key == "kind") {
      spec.kind = parse_signal_kind(value).value_or(spec.kind);
      if (!parse_signal_kind(value)) throw Error(ErrorCode::InvalidSpec, "unknown kind '" + value + "'");
    } else if (key == "taper") {
      if (!parse_taper(value)) throw Error(ErrorCode::InvalidSpec, "unknown taper '" + value + "'");
      spec.taper = *parse_taper(value);
    } else if (key == "n") {
      spec.n = static_cast<std::size_t>(num());
    } else if (key == "seed") {
      std::uint64_t seed = 0;
      const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), seed);
      if (ec != std::errc() || end != value.data() + value.size()) {
        throw Error(ErrorCode::ParseError, path + ":" + std::to_string(number) + ": bad seed '" + value + "'",
                    number);
      }
      spec.seed = seed;
    } else if (key == "mean") {
      spec.mean = num();
    } else if (key == "sd") {
      spec.sd = num();
    } else if (key == "transient_end") {
      spec.transient_end = num();
    } else if (key == "amplitude") {
      spec.transient_amplitude = num();
    } else if (key == "period") {
      spec.transient_period = num();
    } else if (key == "phi") {
      spec.phi = num();
    } else if (key == "slope") {
      spec.slope = num();
    } else if (key == "dt") {
      spec.dt = num();
    } else {
      throw Error(ErrorCode::InvalidSpec, "unknown signal key '" + key + "'");
    }
  }
}

void write_series_csv(const TimeSeries& series, std::ostream& os) {
  os << "time,value\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    os << format_double(series.time(i)) << ',' << format_double(series.value(i)) << '\n';
  }
}

}  // namespace

void export_curves(const TimeSeries& series, const AnalysisConfig& config,
                   const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const FilterPyramid pyramid = build_pyramid(series, config.min_filter_length);
  const TransientReport report = detect_transient(series, config);

  auto open = [&](const std::string& name) {
    std::ofstream f(dir / name);
    if (!f) throw Error(ErrorCode::FileNotFound, "cannot write '" + (dir / name).string() + "'");
    return f;
  };

  for (const FilterLevel& level : pyramid.levels) {
    std::ofstream f = open("level_" + std::to_string(level.level_index) + ".csv");
    const RmseCurve curve = reverse_cumulative_stats(level.values);
    f << "index,time,value,rev_mean,rev_sem\n";
    for (std::size_t i = 0; i < level.size(); ++i) {
      write_csv_row(f, {std::to_string(i), format_double(level.times[i]), format_double(level.values[i]),
                        format_double(curve.rev_mean[i]),
                        i < curve.rev_sem.size() ? format_double(curve.rev_sem[i]) : std::string()});
    }
  }

  std::ofstream cands = open("candidates.csv");
  cands << "level,index,time,rmse,spread,validated,selected\n";
  for (const LevelDetection& level : report.levels) {
    bool listed = false;
    for (const CandidateMinimum& c : level.candidates) {
      const bool selected = c.index_in_level == level.selected_index;
      listed = listed || selected;
      write_csv_row(cands, {std::to_string(c.level_index), std::to_string(c.index_in_level),
                            format_double(c.mapped_time), format_double(c.rmse_value),
                            format_double(c.local_spread), c.validated ? "1" : "0",
                            selected ? "1" : "0"});
    }
    if (!listed) {  // global-minimum fallback that is not an interior minimum
      const FilterLevel& lv = pyramid.levels[level.level_index];
      const RmseCurve curve = reverse_cumulative_stats(lv.values);
      write_csv_row(cands, {std::to_string(level.level_index), std::to_string(level.selected_index),
                            format_double(level.t_min), format_double(curve.rev_sem[level.selected_index]),
                            "", "0", "1"});
    }
  }

  std::ofstream variant = open("rmse_filtered.csv");
  variant << "level,index,time,rev_sem\n";
  const RmseCurve base = reverse_cumulative_stats(series.values());
  FilterLevel level;
  level.values = base.rev_sem;
  level.times.assign(series.times().begin(), series.times().end() - 1);
  const std::size_t floor_len = std::max<std::size_t>(config.min_filter_length, 2);
  while (true) {
    for (std::size_t i = 0; i < level.size(); ++i) {
      write_csv_row(variant, {std::to_string(level.level_index), std::to_string(i),
                              format_double(level.times[i]), format_double(level.values[i])});
    }
    if (level.size() <= floor_len) break;
    level = filter_once(level);
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Initial-transient detection and convergence assessment for simulation monitors",
               "steadycheck"};
  app.require_subcommand(1);

  AnalysisFlags analyze_flags;
  std::string format = "json";
  std::optional<std::string> export_dir;
  CLI::App* analyze_cmd = app.add_subcommand("analyze", "Analyze a recorded series once");
  add_analysis_flags(*analyze_cmd, analyze_flags);
  analyze_cmd->add_option("--format", format, "json | text")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  analyze_cmd->add_option("--export-curves", export_dir, "Directory for per-level RMSE curves (CSV)");

  AnalysisFlags watch_flags;
  WatchFlags watch_opts;
  CLI::App* watch_cmd = app.add_subcommand("watch", "Re-analyze a growing file until it converges");
  add_analysis_flags(*watch_cmd, watch_flags);
  watch_cmd->add_option("--poll-interval", watch_opts.poll_interval, "Seconds between polls")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  watch_cmd->add_option("--min-new-samples", watch_opts.min_new_samples,
                        "Growth that triggers a re-analysis")
      ->capture_default_str();
  watch_cmd->add_option("--max-wait", watch_opts.max_wait, "Give up after this many seconds (0: never)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  SignalSpec spec;
  std::string kind = "gaussian";
  std::string taper = "none";
  std::optional<std::string> output;
  std::optional<std::string> config_file;
  CLI::App* gen_cmd = app.add_subcommand("generate", "Write a synthetic test signal as CSV");
  gen_cmd->add_option("--config", config_file, "key = value file; flags override it");
  gen_cmd->add_option("--kind", kind, "gaussian | gaussian_with_transient | ar1 | step | ramp")
      ->check(CLI::IsMember({"gaussian", "gaussian_with_transient", "ar1", "step", "ramp"}));
  gen_cmd->add_option("--n", spec.n, "Number of samples");
  gen_cmd->add_option("--seed", spec.seed, "RNG seed");
  gen_cmd->add_option("--mean", spec.mean, "Mean");
  gen_cmd->add_option("--sd", spec.sd, "Noise standard deviation");
  gen_cmd->add_option("--transient-end", spec.transient_end, "End of the transient (time units)");
  gen_cmd->add_option("--amplitude", spec.transient_amplitude, "Transient amplitude");
  gen_cmd->add_option("--period", spec.transient_period, "Transient sinusoid period");
  gen_cmd->add_option("--taper", taper, "Transient envelope: none | linear")
      ->check(CLI::IsMember({"none", "linear"}));
  gen_cmd->add_option("--phi", spec.phi, "AR(1) coefficient");
  gen_cmd->add_option("--slope", spec.slope, "Ramp slope per time unit");
  gen_cmd->add_option("--dt", spec.dt, "Sample spacing");
  gen_cmd->add_option("-o,--output", output, "Output file (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*analyze_cmd) return analyze(analyze_flags, format, export_dir, out);
    if (*watch_cmd) return watch(watch_flags, watch_opts, out, err);
    if (*gen_cmd) {
      SignalSpec final_spec;
      if (config_file) apply_signal_config(*config_file, final_spec);
      // Flags given on the command line override the config file.
      auto given = [&](const char* name) { return gen_cmd->count(name) > 0; };
      if (given("--kind")) final_spec.kind = parse_signal_kind(kind).value();
      if (given("--taper")) final_spec.taper = parse_taper(taper).value();
      if (given("--n")) final_spec.n = spec.n;
      if (given("--seed")) final_spec.seed = spec.seed;
      if (given("--mean")) final_spec.mean = spec.mean;
      if (given("--sd")) final_spec.sd = spec.sd;
      if (given("--transient-end")) final_spec.transient_end = spec.transient_end;
      if (given("--amplitude")) final_spec.transient_amplitude = spec.transient_amplitude;
      if (given("--period")) final_spec.transient_period = spec.transient_period;
      if (given("--phi")) final_spec.phi = spec.phi;
      if (given("--slope")) final_spec.slope = spec.slope;
      if (given("--dt")) final_spec.dt = spec.dt;
      const TimeSeries series = generate(final_spec);
      if (output) {
        std::ofstream f(*output);
        if (!f) throw Error(ErrorCode::FileNotFound, "cannot write '" + *output + "'");
        write_series_csv(series, f);
      } else {
        write_series_csv(series, out);
      }
      return 0;
    }
  } catch (const Error& e) {
    err << "steadycheck: " << to_string(e.code()) << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "steadycheck: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace steadycheck
