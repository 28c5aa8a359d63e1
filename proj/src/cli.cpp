#include "erg/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "erg/experiment.hpp"
#include "erg/extremes.hpp"
#include "erg/graph.hpp"
#include "erg/parallel.hpp"
#include "erg/verify.hpp"

namespace erg {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fully resolved experiment configuration. JSON keys match the field names.
struct Config {
  json family = {{"kind", "gabriel"}};
  int d = 2;
  std::vector<double> t_values;
  std::optional<Box> window;
  int replications = 1000;
  double b = -5.0;
  double s_max = kDefaultSMax;
  std::uint64_t seed = 1;
  std::string output_dir = "erg-out";
  int threads = 0;
  std::vector<double> count_b = {0.0, 1.0, 2.0};
  int trials = 1000;
  std::int64_t mc_n = 20'000;
  double gamma_factor = 1.0;
  bool fail_on_violation = true;
  std::optional<double> truncation_length;
  bool naive = false;

  Box resolved_window() const { return window ? *window : Box::unit(d); }

  // threads is deliberately left out: outputs must not depend on it.
  json to_json() const {
    const Box w = resolved_window();
    json j;
    j["family"] = family;
    j["d"] = d;
    j["t_values"] = t_values;
    j["window"] = {{"lower", w.lower}, {"upper", w.upper}};
    j["replications"] = replications;
    j["b"] = b;
    j["s_max"] = s_max;
    j["seed"] = seed;
    j["output_dir"] = output_dir;
    j["count_b"] = count_b;
    j["trials"] = trials;
    j["mc_n"] = mc_n;
    j["gamma_factor"] = gamma_factor;
    j["fail_on_violation"] = fail_on_violation;
    j["truncation_length"] = truncation_length ? json(*truncation_length) : json();
    j["naive"] = naive;
    return j;
  }
};

void apply_config_file(Config& c, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError("config file is not valid JSON: " + std::string(e.what()));
  }
  if (!j.is_object()) throw UsageError("config file must hold a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "family") {
        c.family = v.is_string() ? json{{"kind", v.get<std::string>()}} : v;
      } else if (key == "d") {
        c.d = v.get<int>();
      } else if (key == "t_values") {
        c.t_values = v.get<std::vector<double>>();
      } else if (key == "t") {
        c.t_values = {v.get<double>()};
      } else if (key == "window") {
        c.window = Box(v.at("lower").get<Point>(), v.at("upper").get<Point>());
      } else if (key == "replications") {
        c.replications = v.get<int>();
      } else if (key == "b") {
        c.b = v.get<double>();
      } else if (key == "s_max") {
        c.s_max = v.get<double>();
      } else if (key == "seed") {
        c.seed = v.get<std::uint64_t>();
      } else if (key == "output_dir") {
        c.output_dir = v.get<std::string>();
      } else if (key == "threads") {
        c.threads = v.get<int>();
      } else if (key == "count_b") {
        c.count_b = v.get<std::vector<double>>();
      } else if (key == "trials") {
        c.trials = v.get<int>();
      } else if (key == "mc_n") {
        c.mc_n = v.get<std::int64_t>();
      } else if (key == "gamma_factor") {
        c.gamma_factor = v.get<double>();
      } else if (key == "fail_on_violation") {
        c.fail_on_violation = v.get<bool>();
      } else if (key == "truncation_length") {
        if (v.is_null()) {
          c.truncation_length.reset();
        } else {
          c.truncation_length = v.get<double>();
        }
      } else if (key == "naive") {
        c.naive = v.get<bool>();
      } else {
        throw UsageError("unknown config key \"" + key + "\"");
      }
    }
  } catch (const json::exception& e) {
    throw UsageError("bad config value: " + std::string(e.what()));
  }
}

// Flags captured from the command line; only those given override the file.
struct Flags {
  std::string config;
  std::string family, body;
  double beta = 0.0, theta = 0.0;
  int arc_resolution = 512;
  int d = 2;
  std::vector<double> t_values;
  std::vector<double> window;
  int replications = 0;
  double b = 0.0, s_max = 0.0;
  std::uint64_t seed = 0;
  std::string out;
  int threads = 0;
  std::vector<double> count_b;
  int trials = 0;
  std::int64_t mc_n = 0;
  double gamma_factor = 1.0;
  bool fail_on_violation = false, report_only = false;
  double truncation = 0.0;
  bool naive = false;
};

struct Options {
  CLI::Option *config, *family, *body, *beta, *theta, *arc, *d, *t, *window, *reps, *b, *s_max, *seed, *out,
      *threads, *count_b, *trials, *mc_n, *gamma_factor, *fail, *report_only, *truncation, *naive;
};

Options add_options(CLI::App* cmd, Flags& f) {
  Options o{};
  o.config = cmd->add_option("--config", f.config, "JSON config file; flags override its values");
  o.family = cmd->add_option("--family", f.family, "region family (gabriel, strong-nn, rng, beta-skeleton, ...)");
  o.body = cmd->add_option("--body", f.body, "built-in body for general-gabriel (square, ellipse, triangle)");
  o.beta = cmd->add_option("--beta", f.beta, "beta-skeleton parameter (>= 1)");
  o.theta = cmd->add_option("--theta", f.theta, "pacman sector angle");
  o.arc = cmd->add_option("--arc-resolution", f.arc_resolution, "pacman arc resolution");
  o.d = cmd->add_option("--d", f.d, "dimension");
  o.t = cmd->add_option("--t,--t-values", f.t_values, "intensity or list of intensities")->delimiter(',');
  o.window = cmd->add_option("--window", f.window, "observation window lower..., upper... (2d numbers)")
                 ->delimiter(',');
  o.reps = cmd->add_option("--replications", f.replications, "replications per intensity");
  o.b = cmd->add_option("--b", f.b, "threshold on transformed lengths");
  o.s_max = cmd->add_option("--s-max", f.s_max, "truncation level for transformed lengths");
  o.seed = cmd->add_option("--seed", f.seed, "master seed");
  o.out = cmd->add_option("--out,--output-dir", f.out, "output directory");
  o.threads = cmd->add_option("--threads", f.threads, "worker threads (default: $ERG_LAB_THREADS or all cores)");
  o.count_b = cmd->add_option("--count-b", f.count_b, "thresholds for the count columns")->delimiter(',');
  o.trials = cmd->add_option("--trials", f.trials, "Monte Carlo trials per check");
  o.mc_n = cmd->add_option("--mc-n", f.mc_n, "Monte Carlo samples per volume estimate");
  o.gamma_factor = cmd->add_option("--gamma-factor", f.gamma_factor, "multiply the reference gamma (negative control)");
  o.fail = cmd->add_flag("--fail-on-violation", f.fail_on_violation, "exit 1 when a check fails (default)");
  o.report_only = cmd->add_flag("--report-only", f.report_only, "always exit 0 after writing the report");
  o.truncation = cmd->add_option("--truncation", f.truncation, "maximal edge length for the graph command");
  o.naive = cmd->add_flag("--naive", f.naive, "use the cubic-time reference builder");
  return o;
}

Config resolve(const Flags& f, const Options& o) {
  Config c;
  if (o.config->count()) apply_config_file(c, f.config);
  if (o.family->count()) c.family = json{{"kind", f.family}};
  if (o.beta->count()) c.family["beta"] = f.beta;
  if (o.theta->count()) c.family["theta"] = f.theta;
  if (o.arc->count()) c.family["arc_resolution"] = f.arc_resolution;
  if (o.body->count()) c.family["body"] = {{"builtin", f.body}};
  if (o.d->count()) c.d = f.d;
  if (o.t->count()) c.t_values = f.t_values;
  if (o.reps->count()) c.replications = f.replications;
  if (o.b->count()) c.b = f.b;
  if (o.s_max->count()) c.s_max = f.s_max;
  if (o.seed->count()) c.seed = f.seed;
  if (o.out->count()) c.output_dir = f.out;
  if (o.count_b->count()) c.count_b = f.count_b;
  if (o.trials->count()) c.trials = f.trials;
  if (o.mc_n->count()) c.mc_n = f.mc_n;
  if (o.gamma_factor->count()) c.gamma_factor = f.gamma_factor;
  if (o.fail->count()) c.fail_on_violation = true;
  if (o.report_only->count()) c.fail_on_violation = false;
  if (o.truncation->count()) c.truncation_length = f.truncation;
  if (o.naive->count()) c.naive = true;
  if (o.threads->count()) {
    c.threads = f.threads;
  } else if (c.threads == 0) {
    if (const char* env = std::getenv("ERG_LAB_THREADS")) {
      try {
        c.threads = std::stoi(env);
      } catch (const std::exception&) {
        throw UsageError("ERG_LAB_THREADS must be an integer");
      }
    }
  }
  if (o.window->count()) {
    const std::size_t n = f.window.size();
    if (n % 2 != 0 || n == 0) throw UsageError("--window needs 2d numbers: lower coordinates then upper");
    c.window = Box(Point(f.window.begin(), f.window.begin() + n / 2), Point(f.window.begin() + n / 2, f.window.end()));
  }

  if (c.d < 1) throw UsageError("d must be positive");
  if (c.window && c.window->dim() != c.d) throw UsageError("window dimension does not match d");
  if (c.resolved_window().volume() <= 0.0) throw UsageError("window must have positive volume");
  for (double t : c.t_values) {
    if (!(t >= 2.0)) throw UsageError("every t must be at least 2");
  }
  if (c.replications < 1) throw UsageError("replications must be at least 1");
  if (c.trials < 1) throw UsageError("trials must be at least 1");
  if (c.mc_n < 1) throw UsageError("mc_n must be positive");
  if (c.threads < 0) throw UsageError("threads must be non-negative");
  if (!std::isfinite(c.s_max)) throw UsageError("s_max must be finite");
  if (!(c.gamma_factor > 0.0)) throw UsageError("gamma_factor must be positive");
  if (c.truncation_length && !(*c.truncation_length > 0.0)) throw UsageError("truncation must be positive");
  return c;
}

// ---------------------------------------------------------------------------
// Output helpers

std::ofstream open_out(const fs::path& p) {
  std::ofstream os(p);
  if (!os) throw std::runtime_error("cannot write " + p.string());
  os.precision(17);
  return os;
}

void write_json(const fs::path& p, const json& j) { open_out(p) << j.dump(2) << '\n'; }

void write_manifest(const Config& c, const std::string& command, const json& extra = json::object()) {
  json m;
  m["software"] = kSoftwareName;
  m["version"] = kSoftwareVersion;
  m["command"] = command;
  m["config"] = c.to_json();
  for (const auto& [k, v] : extra.items()) m[k] = v;
  write_json(fs::path(c.output_dir) / "manifest.json", m);
}

std::string t_tag(double t) {
  std::ostringstream os;
  os.precision(15);
  os << t;
  return os.str();
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(); }

// ---------------------------------------------------------------------------
// Commands

int cmd_graph(const Config& c, const RegionFamily& family, std::ostream& out) {
  if (c.t_values.empty()) throw UsageError("graph needs --t");
  const double t = c.t_values.front();
  const Box w = c.resolved_window();
  const PointCloud points = sample_poisson({t, w, c.seed});
  const double trunc = c.truncation_length.value_or(kNoTruncation);
  const Graph g = c.naive ? build_naive(points, family, trunc) : build_grid(points, family, trunc);

  fs::create_directories(c.output_dir);
  {
    auto os = open_out(fs::path(c.output_dir) / "points.csv");
    write_points_csv(os, points);
  }
  {
    auto os = open_out(fs::path(c.output_dir) / "edges.csv");
    write_edges_csv(os, g);
  }
  json meta = graph_metadata(g, c.seed);
  meta["t"] = t;
  meta["window"] = {{"lower", w.lower}, {"upper", w.upper}};
  meta["edge_count"] = g.edges.size();
  meta["builder"] = c.naive ? "naive" : "grid";
  write_json(fs::path(c.output_dir) / "graph.json", meta);
  write_manifest(c, "graph");
  out << "graph: " << points.size() << " points, " << g.edges.size() << " edges -> " << c.output_dir << '\n';
  return 0;
}

struct RepOutcome {
  std::optional<Replication> rep;
  std::string error;
};

std::vector<RepOutcome> run_replications(const SimulationSetup& setup, double b, bool want_longest, const Config& c) {
  std::vector<RepOutcome> outcomes(c.replications);
  parallel_for(outcomes.size(), c.threads, [&](std::size_t r) {
    try {
      outcomes[r].rep = simulate(setup, b, replication_seed(c.seed, setup.t, r), want_longest);
    } catch (const std::exception& e) {
      outcomes[r].error = e.what();
    }
  });
  return outcomes;
}

int cmd_gumbel_sweep(const Config& c, const RegionFamily& family, std::ostream& out, std::ostream& err) {
  if (c.t_values.empty()) throw UsageError("gumbel-sweep needs at least one t value");
  for (double b : c.count_b) {
    if (b > c.s_max) throw UsageError("count threshold above s_max");
  }
  const Box w = c.resolved_window();
  const double vol = w.volume();
  const GammaValue gv = gamma(family, c.d);
  const double g = gv.value;
  const double floor = std::min(c.count_b.empty() ? -3.0 : *std::min_element(c.count_b.begin(), c.count_b.end()), -3.0);

  fs::create_directories(c.output_dir);
  auto sweep = open_out(fs::path(c.output_dir) / "sweep.csv");
  sweep << "t,ks,ks_stderr,rate_shape,n_rep\n";
  json summary;
  summary["family"] = family.to_json();
  summary["d"] = c.d;
  summary["gamma"] = g;
  summary["gamma_std_error"] = gv.std_error;
  summary["tau"] = tau(g, c.d);
  summary["window_volume"] = vol;
  summary["s_max"] = c.s_max;
  summary["count_b"] = c.count_b;
  summary["per_t"] = json::array();
  bool failed = false;
  std::string first_error;

  for (double t : c.t_values) {
    SimulationSetup setup{family, c.d, t, w, c.s_max, g};
    const auto outcomes = run_replications(setup, floor, true, c);
    auto samples = open_out(fs::path(c.output_dir) / ("samples_t" + t_tag(t) + ".csv"));
    samples << "rep,seed,L,s";
    for (std::size_t k = 0; k < c.count_b.size(); ++k) samples << ",count_b" << k;
    samples << '\n';
    std::vector<double> s_values;
    std::vector<double> count_sum(c.count_b.size(), 0.0);
    int builds_max = 0;
    for (std::size_t r = 0; r < outcomes.size(); ++r) {
      if (!outcomes[r].rep) {
        if (!failed) first_error = outcomes[r].error;
        failed = true;
        continue;
      }
      const Replication& rep = *outcomes[r].rep;
      const double s = rep.longest == kNoEdge ? kNoEdge : transform_length(rep.longest, t, g, c.d);
      s_values.push_back(s);
      builds_max = std::max(builds_max, rep.builds);
      samples << r << ',' << rep.seed << ',' << rep.longest << ',' << s;
      for (std::size_t k = 0; k < c.count_b.size(); ++k) {
        const auto n = std::count_if(rep.marks.begin(), rep.marks.end(),
                                     [&](const ExtremeMark& m) { return m.s >= c.count_b[k]; });
        count_sum[k] += static_cast<double>(n);
        samples << ',' << n;
      }
      samples << '\n';
    }
    samples.flush();
    json entry;
    entry["t"] = t;
    entry["n_rep"] = s_values.size();
    const PaddedBox padded = padded_box(w, t, family, c.d, c.s_max);
    entry["max_length"] = padded.max_length;
    entry["pad"] = padded.pad;
    entry["truncation_prob_bound"] = padded.truncation_prob_bound;
    entry["max_graph_builds"] = builds_max;
    json counts = json::array();
    for (std::size_t k = 0; k < c.count_b.size(); ++k) {
      counts.push_back({{"b", c.count_b[k]},
                        {"threshold_length", threshold_length(c.count_b[k], t, g, c.d)},
                        {"mean", s_values.empty() ? json() : json(count_sum[k] / s_values.size())},
                        {"expected", intensity_expected(vol, c.count_b[k], 1.0, t, g, c.d)}});
    }
    entry["counts"] = counts;
    if (!s_values.empty()) {
      const double ks = ks_distance(s_values, [vol](double s) { return gumbel_cdf(s, vol); });
      const double se = ks_null_stderr(s_values.size());
      entry["ks"] = ks;
      entry["ks_stderr"] = se;
      entry["rate_shape"] = rate_bound(c.d, t);
      sweep << t << ',' << ks << ',' << se << ',' << rate_bound(c.d, t) << ',' << s_values.size() << '\n';
      out << "t=" << t << "  KS=" << ks << "  n=" << s_values.size() << '\n';
    }
    summary["per_t"].push_back(entry);
    if (failed) break;
  }
  sweep.flush();
  summary["failed"] = failed;
  if (failed) summary["error"] = first_error;
  write_json(fs::path(c.output_dir) / "summary.json", summary);
  write_manifest(c, "gumbel-sweep");
  if (failed) {
    err << "replication failed: " << first_error << '\n';
    return 1;
  }
  return 0;
}

int cmd_process_test(const Config& c, const RegionFamily& family, std::ostream& out, std::ostream& err) {
  if (c.t_values.empty()) throw UsageError("process-test needs at least one t value");
  if (c.b > c.s_max) throw UsageError("b above s_max");
  const Box w = c.resolved_window();
  const std::vector<Box> cells = split_window(w);
  const double g = gamma(family, c.d).value;
  fs::create_directories(c.output_dir);
  json report;
  report["family"] = family.to_json();
  report["d"] = c.d;
  report["gamma"] = g;
  report["tau"] = tau(g, c.d);
  report["b"] = c.b;
  report["per_t"] = json::array();

  for (double t : c.t_values) {
    SimulationSetup setup{family, c.d, t, w, c.s_max, g};
    const auto outcomes = run_replications(setup, c.b, false, c);
    std::vector<std::vector<long long>> counts;
    std::vector<Direction> dirs;
    auto cell_csv = open_out(fs::path(c.output_dir) / ("cell_counts_t" + t_tag(t) + ".csv"));
    auto marks_csv = open_out(fs::path(c.output_dir) / ("marks_t" + t_tag(t) + ".csv"));
    cell_csv << "rep,seed";
    for (std::size_t k = 0; k < cells.size(); ++k) cell_csv << ",cell_" << k;
    cell_csv << '\n';
    marks_csv << "rep,s";
    for (int a = 0; a < c.d; ++a) marks_csv << ",mid_" << a;
    for (int a = 0; a < c.d; ++a) marks_csv << ",dir_" << a;
    marks_csv << '\n';
    for (std::size_t r = 0; r < outcomes.size(); ++r) {
      if (!outcomes[r].rep) {
        err << "replication " << r << " failed: " << outcomes[r].error << '\n';
        write_json(fs::path(c.output_dir) / "process.json", report);
        write_manifest(c, "process-test");
        return 1;
      }
      const Replication& rep = *outcomes[r].rep;
      std::vector<long long> row(cells.size(), 0);
      for (const ExtremeMark& m : rep.marks) {
        for (std::size_t k = 0; k < cells.size(); ++k) {
          if (cells[k].contains(m.midpoint)) {
            ++row[k];
            break;
          }
        }
        dirs.push_back(m.direction);
        marks_csv << r << ',' << m.s;
        for (double v : m.midpoint) marks_csv << ',' << v;
        for (double v : m.direction.unit) marks_csv << ',' << v;
        marks_csv << '\n';
      }
      cell_csv << r << ',' << rep.seed;
      for (long long v : row) cell_csv << ',' << v;
      cell_csv << '\n';
      counts.push_back(std::move(row));
    }
    json entry;
    entry["t"] = t;
    entry["n_rep"] = counts.size();
    entry["intensity_branch"] = c.b > -std::log(t) - tau(g, c.d) ? "exponential" : "constant";
    std::vector<double> means;
    for (const Box& cell : cells) means.push_back(intensity_expected(cell.volume(), c.b, 1.0, t, g, c.d));
    if (counts.size() >= 2) {
      const CountReport cr = count_statistics(counts, means);
      json jc = json::array();
      for (std::size_t k = 0; k < cells.size(); ++k) {
        const CellCountStats& s = cr.cells[k];
        jc.push_back({{"lower", cells[k].lower},
                      {"upper", cells[k].upper},
                      {"mean", s.mean},
                      {"theoretical_mean", s.theoretical_mean},
                      {"variance", s.variance},
                      {"dispersion", finite_or_null(s.dispersion)},
                      {"tv_poisson", s.tv_poisson}});
        out << "t=" << t << " cell " << k << ": mean " << s.mean << " (theory " << s.theoretical_mean << ")\n";
      }
      entry["cells"] = jc;
      json corr = json::array();
      for (const auto& row : cr.correlation) {
        json jr = json::array();
        for (double v : row) jr.push_back(finite_or_null(v));
        corr.push_back(jr);
      }
      entry["correlation"] = corr;
      entry["max_abs_correlation"] = cr.max_abs_correlation;
    } else {
      entry["theoretical_means"] = means;
    }
    if (!dirs.empty() && c.d >= 2) {
      const double ks = direction_uniformity(dirs, c.d);
      entry["direction_ks"] = ks;
      entry["direction_n"] = dirs.size();
      entry["direction_critical_1pct"] = 1.6276 / std::sqrt(static_cast<double>(dirs.size()));
    }
    report["per_t"].push_back(entry);
  }
  write_json(fs::path(c.output_dir) / "process.json", report);
  write_manifest(c, "process-test");
  return 0;
}

int cmd_verify(const Config& c, const RegionFamily& family, std::ostream& out) {
  fs::create_directories(c.output_dir);
  std::vector<VerificationReport> reports;
  std::optional<double> g_override;
  if (c.gamma_factor != 1.0) g_override = gamma(family, c.d).value * c.gamma_factor;
  reports.push_back(check_scaling(family, c.d, std::min(c.trials, 200), c.mc_n, derive_seed(c.seed, {1}), g_override,
                                  c.threads));
  reports.push_back(check_bounding(family, c.d, 200'000, derive_seed(c.seed, {2})));
  reports.push_back(
      check_volume_difference(family, c.d, c.trials, c.mc_n, derive_seed(c.seed, {3}), {}, c.threads));
  if (family.kind() == RegionKind::GeneralGabriel) {
    reports.push_back(
        check_translate_bound(*family.body(), 1.0, c.trials, c.mc_n, derive_seed(c.seed, {4}), c.threads));
  } else {
    reports.push_back(check_rotation_bound(RevolutionBody::from_family(family, c.d), std::min(c.trials, 200), c.mc_n,
                                           derive_seed(c.seed, {5}), c.threads)
                          .report);
  }
  json j;
  j["family"] = family.to_json();
  j["d"] = c.d;
  j["reports"] = json::array();
  bool ok = true;
  for (const auto& r : reports) {
    j["reports"].push_back(r.to_json());
    ok = ok && r.passed;
    out << r.check << ": " << (r.passed ? "ok" : "FAILED") << " (" << r.violations << " violations in " << r.trials
        << " trials)\n";
  }
  j["passed"] = ok;
  write_json(fs::path(c.output_dir) / "verify.json", j);
  write_manifest(c, "verify");
  return ok || !c.fail_on_violation ? 0 : 1;
}

int cmd_constants(const Config& c, const RegionFamily& family, std::ostream& out) {
  const Box w = c.resolved_window();
  const GammaValue gv = gamma(family, c.d);
  const VerificationReport vd =
      check_volume_difference(family, c.d, std::min(c.trials, 500), c.mc_n, derive_seed(c.seed, {3}), {}, c.threads);
  const double beta_hat = vd.estimates.at("beta_hat").value;
  const double a = alpha_effective(family);
  json j;
  j["family"] = family.to_json();
  j["d"] = c.d;
  j["gamma"] = gv.value;
  j["gamma_std_error"] = gv.std_error;
  j["tau"] = tau(gv.value, c.d);
  j["alpha"] = a;
  j["beta_hat"] = beta_hat;
  j["window_volume"] = w.volume();
  const TheoreticalConstants tc = theoretical_constants(c.d, a, beta_hat, gv.value, w.volume());
  j["constants"] = tc.to_json();
  json rates = json::array();
  for (double t : c.t_values) {
    rates.push_back({{"t", t},
                     {"rate_shape", rate_bound(c.d, t)},
                     {"max_length", threshold_length(c.s_max, t, gv.value, c.d)},
                     {"threshold_length_b", threshold_length(c.b, t, gv.value, c.d)}});
  }
  j["rates"] = rates;
  fs::create_directories(c.output_dir);
  write_json(fs::path(c.output_dir) / "constants.json", j);
  write_manifest(c, "constants");
  out << j.dump(2) << '\n';
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Empty region graph simulation and verification lab", kSoftwareName};
  app.require_subcommand(1);
  app.set_version_flag("--version", kSoftwareVersion);
  Flags flags;
  struct Sub {
    CLI::App* app;
    Options opts;
  };
  std::vector<std::pair<std::string, Sub>> subs;
  for (const char* name : {"graph", "gumbel-sweep", "process-test", "verify", "constants"}) {
    static const std::map<std::string, std::string> help = {
        {"graph", "sample one realisation and write points, edges and metadata"},
        {"gumbel-sweep", "longest-edge law across intensities"},
        {"process-test", "count and direction statistics of the extremes process"},
        {"verify", "Monte Carlo checks of the geometric assumptions"},
        {"constants", "explicit constants and rate shapes"}};
    CLI::App* cmd = app.add_subcommand(name, help.at(name));
    subs.emplace_back(name, Sub{cmd, add_options(cmd, flags)});
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  for (const auto& [name, sub] : subs) {
    if (!sub.app->parsed()) continue;
    Config config;
    std::optional<RegionFamily> family;
    try {
      config = resolve(flags, sub.opts);
      family = RegionFamily::from_json(config.family, config.d);
      family->check_dimension(config.d);
      if (config.d < 2 && name != "graph") throw UsageError("d must be at least 2");
    } catch (const std::exception& e) {
      err << "erg-lab " << name << ": " << e.what() << '\n';
      return 2;
    }
    try {
      if (name == "graph") return cmd_graph(config, *family, out);
      if (name == "gumbel-sweep") return cmd_gumbel_sweep(config, *family, out, err);
      if (name == "process-test") return cmd_process_test(config, *family, out, err);
      if (name == "verify") return cmd_verify(config, *family, out);
      return cmd_constants(config, *family, out);
    } catch (const UsageError& e) {
      err << "erg-lab " << name << ": " << e.what() << '\n';
      return 2;
    } catch (const std::exception& e) {
      err << "erg-lab " << name << ": " << e.what() << '\n';
      return 1;
    }
  }
  return 2;
}

}  // namespace erg
