// Command-line surface: instance generation, solving in all modes,
// validation, SVG rendering, and the ratio-search / bench harnesses.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bncm/bncm.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

constexpr double kRatioBound = 6.324555320336759;  // 2 * sqrt(10)

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) throw bncm::IOFailure("cannot open '" + path + "' for writing");
  out << body;
  if (!out) throw bncm::IOFailure("failed writing '" + path + "'");
}

void emit(const std::string& body, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << body;
  } else {
    write_text_file(output_path, body);
  }
}

struct GenOptions {
  std::string kind = "uniform";
  int pairs = 0;
  std::uint64_t seed = 0;
  double scale = 1.0;
  std::string output;
};

void run_gen(const GenOptions& o) {
  const bncm::InstanceSpec spec{bncm::kind_from_name(o.kind), o.pairs, o.seed, o.scale};
  const bncm::PointSet ps = bncm::generate_instance(spec);
  const std::string header = "bncm gen kind=" + o.kind + " pairs=" + std::to_string(o.pairs) +
                             " seed=" + std::to_string(o.seed) +
                             " scale=" + bncm::format_double(o.scale);
  bncm::write_points_file(o.output, ps, header);
}

struct SolveOptions {
  std::string input;
  std::string mode = "approx";
  std::string format = "json";
  std::string output;
  std::string svg;
};

ordered_json report_to_json(const std::string& mode, double bn, const bncm::Matching& m,
                            int n_points, double elapsed_ms, bool perfect, bool noncrossing,
                            std::optional<bool> ratio_ok) {
  ordered_json edges = ordered_json::array();
  for (const auto& [i, j] : m.pairs()) edges.push_back({i, j});
  ordered_json checks;
  checks["perfect"] = perfect;
  checks["noncrossing"] = noncrossing;
  if (ratio_ok) checks["ratio_bound_ok"] = *ratio_ok;
  ordered_json report;
  report["mode"] = mode;
  report["bottleneck"] = bn;
  report["edges"] = edges;
  report["n_points"] = n_points;
  report["elapsed_ms"] = elapsed_ms;
  report["checks"] = checks;
  return report;
}

std::string report_to_text(const ordered_json& r) {
  std::string s;
  s += "mode:        " + r["mode"].get<std::string>() + "\n";
  s += "points:      " + std::to_string(r["n_points"].get<int>()) + "\n";
  s += "bottleneck:  " + bncm::format_double(r["bottleneck"].get<double>()) + "\n";
  s += "edges:       ";
  for (const auto& e : r["edges"]) {
    s += "(" + std::to_string(e[0].get<int>()) + "," + std::to_string(e[1].get<int>()) + ") ";
  }
  s += "\n";
  s += "elapsed_ms:  " + bncm::format_double(r["elapsed_ms"].get<double>()) + "\n";
  s += "checks:      perfect=" + std::string(r["checks"]["perfect"].get<bool>() ? "yes" : "no");
  s += " noncrossing=" + std::string(r["checks"]["noncrossing"].get<bool>() ? "yes" : "no");
  if (r["checks"].contains("ratio_bound_ok")) {
    s += " ratio_bound_ok=" + std::string(r["checks"]["ratio_bound_ok"].get<bool>() ? "yes" : "no");
  }
  s += "\n";
  return s;
}

void run_solve(const SolveOptions& o) {
  const bncm::PointSet ps = bncm::read_points_file(o.input);
  ps.require_even("solve");

  const auto start = Clock::now();
  bncm::Matching matching;
  double bn = 0.0;
  std::optional<bool> ratio_ok;
  if (o.mode == "approx") {
    const auto base = bncm::solve_bottleneck(ps);
    const auto conv = bncm::convert_detailed(ps, base.matching);
    matching = conv.matching;
    bn = bncm::bottleneck(matching, ps);
    ratio_ok = bn <= kRatioBound * base.bottleneck * (1.0 + 1e-9);
  } else if (o.mode == "bottleneck") {
    auto r = bncm::solve_bottleneck(ps);
    matching = std::move(r.matching);
    bn = r.bottleneck;
  } else if (o.mode == "convex") {
    auto r = bncm::solve_convex(ps);
    matching = std::move(r.matching);
    bn = r.bottleneck;
  } else if (o.mode == "circle") {
    auto r = bncm::solve_circle(ps);
    matching = std::move(r.matching);
    bn = r.bottleneck;
  } else if (o.mode == "exact-small") {
    auto r = bncm::exact_bncm(ps, bncm::budget_from_env());
    matching = std::move(r.matching);
    bn = r.bottleneck;
  } else {
    throw bncm::InputError("unknown mode '" + o.mode + "'");
  }
  const double elapsed = ms_since(start);

  const bool perfect = bncm::is_perfect(matching, ps);
  const bool noncrossing = bncm::is_noncrossing(matching, ps);
  const bool needs_noncrossing = o.mode != "bottleneck";
  if (!perfect || (needs_noncrossing && !noncrossing) || (ratio_ok && !*ratio_ok)) {
    throw bncm::InvariantError("solve result failed its own validation checks");
  }

  const ordered_json report =
      report_to_json(o.mode, bn, matching, ps.size(), elapsed, perfect, noncrossing, ratio_ok);
  const std::string body =
      o.format == "json" ? report.dump(2) + "\n" : report_to_text(report);
  if (!o.svg.empty()) {
    write_text_file(o.svg, bncm::render_svg(ps, matching));
  }
  emit(body, o.output);
}

struct RenderOptions {
  std::string input;
  std::string report;
  std::string output;
};

void run_render(const RenderOptions& o) {
  const bncm::PointSet ps = bncm::read_points_file(o.input);
  std::ifstream in(o.report);
  if (!in) throw bncm::IOFailure("cannot open '" + o.report + "' for reading");
  ordered_json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw bncm::ParseError(o.report + ": " + e.what());
  }
  if (!j.contains("edges") || !j["edges"].is_array()) {
    throw bncm::ParseError(o.report + ": report has no edge list");
  }
  std::vector<std::pair<int, int>> pairs;
  std::vector<char> seen(static_cast<std::size_t>(ps.size()), 0);
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2) throw bncm::ParseError("malformed edge in report");
    const int a = e[0].get<int>();
    const int b = e[1].get<int>();
    for (int v : {a, b}) {
      if (v < 0 || v >= ps.size()) {
        throw bncm::IndexOutOfRange("report edge endpoint " + std::to_string(v));
      }
      if (seen[static_cast<std::size_t>(v)]++) {
        throw bncm::ParseError("report matches point " + std::to_string(v) + " twice");
      }
    }
    pairs.emplace_back(a, b);
  }
  write_text_file(o.output, bncm::render_svg(ps, bncm::Matching(std::move(pairs))));
}

struct RatioSearchOptions {
  int pairs = 0;
  int trials = 100;
  std::uint64_t seed = 0;
  std::string kind = "uniform";
  std::string format = "json";
  std::string output;
  std::string save_witness;
};

void run_ratio_search(const RatioSearchOptions& o) {
  const bncm::EnumerationBudget budget = bncm::budget_from_env();
  if (o.pairs < 1) throw bncm::InputError("ratio-search needs at least one pair");
  if (o.trials < 1) throw bncm::InputError("ratio-search needs at least one trial");
  if (2 * o.pairs > budget.max_points) {
    throw bncm::BudgetExceeded("ratio-search at " + std::to_string(2 * o.pairs) +
                               " points exceeds the oracle cap of " +
                               std::to_string(budget.max_points));
  }

  double max_ratio = 0.0;
  long max_trial = -1;
  long gt_one = 0;
  std::vector<bncm::Point> witness;
  for (int t = 0; t < o.trials; ++t) {
    const bncm::InstanceSpec spec{bncm::kind_from_name(o.kind), o.pairs,
                                  o.seed + static_cast<std::uint64_t>(t), 1.0};
    const bncm::PointSet ps = bncm::generate_instance(spec);
    const auto crossing = bncm::solve_bottleneck(ps);
    const auto noncrossing = bncm::exact_bncm(ps, budget);
    if (noncrossing.bottleneck2 < crossing.bottleneck2) {
      throw bncm::InvariantError("non-crossing optimum beat the unrestricted optimum");
    }
    if (noncrossing.bottleneck2 > crossing.bottleneck2) ++gt_one;
    const double ratio = std::sqrt(noncrossing.bottleneck2 / crossing.bottleneck2);
    if (ratio > kRatioBound * (1.0 + 1e-9)) {
      throw bncm::InvariantError("observed ratio " + std::to_string(ratio) +
                                 " exceeds the guaranteed bound");
    }
    if (ratio > max_ratio) {
      max_ratio = ratio;
      max_trial = t;
      witness = ps.points();
    }
  }

  ordered_json summary;
  summary["pairs"] = o.pairs;
  summary["trials"] = o.trials;
  summary["seed"] = o.seed;
  summary["kind"] = o.kind;
  summary["max_ratio"] = max_ratio;
  summary["max_ratio_trial"] = max_trial;
  summary["ratios_gt_one"] = gt_one;
  summary["ratio_bound"] = kRatioBound;
  ordered_json wpts = ordered_json::array();
  for (const bncm::Point& p : witness) wpts.push_back({p.x, p.y});
  summary["witness_points"] = wpts;

  if (!o.save_witness.empty() && !witness.empty()) {
    bncm::write_points_file(o.save_witness, bncm::PointSet(witness),
                            "ratio-search witness, ratio=" + bncm::format_double(max_ratio));
  }

  std::string body;
  if (o.format == "json") {
    body = summary.dump(2) + "\n";
  } else {
    body = "pairs:         " + std::to_string(o.pairs) + "\n";
    body += "trials:        " + std::to_string(o.trials) + "\n";
    body += "max_ratio:     " + bncm::format_double(max_ratio) + " (trial " +
            std::to_string(max_trial) + ")\n";
    body += "ratios > 1:    " + std::to_string(gt_one) + "\n";
    body += "bound:         " + bncm::format_double(kRatioBound) + "\n";
  }
  emit(body, o.output);
}

struct BenchOptions {
  std::string mode = "approx";
  int pairs = 100;
  int trials = 3;
  std::uint64_t seed = 0;
  std::string kind;
};

void run_bench(const BenchOptions& o) {
  std::string kind = o.kind;
  if (kind.empty()) {
    kind = o.mode == "convex" ? "convex" : (o.mode == "circle" ? "circle" : "uniform");
  }
  std::vector<double> times;
  double checksum = 0.0;
  for (int t = 0; t < o.trials; ++t) {
    const bncm::InstanceSpec spec{bncm::kind_from_name(kind), o.pairs,
                                  o.seed + static_cast<std::uint64_t>(t), 1.0};
    const bncm::PointSet ps = bncm::generate_instance(spec);
    const auto start = Clock::now();
    if (o.mode == "approx") {
      checksum += bncm::bottleneck(bncm::convert(ps, bncm::solve_bottleneck(ps).matching), ps);
    } else if (o.mode == "bottleneck") {
      checksum += bncm::solve_bottleneck(ps).bottleneck;
    } else if (o.mode == "convex") {
      checksum += bncm::solve_convex(ps).bottleneck;
    } else if (o.mode == "circle") {
      checksum += bncm::solve_circle(ps).bottleneck;
    } else if (o.mode == "exact-small") {
      checksum += bncm::exact_bncm(ps, bncm::budget_from_env()).bottleneck;
    } else {
      throw bncm::InputError("unknown mode '" + o.mode + "'");
    }
    times.push_back(ms_since(start));
  }
  double total = 0.0, lo = times.front(), hi = times.front();
  for (double t : times) {
    total += t;
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  ordered_json out;
  out["mode"] = o.mode;
  out["kind"] = kind;
  out["pairs"] = o.pairs;
  out["trials"] = o.trials;
  out["ms"] = times;
  out["min_ms"] = lo;
  out["mean_ms"] = total / static_cast<double>(times.size());
  out["max_ms"] = hi;
  out["checksum"] = checksum;
  std::cout << out.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bottleneck matchings of planar point sets"};
  app.require_subcommand(1);

  GenOptions gen_opts;
  auto* gen = app.add_subcommand("gen", "generate a point-set instance");
  gen->add_option("--kind", gen_opts.kind, "uniform | convex | circle | clustered")
      ->check(CLI::IsMember({"uniform", "convex", "circle", "clustered"}));
  gen->add_option("--pairs", gen_opts.pairs, "number of point pairs (n)")->required();
  gen->add_option("--seed", gen_opts.seed, "rng seed");
  gen->add_option("--scale", gen_opts.scale, "coordinate scale");
  gen->add_option("--output", gen_opts.output, "point file to write")->required();

  SolveOptions solve_opts;
  auto* solve = app.add_subcommand("solve", "compute a matching of a point file");
  solve->add_option("--input", solve_opts.input, "point file")->required();
  solve->add_option("--mode", solve_opts.mode,
                    "approx | exact-small | convex | circle | bottleneck")
      ->check(CLI::IsMember({"approx", "exact-small", "convex", "circle", "bottleneck"}));
  solve->add_option("--format", solve_opts.format, "json | text")
      ->check(CLI::IsMember({"json", "text"}));
  solve->add_option("--output", solve_opts.output, "report file (default stdout)");
  solve->add_option("--svg", solve_opts.svg, "also render the matching to this SVG file");

  RenderOptions render_opts;
  auto* render = app.add_subcommand("render", "render a solve report as SVG");
  render->add_option("--input", render_opts.input, "point file")->required();
  render->add_option("--report", render_opts.report, "JSON report from solve")->required();
  render->add_option("--output", render_opts.output, "SVG file to write")->required();

  RatioSearchOptions ratio_opts;
  auto* ratio = app.add_subcommand("ratio-search",
                                   "search random instances for large optimum ratios");
  ratio->add_option("--pairs", ratio_opts.pairs, "number of point pairs per instance")
      ->required();
  ratio->add_option("--trials", ratio_opts.trials, "number of instances");
  ratio->add_option("--seed", ratio_opts.seed, "rng seed");
  ratio->add_option("--kind", ratio_opts.kind, "instance kind")
      ->check(CLI::IsMember({"uniform", "convex", "circle", "clustered"}));
  ratio->add_option("--format", ratio_opts.format, "json | text")
      ->check(CLI::IsMember({"json", "text"}));
  ratio->add_option("--output", ratio_opts.output, "summary file (default stdout)");
  ratio->add_option("--save-witness", ratio_opts.save_witness,
                    "write the max-ratio instance to this point file");

  BenchOptions bench_opts;
  auto* bench = app.add_subcommand("bench", "time a solver on generated instances");
  bench->add_option("--mode", bench_opts.mode,
                    "approx | exact-small | convex | circle | bottleneck")
      ->check(CLI::IsMember({"approx", "exact-small", "convex", "circle", "bottleneck"}));
  bench->add_option("--pairs", bench_opts.pairs, "number of point pairs");
  bench->add_option("--trials", bench_opts.trials, "number of instances");
  bench->add_option("--seed", bench_opts.seed, "rng seed");
  bench->add_option("--kind", bench_opts.kind, "instance kind (defaults to match the mode)");

  try {
    app.parse(argc, argv);
    if (gen->parsed()) run_gen(gen_opts);
    if (solve->parsed()) run_solve(solve_opts);
    if (render->parsed()) run_render(render_opts);
    if (ratio->parsed()) run_ratio_search(ratio_opts);
    if (bench->parsed()) run_bench(bench_opts);
    return 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const bncm::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const bncm::InvariantError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
