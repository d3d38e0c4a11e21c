// hdr: command-line front end for the hierarchical destroy-and-repair solver.

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "hdr/errors.hpp"
#include "hdr/hierarchy.hpp"
#include "hdr/io.hpp"
#include "hdr/repair.hpp"

namespace {

enum ExitCode {
  kOk = 0,
  kUsage = 2,
  kFileError = 3,
  kValidationFailed = 4,
  kSizeLimit = 5,
  kInternal = 70,
};

struct SolverFlags {
  double time_limit = std::numeric_limits<double>::infinity();
  int m = 500;
  int k = 10;
  int l_divisor = 90;
  int direct_threshold = 500;
  std::uint64_t seed = 1;
  int threads = 1;
  bool no_hierarchy = false;
  std::string engine = "ils";
  int stall_epochs = 1;
  int max_epochs = 0;
  int budget_per_vertex = 40;
  double samples_exponent = 2.0 / 3.0;
  int window_subpaths = 3;

  void add_to(CLI::App* app) {
    app->add_option("--time-limit", time_limit, "Wall-clock limit in seconds")
        ->check(CLI::NonNegativeNumber);
    app->add_option("--m", m, "Edges deleted per destroy step")
        ->capture_default_str()->check(CLI::Range(2, 1 << 30));
    app->add_option("--k", k, "Local optima per hierarchy level")
        ->capture_default_str()->check(CLI::Range(1, 1 << 20));
    app->add_option("--l-divisor", l_divisor, "Rounds per local opt = ceil(n / divisor)")
        ->capture_default_str()->check(CLI::Range(1, 1 << 30));
    app->add_option("--direct-threshold", direct_threshold,
                    "Solve levels smaller than this directly")
        ->capture_default_str()->check(CLI::Range(4, 1 << 30));
    app->add_option("--seed", seed, "Random seed (default: $HDR_SEED or 1)");
    app->add_option("--threads", threads, "Worker threads for the k runs")
        ->capture_default_str()->check(CLI::Range(1, 1024));
    app->add_flag("--no-hierarchy", no_hierarchy,
                  "Disable edge fixing and compression");
    app->add_option("--repair-engine", engine, "Repair engine")
        ->capture_default_str()->check(CLI::IsMember({"ils"}));
    app->add_option("--stall-epochs", stall_epochs,
                    "Stop after this many passes without improvement")
        ->capture_default_str()->check(CLI::Range(1, 1 << 30));
    app->add_option("--max-epochs", max_epochs, "Cap on passes (0 = none)")
        ->capture_default_str()->check(CLI::NonNegativeNumber);
    app->add_option("--repair-budget", budget_per_vertex,
                    "Repair work per sub-problem vertex")
        ->capture_default_str()->check(CLI::Range(1, 1 << 20));
    app->add_option("--init-samples-exponent", samples_exponent,
                    "Initial tour samples = ceil(n^e)")
        ->capture_default_str()->check(CLI::Range(0.01, 1.0));
    app->add_option("--init-window-subpaths", window_subpaths,
                    "Sub-paths per initial 2-opt window")
        ->capture_default_str()->check(CLI::Range(1, 1 << 20));
  }

  hdr::SolverConfig config(std::uint64_t run_seed) const {
    hdr::SolverConfig cfg;
    cfg.m = m;
    cfg.k = k;
    cfg.l_divisor = l_divisor;
    cfg.direct_solve_threshold = direct_threshold;
    cfg.time_limit = time_limit;
    cfg.seed = run_seed;
    cfg.threads = threads;
    cfg.hierarchy_enabled = !no_hierarchy;
    cfg.max_stall_epochs = stall_epochs;
    cfg.max_epochs = max_epochs;
    cfg.repair.engine = engine;
    cfg.repair.budget_per_vertex = budget_per_vertex;
    cfg.init.samples_exponent = samples_exponent;
    cfg.init.window_subpaths = window_subpaths;
    return cfg;
  }
};

std::uint64_t env_seed() {
  const char* s = std::getenv("HDR_SEED");
  if (s == nullptr || *s == '\0') return 1;
  std::uint64_t v = 0;
  const char* end = s + std::char_traits<char>::length(s);
  const auto [ptr, ec] = std::from_chars(s, end, v);
  if (ec != std::errc() || ptr != end) {
    throw CLI::ValidationError("HDR_SEED", "not an unsigned integer");
  }
  return v;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw hdr::MalformedFile("cannot write " + path.string());
  out << text;
}

// Every tour leaves the process only after passing validation.
void check_tour(const hdr::Instance& inst, const hdr::Tour& tour) {
  const auto report = hdr::validate_tour(inst, tour);
  if (!report.ok()) {
    throw std::logic_error("self-validation failed:\n" + report.to_string());
  }
}

std::string instance_label(const std::string& path, const hdr::Instance& inst) {
  if (!inst.name().empty()) return inst.name();
  return std::filesystem::path(path).filename().string();
}

int cmd_solve(const std::string& instance_path, const SolverFlags& flags,
              std::uint64_t seed, const std::string& out_path,
              const std::string& stats_path, const std::string& svg_path,
              std::optional<hdr::Cost> reference) {
  const hdr::Instance inst = hdr::parse_tsplib(instance_path);
  const auto result = hdr::hdr_solve(inst, flags.config(seed));
  check_tour(inst, result.tour);
  if (!out_path.empty()) {
    hdr::write_tour(out_path, result.tour, instance_label(instance_path, inst));
  }
  if (!stats_path.empty()) {
    std::string text = "instance = " + instance_label(instance_path, inst) +
                       "\nseed = " + std::to_string(seed) + "\n";
    text += result.stats.to_report();
    write_text(stats_path, text);
  }
  if (!svg_path.empty()) write_text(svg_path, hdr::render_svg(inst, result.tour));
  std::cout << "cost " << result.tour.cost() << '\n';
  if (reference) {
    std::cout << "gap " << hdr::format_gap(hdr::gap_percent(
                               static_cast<double>(result.tour.cost()), *reference))
              << '\n';
  }
  if (result.stats.timed_out) std::cout << "timed_out true\n";
  return kOk;
}

int cmd_generate(const std::string& kind, int n, std::int64_t square,
                 std::uint64_t seed, const std::string& out_path) {
  const auto k = kind == "clustered" ? hdr::InstanceKind::kClustered
                                     : hdr::InstanceKind::kUniform;
  const hdr::Instance inst = hdr::generate_instance(k, n, square, seed);
  hdr::write_tsplib(out_path, inst);
  std::cout << "wrote " << inst.name() << " (" << n << " cities) to "
            << out_path << '\n';
  return kOk;
}

int cmd_validate(const std::string& instance_path, const std::string& tour_path) {
  const hdr::Instance inst = hdr::parse_tsplib(instance_path);
  const auto order = hdr::parse_tour(tour_path, inst.size());
  const hdr::Tour tour = hdr::Tour::from_order(inst, order);
  const auto report = hdr::validate_tour(inst, tour);
  std::cout << report.to_string() << '\n';
  if (!report.ok()) return kValidationFailed;
  std::cout << "cost " << tour.cost() << '\n';
  return kOk;
}

int cmd_oracle(const std::string& instance_path, const std::string& out_path) {
  const hdr::Instance inst = hdr::parse_tsplib(instance_path);
  const hdr::Tour tour = hdr::held_karp_forced(inst);
  check_tour(inst, tour);
  if (!out_path.empty()) {
    hdr::write_tour(out_path, tour, instance_label(instance_path, inst));
  }
  std::cout << tour.cost() << '\n';
  return kOk;
}

int cmd_bench(const std::string& instance_path, const SolverFlags& flags,
              std::uint64_t seed, int runs, bool ablation,
              std::optional<hdr::Cost> reference, const std::string& report_path) {
  const hdr::Instance inst = hdr::parse_tsplib(instance_path);
  const std::string label = instance_label(instance_path, inst);
  std::vector<hdr::RunRecord> hdr_runs, flat_runs;
  for (int r = 0; r < runs; ++r) {
    const std::uint64_t run_seed = seed + static_cast<std::uint64_t>(r);
    SolverFlags on = flags;
    on.no_hierarchy = ablation ? false : flags.no_hierarchy;
    const auto res = hdr::hdr_solve(inst, on.config(run_seed));
    check_tour(inst, res.tour);
    hdr_runs.push_back(hdr::make_run_record(label, run_seed, res));
    if (ablation) {
      SolverFlags off = flags;
      off.no_hierarchy = true;
      const auto flat = hdr::hdr_solve(inst, off.config(run_seed));
      check_tour(inst, flat.tour);
      flat_runs.push_back(hdr::make_run_record(label, run_seed, flat));
    }
  }

  std::string structured;
  if (!ablation) {
    const auto report = hdr::report_results(hdr_runs, reference);
    std::cout << report.to_table();
    structured = report.to_structured();
  } else {
    // Gaps are taken against the reference, or the best cost either
    // variant reached when no reference is given.
    hdr::Cost ref = reference.value_or(hdr_runs.front().cost);
    if (!reference) {
      for (const auto& r : hdr_runs) ref = std::min(ref, r.cost);
      for (const auto& r : flat_runs) ref = std::min(ref, r.cost);
    }
    const auto on = hdr::report_results(hdr_runs, ref);
    const auto off = hdr::report_results(flat_runs, ref);
    std::cout << "HDR\n" << on.to_table() << "\nHDR-V1\n" << off.to_table();
    const double g_on = *on.average_gap;
    const double g_off = *off.average_gap;
    std::cout << "\nreference " << ref << '\n';
    std::cout << "gap ratio (V1 / HDR) ";
    if (g_on > 0.0) {
      std::cout << std::fixed << std::setprecision(2) << g_off / g_on << '\n';
    } else {
      std::cout << "inf\n";
    }
    structured = "variant=hdr\n" + on.to_structured() + "variant=v1\n" +
                 off.to_structured();
  }
  if (!report_path.empty()) write_text(report_path, structured);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hierarchical destroy-and-repair TSP solver"};
  app.require_subcommand(1);

  SolverFlags flags;
  std::string instance_path, out_path, stats_path, svg_path, tour_path,
      report_path;
  std::uint64_t seed = 1;
  std::optional<hdr::Cost> reference;

  auto* solve = app.add_subcommand("solve", "Solve a TSPLIB instance");
  solve->add_option("--instance", instance_path, "TSPLIB file")->required();
  flags.add_to(solve);
  solve->add_option("--out", out_path, "Tour output file");
  solve->add_option("--stats", stats_path, "Run statistics file");
  solve->add_option("--svg", svg_path, "SVG rendering of the final tour");
  solve->add_option("--reference", reference, "Best-known cost for gap output");

  std::string kind = "uniform";
  int n = 1000;
  std::int64_t square = 1000000;
  auto* generate = app.add_subcommand("generate", "Write a random instance");
  generate->add_option("--kind", kind)->capture_default_str()->check(
      CLI::IsMember({"uniform", "clustered"}));
  generate->add_option("--n", n)->capture_default_str()->check(
      CLI::Range(3, 1 << 30));
  generate->add_option("--square", square)->capture_default_str()->check(
      CLI::PositiveNumber);
  generate->add_option("--seed", seed, "Random seed (default: $HDR_SEED or 1)");
  generate->add_option("--out", out_path, "Output TSPLIB file")->required();

  auto* validate = app.add_subcommand("validate", "Check a tour file");
  validate->add_option("--instance", instance_path)->required();
  validate->add_option("--tour", tour_path)->required();

  auto* oracle = app.add_subcommand("oracle", "Exact optimum for n <= 16");
  oracle->add_option("--instance", instance_path)->required();
  oracle->add_option("--out", out_path, "Optimal tour output file");

  int runs = 10;
  bool ablation = false;
  auto* bench = app.add_subcommand("bench", "Repeated seeded solves");
  bench->add_option("--instance", instance_path)->required();
  flags.add_to(bench);
  bench->add_option("--runs", runs)->capture_default_str()->check(
      CLI::Range(1, 1 << 20));
  bench->add_flag("--ablation", ablation, "Pair every run with --no-hierarchy");
  bench->add_option("--reference", reference, "Best-known cost for gaps");
  bench->add_option("--report", report_path, "Structured report output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    auto pick_seed = [&](CLI::App* sub) {
      return sub->count("--seed") > 0 ? (sub == generate ? seed : flags.seed)
                                      : env_seed();
    };
    if (reference && *reference <= 0) {
      std::cerr << "error: --reference must be positive\n";
      return kUsage;
    }
    if (*solve) {
      return cmd_solve(instance_path, flags, pick_seed(solve), out_path,
                       stats_path, svg_path, reference);
    }
    if (*generate) {
      return cmd_generate(kind, n, square, pick_seed(generate), out_path);
    }
    if (*validate) return cmd_validate(instance_path, tour_path);
    if (*oracle) return cmd_oracle(instance_path, out_path);
    if (*bench) {
      return cmd_bench(instance_path, flags, pick_seed(bench), runs, ablation,
                       reference, report_path);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const hdr::MalformedFile& e) {
    std::cerr << "file error: " << e.what() << '\n';
    return kFileError;
  } catch (const hdr::UnsupportedFormat& e) {
    std::cerr << "unsupported format: " << e.what() << '\n';
    return kFileError;
  } catch (const hdr::SizeLimitError& e) {
    std::cerr << "size limit: " << e.what() << '\n';
    return kSizeLimit;
  } catch (const hdr::ContractViolation& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kValidationFailed;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}
