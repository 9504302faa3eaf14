#include "multinet/cli.hpp"

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "multinet/config.hpp"
#include "multinet/io.hpp"
#include "multinet/pipeline.hpp"
#include "multinet/version.hpp"

namespace multinet {

namespace {

namespace fs = std::filesystem;

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create directory " + dir.string() + ": " +
                  ec.message());
  }
}

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool quiet = false;
};

int run_generate(const CommonArgs& args) {
  BenchmarkConfig config = parse_benchmark_config(read_text_file(args.config_path));
  if (args.seed_set) config.seed = args.seed;
  const GeneratedBenchmark bench = generate_benchmark(config);
  const fs::path dir(args.out_dir);
  ensure_directory(dir);
  write_partition(dir / "partition.tsv", bench.partition);
  write_network(dir / "edges.tsv", bench.network);
  write_text_file(dir / "manifest.json", render_manifest(config));
  if (!args.quiet) {
    std::fprintf(stderr,
                 "generated %lld state nodes, %zu edges -> %s/{partition.tsv,"
                 "edges.tsv,manifest.json}\n",
                 static_cast<long long>(bench.partition.shape().state_node_count()),
                 bench.network.edge_count(), dir.string().c_str());
  }
  return 0;
}

int run_evaluate(const std::string& planted_path,
                 const std::vector<std::string>& found_paths,
                 const std::string& out_file, bool quiet) {
  const MultilayerPartition planted = read_partition(planted_path);
  std::vector<MultilayerPartition> found;
  found.reserve(found_paths.size());
  for (const std::string& path : found_paths) {
    MultilayerPartition partition = read_partition(path);
    if (partition.shape() != planted.shape()) {
      throw ValidationError(path + ": shape differs from the planted partition");
    }
    found.push_back(std::move(partition));
  }
  const std::string csv = evaluation_csv(planted, found);
  if (out_file.empty()) {
    std::fputs(csv.c_str(), stdout);
  } else {
    write_text_file(out_file, csv);
    if (!quiet) {
      std::fprintf(stderr, "evaluated %zu partition(s) -> %s\n", found.size(),
                   out_file.c_str());
    }
  }
  return 0;
}

int run_sweep(const CommonArgs& args, int runs, bool runs_set) {
  SweepConfig sweep = parse_sweep_config(read_text_file(args.config_path));
  if (args.seed_set) sweep.base.seed = args.seed;
  if (runs_set) {
    if (runs < 1) throw ValidationError("--runs must be >= 1");
    sweep.grid.runs = runs;
  }
  const std::vector<SweepRow> rows = nmi_sweep(sweep.base, sweep.grid);
  const fs::path dir(args.out_dir);
  ensure_directory(dir);
  write_text_file(dir / "sweep.csv", sweep_csv(rows));
  write_text_file(dir / "manifest.json",
                  render_manifest(sweep.base, sweep.grid));
  if (!args.quiet) {
    std::fprintf(stderr, "swept %zu grid rows -> %s/sweep.csv\n", rows.size(),
                 dir.string().c_str());
  }
  return 0;
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"generation and evaluation toolkit for multilayer community "
               "benchmarks"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);

  CommonArgs gen_args;
  CLI::App* generate =
      app.add_subcommand("generate", "sample a partition and network from a "
                                     "config and write them to a directory");
  generate->add_option("--config", gen_args.config_path, "config JSON path")
      ->required();
  generate->add_option("--out", gen_args.out_dir, "output directory")
      ->required();
  CLI::Option* gen_seed =
      generate->add_option("--seed", gen_args.seed, "master seed override");
  generate->add_flag("--quiet", gen_args.quiet, "suppress status output");

  std::string planted_path;
  std::vector<std::string> found_paths;
  std::string eval_out;
  bool eval_quiet = false;
  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "per-layer NMI of found partitions against a planted one");
  evaluate->add_option("planted", planted_path, "planted partition file")
      ->required();
  evaluate->add_option("found", found_paths, "found partition file(s)")
      ->required();
  evaluate->add_option("--out", eval_out, "output CSV path (default stdout)");
  evaluate->add_flag("--quiet", eval_quiet, "suppress status output");

  CommonArgs sweep_args;
  int runs = 0;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "grid sweep: generate per mixing value, run detection, "
               "emit mu,omega,rule,run,mean_nmi CSV");
  sweep->add_option("--config", sweep_args.config_path, "config JSON path")
      ->required();
  sweep->add_option("--out", sweep_args.out_dir, "output directory")
      ->required();
  CLI::Option* sweep_seed =
      sweep->add_option("--seed", sweep_args.seed, "master seed override");
  CLI::Option* sweep_runs =
      sweep->add_option("--runs", runs, "detector runs per grid point");
  sweep->add_flag("--quiet", sweep_args.quiet, "suppress status output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (generate->parsed()) {
      gen_args.seed_set = gen_seed->count() > 0;
      return run_generate(gen_args);
    }
    if (evaluate->parsed()) {
      return run_evaluate(planted_path, found_paths, eval_out, eval_quiet);
    }
    sweep_args.seed_set = sweep_seed->count() > 0;
    return run_sweep(sweep_args, runs, sweep_runs->count() > 0);
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

}  // namespace multinet
