#include "multinet/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <stdexcept>
#include <thread>
#include <utility>

#include "multinet/metrics.hpp"

namespace multinet {

LayerDependencyTensor build_dependency(const DependencySpec& spec,
                                       const std::vector<AspectSpec>& aspects) {
  auto expect = [](bool ok, const char* message) {
    if (!ok) throw std::invalid_argument(message);
  };
  switch (spec.type) {
    case DependencySpec::Type::temporal: {
      expect(aspects.size() == 1 &&
                 aspects[0].ordering == AspectOrdering::ordered,
             "dependency: temporal requires exactly one ordered aspect");
      const int l = aspects[0].size;
      std::vector<double> p = spec.p_per_transition;
      if (p.empty() && l > 1) p.assign(l - 1, spec.p);
      expect(static_cast<int>(p.size()) == std::max(l - 1, 0),
             "dependency: temporal requires l - 1 transition probabilities");
      for (const int t : spec.changepoints) {
        expect(t >= 1 && t <= l - 1,
               "dependency: change point outside 1..l-1");
        p[t - 1] = 0.0;
      }
      return build_temporal(l, p);
    }
    case DependencySpec::Type::multiplex: {
      expect(aspects.size() == 1 &&
                 aspects[0].ordering == AspectOrdering::unordered,
             "dependency: multiplex requires exactly one unordered aspect");
      return build_uniform_multiplex(aspects[0].size, spec.p);
    }
    case DependencySpec::Type::temporal_multiplex: {
      expect(aspects.size() == 2 &&
                 aspects[0].ordering == AspectOrdering::unordered &&
                 aspects[1].ordering == AspectOrdering::ordered,
             "dependency: temporal_multiplex requires an unordered aspect "
             "then an ordered aspect");
      const int l1 = aspects[0].size;
      const int l2 = aspects[1].size;
      if (spec.coupling_table.empty()) {
        return build_temporal_multiplex(l1, l2, spec.p);
      }
      expect(static_cast<int>(spec.coupling_table.size()) == l1,
             "dependency: coupling table needs one row per unordered layer");
      for (const auto& row : spec.coupling_table) {
        expect(static_cast<int>(row.size()) == l2,
               "dependency: coupling table needs one column per ordered layer");
      }
      return build_temporal_multiplex(l1, l2, spec.coupling_table);
    }
    case DependencySpec::Type::block_multiplex: {
      expect(aspects.size() == 1 &&
                 aspects[0].ordering == AspectOrdering::unordered,
             "dependency: block_multiplex requires exactly one unordered "
             "aspect");
      const int l = aspects[0].size;
      expect(static_cast<int>(spec.blocks.size()) == l,
             "dependency: block_multiplex requires one block id per layer");
      const int block_count =
          spec.blocks.empty()
              ? 0
              : *std::max_element(spec.blocks.begin(), spec.blocks.end()) + 1;
      std::vector<double> p_hat = spec.block_p;
      if (p_hat.empty()) p_hat.assign(block_count, spec.p);
      expect(static_cast<int>(p_hat.size()) == block_count,
             "dependency: block_multiplex requires one copy mass per block");
      return build_block_multiplex(l, spec.blocks, p_hat);
    }
  }
  throw std::logic_error("dependency: unhandled dependency type");
}

GeneratedBenchmark generate_benchmark(const BenchmarkConfig& config) {
  const MultilayerShape shape = config.shape();
  const LayerDependencyTensor dependencies =
      build_dependency(config.dependency, config.aspects);

  RngStream null_rng(derive_seed(config.seed, "generate/null"));
  const NullSet nulls = build_null_set(
      shape, config.null_model.communities, config.null_model.theta,
      config.null_model.support, null_rng,
      config.null_model.shared_probabilities);

  SamplerConfig sampler = config.sampler;
  sampler.chains = 1;
  sampler.seed = derive_seed(config.seed, "generate/partition");
  std::vector<MultilayerPartition> chains =
      sample_partition(dependencies, nulls, shape, sampler);
  MultilayerPartition partition = std::move(chains.front());

  RngStream degree_rng(derive_seed(config.seed, "generate/degrees"));
  const TruncatedPowerLaw law(config.edges.exponent, config.edges.k_min,
                              config.edges.k_max);
  std::vector<double> degrees = sample_expected_degrees(law, shape, degree_rng);

  const DcsbmParams params = build_dcsbm(partition, degrees, config.edges.mu);
  MultilayerNetwork network =
      sample_network(params, derive_seed(config.seed, "generate/edges"));
  return {std::move(partition), std::move(network), std::move(degrees)};
}

std::vector<SweepRow> nmi_sweep(const BenchmarkConfig& base,
                                const SweepGrid& grid) {
  if (grid.runs < 1) throw std::invalid_argument("sweep: runs must be >= 1");
  if (grid.mu_values.empty() || grid.omega_values.empty() ||
      grid.rules.empty()) {
    throw std::invalid_argument("sweep: every grid dimension must be nonempty");
  }

  // One benchmark instance per mu value, shared across omega values and
  // rules; its seed depends only on the mu index.
  std::vector<GeneratedBenchmark> instances;
  instances.reserve(grid.mu_values.size());
  for (std::size_t i = 0; i < grid.mu_values.size(); ++i) {
    BenchmarkConfig config = base;
    config.edges.mu = grid.mu_values[i];
    config.seed = derive_seed(base.seed, "sweep/gen", {i});
    instances.push_back(generate_benchmark(config));
  }

  const std::size_t omega_count = grid.omega_values.size();
  const std::size_t rule_count = grid.rules.size();
  const std::size_t points =
      grid.mu_values.size() * omega_count * rule_count;
  std::vector<SweepRow> rows(points * static_cast<std::size_t>(grid.runs));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      const std::size_t point = next.fetch_add(1);
      if (point >= points) return;
      const std::size_t i = point / (omega_count * rule_count);
      const std::size_t j = point / rule_count % omega_count;
      const std::size_t r = point % rule_count;
      ModularityConfig mod;
      mod.omega = grid.omega_values[j];
      mod.topology = grid.topology;
      for (int run = 0; run < grid.runs; ++run) {
        RngStream rng(derive_seed(base.seed, "sweep/det",
                                  {i, j, r, static_cast<std::uint64_t>(run)}));
        const MultilayerPartition found =
            genlouvain(instances[i].network, mod, grid.rules[r], rng);
        SweepRow& row = rows[point * grid.runs + run];
        row.mu = grid.mu_values[i];
        row.omega = grid.omega_values[j];
        row.rule = grid.rules[r];
        row.run = run + 1;
        row.mean_nmi = per_layer_mean_nmi(instances[i].partition, found).mean;
      }
    }
  };
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(
      points, std::max(1u, std::thread::hardware_concurrency())));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "mu,omega,rule,run,mean_nmi\n";
  char line[128];
  for (const SweepRow& row : rows) {
    std::snprintf(line, sizeof line, "%.10g,%.10g,%s,%d,%.10g\n", row.mu,
                  row.omega, move_rule_name(row.rule), row.run, row.mean_nmi);
    out += line;
  }
  return out;
}

}  // namespace multinet
