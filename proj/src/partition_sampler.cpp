#include "multinet/partition_sampler.hpp"

#include <cmath>
#include <future>
#include <set>
#include <stdexcept>

namespace multinet {

namespace {

constexpr int kDefaultUnorderedIterations = 200;

int effective_iterations(const SamplerConfig& config,
                         const MultilayerShape& shape) {
  if (shape.fully_ordered()) return 1;
  if (config.iterations < 0) {
    throw std::invalid_argument("sampler: iterations must be >= 0");
  }
  return config.iterations == 0 ? kDefaultUnorderedIterations
                                : config.iterations;
}

void check_nulls_match(const NullSet& nulls, const MultilayerShape& shape) {
  if (nulls.layer_count() != shape.layer_count()) {
    throw std::invalid_argument(
        "sampler: null set and shape disagree on the layer count");
  }
}

// Core single-draw update shared by both tensor representations: `cursor`
// iterates (source label, weight) pairs and returns whether another source
// exists.  One uniform decides both the copy-vs-null branch and, rescaled,
// the null draw.
template <typename SourceIter>
int update_with_sources(SourceIter&& next_source, const NullSet& nulls,
                        int target_layer, RngStream& rng) {
  const double u = rng.uniform();
  double cumulative = 0;
  int source_label = -1;
  double weight = 0;
  while (next_source(&source_label, &weight)) {
    cumulative += weight;
    if (u < cumulative) return source_label;
  }
  if (cumulative >= 1.0) {
    // Total copy mass 1 but u escaped by rounding; keep the last source.
    if (source_label >= 0) return source_label;
  }
  const double rescaled =
      cumulative > 0 ? (u - cumulative) / (1.0 - cumulative) : u;
  return nulls.draw_with_uniform(target_layer, rescaled);
}

void sweep_in_place(std::vector<int>& labels, const MultilayerShape& shape,
                    const LayerDependencyTensor& dependencies,
                    const NullSet& nulls, std::span<const int> layer_order,
                    RngStream& rng) {
  const int n = shape.node_count();
  for (int layer : layer_order) {
    const auto& incoming = dependencies.incoming(layer);
    for (int node = 0; node < n; ++node) {
      std::size_t k = 0;
      auto cursor = [&](int* label, double* weight) {
        if (k >= incoming.size()) return false;
        const auto& [source_layer, w] = incoming[k++];
        *label = labels[shape.supra_index(node, source_layer)];
        *weight = w;
        return true;
      };
      labels[shape.supra_index(node, layer)] =
          update_with_sources(cursor, nulls, layer, rng);
    }
  }
}

void sweep_in_place(std::vector<int>& labels, const MultilayerShape& shape,
                    const InterlayerDependencyTensor& dependencies,
                    const NullSet& nulls, std::span<const int> layer_order,
                    RngStream& rng) {
  const int n = shape.node_count();
  for (int layer : layer_order) {
    for (int node = 0; node < n; ++node) {
      const int target = shape.supra_index(node, layer);
      const auto& incoming = dependencies.incoming(target);
      std::size_t k = 0;
      auto cursor = [&](int* label, double* weight) {
        if (k >= incoming.size()) return false;
        const auto& [source, w] = incoming[k++];
        *label = labels[source];
        *weight = w;
        return true;
      };
      labels[target] = update_with_sources(cursor, nulls, layer, rng);
    }
  }
}

std::vector<int> null_labels(const NullSet& nulls, const MultilayerShape& shape,
                             RngStream& rng) {
  std::vector<int> labels(shape.state_node_count());
  for (int layer = 0; layer < shape.layer_count(); ++layer) {
    for (int node = 0; node < shape.node_count(); ++node) {
      labels[shape.supra_index(node, layer)] = nulls.draw(layer, rng);
    }
  }
  return labels;
}

double agreement(const std::vector<int>& a, const std::vector<int>& b) {
  std::size_t same = 0;
  for (std::size_t i = 0; i < a.size(); ++i) same += a[i] == b[i];
  return static_cast<double>(same) / static_cast<double>(a.size());
}

template <typename Tensor>
std::vector<MultilayerPartition> run_chains(
    const Tensor& dependencies, const NullSet& nulls,
    const MultilayerShape& shape, const SamplerConfig& config,
    PartitionChainDiagnostics* diagnostics) {
  check_nulls_match(nulls, shape);
  if (config.chains <= 0) {
    throw std::invalid_argument("sampler: chain count must be positive");
  }
  const int iterations = effective_iterations(config, shape);
  const std::vector<int> order = shape.layer_update_order();

  auto run_one = [&](int chain) {
    RngStream rng(derive_seed(config.seed, "partition/chain",
                              {static_cast<std::uint64_t>(chain)}));
    std::vector<int> labels = null_labels(nulls, shape, rng);
    std::vector<double> sweep_agreement;
    for (int sweep = 0; sweep < iterations; ++sweep) {
      if (diagnostics != nullptr) {
        std::vector<int> before = labels;
        sweep_in_place(labels, shape, dependencies, nulls, order, rng);
        sweep_agreement.push_back(agreement(before, labels));
      } else {
        sweep_in_place(labels, shape, dependencies, nulls, order, rng);
      }
    }
    return std::make_pair(std::move(labels), std::move(sweep_agreement));
  };

  std::vector<std::future<std::pair<std::vector<int>, std::vector<double>>>>
      futures;
  for (int chain = 1; chain < config.chains; ++chain) {
    futures.push_back(std::async(std::launch::async, run_one, chain));
  }
  std::vector<MultilayerPartition> result;
  result.reserve(config.chains);
  if (diagnostics != nullptr) diagnostics->sweep_agreement.clear();
  auto collect = [&](std::pair<std::vector<int>, std::vector<double>> chain) {
    if (diagnostics != nullptr) {
      diagnostics->sweep_agreement.push_back(std::move(chain.second));
    }
    result.emplace_back(shape, std::move(chain.first));
  };
  collect(run_one(0));
  for (auto& f : futures) collect(f.get());
  return result;
}

}  // namespace

MultilayerPartition sample_null_partition(const NullSet& nulls,
                                          const MultilayerShape& shape,
                                          RngStream& rng) {
  check_nulls_match(nulls, shape);
  return MultilayerPartition(shape, null_labels(nulls, shape, rng));
}

int update_state_node(const MultilayerPartition& state,
                      const InterlayerDependencyTensor& dependencies,
                      const NullSet& nulls, StateNode target, RngStream& rng) {
  const MultilayerShape& shape = state.shape();
  check_nulls_match(nulls, shape);
  const int supra = shape.supra_index(target.node, target.layer);
  const auto& incoming = dependencies.incoming(supra);
  std::size_t k = 0;
  auto cursor = [&](int* label, double* weight) {
    if (k >= incoming.size()) return false;
    const auto& [source, w] = incoming[k++];
    *label = state.label_at(source);
    *weight = w;
    return true;
  };
  return update_with_sources(cursor, nulls, target.layer, rng);
}

MultilayerPartition gibbs_sweep(const MultilayerPartition& state,
                                const InterlayerDependencyTensor& dependencies,
                                const NullSet& nulls,
                                std::span<const int> layer_order,
                                RngStream& rng) {
  const MultilayerShape& shape = state.shape();
  check_nulls_match(nulls, shape);
  if (static_cast<int>(layer_order.size()) != shape.layer_count()) {
    throw std::invalid_argument("gibbs_sweep: layer order must cover all layers");
  }
  std::vector<int> labels = state.labels();
  sweep_in_place(labels, shape, dependencies, nulls, layer_order, rng);
  return MultilayerPartition(shape, std::move(labels));
}

std::vector<MultilayerPartition> sample_partition(
    const LayerDependencyTensor& dependencies, const NullSet& nulls,
    const MultilayerShape& shape, const SamplerConfig& config,
    PartitionChainDiagnostics* diagnostics) {
  if (static_cast<int>(dependencies.aspects().size()) !=
      shape.aspect_count()) {
    throw std::invalid_argument(
        "sampler: dependency tensor and shape disagree on aspects");
  }
  for (int a = 0; a < shape.aspect_count(); ++a) {
    if (dependencies.aspects()[a].size != shape.aspects()[a].size) {
      throw std::invalid_argument(
          "sampler: dependency tensor and shape disagree on aspect sizes");
    }
  }
  return run_chains(dependencies, nulls, shape, config, diagnostics);
}

std::vector<MultilayerPartition> sample_partition(
    const InterlayerDependencyTensor& dependencies, const NullSet& nulls,
    const SamplerConfig& config, PartitionChainDiagnostics* diagnostics) {
  return run_chains(dependencies, nulls, dependencies.shape(), config,
                    diagnostics);
}

MultilayerPartition sample_temporal_partition(std::span<const double> p,
                                              const NullSet& nulls,
                                              const MultilayerShape& shape,
                                              RngStream& rng) {
  check_nulls_match(nulls, shape);
  if (shape.aspect_count() != 1 ||
      shape.aspects()[0].ordering != AspectOrdering::ordered) {
    throw std::invalid_argument(
        "temporal sampler: a single ordered aspect is required");
  }
  const int l = shape.layer_count();
  const int n = shape.node_count();
  if (static_cast<int>(p.size()) != l - 1) {
    throw std::invalid_argument("temporal sampler: p must have length l - 1");
  }
  for (double v : p) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("temporal sampler: p must lie in [0, 1]");
    }
  }
  std::vector<int> labels(shape.state_node_count());
  for (int node = 0; node < n; ++node) {
    labels[shape.supra_index(node, 0)] = nulls.draw(0, rng);
  }
  for (int layer = 1; layer < l; ++layer) {
    const double copy_p = p[layer - 1];
    for (int node = 0; node < n; ++node) {
      const double u = rng.uniform();
      int label;
      if (u < copy_p) {
        label = labels[shape.supra_index(node, layer - 1)];
      } else {
        const double rescaled =
            copy_p > 0 ? (u - copy_p) / (1.0 - copy_p) : u;
        label = nulls.draw_with_uniform(layer, rescaled);
      }
      labels[shape.supra_index(node, layer)] = label;
    }
  }
  return MultilayerPartition(shape, std::move(labels));
}

double temporal_marginal_probability(std::span<const double> p,
                                     const NullSet& nulls, int layer,
                                     int label) {
  if (layer < 0 || layer >= nulls.layer_count()) {
    throw std::out_of_range("marginal: layer out of range");
  }
  if (label < 0 || label >= nulls.label_count()) {
    throw std::out_of_range("marginal: label out of range");
  }
  if (static_cast<int>(p.size()) != nulls.layer_count() - 1) {
    throw std::invalid_argument("marginal: p must have length l - 1");
  }
  // One chain step per layer: P(b) = p_b P(b-1) + (1 - p_b) null_b.
  double prob = nulls.layer(0).probabilities[label];
  for (int b = 1; b <= layer; ++b) {
    prob = p[b - 1] * prob +
           (1.0 - p[b - 1]) * nulls.layer(b).probabilities[label];
  }
  return prob;
}

double temporal_disappearance_probability(double copy_p, double null_prob,
                                          int nodes_with_label,
                                          int node_count) {
  if (!(copy_p >= 0.0 && copy_p <= 1.0) ||
      !(null_prob >= 0.0 && null_prob <= 1.0)) {
    throw std::invalid_argument("disappearance: probabilities must lie in [0, 1]");
  }
  if (nodes_with_label < 0 || node_count < nodes_with_label) {
    throw std::invalid_argument("disappearance: need 0 <= m <= n");
  }
  const double miss = (1.0 - copy_p) * (1.0 - null_prob);
  return std::pow(miss, nodes_with_label) *
         std::pow(copy_p + miss, node_count - nodes_with_label);
}

double temporal_appearance_probability(double copy_p, double present_mass,
                                       int node_count) {
  if (!(copy_p >= 0.0 && copy_p <= 1.0) ||
      !(present_mass >= 0.0 && present_mass <= 1.0 + kProbTolerance)) {
    throw std::invalid_argument("appearance: probabilities must lie in [0, 1]");
  }
  if (node_count < 0) {
    throw std::invalid_argument("appearance: node count must be >= 0");
  }
  const double stay = copy_p + (1.0 - copy_p) * std::min(present_mass, 1.0);
  return 1.0 - std::pow(stay, node_count);
}

double temporal_appearance_probability(double copy_p, const NullSet& nulls,
                                       int next_layer,
                                       std::span<const int> previous_labels,
                                       int node_count) {
  if (next_layer < 0 || next_layer >= nulls.layer_count()) {
    throw std::out_of_range("appearance: layer out of range");
  }
  const std::set<int> present(previous_labels.begin(), previous_labels.end());
  double mass = 0;
  for (int label : present) {
    mass += nulls.layer(next_layer).probabilities.at(label);
  }
  return temporal_appearance_probability(copy_p, mass, node_count);
}

double label_agreement(const MultilayerPartition& a,
                       const MultilayerPartition& b) {
  if (a.shape() != b.shape()) {
    throw std::invalid_argument("label_agreement: shapes must match");
  }
  return agreement(a.labels(), b.labels());
}

}  // namespace multinet
