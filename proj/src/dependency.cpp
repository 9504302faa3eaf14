#include "multinet/dependency.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace multinet {

namespace {

int product_size(const std::vector<AspectSpec>& aspects) {
  long long l = 1;
  for (const AspectSpec& a : aspects) {
    if (a.size <= 0) {
      throw std::invalid_argument("dependency: aspect sizes must be positive");
    }
    l *= a.size;
  }
  if (l > (1ll << 31)) {
    throw std::invalid_argument("dependency: layer count overflows");
  }
  return static_cast<int>(l);
}

std::vector<int> unflatten(const std::vector<AspectSpec>& aspects, int flat) {
  std::vector<int> coords(aspects.size());
  for (std::size_t a = 0; a < aspects.size(); ++a) {
    coords[a] = flat % aspects[a].size;
    flat /= aspects[a].size;
  }
  return coords;
}

}  // namespace

LayerDependencyTensor::LayerDependencyTensor(std::vector<AspectSpec> aspects,
                                             std::vector<double> entries)
    : aspects_(std::move(aspects)),
      layer_count_(product_size(aspects_)),
      entries_(std::move(entries)) {
  const std::size_t expected =
      static_cast<std::size_t>(layer_count_) * layer_count_;
  if (entries_.size() != expected) {
    throw std::invalid_argument("dependency tensor: entry count must be l*l");
  }
  for (int s = 0; s < layer_count_; ++s) {
    for (int t = 0; t < layer_count_; ++t) {
      const double v = entry(s, t);
      if (!(v >= 0.0 && v <= 1.0)) {
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "dependency tensor: entry %.17g outside [0, 1] for "
                      "source layer %d, target layer %d",
                      v, s + 1, t + 1);
        throw std::invalid_argument(buf);
      }
      if (s == t && v != 0.0) {
        throw std::invalid_argument(
            "dependency tensor: diagonal entries must be zero");
      }
    }
  }
  std::vector<std::vector<int>> coords(layer_count_);
  for (int f = 0; f < layer_count_; ++f) coords[f] = unflatten(aspects_, f);
  incoming_.resize(layer_count_);
  for (int t = 0; t < layer_count_; ++t) {
    double mass = 0;
    for (int s = 0; s < layer_count_; ++s) {
      const double v = entry(s, t);
      mass += v;
      if (v == 0.0) continue;
      // Ordered aspects only admit copying from earlier or equal coordinates;
      // the sequential sampler relies on this to make one ordered pass exact.
      for (std::size_t a = 0; a < aspects_.size(); ++a) {
        if (aspects_[a].ordering == AspectOrdering::ordered &&
            coords[s][a] > coords[t][a]) {
          char buf[160];
          std::snprintf(buf, sizeof(buf),
                        "dependency tensor: copying from later layer %d to "
                        "earlier layer %d violates the order of aspect %d",
                        s + 1, t + 1, static_cast<int>(a) + 1);
          throw std::invalid_argument(buf);
        }
      }
      incoming_[t].emplace_back(s, v);
    }
    if (mass > 1.0 + kProbTolerance) {
      char buf[128];
      std::snprintf(buf, sizeof(buf),
                    "dependency tensor: incoming mass %.17g > 1 at layer %d",
                    mass, t + 1);
      throw std::invalid_argument(buf);
    }
  }
}

double LayerDependencyTensor::incoming_mass(int target) const {
  double total = 0;
  for (const auto& [s, w] : incoming_[target]) total += w;
  return total;
}

InterlayerDependencyTensor LayerDependencyTensor::expand(int node_count) const {
  MultilayerShape shape(node_count, aspects_);
  std::vector<InterlayerDependencyTensor::Entry> entries;
  for (int t = 0; t < layer_count_; ++t) {
    for (const auto& [s, w] : incoming_[t]) {
      for (int i = 0; i < node_count; ++i) {
        entries.push_back({shape.supra_index(i, s), shape.supra_index(i, t), w});
      }
    }
  }
  return InterlayerDependencyTensor(std::move(shape), entries);
}

InterlayerDependencyTensor::InterlayerDependencyTensor(
    MultilayerShape shape, const std::vector<Entry>& entries)
    : shape_(std::move(shape)) {
  incoming_.resize(shape_.state_node_count());
  std::vector<double> mass(shape_.state_node_count(), 0.0);
  for (const Entry& e : entries) {
    if (e.source_supra < 0 || e.source_supra >= shape_.state_node_count() ||
        e.target_supra < 0 || e.target_supra >= shape_.state_node_count()) {
      throw std::out_of_range("dependency tensor: state node out of range");
    }
    if (shape_.supra_layer(e.source_supra) ==
        shape_.supra_layer(e.target_supra)) {
      throw std::invalid_argument(
          "dependency tensor: copying within a layer is not allowed");
    }
    if (!(e.weight >= 0.0 && e.weight <= 1.0)) {
      throw std::invalid_argument(
          "dependency tensor: weights must lie in [0, 1]");
    }
    if (e.weight == 0.0) continue;
    incoming_[e.target_supra].emplace_back(e.source_supra, e.weight);
    mass[e.target_supra] += e.weight;
  }
  for (std::int64_t t = 0; t < shape_.state_node_count(); ++t) {
    if (mass[t] > 1.0 + kProbTolerance) {
      throw std::invalid_argument(
          "dependency tensor: incoming mass exceeds 1 at a state node");
    }
  }
}

double InterlayerDependencyTensor::incoming_mass(int target_supra) const {
  double total = 0;
  for (const auto& [s, w] : incoming_[target_supra]) total += w;
  return total;
}

LayerDependencyTensor build_temporal(int l, std::span<const double> p) {
  if (l < 1) throw std::invalid_argument("build_temporal: l must be >= 1");
  if (static_cast<int>(p.size()) != l - 1) {
    throw std::invalid_argument("build_temporal: p must have length l - 1");
  }
  std::vector<double> entries(static_cast<std::size_t>(l) * l, 0.0);
  for (int t = 1; t < l; ++t) {
    entries[static_cast<std::size_t>(t - 1) * l + t] = p[t - 1];
  }
  return LayerDependencyTensor({{l, AspectOrdering::ordered}},
                               std::move(entries));
}

LayerDependencyTensor build_temporal(int l, double p) {
  std::vector<double> ps(l > 0 ? l - 1 : 0, p);
  return build_temporal(l, ps);
}

LayerDependencyTensor build_uniform_multiplex(int l, double p_hat) {
  if (l < 2) {
    throw std::invalid_argument("build_uniform_multiplex: l must be >= 2");
  }
  // Out-of-range p_hat is caught by the tensor's own validation, which names
  // the offending layer.
  const double per_source = p_hat / (l - 1);
  std::vector<double> entries(static_cast<std::size_t>(l) * l, per_source);
  for (int a = 0; a < l; ++a) entries[static_cast<std::size_t>(a) * l + a] = 0;
  return LayerDependencyTensor({{l, AspectOrdering::unordered}},
                               std::move(entries));
}

LayerDependencyTensor build_temporal_multiplex(
    int l1, int l2, const std::vector<std::vector<double>>& p) {
  if (l1 < 1 || l2 < 1) {
    throw std::invalid_argument("build_temporal_multiplex: sizes must be >= 1");
  }
  if (static_cast<int>(p.size()) != l1) {
    throw std::invalid_argument(
        "build_temporal_multiplex: p must have l1 rows (target first aspect)");
  }
  for (const auto& row : p) {
    if (static_cast<int>(row.size()) != l2) {
      throw std::invalid_argument(
          "build_temporal_multiplex: p rows must have l2 entries");
    }
  }
  const int l = l1 * l2;
  auto flat = [l1](int c1, int c2) { return c2 * l1 + c1; };
  std::vector<double> entries(static_cast<std::size_t>(l) * l, 0.0);
  for (int b1 = 0; b1 < l1; ++b1) {
    for (int b2 = 0; b2 < l2; ++b2) {
      const double pb = p[b1][b2];
      const int target = flat(b1, b2);
      // same time, every other copy of the unordered aspect
      for (int a1 = 0; a1 < l1; ++a1) {
        if (a1 == b1) continue;
        entries[static_cast<std::size_t>(flat(a1, b2)) * l + target] = pb;
      }
      // same unordered coordinate, previous time
      if (b2 > 0) {
        entries[static_cast<std::size_t>(flat(b1, b2 - 1)) * l + target] = pb;
      }
    }
  }
  return LayerDependencyTensor({{l1, AspectOrdering::unordered},
                                {l2, AspectOrdering::ordered}},
                               std::move(entries));
}

LayerDependencyTensor build_temporal_multiplex(int l1, int l2, double p) {
  std::vector<std::vector<double>> table(
      l1, std::vector<double>(static_cast<std::size_t>(l2), p));
  return build_temporal_multiplex(l1, l2, table);
}

LayerDependencyTensor build_block_multiplex(int l,
                                            std::span<const int> block_of,
                                            std::span<const double> p_hat) {
  if (l < 1) throw std::invalid_argument("build_block_multiplex: l must be >= 1");
  if (static_cast<int>(block_of.size()) != l) {
    throw std::invalid_argument(
        "build_block_multiplex: block_of must have one entry per layer");
  }
  int block_count = 0;
  for (int b : block_of) {
    if (b < 0) {
      throw std::invalid_argument(
          "build_block_multiplex: block ids must be non-negative");
    }
    block_count = std::max(block_count, b + 1);
  }
  if (static_cast<int>(p_hat.size()) != block_count) {
    throw std::invalid_argument(
        "build_block_multiplex: one p_hat per block required");
  }
  std::vector<int> block_size(block_count, 0);
  for (int b : block_of) ++block_size[b];
  for (int b = 0; b < block_count; ++b) {
    if (block_size[b] == 0) {
      throw std::invalid_argument("build_block_multiplex: empty block");
    }
    if (!(p_hat[b] >= 0.0 && p_hat[b] <= 1.0)) {
      throw std::invalid_argument(
          "build_block_multiplex: p_hat must lie in [0, 1]");
    }
    if (block_size[b] == 1 && p_hat[b] > 0.0) {
      throw std::invalid_argument(
          "build_block_multiplex: singleton block cannot have copy mass");
    }
  }
  std::vector<double> entries(static_cast<std::size_t>(l) * l, 0.0);
  for (int t = 0; t < l; ++t) {
    const int b = block_of[t];
    if (block_size[b] == 1) continue;
    const double per_source = p_hat[b] / (block_size[b] - 1);
    for (int s = 0; s < l; ++s) {
      if (s != t && block_of[s] == b) {
        entries[static_cast<std::size_t>(s) * l + t] = per_source;
      }
    }
  }
  return LayerDependencyTensor({{l, AspectOrdering::unordered}},
                               std::move(entries));
}

DependencyValidationReport validate_dependency_matrix(
    const std::vector<std::vector<double>>& matrix,
    const std::vector<AspectSpec>& aspects) {
  const int l = product_size(aspects);
  if (static_cast<int>(matrix.size()) != l) {
    throw std::invalid_argument("validate: matrix must have l rows");
  }
  for (const auto& row : matrix) {
    if (static_cast<int>(row.size()) != l) {
      throw std::invalid_argument("validate: matrix must have l columns");
    }
  }
  DependencyValidationReport report;
  std::vector<std::vector<int>> coords(l);
  for (int f = 0; f < l; ++f) coords[f] = unflatten(aspects, f);
  for (int t = 0; t < l; ++t) {
    double mass = 0;
    for (int s = 0; s < l; ++s) {
      const double v = matrix[s][t];
      mass += v;
      if (s == t && v != 0.0) report.diagonal_violations.push_back(t);
      if (s == t || v == 0.0) continue;
      // No copying from a strictly later coordinate of an ordered aspect.
      for (std::size_t a = 0; a < aspects.size(); ++a) {
        if (aspects[a].ordering == AspectOrdering::ordered &&
            coords[s][a] > coords[t][a]) {
          report.causal_violations.push_back({s, t, static_cast<int>(a)});
        }
      }
    }
    if (mass > 1.0 + kProbTolerance) {
      report.mass_violations.emplace_back(t, mass);
    }
  }
  return report;
}

DependencyValidationReport validate_dependency(
    const LayerDependencyTensor& tensor) {
  const int l = tensor.layer_count();
  std::vector<std::vector<double>> matrix(l, std::vector<double>(l, 0.0));
  for (int s = 0; s < l; ++s) {
    for (int t = 0; t < l; ++t) matrix[s][t] = tensor.entry(s, t);
  }
  return validate_dependency_matrix(matrix, tensor.aspects());
}

std::string DependencyValidationReport::summary() const {
  std::string out;
  char buf[160];
  for (const auto& [layer, mass] : mass_violations) {
    std::snprintf(buf, sizeof(buf),
                  "incoming copy mass %.12g exceeds 1 at layer %d\n", mass,
                  layer + 1);
    out += buf;
  }
  for (int layer : diagonal_violations) {
    std::snprintf(buf, sizeof(buf), "nonzero self-dependence at layer %d\n",
                  layer + 1);
    out += buf;
  }
  for (const CausalViolation& v : causal_violations) {
    std::snprintf(buf, sizeof(buf),
                  "copying from later layer %d to earlier layer %d violates "
                  "the order of aspect %d\n",
                  v.source + 1, v.target + 1, v.aspect + 1);
    out += buf;
  }
  return out;
}

}  // namespace multinet
