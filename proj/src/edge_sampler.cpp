#include "multinet/edge_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <unordered_set>

namespace multinet {

TruncatedPowerLaw::TruncatedPowerLaw(double exponent, double minimum,
                                     double maximum)
    : exponent_(exponent), min_(minimum), max_(maximum) {
  if (!(exponent < -1.0)) {
    throw std::invalid_argument(
        "power law: exponent must be < -1 (density ~ x^exponent)");
  }
  if (!(minimum > 0) || !(maximum >= minimum)) {
    throw std::invalid_argument("power law: need 0 < minimum <= maximum");
  }
}

double TruncatedPowerLaw::normalization() const {
  const double t = -exponent_;  // > 1
  return (t - 1.0) / (std::pow(min_, 1.0 - t) - std::pow(max_, 1.0 - t));
}

double TruncatedPowerLaw::cdf(double x) const {
  if (x <= min_) return 0.0;
  if (x >= max_) return 1.0;
  const double t = -exponent_;
  const double a = std::pow(min_, 1.0 - t);
  const double b = std::pow(max_, 1.0 - t);
  return (a - std::pow(x, 1.0 - t)) / (a - b);
}

double TruncatedPowerLaw::quantile(double u) const {
  if (!(u >= 0.0 && u < 1.0)) {
    throw std::invalid_argument("power law: quantile argument must be in [0, 1)");
  }
  if (min_ == max_) return min_;
  const double t = -exponent_;
  const double a = std::pow(min_, 1.0 - t);
  const double b = std::pow(max_, 1.0 - t);
  return std::pow((1.0 - u) * a + u * b, 1.0 / (1.0 - t));
}

double TruncatedPowerLaw::mean() const {
  const double t = -exponent_;
  const double c = normalization();
  if (t == 2.0) return c * std::log(max_ / min_);
  return c / (2.0 - t) * (std::pow(max_, 2.0 - t) - std::pow(min_, 2.0 - t));
}

std::vector<double> sample_expected_degrees(const TruncatedPowerLaw& degrees,
                                            const MultilayerShape& shape,
                                            RngStream& rng) {
  std::vector<double> e(shape.state_node_count());
  for (double& v : e) v = degrees.sample(rng);
  return e;
}

namespace {

void check_expected_degrees(std::span<const double> e, std::int64_t count,
                            const char* what) {
  if (static_cast<std::int64_t>(e.size()) != count) {
    throw std::invalid_argument(std::string(what) +
                                ": expected-degree array has the wrong size");
  }
  for (double v : e) {
    if (!(v >= 0) || !std::isfinite(v)) {
      throw std::invalid_argument(
          std::string(what) + ": expected degrees must be finite and >= 0");
    }
  }
}

void check_mu(double mu) {
  if (!(mu >= 0.0 && mu <= 1.0)) {
    throw std::invalid_argument("block model: mu must lie in [0, 1]");
  }
}

// Draws an element proportionally to the increments of `cumulative`.
int draw_member(const std::vector<int>& members,
                const std::vector<double>& cumulative, RngStream& rng) {
  const double u = rng.uniform();
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  const std::size_t idx = std::min(
      static_cast<std::size_t>(it - cumulative.begin()), members.size() - 1);
  return members[idx];
}

}  // namespace

DcsbmParams::DcsbmParams(MultilayerPartition partition,
                         std::vector<double> expected_degrees, double mixing_mu)
    : partition_(std::move(partition)),
      expected_degrees_(std::move(expected_degrees)),
      mu_(mixing_mu) {
  const MultilayerShape& shape = partition_.shape();
  check_expected_degrees(expected_degrees_, shape.state_node_count(),
                         "block model");
  check_mu(mu_);
  const int n = shape.node_count();
  layers_.resize(shape.layer_count());
  for (int layer = 0; layer < shape.layer_count(); ++layer) {
    LayerBlocks& blocks = layers_[layer];
    const std::vector<int> induced = partition_.induced_partition(layer);
    blocks.community_labels = induced;
    std::sort(blocks.community_labels.begin(), blocks.community_labels.end());
    blocks.community_labels.erase(std::unique(blocks.community_labels.begin(),
                                              blocks.community_labels.end()),
                                  blocks.community_labels.end());
    const int c = static_cast<int>(blocks.community_labels.size());
    blocks.members.resize(c);
    blocks.kappa.assign(c, 0.0);
    for (int node = 0; node < n; ++node) {
      const int idx = community_index(layer, induced[node]);
      blocks.members[idx].push_back(node);
      blocks.kappa[idx] += expected_degrees_[shape.supra_index(node, layer)];
      blocks.w += expected_degrees_[shape.supra_index(node, layer)];
    }
    blocks.w /= 2.0;
    blocks.cumulative_sigma.resize(c);
    for (int r = 0; r < c; ++r) {
      if (!(blocks.kappa[r] > 0)) {
        throw std::invalid_argument(
            "block model: a community has zero expected degree in a layer "
            "where it appears");
      }
      double cum = 0;
      blocks.cumulative_sigma[r].reserve(blocks.members[r].size());
      for (int node : blocks.members[r]) {
        cum +=
            expected_degrees_[shape.supra_index(node, layer)] / blocks.kappa[r];
        blocks.cumulative_sigma[r].push_back(cum);
      }
      blocks.cumulative_sigma[r].back() = 1.0;  // absorb rounding
    }
  }
}

int DcsbmParams::community_index(int flat_layer, int label) const {
  const auto& labels = layers_.at(flat_layer).community_labels;
  const auto it = std::lower_bound(labels.begin(), labels.end(), label);
  if (it == labels.end() || *it != label) return -1;
  return static_cast<int>(it - labels.begin());
}

double DcsbmParams::block_weight(int flat_layer, int community_r,
                                 int community_s) const {
  const LayerBlocks& blocks = layers_.at(flat_layer);
  const int r = community_index(flat_layer, community_r);
  const int s = community_index(flat_layer, community_s);
  if (r < 0 || s < 0) return 0.0;
  const double planted = (community_r == community_s) ? blocks.kappa[r] : 0.0;
  return (1.0 - mu_) * planted +
         mu_ * blocks.kappa[r] * blocks.kappa[s] / (2.0 * blocks.w);
}

double DcsbmParams::edge_probability(StateNode x, StateNode y) const {
  if (x.layer != y.layer) return 0.0;
  const MultilayerShape& shape = partition_.shape();
  const int rx = partition_.label(x.node, x.layer);
  const int ry = partition_.label(y.node, y.layer);
  const LayerBlocks& blocks = layers_.at(x.layer);
  const double kx = blocks.kappa[community_index(x.layer, rx)];
  const double ky = blocks.kappa[community_index(x.layer, ry)];
  const double sigma_x =
      expected_degrees_[shape.supra_index(x.node, x.layer)] / kx;
  const double sigma_y =
      expected_degrees_[shape.supra_index(y.node, y.layer)] / ky;
  return sigma_x * block_weight(x.layer, rx, ry) * sigma_y;
}

DcsbmParams build_dcsbm(const MultilayerPartition& partition,
                        std::span<const double> expected_degrees,
                        double mixing_mu) {
  return DcsbmParams(
      partition,
      std::vector<double>(expected_degrees.begin(), expected_degrees.end()),
      mixing_mu);
}

namespace {

// Shared block-sampling core.  `weight` is the block weight W; the expected
// edge total is W/2 on a diagonal (unordered same-community) block and W
// otherwise.  Endpoint draws, self-pair rejection and the pairwise sweep are
// supplied by the callers, which differ between the undirected and directed
// samplers.
struct BlockCallbacks {
  std::function<std::pair<int, int>()> draw_pair;            // endpoint draw
  std::function<bool(int, int)> placeable;                   // self-pair filter
  std::function<MultilayerEdge(int, int)> make_edge;
  std::function<double(int, int)> pair_prob;
  std::function<void(const std::function<void(int, int)>&)> for_each_pair;
  double pair_count = 0;
};

void sample_block(double weight, bool diagonal, RngStream& rng,
                  const SampleNetworkOptions& options,
                  SampleNetworkStats* stats, const BlockCallbacks& cb,
                  std::vector<MultilayerEdge>& edges) {
  if (weight <= 0) return;
  if (cb.pair_count <= 0) {
    if (stats != nullptr) ++stats->degenerate_blocks;
    return;
  }

  auto bernoulli = [&] {
    if (stats != nullptr) ++stats->bernoulli_blocks;
    cb.for_each_pair([&](int i, int j) {
      double p = cb.pair_prob(i, j);
      if (p > 1.0) {
        p = 1.0;
        if (stats != nullptr) ++stats->clamped_pairs;
      }
      if (rng.uniform() < p) edges.push_back(cb.make_edge(i, j));
    });
  };

  if (weight / cb.pair_count > options.bernoulli_threshold) {
    bernoulli();
    return;
  }

  const double mean = diagonal ? weight / 2.0 : weight;
  const int m = rng.poisson(mean);
  if (m == 0) return;
  const long long budget = static_cast<long long>(
      std::ceil(options.rejection_budget_factor * static_cast<double>(m)));
  std::unordered_set<std::int64_t> placed;
  placed.reserve(static_cast<std::size_t>(m) * 2);
  std::vector<MultilayerEdge> block_edges;
  block_edges.reserve(m);
  long long draws = 0;
  while (static_cast<int>(block_edges.size()) < m) {
    if (draws >= budget) {
      // Too many collisions; resample the whole block pairwise instead.
      if (stats != nullptr) ++stats->fallback_blocks;
      bernoulli();
      return;
    }
    ++draws;
    const auto [i, j] = cb.draw_pair();
    if (!cb.placeable(i, j)) continue;
    const MultilayerEdge e = cb.make_edge(i, j);
    const std::int64_t key = (static_cast<std::int64_t>(e.a) << 32) |
                             static_cast<std::uint32_t>(e.b);
    if (!placed.insert(key).second) continue;
    block_edges.push_back(e);
  }
  edges.insert(edges.end(), block_edges.begin(), block_edges.end());
}

}  // namespace

MultilayerNetwork sample_network(const DcsbmParams& params, std::uint64_t seed,
                                 const SampleNetworkOptions& options,
                                 SampleNetworkStats* stats) {
  const MultilayerShape& shape = params.partition().shape();
  std::vector<MultilayerEdge> edges;
  for (int layer = 0; layer < shape.layer_count(); ++layer) {
    const DcsbmParams::LayerBlocks& blocks = params.layer(layer);
    const int c = static_cast<int>(blocks.community_labels.size());
    for (int r = 0; r < c; ++r) {
      for (int s = r; s < c; ++s) {
        const int label_r = blocks.community_labels[r];
        const int label_s = blocks.community_labels[s];
        const double weight = params.block_weight(layer, label_r, label_s);
        RngStream rng(derive_seed(seed, "edges/block",
                                  {static_cast<std::uint64_t>(layer),
                                   static_cast<std::uint64_t>(label_r),
                                   static_cast<std::uint64_t>(label_s)}));
        const std::vector<int>& mr = blocks.members[r];
        const std::vector<int>& ms = blocks.members[s];
        const double nr = static_cast<double>(mr.size());
        const double ns = static_cast<double>(ms.size());
        BlockCallbacks cb;
        cb.draw_pair = [&] {
          return std::pair<int, int>(
              draw_member(mr, blocks.cumulative_sigma[r], rng),
              draw_member(ms, blocks.cumulative_sigma[s], rng));
        };
        cb.placeable = [r, s](int i, int j) { return r != s || i != j; };
        cb.make_edge = [&shape, layer](int i, int j) {
          int a = shape.supra_index(i, layer);
          int b = shape.supra_index(j, layer);
          if (a > b) std::swap(a, b);
          return MultilayerEdge{a, b, 1.0};
        };
        cb.pair_prob = [&params, layer](int i, int j) {
          return params.edge_probability({i, layer}, {j, layer});
        };
        cb.for_each_pair = [&](const std::function<void(int, int)>& fn) {
          if (r == s) {
            for (std::size_t x = 0; x < mr.size(); ++x) {
              for (std::size_t y = x + 1; y < mr.size(); ++y) {
                fn(mr[x], mr[y]);
              }
            }
          } else {
            for (int i : mr) {
              for (int j : ms) fn(i, j);
            }
          }
        };
        cb.pair_count = r == s ? nr * (nr - 1.0) / 2.0 : nr * ns;
        sample_block(weight, r == s, rng, options, stats, cb, edges);
      }
    }
  }
  return MultilayerNetwork(shape, /*directed=*/false, std::move(edges));
}

DirectedDcsbmParams::DirectedDcsbmParams(MultilayerPartition partition,
                                         std::vector<double> out_expected,
                                         std::vector<double> in_expected,
                                         double mixing_mu)
    : partition_(std::move(partition)),
      mu_(mixing_mu),
      layer_count_(partition_.shape().layer_count()),
      out_expected_(std::move(out_expected)),
      in_expected_(std::move(in_expected)) {
  const MultilayerShape& shape = partition_.shape();
  const int n = shape.node_count();
  const int l = layer_count_;
  check_mu(mu_);
  check_expected_degrees(out_expected_, shape.state_node_count() * l,
                         "directed block model (out)");
  check_expected_degrees(in_expected_, shape.state_node_count() * l,
                         "directed block model (in)");

  auto out_at = [&](int node, int layer, int other) {
    return out_expected_[static_cast<std::size_t>(
                             shape.supra_index(node, layer)) *
                             l +
                         other];
  };
  auto in_at = [&](int node, int layer, int other) {
    return in_expected_[static_cast<std::size_t>(shape.supra_index(node, layer)) *
                            l +
                        other];
  };

  pairs_.resize(static_cast<std::size_t>(l) * l);
  active_.assign(static_cast<std::size_t>(l) * l, false);
  for (int a = 0; a < l; ++a) {
    for (int b = 0; b < l; ++b) {
      double w_out = 0;
      double w_in = 0;
      for (int i = 0; i < n; ++i) {
        w_out += out_at(i, a, b);
        w_in += in_at(i, b, a);
      }
      if (std::abs(w_out - w_in) >
          1e-9 * std::max(1.0, std::max(w_out, w_in))) {
        throw std::invalid_argument(
            "directed block model: out- and in-degree totals disagree for a "
            "layer pair");
      }
      if (w_out <= 0) continue;

      CommunityShares shares;
      shares.w = w_out;
      const std::vector<int> induced_a = partition_.induced_partition(a);
      const std::vector<int> induced_b = partition_.induced_partition(b);
      std::vector<int> labels = induced_a;
      labels.insert(labels.end(), induced_b.begin(), induced_b.end());
      std::sort(labels.begin(), labels.end());
      labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
      shares.community_labels = labels;
      const int c = static_cast<int>(labels.size());
      auto label_index = [&labels](int label) {
        return static_cast<int>(
            std::lower_bound(labels.begin(), labels.end(), label) -
            labels.begin());
      };
      shares.members_out.resize(c);
      shares.members_in.resize(c);
      shares.kappa_out.assign(c, 0.0);
      shares.kappa_in.assign(c, 0.0);
      for (int i = 0; i < n; ++i) {
        const int ra = label_index(induced_a[i]);
        shares.members_out[ra].push_back(i);
        shares.kappa_out[ra] += out_at(i, a, b);
        const int rb = label_index(induced_b[i]);
        shares.members_in[rb].push_back(i);
        shares.kappa_in[rb] += in_at(i, b, a);
      }
      shares.cumulative_sigma_out.resize(c);
      shares.cumulative_sigma_in.resize(c);
      for (int r = 0; r < c; ++r) {
        if (shares.kappa_out[r] > 0) {
          double cum = 0;
          for (int node : shares.members_out[r]) {
            cum += out_at(node, a, b) / shares.kappa_out[r];
            shares.cumulative_sigma_out[r].push_back(cum);
          }
          shares.cumulative_sigma_out[r].back() = 1.0;
        }
        if (shares.kappa_in[r] > 0) {
          double cum = 0;
          for (int node : shares.members_in[r]) {
            cum += in_at(node, b, a) / shares.kappa_in[r];
            shares.cumulative_sigma_in[r].push_back(cum);
          }
          shares.cumulative_sigma_in[r].back() = 1.0;
        }
      }
      pairs_[static_cast<std::size_t>(a) * l + b] = std::move(shares);
      active_[static_cast<std::size_t>(a) * l + b] = true;
    }
  }
}

const DirectedDcsbmParams::CommunityShares* DirectedDcsbmParams::pair(
    int source_layer, int target_layer) const {
  const std::size_t idx =
      static_cast<std::size_t>(source_layer) * layer_count_ + target_layer;
  if (source_layer < 0 || source_layer >= layer_count_ || target_layer < 0 ||
      target_layer >= layer_count_ || !active_[idx]) {
    return nullptr;
  }
  return &pairs_[idx];
}

double DirectedDcsbmParams::block_weight(int source_layer, int target_layer,
                                         int community_r,
                                         int community_s) const {
  const CommunityShares* shares = pair(source_layer, target_layer);
  if (shares == nullptr) return 0.0;
  const auto& labels = shares->community_labels;
  const auto rit = std::lower_bound(labels.begin(), labels.end(), community_r);
  const auto sit = std::lower_bound(labels.begin(), labels.end(), community_s);
  if (rit == labels.end() || *rit != community_r || sit == labels.end() ||
      *sit != community_s) {
    return 0.0;
  }
  const int r = static_cast<int>(rit - labels.begin());
  const int s = static_cast<int>(sit - labels.begin());
  const double planted =
      (community_r == community_s)
          ? (shares->kappa_out[s] + shares->kappa_in[s]) / 2.0
          : 0.0;
  return (1.0 - mu_) * planted +
         mu_ * shares->kappa_out[r] * shares->kappa_in[s] / shares->w;
}

double DirectedDcsbmParams::edge_probability(StateNode from,
                                             StateNode to) const {
  const CommunityShares* shares = pair(from.layer, to.layer);
  if (shares == nullptr) return 0.0;
  const MultilayerShape& shape = partition_.shape();
  const int l = layer_count_;
  const int r = partition_.label(from.node, from.layer);
  const int s = partition_.label(to.node, to.layer);
  const auto& labels = shares->community_labels;
  const int ri = static_cast<int>(
      std::lower_bound(labels.begin(), labels.end(), r) - labels.begin());
  const int si = static_cast<int>(
      std::lower_bound(labels.begin(), labels.end(), s) - labels.begin());
  if (!(shares->kappa_out[ri] > 0) || !(shares->kappa_in[si] > 0)) return 0.0;
  const double sigma_out =
      out_expected_[static_cast<std::size_t>(
                        shape.supra_index(from.node, from.layer)) *
                        l +
                    to.layer] /
      shares->kappa_out[ri];
  const double sigma_in =
      in_expected_[static_cast<std::size_t>(
                       shape.supra_index(to.node, to.layer)) *
                       l +
                   from.layer] /
      shares->kappa_in[si];
  return sigma_out * block_weight(from.layer, to.layer, r, s) * sigma_in;
}

DirectedDcsbmParams build_directed_interlayer_dcsbm(
    const MultilayerPartition& partition, std::span<const double> out_expected,
    std::span<const double> in_expected, double mixing_mu) {
  return DirectedDcsbmParams(
      partition,
      std::vector<double>(out_expected.begin(), out_expected.end()),
      std::vector<double>(in_expected.begin(), in_expected.end()), mixing_mu);
}

MultilayerNetwork sample_directed_network(const DirectedDcsbmParams& params,
                                          std::uint64_t seed,
                                          const SampleNetworkOptions& options,
                                          SampleNetworkStats* stats) {
  const MultilayerShape& shape = params.partition().shape();
  const int l = shape.layer_count();
  std::vector<MultilayerEdge> edges;
  for (int a = 0; a < l; ++a) {
    for (int b = 0; b < l; ++b) {
      const DirectedDcsbmParams::CommunityShares* shares = params.pair(a, b);
      if (shares == nullptr) continue;
      const int c = static_cast<int>(shares->community_labels.size());
      for (int r = 0; r < c; ++r) {
        for (int s = 0; s < c; ++s) {
          if (shares->members_out[r].empty() || shares->members_in[s].empty() ||
              !(shares->kappa_out[r] > 0) || !(shares->kappa_in[s] > 0)) {
            continue;
          }
          const int label_r = shares->community_labels[r];
          const int label_s = shares->community_labels[s];
          const double weight = params.block_weight(a, b, label_r, label_s);
          RngStream rng(derive_seed(seed, "edges/directed-block",
                                    {static_cast<std::uint64_t>(a),
                                     static_cast<std::uint64_t>(b),
                                     static_cast<std::uint64_t>(label_r),
                                     static_cast<std::uint64_t>(label_s)}));
          const std::vector<int>& mr = shares->members_out[r];
          const std::vector<int>& ms = shares->members_in[s];
          BlockCallbacks cb;
          cb.draw_pair = [&] {
            return std::pair<int, int>(
                draw_member(mr, shares->cumulative_sigma_out[r], rng),
                draw_member(ms, shares->cumulative_sigma_in[s], rng));
          };
          cb.placeable = [a, b](int i, int j) { return a != b || i != j; };
          cb.make_edge = [&shape, a, b](int i, int j) {
            return MultilayerEdge{shape.supra_index(i, a),
                                  shape.supra_index(j, b), 1.0};
          };
          cb.pair_prob = [&params, a, b](int i, int j) {
            return params.edge_probability({i, a}, {j, b});
          };
          cb.for_each_pair = [&](const std::function<void(int, int)>& fn) {
            for (int i : mr) {
              for (int j : ms) {
                if (a != b || i != j) fn(i, j);
              }
            }
          };
          const double nr = static_cast<double>(mr.size());
          const double ns = static_cast<double>(ms.size());
          double overlap = 0;
          if (a == b) {
            // Self-pairs are excluded from the pair space.
            for (int i : mr) {
              overlap += std::binary_search(ms.begin(), ms.end(), i) ? 1 : 0;
            }
          }
          cb.pair_count = nr * ns - overlap;
          // Directed blocks are never halved: each ordered pair is its own slot.
          sample_block(weight, /*diagonal=*/false, rng, options, stats, cb,
                       edges);
        }
      }
    }
  }
  return MultilayerNetwork(shape, /*directed=*/true, std::move(edges));
}

}  // namespace multinet
