#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "multinet/core.hpp"
#include "multinet/network.hpp"

namespace multinet {

// Bad input data: malformed files, inconsistent shapes, invalid config
// values.  The command-line driver maps this to exit code 2.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Filesystem trouble: unreadable or unwritable paths.  Exit code 3.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- Partition files ------------------------------------------------------
//
//   #multinet-partition v1
//   node<TAB>a1,...,ad<TAB>label
//
// One record per state node, everything 1-based, LF endings, records sorted
// by (flat layer, node).

std::string format_partition(const MultilayerPartition& partition);

// Strict parse against a known shape; the result round-trips exactly.
MultilayerPartition parse_partition(const std::string& text,
                                    const MultilayerShape& shape);
// Parse with the shape inferred from the records (aspect sizes from the
// largest coordinates, nodes from the largest node id).  Aspect orderings are
// not stored in the file, so inferred aspects are unordered; induced layer
// partitions are unaffected.
MultilayerPartition parse_partition(const std::string& text);

void write_partition(const std::filesystem::path& path,
                     const MultilayerPartition& partition);
MultilayerPartition read_partition(const std::filesystem::path& path,
                                   const MultilayerShape& shape);
MultilayerPartition read_partition(const std::filesystem::path& path);

// --- Edge files -----------------------------------------------------------
//
//   #multinet-edges v1 undirected|directed
//   a1,...,ad<TAB>i<TAB>b1,...,bd<TAB>j<TAB>weight
//
// One record per edge in canonical order (source flat layer, target flat
// layer, source node, target node); undirected records keep the canonical
// endpoint order.

std::string format_network(const MultilayerNetwork& network);
MultilayerNetwork parse_network(const std::string& text,
                                const MultilayerShape& shape);

void write_network(const std::filesystem::path& path,
                   const MultilayerNetwork& network);
MultilayerNetwork read_network(const std::filesystem::path& path,
                               const MultilayerShape& shape);

// --- Evaluation CSV -------------------------------------------------------
//
// Header `layer,nmi`, one row per flat layer (1-based; the value is averaged
// over the detected partitions), then a closing `mean` row.
std::string evaluation_csv(const MultilayerPartition& planted,
                           const std::vector<MultilayerPartition>& found);

// --- Plain helpers --------------------------------------------------------

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path,
                     const std::string& content);

}  // namespace multinet
