#include "multinet/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>
#include <utility>

#include "multinet/metrics.hpp"

namespace multinet {

namespace {

constexpr const char* kPartitionHeader = "#multinet-partition v1";
constexpr const char* kEdgesHeaderPrefix = "#multinet-edges v1";

[[noreturn]] void fail_line(std::size_t line_number, const std::string& what) {
  throw ValidationError("line " + std::to_string(line_number) + ": " + what);
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

int parse_int(std::string_view field, std::size_t line_number,
              const char* what) {
  int value = 0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    fail_line(line_number, std::string("cannot parse ") + what);
  }
  return value;
}

double parse_double(std::string_view field, std::size_t line_number,
                    const char* what) {
  double value = 0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    fail_line(line_number, std::string("cannot parse ") + what);
  }
  return value;
}

// 1-based "c1,...,cd" -> 0-based coordinate vector.
std::vector<int> parse_coords(std::string_view field, std::size_t line_number) {
  std::vector<int> coords;
  for (const std::string_view part : split(field, ',')) {
    const int c = parse_int(part, line_number, "layer coordinate");
    if (c < 1) fail_line(line_number, "layer coordinates are 1-based");
    coords.push_back(c - 1);
  }
  return coords;
}

void append_coords(std::string& out, const std::vector<int>& coords) {
  for (std::size_t a = 0; a < coords.size(); ++a) {
    if (a > 0) out += ',';
    out += std::to_string(coords[a] + 1);
  }
}

// Non-empty content lines with their 1-based positions; requires the given
// header on line 1 (for edges, only the prefix, returning the rest).
struct ParsedLines {
  std::string_view header_rest;
  std::vector<std::pair<std::size_t, std::string_view>> records;
};

ParsedLines split_records(const std::string& text, const char* header,
                          bool header_is_prefix) {
  ParsedLines out;
  const std::vector<std::string_view> lines = split(text, '\n');
  if (lines.empty() || lines[0].substr(0, std::string_view(header).size()) !=
                           std::string_view(header)) {
    throw ValidationError(std::string("missing header line `") + header + "`");
  }
  if (header_is_prefix) {
    out.header_rest = lines[0].substr(std::string_view(header).size());
  } else if (lines[0] != std::string_view(header)) {
    throw ValidationError(std::string("missing header line `") + header + "`");
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) {
      if (i + 1 != lines.size()) fail_line(i + 1, "unexpected blank line");
      continue;  // trailing newline
    }
    out.records.push_back({i + 1, lines[i]});
  }
  return out;
}

struct PartitionRecord {
  int node = 0;  // 0-based
  std::vector<int> coords;
  int label = 0;  // 0-based
};

std::vector<PartitionRecord> parse_partition_records(const std::string& text) {
  const ParsedLines lines = split_records(text, kPartitionHeader, false);
  std::vector<PartitionRecord> records;
  records.reserve(lines.records.size());
  for (const auto& [line_number, line] : lines.records) {
    const std::vector<std::string_view> fields = split(line, '\t');
    if (fields.size() != 3) {
      fail_line(line_number, "expected node<TAB>coords<TAB>label");
    }
    PartitionRecord record;
    record.node = parse_int(fields[0], line_number, "node id") - 1;
    if (record.node < 0) fail_line(line_number, "node ids are 1-based");
    record.coords = parse_coords(fields[1], line_number);
    record.label = parse_int(fields[2], line_number, "label") - 1;
    if (record.label < 0) fail_line(line_number, "labels are 1-based");
    records.push_back(std::move(record));
  }
  if (records.empty()) throw ValidationError("partition file has no records");
  return records;
}

MultilayerPartition assemble_partition(
    const std::vector<PartitionRecord>& records, const MultilayerShape& shape) {
  std::vector<int> labels(shape.state_node_count(), -1);
  for (const PartitionRecord& record : records) {
    if (static_cast<int>(record.coords.size()) != shape.aspect_count()) {
      throw ValidationError("record has the wrong number of layer coordinates");
    }
    for (int a = 0; a < shape.aspect_count(); ++a) {
      if (record.coords[a] >= shape.aspects()[a].size) {
        throw ValidationError("layer coordinate out of range");
      }
    }
    if (record.node >= shape.node_count()) {
      throw ValidationError("node id out of range");
    }
    const int supra =
        shape.supra_index(record.node, shape.flatten_layer(record.coords));
    if (labels[supra] != -1) {
      throw ValidationError("duplicate record for a state node");
    }
    labels[supra] = record.label;
  }
  if (std::find(labels.begin(), labels.end(), -1) != labels.end()) {
    throw ValidationError("partition file does not cover every state node");
  }
  return MultilayerPartition(shape, std::move(labels));
}

}  // namespace

std::string format_partition(const MultilayerPartition& partition) {
  const MultilayerShape& shape = partition.shape();
  std::string out = kPartitionHeader;
  out += '\n';
  for (int layer = 0; layer < shape.layer_count(); ++layer) {
    const std::vector<int> coords = shape.unflatten_layer(layer);
    for (int node = 0; node < shape.node_count(); ++node) {
      out += std::to_string(node + 1);
      out += '\t';
      append_coords(out, coords);
      out += '\t';
      out += std::to_string(partition.label(node, layer) + 1);
      out += '\n';
    }
  }
  return out;
}

MultilayerPartition parse_partition(const std::string& text,
                                    const MultilayerShape& shape) {
  return assemble_partition(parse_partition_records(text), shape);
}

MultilayerPartition parse_partition(const std::string& text) {
  const std::vector<PartitionRecord> records = parse_partition_records(text);
  const std::size_t aspect_count = records.front().coords.size();
  int max_node = 0;
  std::vector<int> max_coord(aspect_count, 0);
  for (const PartitionRecord& record : records) {
    if (record.coords.size() != aspect_count) {
      throw ValidationError("records disagree on the number of aspects");
    }
    max_node = std::max(max_node, record.node);
    for (std::size_t a = 0; a < aspect_count; ++a) {
      max_coord[a] = std::max(max_coord[a], record.coords[a]);
    }
  }
  std::vector<AspectSpec> aspects(aspect_count);
  for (std::size_t a = 0; a < aspect_count; ++a) {
    aspects[a] = {max_coord[a] + 1, AspectOrdering::unordered};
  }
  return assemble_partition(records,
                            MultilayerShape(max_node + 1, std::move(aspects)));
}

std::string format_network(const MultilayerNetwork& network) {
  const MultilayerShape& shape = network.shape();
  std::string out = kEdgesHeaderPrefix;
  out += network.directed() ? " directed" : " undirected";
  out += '\n';
  std::vector<std::vector<int>> coords(shape.layer_count());
  for (int layer = 0; layer < shape.layer_count(); ++layer) {
    coords[layer] = shape.unflatten_layer(layer);
  }
  char weight[64];
  for (const MultilayerEdge& e : network.edges()) {
    append_coords(out, coords[shape.supra_layer(e.a)]);
    out += '\t';
    out += std::to_string(shape.supra_node(e.a) + 1);
    out += '\t';
    append_coords(out, coords[shape.supra_layer(e.b)]);
    out += '\t';
    out += std::to_string(shape.supra_node(e.b) + 1);
    out += '\t';
    std::snprintf(weight, sizeof weight, "%.17g", e.weight);
    out += weight;
    out += '\n';
  }
  return out;
}

MultilayerNetwork parse_network(const std::string& text,
                                const MultilayerShape& shape) {
  const ParsedLines lines = split_records(text, kEdgesHeaderPrefix, true);
  bool directed = false;
  if (lines.header_rest == " directed") {
    directed = true;
  } else if (lines.header_rest != " undirected") {
    throw ValidationError(
        "edge header must end in `undirected` or `directed`");
  }
  std::vector<MultilayerEdge> edges;
  edges.reserve(lines.records.size());
  for (const auto& [line_number, line] : lines.records) {
    const std::vector<std::string_view> fields = split(line, '\t');
    if (fields.size() != 5) {
      fail_line(line_number,
                "expected coords<TAB>i<TAB>coords<TAB>j<TAB>weight");
    }
    const std::vector<int> coords_a = parse_coords(fields[0], line_number);
    const std::vector<int> coords_b = parse_coords(fields[2], line_number);
    if (static_cast<int>(coords_a.size()) != shape.aspect_count() ||
        static_cast<int>(coords_b.size()) != shape.aspect_count()) {
      fail_line(line_number, "wrong number of layer coordinates");
    }
    for (int a = 0; a < shape.aspect_count(); ++a) {
      if (coords_a[a] >= shape.aspects()[a].size ||
          coords_b[a] >= shape.aspects()[a].size) {
        fail_line(line_number, "layer coordinate out of range");
      }
    }
    const int node_a = parse_int(fields[1], line_number, "node id") - 1;
    const int node_b = parse_int(fields[3], line_number, "node id") - 1;
    if (node_a < 0 || node_b < 0 || node_a >= shape.node_count() ||
        node_b >= shape.node_count()) {
      fail_line(line_number, "node id out of range");
    }
    const double weight = parse_double(fields[4], line_number, "weight");
    edges.push_back(
        {shape.supra_index(node_a, shape.flatten_layer(coords_a)),
         shape.supra_index(node_b, shape.flatten_layer(coords_b)), weight});
  }
  try {
    return MultilayerNetwork(shape, directed, std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
}

std::string evaluation_csv(const MultilayerPartition& planted,
                           const std::vector<MultilayerPartition>& found) {
  const LayerNmiSummary summary = per_layer_mean_nmi(planted, found);
  std::string out = "layer,nmi\n";
  char line[64];
  for (std::size_t layer = 0; layer < summary.per_layer.size(); ++layer) {
    std::snprintf(line, sizeof line, "%zu,%.10g\n", layer + 1,
                  summary.per_layer[layer]);
    out += line;
  }
  std::snprintf(line, sizeof line, "mean,%.10g\n", summary.mean);
  out += line;
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("failed reading " + path.string());
  return std::move(buffer).str();
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

void write_partition(const std::filesystem::path& path,
                     const MultilayerPartition& partition) {
  write_text_file(path, format_partition(partition));
}

MultilayerPartition read_partition(const std::filesystem::path& path,
                                   const MultilayerShape& shape) {
  return parse_partition(read_text_file(path), shape);
}

MultilayerPartition read_partition(const std::filesystem::path& path) {
  return parse_partition(read_text_file(path));
}

void write_network(const std::filesystem::path& path,
                   const MultilayerNetwork& network) {
  write_text_file(path, format_network(network));
}

MultilayerNetwork read_network(const std::filesystem::path& path,
                               const MultilayerShape& shape) {
  return parse_network(read_text_file(path), shape);
}

}  // namespace multinet
