#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "rdm/core/repository.hpp"

namespace rdm {

enum class NodeKind { Sample, Protocol, Device, ExperimentEntry, Dataset, Other };

std::string to_string(NodeKind kind);
NodeKind node_kind_from_string(std::string_view text);  // Error{Parse}
NodeKind node_kind_of(std::string_view type_name);

enum class Direction { Up, Down, Both };

std::string to_string(Direction direction);
Direction direction_from_string(std::string_view text);  // Error{InvalidArgument}

using Tooltip = std::map<std::string, std::string>;

struct GraphNode {
  PermId id;
  NodeKind kind = NodeKind::Other;
  std::string type_name;  // object type, or the dataset type term
  std::string label;
  Tooltip tooltip;

  bool operator==(const GraphNode&) const = default;
};

struct ProvenanceGraph {
  std::vector<GraphNode> nodes;                // sorted by id
  std::vector<std::pair<PermId, PermId>> edges;  // (parent, child), sorted
  PermId root;                                 // empty for filter results
  bool truncated = false;

  const GraphNode* find(const PermId& id) const;
  bool operator==(const ProvenanceGraph&) const = default;
};

// BFS from `root` over parent links (Up), child links (Down) or both.
// Datasets owned by every visited object are attached. max_depth counts link
// hops; nullopt means unlimited. Throws Error{NotFound} for an unknown root.
ProvenanceGraph build_graph(const RepositorySnapshot& snap, const PermId& root, Direction direction,
                            std::optional<std::size_t> max_depth = std::nullopt);
ProvenanceGraph build_graph(const Repository& repo, const PermId& root, Direction direction,
                            std::optional<std::size_t> max_depth = std::nullopt);

// Union of the up+down graphs of every sample whose composition lists
// `element_symbol` above zero. `radius` limits each expansion. Throws
// Error{Domain} for a symbol that is not a chemical element.
ProvenanceGraph filter_by_element(const RepositorySnapshot& snap, std::string_view element_symbol,
                                  std::optional<std::size_t> radius = std::nullopt);
ProvenanceGraph filter_by_element(const Repository& repo, std::string_view element_symbol,
                                  std::optional<std::size_t> radius = std::nullopt);

Tooltip node_tooltip(const RepositorySnapshot& snap, const ObjectRecord& record);
Tooltip node_tooltip(const DatasetRecord& dataset);

std::string export_dot(const ProvenanceGraph& graph);
std::string export_json(const ProvenanceGraph& graph);
nlohmann::json to_json(const ProvenanceGraph& graph);
ProvenanceGraph graph_from_json(const nlohmann::json& j);

// "Fe 60, Al 40": elements by descending amount, ties by symbol.
std::string format_composition(const nlohmann::json& composition);
// "10×10×2 mm"
std::string format_dimensions(const nlohmann::json& dimensions, std::string_view unit);
// Shortest decimal text that reads back to the same double.
std::string format_number(double value);

}  // namespace rdm
