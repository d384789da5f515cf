#include "rdm/graph/provenance.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <set>

#include "rdm/core/elements.hpp"
#include "rdm/error.hpp"

namespace rdm {

std::string to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Sample: return "Sample";
    case NodeKind::Protocol: return "Protocol";
    case NodeKind::Device: return "Device";
    case NodeKind::ExperimentEntry: return "ExperimentEntry";
    case NodeKind::Dataset: return "Dataset";
    case NodeKind::Other: return "Other";
  }
  return "Other";
}

NodeKind node_kind_from_string(std::string_view text) {
  for (auto k : {NodeKind::Sample, NodeKind::Protocol, NodeKind::Device, NodeKind::ExperimentEntry,
                 NodeKind::Dataset, NodeKind::Other})
    if (to_string(k) == text) return k;
  fail(ErrorCode::Parse, "unknown node kind " + std::string(text));
}

NodeKind node_kind_of(std::string_view type_name) {
  if (type_name == types::kSample) return NodeKind::Sample;
  if (type_name == types::kProtocol || type_name == types::kPreparationStep)
    return NodeKind::Protocol;
  if (type_name == types::kDevice) return NodeKind::Device;
  if (type_name == types::kEntry || type_name == types::kPreparationExp ||
      type_name == types::kMicroMechExp)
    return NodeKind::ExperimentEntry;
  return NodeKind::Other;
}

std::string to_string(Direction direction) {
  switch (direction) {
    case Direction::Up: return "up";
    case Direction::Down: return "down";
    case Direction::Both: return "both";
  }
  return "both";
}

Direction direction_from_string(std::string_view text) {
  if (text == "up") return Direction::Up;
  if (text == "down") return Direction::Down;
  if (text == "both") return Direction::Both;
  fail(ErrorCode::InvalidArgument, "direction must be up, down or both, got '" +
                                       std::string(text) + "'");
}

const GraphNode* ProvenanceGraph::find(const PermId& id) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), id,
                             [](const GraphNode& n, const PermId& k) { return n.id < k; });
  return it != nodes.end() && it->id == id ? &*it : nullptr;
}

std::string format_number(double value) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

namespace {

std::string json_number_text(const nlohmann::json& v) {
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number()) return format_number(v.get<double>());
  return v.is_string() ? v.get<std::string>() : v.dump();
}

std::string text_property(const ObjectRecord& r, const std::string& name) {
  auto it = r.properties.find(name);
  if (it == r.properties.end() || it->second.is_null()) return {};
  return it->second.is_string() ? it->second.get<std::string>() : json_number_text(it->second);
}

std::string object_label(const ObjectRecord& r) {
  for (const char* key : {"name", "title", "protocol_name"})
    if (auto t = text_property(r, key); !t.empty()) return t;
  return r.type_name + " " + r.perm_id.str();
}

std::string vocabulary_label(const RepositorySnapshot& snap, std::string_view vocabulary,
                             const std::string& code) {
  if (auto v = snap.vocabularies.find(vocabulary); v != snap.vocabularies.end())
    if (const auto* term = v->second.find(code); term && !term->label.empty()) return term->label;
  return code;
}

using Neighbours = std::vector<PermId>;

Neighbours parents_of(const RepositorySnapshot& snap, const PermId& id) {
  if (auto o = snap.object(id)) return {o->parents.begin(), o->parents.end()};
  if (auto d = snap.dataset(id)) return {d->owner_entry};
  return {};
}

Neighbours children_of(const RepositorySnapshot& snap, const PermId& id) {
  if (auto o = snap.object(id)) return {o->children.begin(), o->children.end()};
  return {};
}

// Visits objects reachable from `root` in one direction; returns whether the
// depth limit cut off anything.
template <typename Next>
bool bfs(const RepositorySnapshot& snap, const PermId& root, std::optional<std::size_t> max_depth,
         Next next, std::set<PermId>& visited) {
  std::map<PermId, std::size_t> depth{{root, 0}};
  std::deque<PermId> queue{root};
  bool truncated = false;
  while (!queue.empty()) {
    PermId cur = queue.front();
    queue.pop_front();
    visited.insert(cur);
    const std::size_t d = depth.at(cur);
    for (const auto& n : next(snap, cur)) {
      if (depth.contains(n)) continue;
      if (max_depth && d >= *max_depth) {
        truncated = true;
        continue;
      }
      depth.emplace(n, d + 1);
      queue.push_back(n);
    }
  }
  return truncated;
}

GraphNode make_node(const RepositorySnapshot& snap, const PermId& id) {
  if (auto o = snap.object(id))
    return {id, node_kind_of(o->type_name), o->type_name, object_label(*o), node_tooltip(snap, *o)};
  auto d = snap.dataset(id);
  return {id, NodeKind::Dataset, d->dataset_type,
          d->original_filename.empty() ? d->dataset_type : d->original_filename, node_tooltip(*d)};
}

// Turns a set of visited ids into a graph: adds owned datasets and the edges
// induced among members.
ProvenanceGraph assemble(const RepositorySnapshot& snap, std::set<PermId> members) {
  std::set<std::pair<PermId, PermId>> edges;
  std::vector<PermId> owners(members.begin(), members.end());
  for (const auto& id : owners)
    if (snap.object(id))
      for (const auto& d : snap.datasets_of(id)) members.insert(d->dataset_id);
  ProvenanceGraph g;
  for (const auto& id : members) {
    if (auto o = snap.object(id)) {
      for (const auto& c : o->children)
        if (members.contains(c)) edges.emplace(id, c);
    } else if (auto d = snap.dataset(id); d && members.contains(d->owner_entry)) {
      edges.emplace(d->owner_entry, id);
    }
    g.nodes.push_back(make_node(snap, id));
  }
  g.edges.assign(edges.begin(), edges.end());
  return g;
}

}  // namespace

ProvenanceGraph build_graph(const RepositorySnapshot& snap, const PermId& root, Direction direction,
                            std::optional<std::size_t> max_depth) {
  if (!snap.object(root) && !snap.dataset(root))
    fail(ErrorCode::NotFound, "object " + root.str() + " not found");
  std::set<PermId> visited;
  bool truncated = false;
  if (direction != Direction::Down) truncated |= bfs(snap, root, max_depth, parents_of, visited);
  if (direction != Direction::Up) truncated |= bfs(snap, root, max_depth, children_of, visited);
  ProvenanceGraph g = assemble(snap, std::move(visited));
  g.root = root;
  g.truncated = truncated;
  return g;
}

ProvenanceGraph build_graph(const Repository& repo, const PermId& root, Direction direction,
                            std::optional<std::size_t> max_depth) {
  return build_graph(repo.snapshot(), root, direction, max_depth);
}

ProvenanceGraph filter_by_element(const RepositorySnapshot& snap, std::string_view element_symbol,
                                  std::optional<std::size_t> radius) {
  if (!is_element_symbol(element_symbol))
    fail(ErrorCode::Domain, "'" + std::string(element_symbol) + "' is not an element symbol");
  const std::string symbol(element_symbol);
  std::set<PermId> visited;
  bool truncated = false;
  for (const auto& [id, o] : snap.objects) {
    if (o->type_name != types::kSample) continue;
    auto comp = o->properties.find("composition");
    if (comp == o->properties.end() || !comp->second.is_object()) continue;
    auto amount = comp->second.find(symbol);
    if (amount == comp->second.end() || !amount->is_number() || !(amount->get<double>() > 0))
      continue;
    truncated |= bfs(snap, id, radius, parents_of, visited);
    truncated |= bfs(snap, id, radius, children_of, visited);
  }
  ProvenanceGraph g = assemble(snap, std::move(visited));
  g.truncated = truncated;
  return g;
}

ProvenanceGraph filter_by_element(const Repository& repo, std::string_view element_symbol,
                                  std::optional<std::size_t> radius) {
  return filter_by_element(repo.snapshot(), element_symbol, radius);
}

std::string format_composition(const nlohmann::json& composition) {
  std::vector<std::pair<std::string, double>> parts;
  for (const auto& [symbol, amount] : composition.items())
    if (amount.is_number()) parts.emplace_back(symbol, amount.get<double>());
  std::stable_sort(parts.begin(), parts.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::string out;
  for (const auto& [symbol, amount] : parts) {
    if (!out.empty()) out += ", ";
    out += symbol + " " + format_number(amount);
  }
  return out;
}

std::string format_dimensions(const nlohmann::json& dimensions, std::string_view unit) {
  std::string out;
  for (const auto& v : dimensions) {
    if (!out.empty()) out += "×";
    out += json_number_text(v);
  }
  if (!unit.empty()) out += " " + std::string(unit);
  return out;
}

Tooltip node_tooltip(const RepositorySnapshot& snap, const ObjectRecord& r) {
  Tooltip t;
  auto put_text = [&](const std::string& key, const std::string& property) {
    if (auto v = text_property(r, property); !v.empty()) t[key] = v;
  };
  switch (node_kind_of(r.type_name)) {
    case NodeKind::Sample: {
      if (auto c = r.properties.find("composition");
          c != r.properties.end() && c->second.is_object() && !c->second.empty())
        t["composition"] = format_composition(c->second);
      if (auto d = r.properties.find("dimensions_mm");
          d != r.properties.end() && d->second.is_array())
        t["dimensions"] = format_dimensions(d->second, "mm");
      if (auto c = text_property(r, "sample_category"); !c.empty())
        t["category"] = vocabulary_label(snap, vocab::kSampleType, c);
      break;
    }
    case NodeKind::Device:
      put_text("model", "model");
      put_text("manufacturer", "manufacturer");
      break;
    case NodeKind::ExperimentEntry:
      put_text("technique", "technique");
      put_text("date", "date");
      t["dataset_count"] = std::to_string(snap.datasets_of(r.perm_id).size());
      break;
    case NodeKind::Protocol:
      put_text("technique", "technique");
      put_text("protocol", "protocol_name");
      put_text("step", "sequence_index");
      break;
    case NodeKind::Dataset:
    case NodeKind::Other:
      t["type"] = r.type_name;
      break;
  }
  return t;
}

Tooltip node_tooltip(const DatasetRecord& d) {
  Tooltip t{{"type", d.dataset_type}, {"size", std::to_string(d.blob.size_bytes) + " B"}};
  if (d.vendor != VendorFormat::Unknown) t["vendor"] = std::string(to_string(d.vendor));
  if (d.unified_metadata)
    for (const auto& info : sem_fields())
      if (auto text = format_field(*d.unified_metadata, info.field); !text.empty())
        t[std::string(info.name)] = text;
  return t;
}

namespace {

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

const char* fill_color(NodeKind kind) {
  switch (kind) {
    case NodeKind::Sample: return "#8ecae6";
    case NodeKind::Protocol: return "#ffb703";
    case NodeKind::Device: return "#adb5bd";
    case NodeKind::ExperimentEntry: return "#90be6d";
    case NodeKind::Dataset: return "#f4acb7";
    case NodeKind::Other: return "#ffffff";
  }
  return "#ffffff";
}

}  // namespace

std::string export_dot(const ProvenanceGraph& g) {
  std::string out = "digraph provenance {\n  rankdir=TB;\n  node [shape=box, style=filled];\n";
  for (const auto& n : g.nodes) {
    std::string tip;
    for (const auto& [k, v] : n.tooltip) tip += (tip.empty() ? "" : "\n") + k + ": " + v;
    out += "  " + dot_quote(n.id.str()) + " [label=" + dot_quote(n.label) +
           ", fillcolor=" + dot_quote(fill_color(n.kind)) + ", tooltip=" + dot_quote(tip) + "];\n";
  }
  if (g.truncated) out += "  \"...\" [label=\"…\", shape=plaintext, style=\"\"];\n";
  for (const auto& [p, c] : g.edges)
    out += "  " + dot_quote(p.str()) + " -> " + dot_quote(c.str()) + ";\n";
  return out + "}\n";
}

nlohmann::json to_json(const ProvenanceGraph& g) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& n : g.nodes)
    nodes.push_back({{"id", n.id.str()},
                     {"kind", to_string(n.kind)},
                     {"type", n.type_name},
                     {"label", n.label},
                     {"tooltip", n.tooltip}});
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [p, c] : g.edges) edges.push_back({{"from", p.str()}, {"to", c.str()}});
  return {{"nodes", nodes}, {"edges", edges}, {"root", g.root.str()}, {"truncated", g.truncated}};
}

std::string export_json(const ProvenanceGraph& g) { return to_json(g).dump(2) + "\n"; }

ProvenanceGraph graph_from_json(const nlohmann::json& j) {
  try {
    ProvenanceGraph g;
    for (const auto& n : j.at("nodes"))
      g.nodes.push_back({PermId(n.at("id").get<std::string>()),
                         node_kind_from_string(n.at("kind").get<std::string>()),
                         n.value("type", ""), n.at("label").get<std::string>(),
                         n.at("tooltip").get<Tooltip>()});
    for (const auto& e : j.at("edges"))
      g.edges.emplace_back(PermId(e.at("from").get<std::string>()),
                           PermId(e.at("to").get<std::string>()));
    if (auto root = j.at("root").get<std::string>(); !root.empty()) g.root = PermId(root);
    g.truncated = j.at("truncated").get<bool>();
    return g;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, std::string("graph JSON: ") + e.what());
  }
}

}  // namespace rdm
