#include "rdm/core/repository.hpp"

#include <algorithm>
#include <deque>

#include "rdm/error.hpp"

namespace rdm {

struct Repository::State {
  std::map<PermId, ObjectPtr> objects;
  std::map<PermId, DatasetPtr> datasets;
  std::map<PermId, std::vector<PermId>> datasets_by_owner;
  std::map<PermId, std::vector<AuditEntry>> audit;
  VocabularyMap vocabularies;
  std::set<PermId> ids;
};

ObjectPtr RepositorySnapshot::object(const PermId& id) const {
  auto it = objects.find(id);
  return it == objects.end() ? nullptr : it->second;
}

DatasetPtr RepositorySnapshot::dataset(const PermId& id) const {
  auto it = datasets.find(id);
  return it == datasets.end() ? nullptr : it->second;
}

std::vector<DatasetPtr> RepositorySnapshot::datasets_of(const PermId& owner) const {
  std::vector<DatasetPtr> out;
  if (auto it = datasets_by_owner.find(owner); it != datasets_by_owner.end())
    for (const auto& id : it->second) out.push_back(datasets.at(id));
  return out;
}

Repository::Repository(RepositoryOptions options)
    : options_(std::move(options)), schemas_(builtin_schemas()), state_(std::make_unique<State>()) {
  state_->vocabularies = seed_vocabularies();
  for (const auto& [name, schema] : schemas_) check_schema(schema, state_->vocabularies);
  if (!options_.journal) return;

  namespace fs = std::filesystem;
  std::error_code ec;
  const bool existing = fs::exists(*options_.journal, ec) && fs::file_size(*options_.journal, ec) > 0;
  if (existing) {
    replay();
  } else if (options_.journal->has_parent_path()) {
    fs::create_directories(options_.journal->parent_path(), ec);
  }
  journal_out_.open(*options_.journal, std::ios::binary | std::ios::app);
  if (!journal_out_) fail(ErrorCode::Io, "cannot open journal " + options_.journal->string());
  if (!existing) {
    journal_out_ << nlohmann::json{{"format", kJournalFormat}, {"version", kJournalVersion}}.dump()
                 << '\n';
    journal_out_.flush();
  }
}

Repository::~Repository() = default;

void Repository::replay() {
  const auto bytes = read_file(*options_.journal);
  const std::string_view text(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    const bool complete = nl != std::string_view::npos;
    if (!complete) nl = text.size();
    const auto line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception&) {
      if (!complete) {
        // Torn final write from an interrupted process.
        replay_warnings_.push_back("ignored incomplete journal line " + std::to_string(line_no));
        // Drop the torn tail so the next append starts on a fresh line.
        std::filesystem::resize_file(*options_.journal, pos - (line.size() + 1));
        break;
      }
      fail(ErrorCode::Corrupt, "journal line " + std::to_string(line_no) + " is not JSON");
    }
    if (line_no == 1) {
      if (j.value("format", "") != kJournalFormat || j.value("version", 0) != kJournalVersion)
        fail(ErrorCode::Corrupt, "not an rdm journal (version 1): " + options_.journal->string());
      continue;
    }
    try {
      apply(j, true);
    } catch (const std::exception& e) {
      fail(ErrorCode::Corrupt,
           "journal line " + std::to_string(line_no) + " cannot be applied: " + e.what());
    }
  }
}

void Repository::append_journal(const nlohmann::json& line) {
  if (!options_.journal) return;
  journal_out_ << line.dump() << '\n';
  journal_out_.flush();
  if (!journal_out_) fail(ErrorCode::Io, "journal write failed: " + options_.journal->string());
}

void Repository::apply(const nlohmann::json& line, bool /*from_journal*/) {
  State& s = *state_;
  const std::string op = line.at("op").get<std::string>();
  const Timestamp at = parse_timestamp(line.at("at").get<std::string>());

  auto add_link = [&](const PermId& parent, const PermId& child) {
    auto p = std::make_shared<ObjectRecord>(*s.objects.at(parent));
    p->children.insert(child);
    s.objects[parent] = p;
    auto c = std::make_shared<ObjectRecord>(*s.objects.at(child));
    c->parents.insert(parent);
    s.objects[child] = c;
  };

  if (op == "put_object") {
    ObjectRecord incoming = object_from_json(line.at("record"));
    const std::string actor = line.value("actor", "");
    auto it = s.objects.find(incoming.perm_id);
    if (it != s.objects.end()) {
      auto updated = std::make_shared<ObjectRecord>(*it->second);
      auto& trail = s.audit[incoming.perm_id];
      std::set<std::string> names;
      for (const auto& [k, v] : updated->properties) names.insert(k);
      for (const auto& [k, v] : incoming.properties) names.insert(k);
      for (const auto& name : names) {
        auto o = updated->properties.find(name);
        auto n = incoming.properties.find(name);
        const nlohmann::json old_value = o == updated->properties.end() ? nlohmann::json() : o->second;
        const nlohmann::json new_value = n == incoming.properties.end() ? nlohmann::json() : n->second;
        if (old_value != new_value) trail.push_back({at, actor, name, old_value, new_value});
      }
      if (updated->space != incoming.space)
        trail.push_back({at, actor, "space", updated->space, incoming.space});
      updated->properties = std::move(incoming.properties);
      updated->space = std::move(incoming.space);
      it->second = updated;
    } else {
      incoming.parents.clear();
      incoming.children.clear();
      const PermId id = incoming.perm_id;
      s.ids.insert(id);
      s.objects.emplace(id, std::make_shared<ObjectRecord>(std::move(incoming)));
    }
    for (const auto& edge : line.value("links", nlohmann::json::array()))
      add_link(PermId(edge.at(0).get<std::string>()), PermId(edge.at(1).get<std::string>()));
  } else if (op == "link") {
    add_link(PermId(line.at("parent").get<std::string>()),
             PermId(line.at("child").get<std::string>()));
  } else if (op == "put_dataset") {
    auto d = std::make_shared<DatasetRecord>(dataset_from_json(line.at("record")));
    if (!s.objects.contains(d->owner_entry))
      fail(ErrorCode::NotFound, "dataset owner " + d->owner_entry.str() + " does not exist");
    s.ids.insert(d->dataset_id);
    s.datasets_by_owner[d->owner_entry].push_back(d->dataset_id);
    const PermId id = d->dataset_id;
    s.datasets[id] = std::move(d);
  } else if (op == "set_preview") {
    const PermId id(line.at("dataset").get<std::string>());
    auto d = std::make_shared<DatasetRecord>(*s.datasets.at(id));
    d->preview = blob_ref_from_json(line.at("preview"));
    s.datasets[id] = std::move(d);
  } else if (op == "vocab_term") {
    const auto name = line.at("vocabulary").get<std::string>();
    const auto& t = line.at("term");
    auto it = s.vocabularies.find(name);
    VocabularyTerm term{t.at("code").get<std::string>(), t.value("label", ""),
                        t.value("description", "")};
    if (it == s.vocabularies.end())
      s.vocabularies.emplace(name, ControlledVocabulary(name, {std::move(term)}));
    else
      it->second.add_term(std::move(term));
  } else {
    fail(ErrorCode::Corrupt, "unknown journal op " + op);
  }
}

PermId Repository::mint_locked() {
  const Timestamp now = options_.clock();
  for (std::uint64_t seq = 1;; ++seq) {
    PermId id = mint_perm_id(now, seq);
    if (!state_->ids.contains(id)) return id;
  }
}

const ObjectTypeSchema& Repository::schema(std::string_view type_name) const {
  auto it = schemas_.find(type_name);
  if (it == schemas_.end())
    fail(ErrorCode::SchemaNotFound, "no schema for " + std::string(type_name));
  return it->second;
}

VocabularyMap Repository::vocabularies() const {
  std::shared_lock lock(state_mutex_);
  return state_->vocabularies;
}

ControlledVocabulary Repository::vocabulary(std::string_view name) const {
  std::shared_lock lock(state_mutex_);
  auto it = state_->vocabularies.find(name);
  if (it == state_->vocabularies.end())
    fail(ErrorCode::NotFound, "no vocabulary " + std::string(name));
  return it->second;
}

void Repository::add_vocabulary_term(std::string_view vocabulary_name, VocabularyTerm term) {
  std::lock_guard writer(write_mutex_);
  {
    std::shared_lock lock(state_mutex_);
    auto it = state_->vocabularies.find(vocabulary_name);
    if (term.code.empty()) fail(ErrorCode::Vocab, "empty term code");
    if (it != state_->vocabularies.end() && it->second.contains(term.code))
      fail(ErrorCode::Vocab, "duplicate term " + term.code);
  }
  const nlohmann::json line = {
      {"op", "vocab_term"},
      {"at", format_timestamp(options_.clock())},
      {"vocabulary", vocabulary_name},
      {"term", {{"code", term.code}, {"label", term.label}, {"description", term.description}}}};
  append_journal(line);
  std::unique_lock lock(state_mutex_);
  apply(line, false);
}

ValidationReport Repository::validate(const ObjectRecord& record) const {
  std::shared_lock lock(state_mutex_);
  return validate_object(record, schemas_, state_->vocabularies);
}

bool Repository::reaches(const PermId& from, const PermId& to,
                         const std::multimap<PermId, PermId>& pending) const {
  std::set<PermId> seen;
  std::deque<PermId> queue{from};
  while (!queue.empty()) {
    const PermId cur = queue.front();
    queue.pop_front();
    if (cur == to) return true;
    if (!seen.insert(cur).second) continue;
    if (auto it = state_->objects.find(cur); it != state_->objects.end())
      for (const auto& c : it->second->children) queue.push_back(c);
    auto [b, e] = pending.equal_range(cur);
    for (auto i = b; i != e; ++i) queue.push_back(i->second);
  }
  return false;
}

PermId Repository::put_object(ObjectRecord record, std::string_view actor) {
  std::lock_guard writer(write_mutex_);
  // Only this thread mutates state while write_mutex_ is held.
  const State& s = *state_;
  ObjectPtr existing;
  if (!record.perm_id.empty()) {
    if (auto it = s.objects.find(record.perm_id); it != s.objects.end()) existing = it->second;
    else if (s.datasets.contains(record.perm_id))
      fail(ErrorCode::Validation, record.perm_id.str() + " identifies a dataset");
  }
  if (existing && existing->type_name != record.type_name)
    throw ValidationError(ValidationReport{
        {{"type_name", "IMMUTABLE", "type of " + record.perm_id.str() + " is " +
                                        existing->type_name}}});
  if (auto report = validate_object(record, schemas_, s.vocabularies); !report.ok())
    throw ValidationError(std::move(report));

  const PermId id = record.perm_id.empty() ? mint_locked() : record.perm_id;
  std::vector<std::pair<PermId, PermId>> edges;
  for (const auto& p : record.parents) edges.emplace_back(p, id);
  for (const auto& c : record.children) edges.emplace_back(id, c);
  std::multimap<PermId, PermId> pending;
  nlohmann::json links = nlohmann::json::array();
  for (const auto& [p, c] : edges) {
    if (p == c) fail(ErrorCode::Cycle, "an object cannot be its own parent: " + p.str());
    for (const auto& end : {p, c})
      if (end != id && !s.objects.contains(end))
        fail(ErrorCode::NotFound, "linked object " + end.str() + " does not exist");
    if (existing && existing->children.contains(c) && p == id) continue;
    if (existing && existing->parents.contains(p) && c == id) continue;
    if (reaches(c, p, pending))
      fail(ErrorCode::Cycle, "link " + p.str() + " -> " + c.str() + " would create a cycle");
    pending.emplace(p, c);
    links.push_back({p.str(), c.str()});
  }

  ObjectRecord stored = record;
  stored.perm_id = id;
  stored.parents.clear();
  stored.children.clear();
  if (existing)
    stored.registered_at = existing->registered_at;
  else if (stored.registered_at == Timestamp{})
    stored.registered_at = options_.clock();

  const nlohmann::json line = {{"op", "put_object"},
                               {"at", format_timestamp(options_.clock())},
                               {"actor", actor.empty() ? options_.default_actor : actor},
                               {"record", to_json(stored)},
                               {"links", links}};
  append_journal(line);
  std::unique_lock lock(state_mutex_);
  apply(line, false);
  return id;
}

ObjectPtr Repository::find_object(const PermId& id) const {
  std::shared_lock lock(state_mutex_);
  auto it = state_->objects.find(id);
  return it == state_->objects.end() ? nullptr : it->second;
}

ObjectPtr Repository::get_object(const PermId& id) const {
  auto r = find_object(id);
  if (!r) fail(ErrorCode::NotFound, "object " + id.str() + " not found");
  return r;
}

std::vector<ObjectPtr> Repository::objects(std::string_view type_name) const {
  std::shared_lock lock(state_mutex_);
  std::vector<ObjectPtr> out;
  for (const auto& [id, r] : state_->objects)
    if (type_name.empty() || r->type_name == type_name) out.push_back(r);
  return out;
}

bool Repository::contains(const PermId& id) const {
  std::shared_lock lock(state_mutex_);
  return state_->objects.contains(id) || state_->datasets.contains(id);
}

void Repository::link(const PermId& parent, const PermId& child) {
  std::lock_guard writer(write_mutex_);
  if (parent == child) fail(ErrorCode::Cycle, "an object cannot be its own parent: " + parent.str());
  for (const auto& id : {parent, child})
    if (!state_->objects.contains(id)) fail(ErrorCode::NotFound, "object " + id.str() + " not found");
  if (state_->objects.at(parent)->children.contains(child)) return;
  if (reaches(child, parent, {}))
    fail(ErrorCode::Cycle, "link " + parent.str() + " -> " + child.str() + " would create a cycle");
  const nlohmann::json line = {{"op", "link"},
                               {"at", format_timestamp(options_.clock())},
                               {"parent", parent.str()},
                               {"child", child.str()}};
  append_journal(line);
  std::unique_lock lock(state_mutex_);
  apply(line, false);
}

namespace {

template <typename Next>
std::set<PermId> closure(const std::map<PermId, ObjectPtr>& objects, const PermId& start,
                         Next next) {
  std::set<PermId> out;
  std::deque<PermId> queue;
  auto it = objects.find(start);
  if (it == objects.end()) fail(ErrorCode::NotFound, "object " + start.str() + " not found");
  for (const auto& n : next(*it->second)) queue.push_back(n);
  while (!queue.empty()) {
    PermId cur = queue.front();
    queue.pop_front();
    if (!out.insert(cur).second) continue;
    for (const auto& n : next(*objects.at(cur))) queue.push_back(n);
  }
  return out;
}

}  // namespace

std::set<PermId> Repository::ancestors(const PermId& id) const {
  std::shared_lock lock(state_mutex_);
  return closure(state_->objects, id, [](const ObjectRecord& r) { return r.parents; });
}

std::set<PermId> Repository::descendants(const PermId& id) const {
  std::shared_lock lock(state_mutex_);
  return closure(state_->objects, id, [](const ObjectRecord& r) { return r.children; });
}

std::vector<AuditEntry> Repository::audit_trail(const PermId& id) const {
  std::shared_lock lock(state_mutex_);
  auto it = state_->audit.find(id);
  return it == state_->audit.end() ? std::vector<AuditEntry>{} : it->second;
}

DatasetPtr Repository::put_dataset(DatasetRecord record) {
  std::lock_guard writer(write_mutex_);
  const State& s = *state_;
  if (!s.objects.contains(record.owner_entry))
    fail(ErrorCode::NotFound, "entry " + record.owner_entry.str() + " not found");
  const auto& types = s.vocabularies.at(std::string(vocab::kDatasetType));
  if (!types.contains(record.dataset_type))
    fail(ErrorCode::Vocab, "'" + record.dataset_type + "' is not a dataset type");
  if (record.dataset_id.empty()) {
    record.dataset_id = mint_locked();
  } else if (s.ids.contains(record.dataset_id)) {
    fail(ErrorCode::Validation, "dataset id " + record.dataset_id.str() + " is already taken");
  }
  if (record.registered_at == Timestamp{}) record.registered_at = options_.clock();
  const nlohmann::json line = {{"op", "put_dataset"},
                               {"at", format_timestamp(options_.clock())},
                               {"record", to_json(record)}};
  append_journal(line);
  std::unique_lock lock(state_mutex_);
  apply(line, false);
  return state_->datasets.at(record.dataset_id);
}

void Repository::set_preview(const PermId& dataset_id, const BlobRef& preview) {
  std::lock_guard writer(write_mutex_);
  if (!state_->datasets.contains(dataset_id))
    fail(ErrorCode::NotFound, "dataset " + dataset_id.str() + " not found");
  const nlohmann::json line = {{"op", "set_preview"},
                               {"at", format_timestamp(options_.clock())},
                               {"dataset", dataset_id.str()},
                               {"preview", to_json(preview)}};
  append_journal(line);
  std::unique_lock lock(state_mutex_);
  apply(line, false);
}

DatasetPtr Repository::find_dataset(const PermId& id) const {
  std::shared_lock lock(state_mutex_);
  auto it = state_->datasets.find(id);
  return it == state_->datasets.end() ? nullptr : it->second;
}

DatasetPtr Repository::get_dataset(const PermId& id) const {
  auto d = find_dataset(id);
  if (!d) fail(ErrorCode::NotFound, "dataset " + id.str() + " not found");
  return d;
}

std::vector<DatasetPtr> Repository::datasets_of(const PermId& owner) const {
  std::shared_lock lock(state_mutex_);
  std::vector<DatasetPtr> out;
  if (auto it = state_->datasets_by_owner.find(owner); it != state_->datasets_by_owner.end())
    for (const auto& id : it->second) out.push_back(state_->datasets.at(id));
  return out;
}

std::vector<DatasetPtr> Repository::datasets() const {
  std::shared_lock lock(state_mutex_);
  std::vector<DatasetPtr> out;
  for (const auto& [id, d] : state_->datasets) out.push_back(d);
  return out;
}

RepositorySnapshot Repository::snapshot() const {
  std::shared_lock lock(state_mutex_);
  return {state_->objects, state_->datasets, state_->datasets_by_owner, state_->vocabularies};
}

}  // namespace rdm
