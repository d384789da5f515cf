#include "rdm/workflows/scheduler.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <mutex>

#include "rdm/error.hpp"
#include "rdm/previews/thumbnail.hpp"
#include "rdm/store/registration.hpp"
#include "rdm/store/sha256.hpp"
#include "rdm/workflows/load_data.hpp"
#include "rdm/workflows/plot.hpp"
#include "rdm/workflows/report.hpp"
#include "rdm/workflows/stress_strain.hpp"

namespace rdm {

nlohmann::json to_json(const JobOutcome& o) {
  nlohmann::json produced = nlohmann::json::array();
  for (const auto& id : o.produced_datasets) produced.push_back(id.str());
  return {{"entry", o.entry.str()},
          {"workflow", o.workflow_name},
          {"produced_datasets", produced},
          {"skipped", o.skipped},
          {"reason", o.reason}};
}

namespace {

std::mutex g_tick_mutex;

class TickLock {
 public:
  explicit TickLock(const std::optional<std::filesystem::path>& path) : guard_(g_tick_mutex, std::try_to_lock) {
    if (!guard_) fail(ErrorCode::Busy, "another scheduler tick is running");
    if (!path) return;
    fd_ = ::open(path->c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
    if (fd_ < 0) fail(ErrorCode::Io, "cannot open lock file " + path->string());
    if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
      ::close(fd_);
      fail(ErrorCode::Busy, "scheduler lock " + path->string() + " is held by another process");
    }
  }
  ~TickLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }
  TickLock(const TickLock&) = delete;
  TickLock& operator=(const TickLock&) = delete;

 private:
  std::unique_lock<std::mutex> guard_;
  int fd_ = -1;
};

std::string derivation_key(const PermId& entry, std::string_view workflow,
                           std::vector<std::string> inputs) {
  std::sort(inputs.begin(), inputs.end());
  std::string material = std::string(workflow) + "\n" + entry.str();
  for (const auto& i : inputs) material += "\n" + i;
  return sha256_hex(to_bytes(material));
}

bool has_outputs(const RepositorySnapshot& snap, const PermId& entry, const std::string& key) {
  for (const auto& d : snap.datasets_of(entry))
    if (d->derivation_key == key) return true;
  return false;
}

JobOutcome skipped(const PermId& entry, std::string_view workflow, std::string reason) {
  return {entry, std::string(workflow), {}, true, std::move(reason)};
}

std::string stem(const std::string& filename) {
  auto name = std::filesystem::path(filename).stem().string();
  return name;
}

std::vector<std::string> tokens(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      cur += c;
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// Pillar whose id equals the file stem or one of its tokens; the only pillar
// when the sheet has a single row.
const PillarGeometry* match_pillar(const std::vector<PillarGeometry>& pillars,
                                   const std::string& filename) {
  const auto s = stem(filename);
  for (const auto& p : pillars)
    if (p.pillar_id == s) return &p;
  const auto toks = tokens(s);
  for (const auto& p : pillars)
    if (std::find(toks.begin(), toks.end(), p.pillar_id) != toks.end()) return &p;
  return pillars.size() == 1 ? &pillars.front() : nullptr;
}

void require_type(const RepositorySnapshot& snap, const PermId& entry, std::string_view type) {
  auto e = snap.object(entry);
  if (!e) fail(ErrorCode::NotFound, "entry " + entry.str() + " not found");
  if (e->type_name != type)
    fail(ErrorCode::InvalidArgument,
         "entry " + entry.str() + " is " + e->type_name + ", not " + std::string(type));
}

JobOutcome stress_strain_job(Repository& repo, BlobStore& store, const RepositorySnapshot& snap,
                             const PermId& entry) {
  const auto name = kStressStrainWorkflow;
  auto e = snap.object(entry);
  const auto datasets = snap.datasets_of(entry);

  std::string geometry_text, geometry_hash;
  if (auto g = e->properties.find("pillar_geometry");
      g != e->properties.end() && g->second.is_string() && !g->second.get<std::string>().empty()) {
    geometry_text = g->second.get<std::string>();
    geometry_hash = "property:" + sha256_hex(to_bytes(geometry_text));
  } else {
    DatasetPtr latest;
    for (const auto& d : datasets)
      if (d->dataset_type == "PILLAR_GEOMETRY" &&
          (!latest || std::tie(d->registered_at, d->dataset_id) >
                          std::tie(latest->registered_at, latest->dataset_id)))
        latest = d;
    if (latest) {
      geometry_hash = "blob:" + latest->blob.content_hash;
      try {
        geometry_text = to_string(store.get_blob(latest->blob));
      } catch (const Error& err) {
        return skipped(entry, name, std::string("failed: ") + err.what());
      }
    }
  }
  std::vector<DatasetPtr> loads;
  for (const auto& d : datasets)
    if (d->dataset_type == "LOAD_DISPLACEMENT") loads.push_back(d);
  if (loads.empty()) return skipped(entry, name, "missing input: no LOAD_DISPLACEMENT dataset");
  if (geometry_hash.empty()) return skipped(entry, name, "missing input: no pillar geometry");
  std::sort(loads.begin(), loads.end(), [](const auto& a, const auto& b) {
    return std::tie(a->original_filename, a->dataset_id) <
           std::tie(b->original_filename, b->dataset_id);
  });

  std::vector<std::string> inputs{geometry_hash};
  for (const auto& d : loads) inputs.push_back("blob:" + d->blob.content_hash);
  const std::string key = derivation_key(entry, name, inputs);
  if (has_outputs(snap, entry, key)) return skipped(entry, name, "up to date");

  struct Output {
    std::string pillar;
    Bytes png;
    std::string csv;
  };
  std::vector<Output> outputs;
  try {
    const auto pillars = parse_geometry_csv(geometry_text);
    if (pillars.empty()) return skipped(entry, name, "missing input: pillar geometry has no rows");
    for (const auto& d : loads) {
      const auto* pillar = match_pillar(pillars, d->original_filename);
      if (!pillar)
        return skipped(entry, name,
                       "failed: no pillar geometry row matches '" + d->original_filename + "'");
      const auto series = parse_load_csv(to_string(store.get_blob(d->blob)));
      const auto curve = stress_strain(series, *pillar, d->dataset_id);
      outputs.push_back({pillar->pillar_id, render_curve(curve), curve_csv(curve)});
    }
  } catch (const Error& err) {
    return skipped(entry, name,
                   "failed (" + std::string(to_string(err.code())) + "): " + err.what());
  }

  JobOutcome outcome{entry, std::string(name), {}, false, "executed"};
  for (const auto& o : outputs) {
    auto fig = register_linked_dataset(repo, store, entry, o.png, "DERIVED_FIGURE", std::nullopt,
                                       o.pillar + "_stress_strain.png", key);
    if (auto preview = make_preview(o.png, fig->dataset_type, VendorFormat::Unknown))
      repo.set_preview(fig->dataset_id, store.put_blob(*preview));
    auto table = register_linked_dataset(repo, store, entry, to_bytes(o.csv), "DERIVED_TABLE",
                                         std::nullopt, o.pillar + "_stress_strain.csv", key);
    outcome.produced_datasets.push_back(fig->dataset_id);
    outcome.produced_datasets.push_back(table->dataset_id);
  }
  return outcome;
}

JobOutcome prep_report_job(Repository& repo, BlobStore& store, const RepositorySnapshot& snap,
                           const PermId& entry) {
  const auto name = kPrepReportWorkflow;
  auto e = snap.object(entry);
  std::vector<std::string> inputs{"entry:" + sha256_hex(to_bytes(to_json(*e).at("properties").dump()))};
  for (const auto& c : e->children)
    if (auto r = snap.object(c); r && r->type_name == types::kPreparationStep)
      inputs.push_back("step:" + c.str() + ":" +
                       sha256_hex(to_bytes(to_json(*r).at("properties").dump())));
  if (inputs.size() == 1) return skipped(entry, name, "missing input: no preparation steps");
  const std::string key = derivation_key(entry, name, inputs);
  if (has_outputs(snap, entry, key)) return skipped(entry, name, "up to date");
  try {
    const auto table = prep_report(snap, entry);
    JobOutcome outcome{entry, std::string(name), {}, false, "executed"};
    for (const auto& d : attach_report(repo, store, entry, table, key))
      outcome.produced_datasets.push_back(d->dataset_id);
    return outcome;
  } catch (const Error& err) {
    return skipped(entry, name, "failed (" + std::string(to_string(err.code())) + "): " + err.what());
  }
}

}  // namespace

Scheduler::Scheduler(Repository& repo, BlobStore& store,
                     std::optional<std::filesystem::path> lock_file)
    : repo_(repo), store_(store), lock_file_(std::move(lock_file)) {}

std::vector<JobOutcome> Scheduler::tick() {
  TickLock lock(lock_file_);
  const auto snap = repo_.snapshot();
  std::vector<JobOutcome> outcomes;
  for (const auto& [id, o] : snap.objects) {
    try {
      if (o->type_name == types::kMicroMechExp)
        outcomes.push_back(stress_strain_job(repo_, store_, snap, id));
      else if (o->type_name == types::kPreparationExp)
        outcomes.push_back(prep_report_job(repo_, store_, snap, id));
    } catch (const std::exception& err) {
      outcomes.push_back(skipped(id, o->type_name == types::kMicroMechExp ? kStressStrainWorkflow
                                                                          : kPrepReportWorkflow,
                                 std::string("failed: ") + err.what()));
    }
  }
  return outcomes;
}

JobOutcome Scheduler::run_stress_strain(const PermId& entry) {
  TickLock lock(lock_file_);
  const auto snap = repo_.snapshot();
  require_type(snap, entry, types::kMicroMechExp);
  return stress_strain_job(repo_, store_, snap, entry);
}

JobOutcome Scheduler::run_prep_report(const PermId& entry) {
  TickLock lock(lock_file_);
  const auto snap = repo_.snapshot();
  if (!snap.object(entry)) fail(ErrorCode::NotFound, "entry " + entry.str() + " not found");
  return prep_report_job(repo_, store_, snap, entry);
}

}  // namespace rdm
