#include "rdm/service/cli.hpp"

#include <CLI11.hpp>
#include <pthread.h>
#include <signal.h>

#include <charconv>
#include <cstdlib>
#include <fstream>

#include "rdm/core/validation.hpp"
#include "rdm/error.hpp"
#include "rdm/graph/provenance.hpp"
#include "rdm/previews/thumbnail.hpp"
#include "rdm/service/api.hpp"
#include "rdm/service/deck.hpp"
#include "rdm/service/demo_files.hpp"
#include "rdm/service/workbench.hpp"
#include "rdm/workflows/report.hpp"

namespace rdm {

std::optional<std::string> process_env(const std::string& name) {
  if (const char* v = std::getenv(name.c_str()); v && *v) return std::string(v);
  return std::nullopt;
}

namespace {

struct Options {
  std::string journal;
  std::string blob_root;
  std::string token;

  // object
  std::string type;
  std::vector<std::string> props;
  std::vector<std::string> parents;
  std::vector<std::string> children;
  std::string json_file;
  std::string space;
  std::string id;
  std::string parent;
  std::string child;

  // ingest / preview
  std::string file;
  std::string entry;
  std::string format = "auto";
  std::string dataset_type;

  // graph
  std::string root;
  std::string element;
  std::string direction = "both";
  std::string depth;
  std::string graph_format = "json";
  std::string out_path;

  // workflow report
  std::string report_format = "text";

  // deck
  std::vector<std::string> dataset_ids;
  std::string title;

  // serve
  std::string host = "127.0.0.1";
  int port = 8080;
  bool public_read = false;
  double scheduler_interval = 0;

  // fixtures
  std::string out_dir;
  std::uint64_t seed = 1;
};

void emit(std::ostream& out, const std::string& path, std::string_view content) {
  if (path.empty()) {
    out << content;
    return;
  }
  write_file(path, to_bytes(content));
}

Workbench open_workbench(const Options& o) {
  return Workbench(WorkbenchConfig{o.journal, o.blob_root});
}

std::optional<std::size_t> parse_depth(const std::string& text) {
  if (text.empty() || text == "unlimited") return std::nullopt;
  std::size_t v = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size())
    fail(ErrorCode::InvalidArgument, "--depth must be a non-negative integer or 'unlimited'");
  return v;
}

bool is_text_kind(ValueKind k) {
  return k == ValueKind::Text || k == ValueKind::Date || k == ValueKind::Vocabulary ||
         k == ValueKind::Spreadsheet;
}

// key=value; "@path" reads the value from a file. Text-like properties keep
// the raw string, everything else is read as JSON.
void apply_prop(ObjectRecord& r, const ObjectTypeSchema& schema, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    fail(ErrorCode::InvalidArgument, "--prop expects key=value, got '" + assignment + "'");
  const std::string key = assignment.substr(0, eq);
  std::string value = assignment.substr(eq + 1);
  if (value.starts_with("@")) value = to_string(read_file(value.substr(1)));
  const auto* def = schema.find(key);
  if (def && is_text_kind(def->kind)) {
    r.properties[key] = value;
    return;
  }
  try {
    r.properties[key] = nlohmann::json::parse(value);
  } catch (const nlohmann::json::exception&) {
    r.properties[key] = value;
  }
}

std::string outcome_line(const JobOutcome& o) {
  std::string line = o.entry.str() + " " + o.workflow_name + " ";
  if (o.skipped) return line + "skipped (" + o.reason + ")";
  return line + "executed, " + std::to_string(o.produced_datasets.size()) + " datasets";
}

int serve(const Options& o, std::ostream& err) {
  Workbench wb = open_workbench(o);
  ApiConfig cfg{o.host, o.port, o.token, o.public_read, std::nullopt};
  if (o.scheduler_interval > 0) cfg.scheduler_interval = o.scheduler_interval;
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);
  ApiServer server(wb, cfg);
  const int port = server.start();
  err << "serving on http://" << o.host << ":" << port << "\n" << std::flush;
  int sig = 0;
  sigwait(&signals, &sig);
  server.stop();
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
             const EnvLookup& env) {
  Options o;
  o.journal = env("RDM_JOURNAL").value_or("rdm-data/journal.jsonl");
  o.blob_root = env("RDM_BLOBROOT").value_or("rdm-data/blobs");
  o.token = env("RDM_TOKEN").value_or("");

  CLI::App app{"Provenance-centric research data workbench", "rdm"};
  app.require_subcommand(1);
  app.add_option("--journal", o.journal, "Repository journal (env RDM_JOURNAL)");
  app.add_option("--blob-root", o.blob_root, "Blob store root directory (env RDM_BLOBROOT)");

  auto* init = app.add_subcommand("init", "Create an empty repository and blob store");

  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP API");
  serve_cmd->add_option("--host", o.host, "Bind address");
  serve_cmd->add_option("--port", o.port, "Port (0 picks a free one)");
  serve_cmd->add_option("--token", o.token, "Bearer token (env RDM_TOKEN)");
  serve_cmd->add_flag("--public-read", o.public_read, "Allow reads without the token");
  serve_cmd->add_option("--scheduler-interval", o.scheduler_interval,
                        "Run a workflow tick every N seconds")
      ->check(CLI::NonNegativeNumber);

  auto* object = app.add_subcommand("object", "Create, show and link objects");
  object->require_subcommand(1);
  auto* create = object->add_subcommand("create", "Register an object; prints its permId");
  create->add_option("--type", o.type, "Object type, e.g. SAMPLE");
  create->add_option("--prop", o.props, "key=value (value as JSON, or @file)");
  create->add_option("--parent", o.parents, "Parent permId");
  create->add_option("--child", o.children, "Child permId");
  create->add_option("--space", o.space, "Space");
  create->add_option("--json", o.json_file, "Read the object from a JSON file")->check(CLI::ExistingFile);
  auto* get = object->add_subcommand("get", "Print an object as JSON");
  get->add_option("id", o.id)->required();
  auto* link = object->add_subcommand("link", "Add a parent -> child link");
  link->add_option("parent", o.parent)->required();
  link->add_option("child", o.child)->required();

  auto* ingest = app.add_subcommand("ingest", "Register a file under an entry; prints the dataset permId");
  ingest->add_option("file", o.file)->required()->check(CLI::ExistingFile);
  ingest->add_option("--entry", o.entry)->required();
  ingest->add_option("--format", o.format, "vendorA|vendorB|vendorC|auto|none");
  ingest->add_option("--dataset-type", o.dataset_type)->required();

  auto* graph = app.add_subcommand("graph", "Export the provenance graph");
  auto* root_opt = graph->add_option("--root", o.root);
  auto* element_opt = graph->add_option("--element", o.element, "Samples containing this element");
  root_opt->excludes(element_opt);
  graph->add_option("--direction", o.direction)->check(CLI::IsMember({"up", "down", "both"}));
  graph->add_option("--depth", o.depth, "Link hops, or 'unlimited'");
  graph->add_option("--format", o.graph_format)->check(CLI::IsMember({"dot", "json"}));
  graph->add_option("--out", o.out_path);

  auto* workflow = app.add_subcommand("workflow", "Run analysis workflows");
  workflow->require_subcommand(1);
  auto* tick = workflow->add_subcommand("tick", "Run every workflow whose outputs are missing");
  auto* run = workflow->add_subcommand("run", "Run one workflow");
  run->require_subcommand(1);
  auto* run_ss = run->add_subcommand("stress-strain", "Stress-strain curves of a MICRO_MECH_EXP entry");
  run_ss->add_option("--entry", o.entry)->required();
  auto* report = workflow->add_subcommand("report", "Print a report");
  report->require_subcommand(1);
  auto* report_prep = report->add_subcommand("prep", "Preparation report of an entry");
  report_prep->add_option("--entry", o.entry)->required();
  report_prep->add_option("--format", o.report_format)->check(CLI::IsMember({"text", "html", "json"}));

  auto* preview = app.add_subcommand("preview", "Write the PNG preview of a dataset or a local file");
  preview->add_option("dataset,--dataset", o.id, "Dataset permId");
  auto* file_opt = preview->add_option("--file", o.file, "Render a local file instead")->check(CLI::ExistingFile);
  preview->add_option("--dataset-type", o.dataset_type, "Type of --file")->needs(file_opt);
  preview->add_option("--out", o.out_path)->required();

  auto* deck = app.add_subcommand("deck", "Build an HTML slide deck; prints its dataset permId");
  deck->add_option("datasets", o.dataset_ids)->required();
  deck->add_option("--title", o.title);
  deck->add_option("--out", o.out_path);

  auto* store = app.add_subcommand("store", "Blob store maintenance");
  store->require_subcommand(1);
  auto* check = store->add_subcommand("check", "Verify every referenced blob");
  auto* gc = store->add_subcommand("gc", "Delete unreferenced blobs");

  auto* fixtures = app.add_subcommand("fixtures", "Write synthetic vendor, EBSD and load files");
  fixtures->add_option("--out-dir", o.out_dir)->required();
  fixtures->add_option("--seed", o.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (*init) {
      std::filesystem::create_directories(o.blob_root);
      Workbench wb = open_workbench(o);
      out << "journal " << o.journal << "\nblobs " << o.blob_root << "\n";
    } else if (*serve_cmd) {
      return serve(o, err);
    } else if (*create) {
      Workbench wb = open_workbench(o);
      ObjectRecord r;
      if (!o.json_file.empty()) {
        const auto text = to_string(read_file(o.json_file));
        try {
          r = object_from_request(nlohmann::json::parse(text));
        } catch (const nlohmann::json::exception& e) {
          fail(ErrorCode::Parse, o.json_file + ": " + e.what());
        }
      }
      if (!o.type.empty()) r.type_name = o.type;
      if (r.type_name.empty()) {
        err << "usage error: object create needs --type or --json\n";
        return 2;
      }
      const auto& schema = wb.repo().schema(r.type_name);
      for (const auto& p : o.props) apply_prop(r, schema, p);
      for (const auto& p : o.parents) r.parents.insert(PermId(p));
      for (const auto& c : o.children) r.children.insert(PermId(c));
      if (!o.space.empty()) r.space = o.space;
      out << wb.create_object(std::move(r)).str() << "\n";
    } else if (*get) {
      Workbench wb = open_workbench(o);
      const PermId id(o.id);
      auto j = to_json(*wb.repo().get_object(id));
      nlohmann::json datasets = nlohmann::json::array();
      for (const auto& d : wb.repo().datasets_of(id)) datasets.push_back(d->dataset_id.str());
      j["datasets"] = datasets;
      out << j.dump(2) << "\n";
    } else if (*link) {
      Workbench wb = open_workbench(o);
      wb.link(PermId(o.parent), PermId(o.child));
      out << o.parent << " -> " << o.child << "\n";
    } else if (*ingest) {
      Workbench wb = open_workbench(o);
      const auto bytes = read_file(o.file);
      auto d = wb.ingest(PermId(o.entry), bytes, o.dataset_type, parser_choice(o.format, bytes),
                         std::filesystem::path(o.file).filename().string());
      for (const auto& w : d->warnings) err << "warning: " << w << "\n";
      out << d->dataset_id.str() << "\n";
    } else if (*graph) {
      Workbench wb = open_workbench(o);
      ProvenanceGraph g;
      if (!o.element.empty()) {
        g = filter_by_element(wb.repo(), o.element, parse_depth(o.depth));
      } else if (!o.root.empty()) {
        g = build_graph(wb.repo(), PermId(o.root), direction_from_string(o.direction),
                        parse_depth(o.depth));
      } else {
        err << "usage error: graph needs --root or --element\n";
        return 2;
      }
      emit(out, o.out_path, o.graph_format == "dot" ? export_dot(g) : export_json(g));
    } else if (*tick) {
      Workbench wb = open_workbench(o);
      std::size_t executed = 0;
      for (const auto& outcome : wb.scheduler().tick()) {
        out << outcome_line(outcome) << "\n";
        executed += outcome.skipped ? 0 : 1;
      }
      out << executed << " jobs executed\n";
    } else if (*run_ss) {
      Workbench wb = open_workbench(o);
      const auto outcome = wb.scheduler().run_stress_strain(PermId(o.entry));
      out << outcome_line(outcome) << "\n";
      for (const auto& id : outcome.produced_datasets) out << id.str() << "\n";
      if (outcome.reason.starts_with("failed")) return 1;
    } else if (*report_prep) {
      Workbench wb = open_workbench(o);
      const PermId entry(o.entry);
      const auto table = prep_report(wb.repo(), entry);
      const auto outcome = wb.scheduler().run_prep_report(entry);
      if (o.report_format == "html")
        out << render_html(table);
      else if (o.report_format == "json")
        out << to_json(table).dump(2) << "\n";
      else
        out << render_text(table);
      err << outcome_line(outcome) << "\n";
    } else if (*preview) {
      std::optional<Bytes> png;
      if (!o.file.empty()) {
        const auto bytes = read_file(o.file);
        png = make_preview(bytes, o.dataset_type, detect_format(bytes));
        if (!png) fail(ErrorCode::Domain, "no preview can be made for " + o.file);
      } else if (!o.id.empty()) {
        Workbench wb = open_workbench(o);
        png = wb.preview(PermId(o.id));
        if (!png) fail(ErrorCode::NotFound, "dataset " + o.id + " has no preview");
      } else {
        err << "usage error: preview needs a dataset permId or --file\n";
        return 2;
      }
      write_file(o.out_path, *png);
      out << o.out_path << "\n";
    } else if (*deck) {
      Workbench wb = open_workbench(o);
      SlideDeckRequest req{{}, o.title};
      for (const auto& id : o.dataset_ids) req.dataset_ids.emplace_back(id);
      auto result = build_slide_deck(wb.repo(), wb.store(), req);
      if (!o.out_path.empty()) write_file(o.out_path, to_bytes(result.html));
      out << result.dataset->dataset_id.str() << "\n";
    } else if (*check) {
      Workbench wb = open_workbench(o);
      const auto report = check_store(wb.repo(), wb.store());
      out << to_json(report).dump(2) << "\n";
      return report.ok() ? 0 : 1;
    } else if (*gc) {
      Workbench wb = open_workbench(o);
      std::uint64_t bytes = 0;
      const auto removed = collect_orphans(wb.repo(), wb.store());
      for (const auto& r : removed) bytes += r.size_bytes;
      out << "removed " << removed.size() << " blobs (" << bytes << " bytes)\n";
    } else if (*fixtures) {
      for (const auto& p : write_demo_files(o.out_dir, o.seed)) out << p.string() << "\n";
    }
    return 0;
  } catch (const ValidationError& e) {
    err << "error: VALIDATION: " << e.what() << "\n";
    for (const auto& v : e.report().violations)
      err << "  " << v.property_name << ": " << v.rule_id << ": " << v.message << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace rdm
