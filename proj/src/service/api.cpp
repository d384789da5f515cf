#include "rdm/service/api.hpp"

#include <httplib.h>

#include <charconv>
#include <chrono>

#include "rdm/error.hpp"
#include "rdm/graph/provenance.hpp"
#include "rdm/service/deck.hpp"
#include "rdm/service/errors.hpp"
#include "rdm/service/log.hpp"

namespace rdm {

bool is_loopback(std::string_view host) noexcept {
  return host == "127.0.0.1" || host == "localhost" || host == "::1" || host.starts_with("127.");
}

namespace {

using Request = httplib::Request;
using Response = httplib::Response;
using Handler = std::function<void(const Request&, Response&)>;

void send_json(Response& res, const nlohmann::json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(2) + "\n", "application/json");
}

void send_error(Response& res, const std::exception& e) {
  send_json(res, error_body(e), http_status(error_code_of(e)));
}

nlohmann::json parse_body(const Request& req) {
  try {
    return nlohmann::json::parse(req.body);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, std::string("request body is not JSON: ") + e.what());
  }
}

PermId path_id(const Request& req, std::size_t index = 1) {
  return PermId(req.matches[index].str());
}

std::optional<std::size_t> depth_param(const Request& req, const char* name) {
  if (!req.has_param(name)) return std::nullopt;
  const auto text = req.get_param_value(name);
  if (text == "unlimited" || text.empty()) return std::nullopt;
  std::size_t value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size())
    fail(ErrorCode::InvalidArgument, std::string(name) + " must be a non-negative integer");
  return value;
}

nlohmann::json dataset_json(const DatasetRecord& d) { return to_json(d); }

}  // namespace

ApiServer::ApiServer(Workbench& workbench, ApiConfig config)
    : wb_(workbench), config_(std::move(config)), server_(std::make_unique<httplib::Server>()) {
  if (!is_loopback(config_.host) && config_.token.empty())
    fail(ErrorCode::InvalidArgument,
         "a bearer token is required when binding to non-loopback address " + config_.host);
  if (config_.scheduler_interval && !(*config_.scheduler_interval > 0))
    fail(ErrorCode::InvalidArgument, "scheduler interval must be positive");
  // httplib's default adds SO_REUSEPORT, which lets a second server share a busy port.
  server_->set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
  routes();
}

ApiServer::~ApiServer() { stop(); }

void ApiServer::routes() {
  auto wrap = [this](bool mutating, Handler h) -> Handler {
    return [this, mutating, h = std::move(h)](const Request& req, Response& res) {
      const auto started = std::chrono::steady_clock::now();
      try {
        if (!config_.token.empty() && (mutating || !config_.public_read)) {
          const auto auth = req.get_header_value("Authorization");
          if (auth != "Bearer " + config_.token)
            fail(ErrorCode::Unauthorized, auth.empty() ? "missing bearer token" : "invalid bearer token");
        }
        h(req, res);
      } catch (const std::exception& e) {
        send_error(res, e);
      }
      const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                                started)
                          .count();
      log_event(res.status >= 500 ? "error" : "info", "http_request",
                {{"method", req.method}, {"path", req.path}, {"status", res.status}, {"ms", ms}});
    };
  };
  auto& s = *server_;

  s.Post("/objects", wrap(true, [this](const Request& req, Response& res) {
           const auto id = wb_.create_object(object_from_request(parse_body(req)));
           send_json(res, to_json(*wb_.repo().get_object(id)), 201);
         }));
  s.Get(R"(/objects/([^/]+))", wrap(false, [this](const Request& req, Response& res) {
          send_json(res, to_json(*wb_.repo().get_object(path_id(req))));
        }));
  s.Post("/links", wrap(true, [this](const Request& req, Response& res) {
           const auto body = parse_body(req);
           if (!body.is_object() || !body.contains("parent") || !body.contains("child"))
             fail(ErrorCode::Parse, "link body needs parent and child");
           const PermId parent(body.at("parent").get<std::string>());
           const PermId child(body.at("child").get<std::string>());
           wb_.link(parent, child);
           send_json(res, {{"parent", parent.str()}, {"child", child.str()}}, 201);
         }));
  s.Get("/graph", wrap(false, [this](const Request& req, Response& res) {
          ProvenanceGraph g;
          if (req.has_param("element")) {
            g = filter_by_element(wb_.repo(), req.get_param_value("element"),
                                  depth_param(req, "radius"));
          } else {
            if (!req.has_param("root")) fail(ErrorCode::InvalidArgument, "root or element is required");
            const auto dir = req.has_param("direction") ? req.get_param_value("direction") : "both";
            g = build_graph(wb_.repo(), PermId(req.get_param_value("root")),
                            direction_from_string(dir), depth_param(req, "depth"));
          }
          const auto format = req.has_param("format") ? req.get_param_value("format") : "json";
          if (format == "dot") {
            res.set_content(export_dot(g), "text/vnd.graphviz");
          } else if (format == "json") {
            res.set_content(export_json(g), "application/json");
          } else {
            fail(ErrorCode::InvalidArgument, "format must be json or dot");
          }
        }));
  s.Get(R"(/vocabularies/([^/]+))", wrap(false, [this](const Request& req, Response& res) {
          send_json(res, to_json(wb_.repo().vocabulary(req.matches[1].str())));
        }));
  s.Post("/datasets", wrap(true, [this](const Request& req, Response& res) {
           if (!req.is_multipart_form_data()) fail(ErrorCode::Parse, "expected multipart/form-data");
           for (const char* field : {"file", "entry", "type"})
             if (!req.has_file(field)) fail(ErrorCode::Parse, std::string("missing form field ") + field);
           const auto file = req.get_file_value("file");
           const auto bytes = to_bytes(file.content);
           const auto format = req.has_file("format") ? req.get_file_value("format").content : "auto";
           auto d = wb_.ingest(PermId(req.get_file_value("entry").content), bytes,
                               req.get_file_value("type").content, parser_choice(format, bytes),
                               file.filename);
           send_json(res, dataset_json(*d), 201);
         }));
  s.Get(R"(/datasets/([^/]+))", wrap(false, [this](const Request& req, Response& res) {
          send_json(res, dataset_json(*wb_.repo().get_dataset(path_id(req))));
        }));
  s.Get(R"(/datasets/([^/]+)/blob)", wrap(false, [this](const Request& req, Response& res) {
          const auto d = wb_.repo().get_dataset(path_id(req));
          const auto bytes = wb_.store().get_blob(d->blob);
          res.set_content(std::string(bytes.begin(), bytes.end()), "application/octet-stream");
          if (!d->original_filename.empty())
            res.set_header("Content-Disposition",
                           "attachment; filename=\"" + d->original_filename + "\"");
        }));
  s.Get(R"(/datasets/([^/]+)/preview)", wrap(false, [this](const Request& req, Response& res) {
          const auto id = path_id(req);
          auto png = wb_.preview(id);
          if (!png) fail(ErrorCode::NotFound, "dataset " + id.str() + " has no preview");
          res.set_content(std::string(png->begin(), png->end()), "image/png");
        }));
  s.Post("/workflows/tick", wrap(true, [this](const Request&, Response& res) {
           const auto outcomes = wb_.scheduler().tick();
           nlohmann::json list = nlohmann::json::array();
           std::size_t executed = 0;
           for (const auto& o : outcomes) {
             list.push_back(to_json(o));
             executed += o.skipped ? 0 : 1;
           }
           send_json(res, {{"executed", executed}, {"outcomes", list}});
         }));
  s.Post(R"(/workflows/stress-strain/([^/]+))", wrap(true, [this](const Request& req, Response& res) {
           const auto entry = path_id(req);
           auto e = wb_.repo().get_object(entry);
           if (e->type_name != types::kMicroMechExp)
             fail(ErrorCode::InvalidArgument, "entry " + entry.str() + " is not a MICRO_MECH_EXP");
           const auto job = submit_stress_strain(entry);
           res.set_header("Location", "/workflows/status/" + job);
           send_json(res, {{"job", job}, {"status", "queued"}}, 202);
         }));
  s.Get(R"(/workflows/status/([^/]+))", wrap(false, [this](const Request& req, Response& res) {
          send_json(res, job_status(req.matches[1].str()));
        }));
  s.Post("/decks", wrap(true, [this](const Request& req, Response& res) {
           const auto body = parse_body(req);
           SlideDeckRequest r;
           try {
             for (const auto& id : body.at("dataset_ids")) r.dataset_ids.emplace_back(id.get<std::string>());
             r.title = body.value("title", "");
           } catch (const nlohmann::json::exception& e) {
             fail(ErrorCode::Parse, std::string("deck body: ") + e.what());
           }
           auto deck = build_slide_deck(wb_.repo(), wb_.store(), r);
           res.status = 201;
           res.set_header("X-Dataset-Id", deck.dataset->dataset_id.str());
           res.set_content(deck.html, "text/html; charset=utf-8");
         }));
  s.Get(R"(/qr/([^/]+))", wrap(false, [this](const Request& req, Response& res) {
          const auto id = path_id(req);
          if (!wb_.repo().contains(id)) fail(ErrorCode::NotFound, "object " + id.str() + " not found");
          send_json(res, {{"perm_id", id.str()}, {"payload", qr_payload(id)}});
        }));
  s.set_error_handler([](const Request& req, Response& res) {
    if (res.status == 404 && res.body.empty())
      send_json(res, {{"error", {{"code", "NOTFOUND"}, {"message", "no route " + req.path}}}}, 404);
  });
}

std::string ApiServer::submit_stress_strain(const PermId& entry) {
  std::lock_guard lock(jobs_mutex_);
  const std::string id = "job-" + std::to_string(next_job_++);
  jobs_[id] = Job{"queued", nullptr, nullptr};
  job_threads_.emplace_back([this, id, entry] {
    {
      std::lock_guard l(jobs_mutex_);
      jobs_[id].status = "running";
    }
    Job done;
    try {
      done = Job{"done", to_json(wb_.scheduler().run_stress_strain(entry)), nullptr};
    } catch (const std::exception& e) {
      done = Job{"failed", nullptr, error_body(e).at("error")};
    }
    log_event("info", "job_finished", {{"job", id}, {"status", done.status}});
    std::lock_guard l(jobs_mutex_);
    jobs_[id] = std::move(done);
  });
  return id;
}

nlohmann::json ApiServer::job_status(const std::string& id) {
  std::lock_guard lock(jobs_mutex_);
  auto it = jobs_.find(id);
  if (it == jobs_.end()) fail(ErrorCode::NotFound, "job " + id + " not found");
  nlohmann::json out = {{"job", id}, {"status", it->second.status}};
  if (!it->second.outcome.is_null()) out["outcome"] = it->second.outcome;
  if (!it->second.error.is_null()) out["error"] = it->second.error;
  return out;
}

int ApiServer::bind() {
  if (port_ >= 0) return port_;
  port_ = config_.port == 0 ? server_->bind_to_any_port(config_.host)
                            : (server_->bind_to_port(config_.host, config_.port) ? config_.port : -1);
  if (port_ < 0)
    fail(ErrorCode::Io, "cannot bind " + config_.host + ":" + std::to_string(config_.port) +
                            " (port busy or address unavailable)");
  log_event("info", "listening", {{"host", config_.host}, {"port", port_}});
  return port_;
}

void ApiServer::scheduler_loop() {
  const auto interval = std::chrono::duration<double>(*config_.scheduler_interval);
  std::unique_lock lock(stop_mutex_);
  while (!stop_cv_.wait_for(lock, interval, [this] { return stopping_; })) {
    lock.unlock();
    try {
      std::size_t executed = 0;
      for (const auto& o : wb_.scheduler().tick()) executed += o.skipped ? 0 : 1;
      log_event("info", "scheduler_tick", {{"executed", executed}});
    } catch (const std::exception& e) {
      log_event("warn", "scheduler_tick_failed", {{"message", e.what()}});
    }
    lock.lock();
  }
}

void ApiServer::run() {
  bind();
  if (config_.scheduler_interval && !scheduler_thread_.joinable())
    scheduler_thread_ = std::thread([this] { scheduler_loop(); });
  server_->listen_after_bind();
}

int ApiServer::start() {
  const int port = bind();
  serve_thread_ = std::thread([this] { run(); });
  server_->wait_until_ready();
  return port;
}

void ApiServer::stop() {
  {
    std::lock_guard lock(stop_mutex_);
    stopping_ = true;
  }
  stop_cv_.notify_all();
  server_->stop();
  if (serve_thread_.joinable()) serve_thread_.join();
  if (scheduler_thread_.joinable()) scheduler_thread_.join();
  std::vector<std::thread> jobs;
  {
    std::lock_guard lock(jobs_mutex_);
    jobs.swap(job_threads_);
  }
  for (auto& t : jobs) t.join();
}

}  // namespace rdm
