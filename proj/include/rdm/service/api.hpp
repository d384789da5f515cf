#pragma once

#include <atomic>
#include <condition_variable>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "rdm/service/workbench.hpp"

namespace httplib {
class Server;
}

namespace rdm {

struct ApiConfig {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::string token;
  bool public_read = false;
  std::optional<double> scheduler_interval;  // seconds
};

bool is_loopback(std::string_view host) noexcept;

// HTTP+JSON front of a Workbench.
//
//   POST /objects                      GET /objects/{id}
//   POST /links                        GET /graph
//   GET  /vocabularies/{name}          POST /datasets (multipart)
//   GET  /datasets/{id}                GET /datasets/{id}/blob
//   GET  /datasets/{id}/preview        POST /workflows/tick
//   POST /workflows/stress-strain/{entry}  (202, runs in background)
//   GET  /workflows/status/{job}       POST /decks
//   GET  /qr/{id}
class ApiServer {
 public:
  // Throws Error{InvalidArgument} when binding beyond loopback without a token.
  ApiServer(Workbench& workbench, ApiConfig config);
  ~ApiServer();

  ApiServer(const ApiServer&) = delete;
  ApiServer& operator=(const ApiServer&) = delete;

  // Binds the socket; returns the bound port. Throws Error{Io} when the port
  // is unavailable.
  int bind();
  // Serves until stop(); bind() first.
  void run();
  // bind() + run() on a background thread.
  int start();
  void stop();

 private:
  struct Job {
    std::string status;  // queued, running, done, failed
    nlohmann::json outcome;
    nlohmann::json error;
  };

  void routes();
  void scheduler_loop();
  std::string submit_stress_strain(const PermId& entry);
  nlohmann::json job_status(const std::string& id);

  Workbench& wb_;
  ApiConfig config_;
  std::unique_ptr<httplib::Server> server_;
  int port_ = -1;
  std::thread serve_thread_;
  std::thread scheduler_thread_;
  std::mutex stop_mutex_;
  std::condition_variable stop_cv_;
  bool stopping_ = false;

  std::mutex jobs_mutex_;
  std::map<std::string, Job> jobs_;
  std::vector<std::thread> job_threads_;
  std::size_t next_job_ = 1;
};

}  // namespace rdm
