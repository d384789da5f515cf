#pragma once

#include <unistd.h>

#include <atomic>
#include <chrono>
#include <filesystem>
#include <random>
#include <string>

#include "rdm/core/repository.hpp"
#include "rdm/time.hpp"

namespace rdm::test {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("rdm-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline Timestamp at_ms(std::int64_t ms) { return Timestamp(std::chrono::milliseconds(ms)); }

// Clock that advances by one millisecond per call.
inline Clock stepping_clock(std::int64_t start_ms = 1701693296789) {
  auto t = std::make_shared<std::atomic<std::int64_t>>(start_ms);
  return [t] { return at_ms((*t)++); };
}

inline Clock fixed_clock(std::int64_t ms = 1701693296789) {
  return [ms] { return at_ms(ms); };
}

inline ObjectRecord sample(std::map<std::string, nlohmann::json> props = {}) {
  ObjectRecord r;
  r.type_name = "SAMPLE";
  r.properties = {{"location", "shelf 1"}, {"dimensions_mm", {10, 10, 2}}};
  for (auto& [k, v] : props) r.properties[k] = v;
  return r;
}

inline ObjectRecord entry(std::string type = "ENTRY", std::string title = "entry") {
  ObjectRecord r;
  r.type_name = std::move(type);
  r.properties = {{"title", std::move(title)}};
  return r;
}

}  // namespace rdm::test
