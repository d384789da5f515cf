#include "rdm/service/log.hpp"

#include <iostream>
#include <mutex>

#include "rdm/time.hpp"

namespace rdm {
namespace {

std::mutex g_log_mutex;
std::ostream* g_log_stream = &std::cerr;

}  // namespace

void set_log_stream(std::ostream* stream) {
  std::lock_guard lock(g_log_mutex);
  g_log_stream = stream;
}

void log_event(std::string_view level, std::string_view event, nlohmann::json fields) {
  nlohmann::json line = {{"ts", format_timestamp(system_now())}, {"level", level}, {"event", event}};
  if (fields.is_object())
    for (auto& [k, v] : fields.items()) line[k] = std::move(v);
  const std::string text = line.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
  std::lock_guard lock(g_log_mutex);
  if (g_log_stream) *g_log_stream << text << '\n' << std::flush;
}

}  // namespace rdm
