#pragma once

#include <ostream>
#include <string_view>

#include <nlohmann/json.hpp>

namespace rdm {

// One JSON object per line: {"ts", "level", "event", ...fields}. Goes to
// stderr unless redirected; safe to call from any thread.
void log_event(std::string_view level, std::string_view event, nlohmann::json fields = {});
void set_log_stream(std::ostream* stream);  // nullptr silences logging

}  // namespace rdm
