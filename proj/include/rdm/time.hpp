#pragma once

#include <chrono>
#include <functional>
#include <string>
#include <string_view>

namespace rdm {

using Timestamp =
    std::chrono::time_point<std::chrono::system_clock, std::chrono::milliseconds>;

using Clock = std::function<Timestamp()>;

Timestamp system_now();

// "2023-12-04T12:34:56.789Z"
std::string format_timestamp(Timestamp t);
// Inverse of format_timestamp; throws Error{Parse}.
Timestamp parse_timestamp(std::string_view text);

}  // namespace rdm
