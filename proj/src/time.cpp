#include "rdm/time.hpp"

#include <charconv>
#include <cstdio>

#include "rdm/error.hpp"

namespace rdm {

using namespace std::chrono;

Timestamp system_now() { return time_point_cast<milliseconds>(system_clock::now()); }

std::string format_timestamp(Timestamp t) {
  const auto day = floor<days>(t);
  const year_month_day ymd{day};
  const hh_mm_ss tod{t - day};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d.%03dZ", int(ymd.year()),
                unsigned(ymd.month()), unsigned(ymd.day()), int(tod.hours().count()),
                int(tod.minutes().count()), int(tod.seconds().count()),
                int(tod.subseconds().count()));
  return buf;
}

namespace {

int field(std::string_view text, std::size_t pos, std::size_t len) {
  int value = 0;
  const char* first = text.data() + pos;
  auto [ptr, ec] = std::from_chars(first, first + len, value);
  if (ec != std::errc{} || ptr != first + len)
    fail(ErrorCode::Parse, "bad timestamp: " + std::string(text));
  return value;
}

}  // namespace

Timestamp parse_timestamp(std::string_view text) {
  // YYYY-MM-DDThh:mm:ss.SSSZ
  if (text.size() != 24 || text[4] != '-' || text[7] != '-' || text[10] != 'T' ||
      text[13] != ':' || text[16] != ':' || text[19] != '.' || text[23] != 'Z')
    fail(ErrorCode::Parse, "bad timestamp: " + std::string(text));
  const year_month_day ymd{year{field(text, 0, 4)}, month(unsigned(field(text, 5, 2))),
                           day(unsigned(field(text, 8, 2)))};
  if (!ymd.ok()) fail(ErrorCode::Parse, "bad calendar date: " + std::string(text));
  const int h = field(text, 11, 2), m = field(text, 14, 2), s = field(text, 17, 2);
  const int ms = field(text, 20, 3);
  if (h > 23 || m > 59 || s > 59) fail(ErrorCode::Parse, "bad time: " + std::string(text));
  return Timestamp{sys_days{ymd}.time_since_epoch()} + hours{h} + minutes{m} + seconds{s} +
         milliseconds{ms};
}

}  // namespace rdm
