#include "rdm/core/perm_id.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>

#include "rdm/error.hpp"

namespace rdm {

namespace {

constexpr std::string_view kQrPrefix = "rdm://object/";

bool all_digits(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

bool PermId::is_valid(std::string_view text) noexcept {
  if (text.size() < 19 || text[17] != '-') return false;
  const auto stamp = text.substr(0, 17);
  const auto seq = text.substr(18);
  if (!all_digits(stamp) || !all_digits(seq) || seq.front() == '0') return false;
  auto num = [&](std::size_t pos, std::size_t len) {
    int v = 0;
    for (char c : stamp.substr(pos, len)) v = v * 10 + (c - '0');
    return v;
  };
  using namespace std::chrono;
  const year_month_day ymd{year{num(0, 4)}, month(unsigned(num(4, 2))), day(unsigned(num(6, 2)))};
  return ymd.ok() && num(8, 2) < 24 && num(10, 2) < 60 && num(12, 2) < 60;
}

PermId::PermId(std::string_view text) {
  if (!is_valid(text)) fail(ErrorCode::Parse, "malformed permId: " + std::string(text));
  value_ = std::string(text);
}

std::optional<PermId> PermId::try_parse(std::string_view text) {
  if (!is_valid(text)) return std::nullopt;
  return PermId(text);
}

PermId mint_perm_id(Timestamp clock, std::uint64_t seq) {
  if (seq == 0) fail(ErrorCode::Domain, "permId sequence number must be >= 1");
  std::string stamp = format_timestamp(clock);  // YYYY-MM-DDThh:mm:ss.SSSZ
  std::string digits;
  digits.reserve(17);
  for (char c : stamp)
    if (std::isdigit(static_cast<unsigned char>(c))) digits.push_back(c);
  return PermId(digits + "-" + std::to_string(seq));
}

std::string qr_payload(const PermId& id) { return std::string(kQrPrefix) + id.str(); }

PermId resolve_qr_payload(std::string_view payload) {
  if (!payload.starts_with(kQrPrefix))
    fail(ErrorCode::Parse, "not an rdm object payload: " + std::string(payload));
  return PermId(payload.substr(kQrPrefix.size()));
}

}  // namespace rdm
