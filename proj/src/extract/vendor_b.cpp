#include <bit>
#include <cstdio>
#include <cstring>
#include <string>

#include "rdm/error.hpp"
#include "rdm/extract/parsers.hpp"

namespace rdm {

namespace {

constexpr std::uint8_t kFloat64 = 0x01;
constexpr std::uint8_t kUint32 = 0x02;

class Reader {
 public:
  explicit Reader(ByteView bytes) : bytes_(bytes) {}

  std::size_t offset() const { return pos_; }

  ByteView take(std::size_t n, const char* what) {
    if (n > bytes_.size() - pos_)
      fail(ErrorCode::Truncated, std::string("vendorB record overruns file while reading ") +
                                     what + " at offset " + std::to_string(pos_));
    auto out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

  std::uint16_t u16(const char* what) {
    auto b = take(2, what);
    return std::uint16_t(b[0] | b[1] << 8);
  }

  std::uint8_t u8(const char* what) { return take(1, what)[0]; }

 private:
  ByteView bytes_;
  std::size_t pos_ = 0;
};

std::uint64_t load_le(ByteView b) {
  std::uint64_t v = 0;
  for (std::size_t i = b.size(); i-- > 0;) v = (v << 8) | b[i];
  return v;
}

// Offset just past the terminator record.
std::size_t walk(ByteView bytes, RawKeyValues* raw, Warnings& warnings) {
  if (bytes.size() < 8 || std::memcmp(bytes.data(), kMagicB, 8) != 0)
    fail(ErrorCode::Parse, "missing vendorB signature");
  Reader in(bytes);
  in.take(8, "magic");
  for (;;) {
    const std::size_t record_start = in.offset();
    const std::uint16_t key_length = in.u16("key length");
    if (key_length == 0) return in.offset();
    const auto key_bytes = in.take(key_length, "key");
    std::string key(reinterpret_cast<const char*>(key_bytes.data()), key_bytes.size());
    for (unsigned char c : key)
      if (c < 0x20 || c > 0x7E)
        fail(ErrorCode::Encoding, "vendorB key at offset " + std::to_string(record_start) +
                                      " is not printable ASCII");
    const std::uint8_t type = in.u8("value type");
    const std::uint16_t value_length = in.u16("value length");
    if (type != kFloat64 && type != kUint32)
    {
      char hex[8];
      std::snprintf(hex, sizeof hex, "0x%02x", type);
      fail(ErrorCode::BadType,
           "vendorB value type " + std::string(hex) + " for key '" + key + "' is not 0x01 or 0x02");
    }
    const std::size_t expected = type == kFloat64 ? 8 : 4;
    if (value_length != expected)
      fail(ErrorCode::BadType, "vendorB key '" + key + "' declares " +
                                   std::to_string(value_length) + " value bytes, type needs " +
                                   std::to_string(expected));
    const auto value = in.take(value_length, "value");
    if (!raw) continue;
    RawEntry entry{std::move(key), 0.0, std::nullopt};
    if (type == kFloat64)
      entry.value = std::bit_cast<double>(load_le(value));
    else
      entry.value = static_cast<std::int64_t>(load_le(value));
    bool replaced = false;
    for (auto& e : raw->entries) {
      if (e.key == entry.key) {
        warnings.push_back("duplicate key '" + entry.key + "', last value wins");
        e = entry;
        replaced = true;
      }
    }
    if (!replaced) raw->entries.push_back(std::move(entry));
  }
}

}  // namespace

RawKeyValues parse_vendor_b(ByteView bytes, Warnings& warnings) {
  RawKeyValues raw;
  walk(bytes, &raw, warnings);
  return raw;
}

RawKeyValues parse_vendor_b(ByteView bytes) {
  Warnings ignored;
  return parse_vendor_b(bytes, ignored);
}

namespace detail {

std::size_t vendor_b_payload_offset(ByteView bytes) {
  Warnings ignored;
  return walk(bytes, nullptr, ignored);
}

}  // namespace detail

}  // namespace rdm
