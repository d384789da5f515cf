#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rdm/bytes.hpp"
#include "rdm/extract/raw.hpp"
#include "rdm/extract/unified.hpp"
#include "rdm/extract/vendor.hpp"

namespace rdm {

using Warnings = std::vector<std::string>;

// magic(8) | u32 LE metadata_length | UTF-8 "Key = Value Unit" lines | PNG payload.
// Throws Error{Truncated} or Error{Encoding}.
RawKeyValues parse_vendor_a(ByteView bytes, Warnings& warnings);

// magic(8) | { u16 LE key_length | key | u8 type | u16 LE value_length | value }*
// terminated by key_length == 0; type 0x01 = f64 LE, 0x02 = u32 LE.
// Throws Error{BadType} or Error{Truncated}.
RawKeyValues parse_vendor_b(ByteView bytes, Warnings& warnings);

// INI text; keys are emitted as "Section.Key". The "[System]" signature is
// checked by parse_file, not here. Throws Error{Syntax} naming the 1-based line.
RawKeyValues parse_vendor_c(ByteView bytes, Warnings& warnings);

RawKeyValues parse_vendor_a(ByteView bytes);
RawKeyValues parse_vendor_b(ByteView bytes);
RawKeyValues parse_vendor_c(ByteView bytes);

// Image bytes carried inside a vendor file (PNG), if any.
std::optional<ByteView> embedded_image(ByteView bytes, VendorFormat vendor);

// Magnification against a 0.127 m reference display width.
inline constexpr double kReferenceDisplayWidth = 0.127;

// Throws Error{Domain} unless pixel_size > 0 and image_width_px >= 1.
double compute_magnification(double pixel_size, std::int64_t image_width_px);

// image_height_px - scan_rows; throws Error{Domain} if scan_rows exceeds the
// image height or either is negative.
std::int64_t compute_databar_rows(std::int64_t image_height_px, std::int64_t scan_rows);

// Applies the vendor column of the SEM field table. Unmapped keys only
// produce warnings. Throws Error{Domain} for VendorFormat::Unknown.
UnifiedSemMetadata map_to_unified(const RawKeyValues& raw, VendorFormat vendor,
                                  Warnings& warnings);

struct ParseResult {
  VendorFormat vendor = VendorFormat::Unknown;
  RawKeyValues raw;
  UnifiedSemMetadata unified;
  Warnings warnings;

  bool operator==(const ParseResult&) const = default;
};

// Parses with an explicitly chosen parser; throws Error{Parse} if the bytes do
// not carry that vendor's signature.
ParseResult parse_file(ByteView bytes, VendorFormat vendor);

// Detects the format first; throws Error{Parse} for unknown files.
ParseResult extract_metadata(ByteView bytes);

}  // namespace rdm
