#include "rdm/extract/vendor.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <string>

namespace rdm {

std::string_view to_string(VendorFormat v) noexcept {
  switch (v) {
    case VendorFormat::VendorA: return "vendorA";
    case VendorFormat::VendorB: return "vendorB";
    case VendorFormat::VendorC: return "vendorC";
    case VendorFormat::Unknown: return "unknown";
  }
  return "unknown";
}

std::optional<VendorFormat> vendor_from_string(std::string_view name) noexcept {
  std::string n(name);
  std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return std::tolower(c); });
  if (n == "vendora" || n == "a") return VendorFormat::VendorA;
  if (n == "vendorb" || n == "b") return VendorFormat::VendorB;
  if (n == "vendorc" || n == "c") return VendorFormat::VendorC;
  if (n == "none" || n == "unknown") return VendorFormat::Unknown;
  return std::nullopt;
}

VendorFormat detect_format(ByteView bytes) noexcept {
  if (bytes.size() >= 8) {
    if (std::memcmp(bytes.data(), kMagicA, 8) == 0) return VendorFormat::VendorA;
    if (std::memcmp(bytes.data(), kMagicB, 8) == 0) return VendorFormat::VendorB;
  }
  std::size_t i = 0;
  while (i < bytes.size() && std::isspace(bytes[i])) ++i;
  constexpr std::string_view kSystem = "[System]";
  if (bytes.size() - i >= kSystem.size() &&
      std::memcmp(bytes.data() + i, kSystem.data(), kSystem.size()) == 0)
    return VendorFormat::VendorC;
  return VendorFormat::Unknown;
}

}  // namespace rdm
