#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rdm/bytes.hpp"
#include "rdm/extract/unified.hpp"
#include "rdm/extract/vendor.hpp"

namespace rdm {

struct FixtureOptions {
  // Append a PNG (vendors A and B) sized from image_width_px/image_height_px.
  bool embed_image = true;
  // Vendor A only: write kV/µs/mm/deg/nA/mbar instead of SI base units.
  bool human_units = false;
  // Extra numeric entries, e.g. junk keys. Vendor C keys are "Section.Key".
  std::vector<std::pair<std::string, double>> extra_entries;
};

// Fields a file of `vendor` can carry such that parsing recovers them
// exactly: every keyed table cell, the image size, and the databar where it
// follows from integer geometry.
std::vector<SemField> representable_fields(VendorFormat vendor);

Bytes write_vendor_a(const UnifiedSemMetadata& m, const FixtureOptions& options = {});
Bytes write_vendor_b(const UnifiedSemMetadata& m, const FixtureOptions& options = {});
Bytes write_vendor_c(const UnifiedSemMetadata& m, const FixtureOptions& options = {});
Bytes write_vendor(VendorFormat vendor, const UnifiedSemMetadata& m,
                   const FixtureOptions& options = {});

// Typical 20 kV secondary-electron acquisition used by demos.
UnifiedSemMetadata demo_sem_metadata();

}  // namespace rdm
