#pragma once

#include <array>
#include <span>
#include <string_view>

#include "rdm/extract/unified.hpp"
#include "rdm/extract/vendor.hpp"

namespace rdm {

// One cell of the vendor comparison table: the vendor's own key, "x" (the
// vendor never records the field) or "*" (the field can be computed).
struct VendorCell {
  enum class Kind { Key, Absent, Computed };
  Kind kind;
  std::string_view key;
};

struct SemTableRow {
  std::string_view label;
  SemField field;
  std::array<VendorCell, 3> cells;  // indexed by VendorA, VendorB, VendorC
  std::string_view ontology_iri;    // empty where no one-to-one mapping exists
};

// The 17 rows in printed order (Frame Time appears twice).
std::span<const SemTableRow> sem_table() noexcept;

const VendorCell& cell(const SemTableRow& row, VendorFormat vendor);

// Vendor keys outside the table that carry image geometry, used for the
// computed fields. Scan rows exist only for vendors with a computed databar.
struct GeometryKeys {
  std::string_view image_width;
  std::string_view image_height;
  std::string_view scan_rows;  // empty when the vendor stores the databar directly
};

GeometryKeys geometry_keys(VendorFormat vendor);

}  // namespace rdm
