#pragma once

#include <optional>
#include <string_view>

#include "rdm/bytes.hpp"
#include "rdm/extract/vendor.hpp"
#include "rdm/previews/image.hpp"

namespace rdm {

inline constexpr std::size_t kThumbnailSize = 256;

// Box-filter downsample so the larger side equals max_dim. Images that
// already fit are returned unchanged; nothing is ever upscaled.
RgbImage thumbnail(const RgbImage& image, std::size_t max_dim = kThumbnailSize);

// PNG preview for a registered file, when one can be made: the image embedded
// in a vendor file, an IPF-Z map for EBSD_MAP datasets, or a plain PNG.
std::optional<Bytes> make_preview(ByteView file, std::string_view dataset_type,
                                  VendorFormat vendor);

}  // namespace rdm
