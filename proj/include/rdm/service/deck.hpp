#pragma once

#include <string>
#include <vector>

#include "rdm/core/repository.hpp"
#include "rdm/store/blob_store.hpp"

namespace rdm {

struct SlideDeckRequest {
  std::vector<PermId> dataset_ids;
  std::string title;
};

struct SlideDeck {
  std::string html;
  DatasetPtr dataset;  // the registered SLIDE_DECK
};

// Standalone HTML page, one slide per dataset in request order: the image as a
// data URI and a two-column table of the unified fields present. Throws
// Error{Empty} for no ids, Error{NotFound} naming an unknown id and
// Error{Domain} for a dataset without image content.
std::string render_slide_deck(const Repository& repo, const BlobStore& store,
                              const SlideDeckRequest& request);

// Renders and registers the deck under the owner of the first dataset.
SlideDeck build_slide_deck(Repository& repo, BlobStore& store, const SlideDeckRequest& request);

}  // namespace rdm
