#include "rdm/service/deck.hpp"

#include "rdm/error.hpp"
#include "rdm/extract/parsers.hpp"
#include "rdm/previews/png.hpp"
#include "rdm/store/registration.hpp"
#include "rdm/store/sha256.hpp"

namespace rdm {
namespace {

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

Bytes slide_image(const DatasetRecord& d, const BlobStore& store) {
  if (d.preview) return store.get_blob(*d.preview);
  Bytes blob = store.get_blob(d.blob);
  if (is_png(blob)) return blob;
  if (auto img = embedded_image(blob, d.vendor)) return Bytes(img->begin(), img->end());
  fail(ErrorCode::Domain, "dataset " + d.dataset_id.str() + " has no image to show");
}

}  // namespace

std::string render_slide_deck(const Repository& repo, const BlobStore& store,
                              const SlideDeckRequest& request) {
  if (request.dataset_ids.empty()) fail(ErrorCode::Empty, "no datasets selected for the deck");
  std::vector<DatasetPtr> datasets;
  for (const auto& id : request.dataset_ids) {
    auto d = repo.find_dataset(id);
    if (!d) fail(ErrorCode::NotFound, "dataset " + id.str() + " not found");
    datasets.push_back(std::move(d));
  }
  const std::string title = request.title.empty() ? "Slides" : request.title;
  std::string html =
      "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\"><title>" + escape(title) +
      "</title>\n<style>section{page-break-after:always;margin:2em 0}img{max-width:60%;float:left;"
      "margin-right:2em}table{border-collapse:collapse}td{border:1px solid #999;padding:2px 8px}"
      "</style></head>\n<body>\n<h1>" + escape(title) + "</h1>\n";
  std::size_t n = 0;
  for (const auto& d : datasets) {
    const Bytes png = slide_image(*d, store);
    html += "<section class=\"slide\" data-dataset=\"" + d->dataset_id.str() + "\">\n<h2>" +
            std::to_string(++n) + ". " +
            escape(d->original_filename.empty() ? d->dataset_id.str() : d->original_filename) +
            "</h2>\n<img alt=\"" + d->dataset_id.str() + "\" src=\"data:image/png;base64," +
            base64_encode(png) + "\">\n<table>\n";
    if (d->unified_metadata)
      for (const auto& info : sem_fields())
        if (auto v = format_field(*d->unified_metadata, info.field); !v.empty())
          html += "<tr><td>" + escape(info.name) + "</td><td>" + escape(v) + "</td></tr>\n";
    html += "</table>\n</section>\n";
  }
  return html + "</body></html>\n";
}

SlideDeck build_slide_deck(Repository& repo, BlobStore& store, const SlideDeckRequest& request) {
  SlideDeck deck{render_slide_deck(repo, store, request), nullptr};
  const auto owner = repo.get_dataset(request.dataset_ids.front())->owner_entry;
  deck.dataset = register_linked_dataset(repo, store, owner, to_bytes(deck.html), "SLIDE_DECK",
                                         std::nullopt, "slides.html");
  return deck;
}

}  // namespace rdm
