#include "rdm/store/blob_store.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "rdm/error.hpp"
#include "rdm/store/sha256.hpp"

namespace fs = std::filesystem;

namespace rdm {

nlohmann::json to_json(const BlobRef& ref) {
  return {{"content_hash", ref.content_hash}, {"size_bytes", ref.size_bytes}};
}

BlobRef blob_ref_from_json(const nlohmann::json& j) {
  return {j.at("content_hash").get<std::string>(), j.at("size_bytes").get<std::uint64_t>()};
}

namespace {

bool is_hash(const std::string& s) {
  return s.size() == 64 && s.find_first_not_of("0123456789abcdef") == std::string::npos;
}

std::string temp_name() {
  static std::atomic<std::uint64_t> counter{0};
  std::ostringstream name;
  name << "put-" << std::hash<std::thread::id>{}(std::this_thread::get_id()) << "-"
       << counter.fetch_add(1) << "-" << std::random_device{}();
  return name.str();
}

}  // namespace

FilesystemBackend::FilesystemBackend(fs::path root) : root_(std::move(root)) {
  std::error_code ec;
  fs::create_directories(root_ / "tmp", ec);
  if (ec) fail(ErrorCode::Io, "cannot create blob root " + root_.string() + ": " + ec.message());
}

fs::path FilesystemBackend::path_for(const std::string& hash) const {
  return root_ / hash.substr(0, 2) / hash;
}

void FilesystemBackend::write(const std::string& hash, ByteView data) {
  const auto target = path_for(hash);
  std::error_code ec;
  if (fs::exists(target, ec)) return;
  fs::create_directories(target.parent_path(), ec);
  if (ec) fail(ErrorCode::Io, "cannot create " + target.parent_path().string() + ": " + ec.message());
  const auto tmp = root_ / "tmp" / temp_name();
  write_file(tmp, data);
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    fail(ErrorCode::Io, "cannot move blob into " + target.string() + ": " + ec.message());
  }
}

std::optional<Bytes> FilesystemBackend::read(const std::string& hash) const {
  if (!is_hash(hash)) return std::nullopt;
  const auto p = path_for(hash);
  std::error_code ec;
  if (!fs::is_regular_file(p, ec)) return std::nullopt;
  return read_file(p);
}

bool FilesystemBackend::contains(const std::string& hash) const {
  std::error_code ec;
  return is_hash(hash) && fs::is_regular_file(path_for(hash), ec);
}

bool FilesystemBackend::remove(const std::string& hash) {
  std::error_code ec;
  return is_hash(hash) && fs::remove(path_for(hash), ec);
}

std::vector<BlobRef> FilesystemBackend::list() const {
  std::vector<BlobRef> out;
  for (const auto& dir : fs::directory_iterator(root_)) {
    if (!dir.is_directory() || dir.path().filename() == "tmp") continue;
    for (const auto& f : fs::directory_iterator(dir.path())) {
      const auto name = f.path().filename().string();
      if (f.is_regular_file() && is_hash(name)) out.push_back({name, f.file_size()});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

BlobStore::BlobStore(std::unique_ptr<StorageBackend> backend) : backend_(std::move(backend)) {}

BlobStore BlobStore::on_filesystem(const fs::path& root) {
  return BlobStore(std::make_unique<FilesystemBackend>(root));
}

BlobRef BlobStore::put_blob(ByteView data) {
  BlobRef ref{sha256_hex(data), data.size()};
  backend_->write(ref.content_hash, data);
  return ref;
}

Bytes BlobStore::get_blob(const BlobRef& ref) const {
  auto data = backend_->read(ref.content_hash);
  if (!data) fail(ErrorCode::NotFound, "blob " + ref.content_hash + " not found");
  if (sha256_hex(*data) != ref.content_hash || data->size() != ref.size_bytes)
    fail(ErrorCode::Corrupt, "blob " + ref.content_hash + " does not match its content address");
  return std::move(*data);
}

bool BlobStore::contains(const BlobRef& ref) const { return backend_->contains(ref.content_hash); }

StoreStats BlobStore::stats() const {
  StoreStats s;
  for (const auto& ref : backend_->list()) {
    ++s.blob_count;
    s.total_bytes += ref.size_bytes;
  }
  return s;
}

std::vector<BlobRef> BlobStore::collect_garbage(const std::set<std::string>& keep) {
  std::vector<BlobRef> removed;
  for (const auto& ref : backend_->list())
    if (!keep.contains(ref.content_hash) && backend_->remove(ref.content_hash))
      removed.push_back(ref);
  return removed;
}

}  // namespace rdm
