#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rdm/bytes.hpp"

namespace rdm {

struct BlobRef {
  std::string content_hash;  // lowercase hex SHA-256
  std::uint64_t size_bytes = 0;

  auto operator<=>(const BlobRef&) const = default;
};

nlohmann::json to_json(const BlobRef& ref);
BlobRef blob_ref_from_json(const nlohmann::json& j);

struct StoreStats {
  std::uint64_t blob_count = 0;
  std::uint64_t total_bytes = 0;
};

// Where blob bytes physically live. The filesystem backend is the only one
// shipped; an S3-compatible backend would implement the same five calls.
class StorageBackend {
 public:
  virtual ~StorageBackend() = default;

  // Stores `data` under `hash` unless already present. Must be atomic with
  // respect to concurrent writers and readers.
  virtual void write(const std::string& hash, ByteView data) = 0;
  virtual std::optional<Bytes> read(const std::string& hash) const = 0;
  virtual bool contains(const std::string& hash) const = 0;
  virtual bool remove(const std::string& hash) = 0;
  virtual std::vector<BlobRef> list() const = 0;
};

// Layout: <root>/<first two hex digits>/<full hash>; writes go through
// <root>/tmp and an atomic rename.
class FilesystemBackend final : public StorageBackend {
 public:
  explicit FilesystemBackend(std::filesystem::path root);

  void write(const std::string& hash, ByteView data) override;
  std::optional<Bytes> read(const std::string& hash) const override;
  bool contains(const std::string& hash) const override;
  bool remove(const std::string& hash) override;
  std::vector<BlobRef> list() const override;

  const std::filesystem::path& root() const noexcept { return root_; }
  std::filesystem::path path_for(const std::string& hash) const;

 private:
  std::filesystem::path root_;
};

class BlobStore {
 public:
  explicit BlobStore(std::unique_ptr<StorageBackend> backend);
  static BlobStore on_filesystem(const std::filesystem::path& root);

  // Idempotent: identical bytes yield the identical ref and are stored once.
  BlobRef put_blob(ByteView data);

  // Verifies the hash on read: Error{NotFound} or Error{Corrupt}.
  Bytes get_blob(const BlobRef& ref) const;

  bool contains(const BlobRef& ref) const;
  StoreStats stats() const;

  // Deletes every blob whose hash is not in `keep`; returns the removed refs.
  std::vector<BlobRef> collect_garbage(const std::set<std::string>& keep);

  StorageBackend& backend() noexcept { return *backend_; }

 private:
  std::unique_ptr<StorageBackend> backend_;
};

}  // namespace rdm
