#pragma once

// Hashing, atomic file writes, the results cache and run manifests.

#include <filesystem>
#include <optional>
#include <string>

namespace lislab::io {

std::string sha256_hex(const std::string& data);
std::string sha256_file(const std::filesystem::path& path);

// Writes to a temporary sibling, then renames over `path`.
void atomic_write(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

// $LISLAB_CACHE_DIR, else $XDG_CACHE_HOME/lislab, else $HOME/.cache/lislab.
std::filesystem::path cache_dir();

// Content-addressed store: entries are named by the hash of their parameter record.
class Cache {
 public:
  explicit Cache(std::filesystem::path dir = cache_dir(), bool enabled = true);
  bool enabled() const { return enabled_; }
  std::filesystem::path path_for(const std::string& record, const std::string& ext) const;
  std::optional<std::string> load(const std::string& record, const std::string& ext) const;
  void store(const std::string& record, const std::string& ext, const std::string& content) const;

 private:
  std::filesystem::path dir_;
  bool enabled_;
};

}  // namespace lislab::io
