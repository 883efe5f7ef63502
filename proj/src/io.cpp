#include "lislab/io.hpp"

#include <openssl/evp.h>

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <sstream>
#include <thread>

#include "lislab/errors.hpp"

namespace lislab::io {

namespace fs = std::filesystem;

std::string sha256_hex(const std::string& data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 || EVP_DigestFinal_ex(ctx.get(), md, &len) != 1)
    throw IoError("sha256: digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sha256_file(const fs::path& path) { return sha256_hex(read_file(path)); }

void atomic_write(const fs::path& path, const std::string& content) {
  static std::atomic<unsigned> counter{0};
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  const auto tid = std::hash<std::thread::id>{}(std::this_thread::get_id());
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(tid) + "." + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << content;
    out.close();
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw IoError("cannot rename into " + path.string() + ": " + ec.message());
  }
}

fs::path cache_dir() {
  if (const char* d = std::getenv("LISLAB_CACHE_DIR"); d && *d) return d;
  if (const char* d = std::getenv("XDG_CACHE_HOME"); d && *d) return fs::path(d) / "lislab";
  if (const char* d = std::getenv("HOME"); d && *d) return fs::path(d) / ".cache" / "lislab";
  return fs::temp_directory_path() / "lislab-cache";
}

Cache::Cache(fs::path dir, bool enabled) : dir_(std::move(dir)), enabled_(enabled) {}

fs::path Cache::path_for(const std::string& record, const std::string& ext) const {
  return dir_ / (sha256_hex(record) + ext);
}

std::optional<std::string> Cache::load(const std::string& record, const std::string& ext) const {
  if (!enabled_) return std::nullopt;
  const fs::path p = path_for(record, ext);
  std::error_code ec;
  if (!fs::exists(p, ec)) return std::nullopt;
  try {
    return read_file(p);
  } catch (const IoError&) {
    return std::nullopt;
  }
}

void Cache::store(const std::string& record, const std::string& ext, const std::string& content) const {
  if (enabled_) atomic_write(path_for(record, ext), content);
}

}  // namespace lislab::io
