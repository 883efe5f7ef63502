#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <unistd.h>

#include "lislab/errors.hpp"
#include "lislab/io.hpp"

using namespace lislab;
namespace fs = std::filesystem;

TEST_CASE("SHA-256") {
  CHECK(io::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(io::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("Atomic writes and reads") {
  const fs::path dir = fs::temp_directory_path() / ("lislab-io-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path f = dir / "a.txt";
  io::atomic_write(f, "hello\n");
  CHECK(io::read_file(f) == "hello\n");
  io::atomic_write(f, "bye\n");
  CHECK(io::read_file(f) == "bye\n");
  CHECK(io::sha256_file(f) == io::sha256_hex("bye\n"));
  int n = 0;
  for (const auto& e : fs::directory_iterator(dir)) (void)e, ++n;
  CHECK(n == 1);
  CHECK_THROWS_AS(io::read_file(dir / "missing"), IoError);
  CHECK_THROWS_AS(io::atomic_write(f / "x", "y"), IoError);
  fs::remove_all(dir);
}

TEST_CASE("Cache directory and content-addressed store") {
  const fs::path dir = fs::temp_directory_path() / ("lislab-cache-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  ::setenv("LISLAB_CACHE_DIR", dir.c_str(), 1);
  CHECK(io::cache_dir() == dir);
  const io::Cache c;
  CHECK(c.enabled());
  CHECK(c.path_for("rec", ".csv").filename() == io::sha256_hex("rec") + ".csv");
  CHECK_FALSE(c.load("rec", ".csv").has_value());
  c.store("rec", ".csv", "1,2\n");
  CHECK(c.load("rec", ".csv").value() == "1,2\n");
  const io::Cache off(dir, false);
  CHECK_FALSE(off.load("rec", ".csv").has_value());
  off.store("other", ".csv", "x");
  CHECK_FALSE(fs::exists(off.path_for("other", ".csv")));
  fs::remove_all(dir);
}
