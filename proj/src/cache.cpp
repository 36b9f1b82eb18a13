#include "shacalc/cache.hpp"

#include <openssl/sha.h>
#include <unistd.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <thread>

#include "shacalc/error.hpp"

namespace shacalc {

namespace fs = std::filesystem;

namespace {

constexpr char kMagic[4] = {'S', 'H', 'C', 'C'};

std::string sha256_raw(std::string_view data) {
  unsigned char out[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(data.data()), data.size(), out);
  return std::string(reinterpret_cast<const char*>(out), SHA256_DIGEST_LENGTH);
}

std::string table_bytes(const FiniteGroup& g) {
  const auto& t = g.table();
  return std::string(reinterpret_cast<const char*>(t.data()), t.size() * sizeof(t[0]));
}

template <typename T>
void put(std::string& s, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  s.append(buf, sizeof(T));
}

template <typename T>
T get(std::string_view s, std::size_t at) {
  T v;
  std::memcpy(&v, s.data() + at, sizeof(T));
  return v;
}

}  // namespace

std::string sha256_hex(std::string_view data) {
  static const char* hex = "0123456789abcdef";
  std::string raw = sha256_raw(data), out;
  for (unsigned char c : raw) {
    out.push_back(hex[c >> 4]);
    out.push_back(hex[c & 15]);
  }
  return out;
}

FileStore::FileStore(std::string directory) : dir_(std::move(directory)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  check(fs::is_directory(dir_), ErrorCode::ParseError, "cannot create cache directory " + dir_);
}

std::string FileStore::path_for(const GLattice& m, int n) const {
  std::string g = sha256_hex(table_bytes(*m.group())).substr(0, 16);
  std::string l = sha256_hex(m.fingerprint()).substr(0, 24);
  return (fs::path(dir_) / ("g" + g + "-l" + l + "-n" + std::to_string(n) + ".shcc")).string();
}

std::optional<std::string> FileStore::load(const GLattice& m, int n) {
  const std::string path = path_for(m, n);
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    ++misses_;
    return std::nullopt;
  }
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  in.close();
  constexpr std::size_t header = 4 + sizeof(std::uint32_t) + sizeof(std::uint64_t);
  bool ok = data.size() >= header + SHA256_DIGEST_LENGTH && std::memcmp(data.data(), kMagic, 4) == 0 &&
            get<std::uint32_t>(data, 4) == kCacheFormatVersion;
  std::uint64_t len = ok ? get<std::uint64_t>(data, 8) : 0;
  ok = ok && data.size() == header + len + SHA256_DIGEST_LENGTH;
  if (ok) {
    std::string_view payload(data.data() + header, len);
    ok = sha256_raw(payload) == std::string_view(data.data() + header + len, SHA256_DIGEST_LENGTH);
  }
  if (!ok) {
    std::error_code ec;
    fs::remove(path, ec);
    ++discarded_;
    ++misses_;
    return std::nullopt;
  }
  ++hits_;
  return data.substr(header, len);
}

void FileStore::save(const GLattice& m, int n, const std::string& blob) {
  std::string data(kMagic, 4);
  put<std::uint32_t>(data, kCacheFormatVersion);
  put<std::uint64_t>(data, blob.size());
  data += blob;
  data += sha256_raw(blob);

  const std::string path = path_for(m, n);
  std::ostringstream tmp;
  tmp << path << ".tmp." << ::getpid() << "." << std::hash<std::thread::id>{}(std::this_thread::get_id()) << "." << this;
  {
    std::ofstream out(tmp.str(), std::ios::binary | std::ios::trunc);
    if (!out) return;  // the cache is best effort
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) {
      out.close();
      std::error_code ec;
      fs::remove(tmp.str(), ec);
      return;
    }
  }
  std::error_code ec;
  fs::rename(tmp.str(), path, ec);
  if (ec) fs::remove(tmp.str(), ec);
}

}  // namespace shacalc
