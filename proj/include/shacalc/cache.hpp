#pragma once

// On-disk store for computed cohomology groups. One file per
// (group digest, lattice digest, degree):
//   "SHCC" | u32 format version | u64 payload length | payload | SHA-256(payload)
// Files are written to a temporary name and renamed into place. Entries that
// fail the magic, length or checksum test are deleted and recomputed.

#include <atomic>
#include <cstddef>
#include <optional>
#include <string>

#include "shacalc/cohomology.hpp"

namespace shacalc {

inline constexpr std::uint32_t kCacheFormatVersion = 1;

std::string sha256_hex(std::string_view data);

class FileStore : public CohomologyStore {
 public:
  explicit FileStore(std::string directory);

  std::optional<std::string> load(const GLattice& m, int n) override;
  void save(const GLattice& m, int n, const std::string& blob) override;

  std::string path_for(const GLattice& m, int n) const;
  const std::string& directory() const noexcept { return dir_; }

  std::size_t hits() const noexcept { return hits_; }
  std::size_t misses() const noexcept { return misses_; }
  std::size_t discarded() const noexcept { return discarded_; }

 private:
  std::string dir_;
  std::atomic<std::size_t> hits_{0}, misses_{0}, discarded_{0};
};

}  // namespace shacalc
