#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vdw/checked.hpp"

namespace vdw {

/// Where a value came from. A record may carry several sources once a
/// search result confirms a tabulated value.
enum class Provenance : std::uint8_t {
  paper_table = 1u << 0,
  search_derived = 1u << 1,
  user_supplied = 1u << 2,
};

class ProvenanceSet {
 public:
  constexpr ProvenanceSet() = default;
  constexpr ProvenanceSet(Provenance p) : bits_(static_cast<std::uint8_t>(p)) {}  // NOLINT

  constexpr bool has(Provenance p) const { return (bits_ & static_cast<std::uint8_t>(p)) != 0; }
  constexpr ProvenanceSet& add(ProvenanceSet other) {
    bits_ |= other.bits_;
    return *this;
  }
  constexpr bool empty() const { return bits_ == 0; }
  friend constexpr bool operator==(ProvenanceSet, ProvenanceSet) = default;

  /// "paper-table", "search-derived", "user-supplied", joined by '+'.
  std::string to_string() const;
  static ProvenanceSet parse(const std::string& tag);

 private:
  std::uint8_t bits_ = 0;
};

/// A known van der Waerden number W(r, k).
struct VdwRecord {
  unsigned r = 0;
  unsigned k = 0;
  u64 value = 0;
  ProvenanceSet provenance;

  friend bool operator==(const VdwRecord&, const VdwRecord&) = default;
};

/// Throws std::invalid_argument unless r >= 2, k >= 3 and value >= k.
void validate(const VdwRecord& record);

struct RegistryConflict : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when an operation needs W(r, k) and the registry has no entry.
struct MissingRecord : std::runtime_error {
  MissingRecord(unsigned r, unsigned k)
      : std::runtime_error("W(" + std::to_string(r) + "," + std::to_string(k) + ") is not in the registry"),
        r(r), k(k) {}
  unsigned r;
  unsigned k;
};

struct RegistryParseError : std::runtime_error {
  RegistryParseError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
  std::size_t line;
};

/// Store of known W(r, k) values, at most one per (r, k).
///
/// Reads take a shared lock and may run concurrently; upserts are
/// serialized. Conflicting values are rejected, never overwritten.
class Registry {
 public:
  /// Empty registry.
  Registry() = default;
  Registry(const Registry& other);
  Registry& operator=(const Registry& other);

  /// The seven tabulated values: W(2,3..6), W(3,3), W(3,4), W(4,3).
  static Registry seeded();

  std::optional<VdwRecord> lookup(unsigned r, unsigned k) const;
  /// lookup, throwing MissingRecord when absent.
  VdwRecord require(unsigned r, unsigned k) const;

  /// Inserts a record, or merges its provenance into an existing record
  /// with the same value. A differing value throws RegistryConflict.
  void upsert(const VdwRecord& record);

  /// Same as upsert, but requires search-derived provenance.
  void upsert_search_result(const VdwRecord& record);

  /// Records sorted by (r, k), i.e. table row order.
  std::vector<VdwRecord> records() const;
  std::size_t size() const;

  /// Extension file: `r k value provenance-tag` per line, '#' comments.
  void load_extension(std::istream& in);
  void load_extension(const std::filesystem::path& path);

 private:
  mutable std::shared_mutex mutex_;
  std::map<std::pair<unsigned, unsigned>, VdwRecord> records_;
};

}  // namespace vdw
