#include "vdw/registry.hpp"

#include <fstream>
#include <istream>
#include <mutex>
#include <sstream>

namespace vdw {

namespace {

constexpr std::pair<Provenance, const char*> kTags[] = {
    {Provenance::paper_table, "paper-table"},
    {Provenance::search_derived, "search-derived"},
    {Provenance::user_supplied, "user-supplied"},
};

}  // namespace

std::string ProvenanceSet::to_string() const {
  std::string out;
  for (auto [p, tag] : kTags) {
    if (!has(p)) continue;
    if (!out.empty()) out += '+';
    out += tag;
  }
  return out;
}

ProvenanceSet ProvenanceSet::parse(const std::string& tag) {
  ProvenanceSet out;
  std::stringstream ss(tag);
  std::string part;
  while (std::getline(ss, part, '+')) {
    bool matched = false;
    for (auto [p, name] : kTags) {
      if (part == name) {
        out.add(p);
        matched = true;
      }
    }
    if (!matched) throw std::invalid_argument("unknown provenance tag '" + part + "'");
  }
  if (out.empty()) throw std::invalid_argument("empty provenance tag");
  return out;
}

void validate(const VdwRecord& rec) {
  if (rec.r < 2) throw std::invalid_argument("record: r must be >= 2");
  if (rec.k < 3) throw std::invalid_argument("record: k must be >= 3");
  if (rec.value < rec.k) throw std::invalid_argument("record: value must be >= k");
  if (rec.provenance.empty()) throw std::invalid_argument("record: missing provenance");
}

Registry::Registry(const Registry& other) {
  std::shared_lock lock(other.mutex_);
  records_ = other.records_;
}

Registry& Registry::operator=(const Registry& other) {
  if (this == &other) return *this;
  std::scoped_lock lock(mutex_);
  std::shared_lock other_lock(other.mutex_);
  records_ = other.records_;
  return *this;
}

Registry Registry::seeded() {
  Registry reg;
  constexpr struct { unsigned r, k; u64 w; } kTable[] = {
      {2, 3, 9}, {2, 4, 35}, {2, 5, 178}, {2, 6, 1132}, {3, 3, 27}, {3, 4, 293}, {4, 3, 76},
  };
  for (auto row : kTable) reg.upsert({row.r, row.k, row.w, Provenance::paper_table});
  return reg;
}

std::optional<VdwRecord> Registry::lookup(unsigned r, unsigned k) const {
  std::shared_lock lock(mutex_);
  auto it = records_.find({r, k});
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

VdwRecord Registry::require(unsigned r, unsigned k) const {
  auto rec = lookup(r, k);
  if (!rec) throw MissingRecord(r, k);
  return *rec;
}

void Registry::upsert(const VdwRecord& record) {
  validate(record);
  std::scoped_lock lock(mutex_);
  auto [it, inserted] = records_.try_emplace({record.r, record.k}, record);
  if (inserted) return;
  VdwRecord& existing = it->second;
  if (existing.value != record.value) {
    std::ostringstream msg;
    msg << "W(" << record.r << "," << record.k << ") conflict: " << record.provenance.to_string()
        << " value " << record.value << " disagrees with " << existing.provenance.to_string()
        << " value " << existing.value;
    throw RegistryConflict(msg.str());
  }
  existing.provenance.add(record.provenance);
}

void Registry::upsert_search_result(const VdwRecord& record) {
  if (!record.provenance.has(Provenance::search_derived)) {
    throw std::invalid_argument("upsert_search_result: record must be search-derived");
  }
  upsert(record);
}

std::vector<VdwRecord> Registry::records() const {
  std::shared_lock lock(mutex_);
  std::vector<VdwRecord> out;
  out.reserve(records_.size());
  for (const auto& [key, rec] : records_) out.push_back(rec);
  return out;
}

std::size_t Registry::size() const {
  std::shared_lock lock(mutex_);
  return records_.size();
}

void Registry::load_extension(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) continue;  // blank

    fields.clear();
    fields.str(line);
    long long r = 0, k = 0;
    unsigned long long value = 0;
    std::string tag, extra;
    if (!(fields >> r >> k >> value >> tag) || (fields >> extra)) {
      throw RegistryParseError("expected `r k value provenance-tag`", lineno);
    }
    if (r < 2 || k < 3) throw RegistryParseError("r must be >= 2 and k >= 3", lineno);
    VdwRecord rec{static_cast<unsigned>(r), static_cast<unsigned>(k), value, {}};
    try {
      rec.provenance = ProvenanceSet::parse(tag);
      upsert(rec);
    } catch (const std::invalid_argument& e) {
      throw RegistryParseError(e.what(), lineno);
    }
  }
}

void Registry::load_extension(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open registry file " + path.string());
  load_extension(in);
}

}  // namespace vdw
