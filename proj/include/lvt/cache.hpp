#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "lvt/potentials.hpp"

namespace lvt {

// Lowercase hex SHA-256 of the bytes.
std::string sha256_hex(const std::string& bytes);

// Potential records under <root>/cache/n{dim}_{a}_{b}_{c}.json (sorted
// triple), each file holding {"sha256": ..., "record": ...} where the hash
// covers the canonical dump of the record. Files are written to a temporary
// name and renamed, so concurrent writers of one key never interleave.
class FileStore : public RecordStore {
 public:
  explicit FileStore(std::filesystem::path root);

  std::filesystem::path path_for(const MarkovTriple& t, std::size_t dim) const;

  // None when no file exists. Throws IntegrityError when the file does not
  // parse, the hash differs, or the record belongs to another key.
  std::optional<PotentialRecord> load(const MarkovTriple& sorted, std::size_t dim) override;
  void save(const PotentialRecord& record) override;

 private:
  std::filesystem::path dir_;
};

// "n{dim}_{a}_{b}_{c}" for the sorted triple; shared by every output file.
std::string record_key(const MarkovTriple& t, std::size_t dim);

}  // namespace lvt
