#include "lvt/cache.hpp"

#include <openssl/evp.h>

#include <atomic>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "lvt/serialize.hpp"

namespace lvt {

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 computation failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return os.str();
}

std::string record_key(const MarkovTriple& t, std::size_t dim) {
  const auto s = t.sorted();
  return "n" + std::to_string(dim) + "_" + s[0].get_str() + "_" + s[1].get_str() + "_" + s[2].get_str();
}

FileStore::FileStore(std::filesystem::path root) : dir_(std::move(root) / "cache") {}

std::filesystem::path FileStore::path_for(const MarkovTriple& t, std::size_t dim) const {
  return dir_ / (record_key(t, dim) + ".json");
}

std::optional<PotentialRecord> FileStore::load(const MarkovTriple& sorted, std::size_t dim) {
  const auto path = path_for(sorted, dim);
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string where = " in cache file " + path.string();

  Json doc;
  try {
    doc = Json::parse(buf.str());
  } catch (const nlohmann::json::exception& e) {
    throw IntegrityError("unreadable JSON" + where + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("sha256") || !doc.contains("record") || !doc["sha256"].is_string())
    throw IntegrityError("missing hash or record" + where);
  if (sha256_hex(canonical_dump(doc["record"])) != doc["sha256"].get<std::string>())
    throw IntegrityError("hash mismatch" + where);
  PotentialRecord rec = [&] {
    try {
      return parse_record(doc["record"]);
    } catch (const Error& e) {
      throw IntegrityError(std::string(e.what()) + where);
    }
  }();
  if (!same_multiset(rec.triple, sorted) || rec.dim != dim) throw IntegrityError("record for another key" + where);
  return rec;
}

void FileStore::save(const PotentialRecord& record) {
  static std::atomic<unsigned long> counter{0};
  std::filesystem::create_directories(dir_);
  const auto path = path_for(record.triple, record.dim);
  const auto body = to_json(record);
  const Json doc{{"sha256", sha256_hex(canonical_dump(body))}, {"record", body}};
  auto tmp = path;
  tmp += ".tmp" + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << canonical_dump(doc);
    if (!out) throw Error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace lvt
