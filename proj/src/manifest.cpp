#include "spgan/manifest.hpp"

#include "spgan/image_io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fs = std::filesystem;

namespace spgan {

namespace {

bool is_image_file(const fs::path& p) {
  const std::string ext = p.extension().string();
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

std::vector<ManifestRecord> scan_by_filename(const std::string& root) {
  static const std::regex pattern(R"((\d{4})_c(\d+)_(\d+)\.(png|jpg|jpeg))");
  std::vector<ManifestRecord> records;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (!entry.is_regular_file() || !is_image_file(entry.path())) continue;
    const std::string name = entry.path().filename().string();
    std::smatch m;
    if (!std::regex_match(name, m, pattern))
      throw std::runtime_error("unparsable image filename (want {id:04d}_c{cam}_{seq}): " +
                               entry.path().string());
    records.push_back({entry.path().string(), std::stoi(m[1]), std::stoi(m[2])});
  }
  return records;
}

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::vector<ManifestRecord> scan_by_csv(const std::string& root) {
  const fs::path csv = fs::path(root) / "manifest.csv";
  std::ifstream in(csv);
  if (!in) throw std::runtime_error("cannot open manifest index: " + csv.string());
  std::string line;
  if (!std::getline(in, line) || split_csv_row(line) != std::vector<std::string>{"path", "identity", "camera"})
    throw std::runtime_error("manifest.csv must start with header path,identity,camera: " +
                             csv.string());
  std::vector<ManifestRecord> records;
  size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const auto fields = split_csv_row(line);
    if (fields.size() != 3)
      throw std::runtime_error("manifest.csv row " + std::to_string(row) + ": want 3 fields, got " +
                               std::to_string(fields.size()));
    ManifestRecord rec;
    fs::path p(fields[0]);
    rec.path = p.is_absolute() ? p.string() : (fs::path(root) / p).string();
    try {
      rec.identity = fields[1].empty() ? kUnlabeled : std::stoi(fields[1]);
      rec.camera = std::stoi(fields[2]);
    } catch (const std::exception&) {
      throw std::runtime_error("manifest.csv row " + std::to_string(row) + ": bad integer field");
    }
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace

std::vector<int> DatasetManifest::identities() const {
  std::set<int> ids;
  for (const auto& r : records)
    if (r.identity != kUnlabeled) ids.insert(r.identity);
  return {ids.begin(), ids.end()};
}

DatasetManifest load_manifest(const std::string& root, NamingConvention convention,
                              DomainTag domain) {
  if (!fs::is_directory(root)) throw std::runtime_error("dataset root is not a directory: " + root);

  DatasetManifest m;
  m.root = root;
  m.domain = domain;
  m.records = convention == NamingConvention::id_cam_filename ? scan_by_filename(root)
                                                              : scan_by_csv(root);
  if (m.records.empty()) throw std::runtime_error("empty manifest: " + root);
  std::sort(m.records.begin(), m.records.end(),
            [](const ManifestRecord& a, const ManifestRecord& b) { return a.path < b.path; });

  std::string missing;
  for (const auto& r : m.records)
    if (!fs::is_regular_file(r.path)) missing += "\n  " + r.path;
  if (!missing.empty()) throw std::runtime_error("manifest references missing files:" + missing);

  for (const auto& r : m.records) {
    if (r.camera < 0)
      throw std::runtime_error("negative camera id for " + r.path);
    if (r.identity < 0 && r.identity != kUnlabeled)
      throw std::runtime_error("negative identity id for " + r.path);
    if (domain == DomainTag::source && r.identity == kUnlabeled)
      throw std::runtime_error("source manifest contains an unlabeled record: " + r.path);
    load_image(r.path);  // decode check; throws with the path on failure
  }
  return m;
}

void write_manifest_csv(const DatasetManifest& m, const std::string& csv_path) {
  std::ofstream out(csv_path);
  if (!out) throw std::runtime_error("cannot write manifest csv: " + csv_path);
  out << "path,identity,camera\n";
  const std::string prefix = (fs::path(m.root) / "").string();
  for (const auto& r : m.records) {
    std::string p = r.path;
    if (p.rfind(prefix, 0) == 0) p = p.substr(prefix.size());
    out << p << ",";
    if (r.identity != kUnlabeled) out << r.identity;
    out << "," << r.camera << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + csv_path);
}

}  // namespace spgan
