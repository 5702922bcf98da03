#pragma once

#include <string>
#include <vector>

namespace spgan {

// Identity sentinel for records whose label must not reach training.
constexpr int kUnlabeled = -1;

enum class DomainTag { source, target };
enum class NamingConvention { id_cam_filename, csv_index };

struct ManifestRecord {
  std::string path;  // absolute, or resolved against the manifest root
  int identity = kUnlabeled;
  int camera = 0;
};

struct DatasetManifest {
  std::string root;
  DomainTag domain = DomainTag::source;
  std::vector<ManifestRecord> records;

  size_t size() const { return records.size(); }
  // Distinct non-sentinel identities, ascending.
  std::vector<int> identities() const;
};

// Scan `root` under the given convention and return a validated manifest with
// records in lexicographic path order.
//
// id_cam_filename: every image file must parse as {identity:04d}_c{camera}_{seq}.png.
// csv_index: reads <root>/manifest.csv with header path,identity,camera; an
// empty identity field means UNLABELED.
//
// Fatal (std::runtime_error): empty manifest, unparsable filename, missing or
// undecodable file, negative camera, UNLABELED record in a source manifest.
DatasetManifest load_manifest(const std::string& root, NamingConvention convention,
                              DomainTag domain);

// Write the csv_index form (paths relative to m.root where possible).
void write_manifest_csv(const DatasetManifest& m, const std::string& csv_path);

}  // namespace spgan
