#include "grladapt/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <numeric>
#include <span>

#include <json.hpp>

#include "grladapt/errors.hpp"

namespace grladapt {

namespace fs = std::filesystem;
using nlohmann::json;

const char* to_string(Domain d) { return d == Domain::source ? "source" : "target"; }

Domain domain_from_string(const std::string& s) {
  if (s == "source") return Domain::source;
  if (s == "target") return Domain::target;
  throw FormatError("unknown domain tag '" + s + "'");
}

void FrameDataset::validate() const {
  if (labels) {
    if (static_cast<Index>(labels->size()) != rows()) {
      throw DataError("labels length " + std::to_string(labels->size()) + " != feature rows " +
                      std::to_string(rows()));
    }
    if (n_classes > 0) {
      for (int y : *labels) {
        if (y < 0 || y >= n_classes) {
          throw DataError("label " + std::to_string(y) + " out of range for " +
                          std::to_string(n_classes) + " classes");
        }
      }
    }
  }
  Index covered = 0;
  for (const UtteranceSpan& u : utterances) {
    if (u.first_row != covered) throw DataError("utterance spans do not tile the dataset");
    covered += u.rows;
  }
  if (!utterances.empty() && covered != rows()) {
    throw DataError("utterance spans cover " + std::to_string(covered) + " of " +
                    std::to_string(rows()) + " rows");
  }
  if (!(frame_shift_s > 0.0)) throw DataError("frame_shift_s must be > 0");
  ensure_finite(features, "dataset features");
}

FrameDataset strip_labels(FrameDataset data) {
  data.labels.reset();
  return data;
}

FrameDataset subset_hours(const FrameDataset& data, double hours, Rng& rng) {
  if (data.utterances.empty()) throw DataError("subset_hours: dataset has no utterance spans");
  if (hours > data.hours_equivalent() * (1.0 + 1e-12)) {
    throw DataError("subset_hours: requested " + std::to_string(hours) + " h but only " +
                    std::to_string(data.hours_equivalent()) + " h available");
  }
  const double frames_needed = hours * 3600.0 / data.frame_shift_s;

  std::vector<std::size_t> order(data.utterances.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);

  FrameDataset out;
  out.domain = data.domain;
  out.language = data.language;
  out.frame_shift_s = data.frame_shift_s;
  out.n_classes = data.n_classes;

  Index taken = 0;
  std::vector<std::size_t> chosen;
  for (std::size_t idx : order) {
    if (static_cast<double>(taken) >= frames_needed - 1e-9) break;
    chosen.push_back(idx);
    taken += data.utterances[idx].rows;
  }
  out.features.resize(taken, data.dims());
  if (data.labels) out.labels.emplace();
  Index at = 0;
  for (std::size_t idx : chosen) {
    const UtteranceSpan& u = data.utterances[idx];
    out.features.middleRows(at, u.rows) = data.features.middleRows(u.first_row, u.rows);
    if (data.labels) {
      out.labels->insert(out.labels->end(), data.labels->begin() + u.first_row,
                         data.labels->begin() + u.first_row + u.rows);
    }
    out.utterances.push_back(UtteranceSpan{u.id, at, u.rows});
    at += u.rows;
  }
  out.validate();
  return out;
}

namespace {

constexpr char kFeatMagic[4] = {'G', 'R', 'L', 'F'};
constexpr char kLabMagic[4] = {'G', 'R', 'L', 'L'};
constexpr std::uint32_t kFormatVersion = 1;
constexpr std::uint32_t kDtypeF64 = 1;
constexpr std::uint32_t kDtypeI32 = 2;

template <typename T>
void write_pod(std::ofstream& f, const T& v) {
  f.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_pod(std::ifstream& f, const fs::path& path) {
  T v{};
  const auto offset = static_cast<long long>(f.tellg());
  f.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!f) {
    throw FormatError("truncated read in " + path.string() + " at offset " +
                      std::to_string(offset));
  }
  return v;
}

void write_feature_file(const fs::path& path, const Matrix& rows_slice) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f.write(kFeatMagic, 4);
  write_pod(f, kFormatVersion);
  write_pod(f, kDtypeF64);
  write_pod(f, static_cast<std::uint64_t>(rows_slice.rows()));
  write_pod(f, static_cast<std::uint64_t>(rows_slice.cols()));
  // Row-major on disk.
  for (Index i = 0; i < rows_slice.rows(); ++i) {
    for (Index j = 0; j < rows_slice.cols(); ++j) {
      const double v = rows_slice(i, j);
      write_pod(f, v);
    }
  }
  if (!f) throw IoError("write failed for " + path.string());
}

Matrix read_feature_file(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string());
  char magic[4];
  f.read(magic, 4);
  if (!f || std::memcmp(magic, kFeatMagic, 4) != 0) {
    throw FormatError("bad feature-file magic in " + path.string() + " at offset 0");
  }
  const auto version = read_pod<std::uint32_t>(f, path);
  if (version != kFormatVersion) {
    throw FormatError("unsupported feature-file version " + std::to_string(version) + " in " +
                      path.string());
  }
  const auto dtype = read_pod<std::uint32_t>(f, path);
  if (dtype != kDtypeF64) {
    throw FormatError("unsupported feature dtype " + std::to_string(dtype) + " in " + path.string());
  }
  const auto rows = read_pod<std::uint64_t>(f, path);
  const auto cols = read_pod<std::uint64_t>(f, path);
  Matrix m(static_cast<Index>(rows), static_cast<Index>(cols));
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      m(i, j) = read_pod<double>(f, path);
    }
  }
  return m;
}

void write_label_file(const fs::path& path, std::span<const int> labels) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f.write(kLabMagic, 4);
  write_pod(f, kFormatVersion);
  write_pod(f, kDtypeI32);
  write_pod(f, static_cast<std::uint64_t>(labels.size()));
  for (int y : labels) {
    const std::int32_t v = y;
    write_pod(f, v);
  }
  if (!f) throw IoError("write failed for " + path.string());
}

std::vector<int> read_label_file(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string());
  char magic[4];
  f.read(magic, 4);
  if (!f || std::memcmp(magic, kLabMagic, 4) != 0) {
    throw FormatError("bad label-file magic in " + path.string() + " at offset 0");
  }
  const auto version = read_pod<std::uint32_t>(f, path);
  if (version != kFormatVersion) {
    throw FormatError("unsupported label-file version " + std::to_string(version) + " in " +
                      path.string());
  }
  const auto dtype = read_pod<std::uint32_t>(f, path);
  if (dtype != kDtypeI32) {
    throw FormatError("unsupported label dtype " + std::to_string(dtype) + " in " + path.string());
  }
  const auto count = read_pod<std::uint64_t>(f, path);
  std::vector<int> labels(count);
  for (auto& y : labels) {
    y = read_pod<std::int32_t>(f, path);
  }
  return labels;
}

}  // namespace

void save_dataset(const FrameDataset& data, const fs::path& dir) {
  data.validate();
  if (data.utterances.empty()) throw DataError("save_dataset: dataset has no utterance spans");
  fs::create_directories(dir / "feats");
  if (data.labels) fs::create_directories(dir / "labels");

  json meta{{"format_version", kFormatVersion},
            {"domain", to_string(data.domain)},
            {"language", data.language},
            {"frame_shift_s", data.frame_shift_s},
            {"n_classes", data.n_classes},
            {"dims", data.dims()},
            {"n_utterances", data.utterances.size()}};
  std::ofstream cf(dir / "corpus.json");
  if (!cf) throw IoError("cannot write " + (dir / "corpus.json").string());
  cf << meta.dump(2) << "\n";

  std::ofstream mf(dir / "manifest.jsonl");
  if (!mf) throw IoError("cannot write " + (dir / "manifest.jsonl").string());
  for (const UtteranceSpan& u : data.utterances) {
    const std::string feat_rel = "feats/" + u.id + ".feat";
    write_feature_file(dir / feat_rel, data.features.middleRows(u.first_row, u.rows));
    json line{{"id", u.id},
              {"domain", to_string(data.domain)},
              {"language", data.language},
              {"frames", u.rows},
              {"features", feat_rel}};
    if (data.labels) {
      const std::string lab_rel = "labels/" + u.id + ".lab";
      write_label_file(dir / lab_rel,
                       std::span<const int>(data.labels->data() + u.first_row,
                                            static_cast<std::size_t>(u.rows)));
      line["labels"] = lab_rel;
    } else {
      line["labels"] = nullptr;
    }
    mf << line.dump() << "\n";
  }
  if (!mf) throw IoError("write failed for manifest in " + dir.string());
}

FrameDataset load_dataset(const fs::path& dir) {
  std::ifstream cf(dir / "corpus.json");
  if (!cf) throw IoError("cannot open " + (dir / "corpus.json").string());
  json meta;
  try {
    cf >> meta;
  } catch (const json::exception& e) {
    throw FormatError("malformed corpus.json in " + dir.string() + ": " + e.what());
  }

  FrameDataset out;
  out.domain = domain_from_string(meta.at("domain").get<std::string>());
  out.language = meta.at("language").get<std::string>();
  out.frame_shift_s = meta.at("frame_shift_s").get<double>();
  out.n_classes = meta.at("n_classes").get<int>();
  const Index dims = meta.at("dims").get<Index>();
  const std::size_t n_utts = meta.at("n_utterances").get<std::size_t>();

  std::ifstream mf(dir / "manifest.jsonl");
  if (!mf) throw IoError("cannot open " + (dir / "manifest.jsonl").string());

  struct Entry {
    std::string id;
    Index frames;
    fs::path feat;
    std::optional<fs::path> lab;
  };
  std::vector<Entry> entries;
  std::string line;
  std::size_t lineno = 0;
  Index total_rows = 0;
  bool any_labels = false;
  while (std::getline(mf, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw FormatError("malformed manifest line " + std::to_string(lineno) + " in " +
                        dir.string() + ": " + e.what());
    }
    Entry e;
    e.id = j.at("id").get<std::string>();
    e.frames = j.at("frames").get<Index>();
    e.feat = dir / j.at("features").get<std::string>();
    if (!j.at("labels").is_null()) {
      e.lab = dir / j.at("labels").get<std::string>();
      any_labels = true;
    }
    total_rows += e.frames;
    entries.push_back(std::move(e));
  }
  if (entries.size() != n_utts) {
    throw FormatError("manifest lists " + std::to_string(entries.size()) + " utterances, corpus.json says " +
                      std::to_string(n_utts));
  }

  out.features.resize(total_rows, dims);
  if (any_labels) out.labels.emplace();
  Index at = 0;
  for (const Entry& e : entries) {
    Matrix feats = read_feature_file(e.feat);
    if (feats.rows() != e.frames || feats.cols() != dims) {
      throw FormatError("feature file " + e.feat.string() + " is " + shape_str(feats) +
                        ", manifest expects " + std::to_string(e.frames) + "x" + std::to_string(dims));
    }
    out.features.middleRows(at, e.frames) = feats;
    if (any_labels) {
      if (!e.lab) throw FormatError("utterance " + e.id + " is missing labels in a labeled corpus");
      std::vector<int> labs = read_label_file(*e.lab);
      if (static_cast<Index>(labs.size()) != e.frames) {
        throw DataError("label/feature length mismatch for utterance " + e.id + ": " +
                        std::to_string(labs.size()) + " vs " + std::to_string(e.frames));
      }
      out.labels->insert(out.labels->end(), labs.begin(), labs.end());
    }
    out.utterances.push_back(UtteranceSpan{e.id, at, e.frames});
    at += e.frames;
  }
  out.validate();
  return out;
}

}  // namespace grladapt
