#pragma once

// Dataset plumbing: CSV read/write (17 significant digits, lossless for
// doubles), the newline-delimited known-feature list, column standardization,
// and the seeded 60/20/20 split.

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "credible/types.hpp"

namespace credible {

class DataFormatError : public std::runtime_error {
 public:
  explicit DataFormatError(const std::string& what) : std::runtime_error(what) {}
};

struct NamedDataset {
  Dataset data;
  std::vector<std::string> feature_names;
};

// CSV with a header row; one column must be named "label", all others are
// numeric features.
void write_csv(const std::filesystem::path& path, const Dataset& data,
               const std::vector<std::string>& feature_names);
NamedDataset read_csv(const std::filesystem::path& path);

// Known features as a newline-delimited list of feature names.
void write_known_features(const std::filesystem::path& path,
                          const std::vector<std::string>& feature_names, const KnowledgeVector& r);
KnowledgeVector read_known_features(const std::filesystem::path& path,
                                    const std::vector<std::string>& feature_names);

// Column standardization to zero mean and unit variance (population scaling),
// fit on training data and applied to any split. Near-constant columns keep
// scale 1.
struct Standardizer {
  Vec mean;
  Vec scale;

  static Standardizer fit(const Dataset& train);
  Dataset apply(const Dataset& data) const;
};

struct SplitIndices {
  std::vector<std::size_t> train, val, test;
};

// Deterministic shuffled 60/20/20 split.
SplitIndices split_60_20_20(std::size_t n, std::uint64_t seed);

Dataset take_rows(const Dataset& data, const std::vector<std::size_t>& rows);

struct DataSplits {
  Dataset train, val, test;
};

// Split, then standardize all three parts with statistics fit on train.
DataSplits split_and_standardize(const Dataset& data, std::uint64_t seed);

}  // namespace credible
