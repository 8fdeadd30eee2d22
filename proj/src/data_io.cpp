#include "credible/data_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

namespace credible {

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_double(const std::string& s, std::size_t line_no, const std::string& column) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw DataFormatError("line " + std::to_string(line_no) + ", column '" + column +
                          "': cannot parse '" + s + "' as a number");
  }
}

}  // namespace

void write_csv(const std::filesystem::path& path, const Dataset& data,
               const std::vector<std::string>& feature_names) {
  if (feature_names.size() != data.cols()) {
    throw std::invalid_argument("feature name count does not match dataset columns");
  }
  std::ofstream out(path);
  if (!out) throw DataFormatError("cannot open " + path.string() + " for writing");
  for (std::size_t j = 0; j < feature_names.size(); ++j) {
    out << feature_names[j] << ',';
  }
  out << "label\n";
  for (std::size_t i = 0; i < data.rows(); ++i) {
    for (std::size_t j = 0; j < data.cols(); ++j) {
      out << format_double(data.at(i, j)) << ',';
    }
    out << format_double(data.targets()[i]) << '\n';
  }
  if (!out) throw DataFormatError("write failed for " + path.string());
}

NamedDataset read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataFormatError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw DataFormatError(path.string() + ": missing header row");
  const auto header = split_fields(line);
  std::size_t label_col = header.size();
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (header[j] == "label") {
      if (label_col != header.size()) throw DataFormatError(path.string() + ": duplicate 'label' column");
      label_col = j;
    }
  }
  if (label_col == header.size()) throw DataFormatError(path.string() + ": no column named 'label'");

  NamedDataset out;
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (j != label_col) out.feature_names.push_back(header[j]);
  }
  const std::size_t d = out.feature_names.size();

  std::vector<double> xs;
  std::vector<double> ys;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != header.size()) {
      throw DataFormatError(path.string() + ": line " + std::to_string(line_no) + " has " +
                            std::to_string(fields.size()) + " fields, expected " +
                            std::to_string(header.size()));
    }
    for (std::size_t j = 0; j < fields.size(); ++j) {
      const double v = parse_double(fields[j], line_no, header[j]);
      if (j == label_col) {
        ys.push_back(v);
      } else {
        xs.push_back(v);
      }
    }
  }
  if (ys.empty()) throw DataFormatError(path.string() + ": no data rows");

  Dataset data(ys.size(), d);
  data.raw() = std::move(xs);
  data.targets() = std::move(ys);
  out.data = std::move(data);
  return out;
}

void write_known_features(const std::filesystem::path& path,
                          const std::vector<std::string>& feature_names, const KnowledgeVector& r) {
  if (feature_names.size() != r.size()) {
    throw std::invalid_argument("feature name count does not match knowledge vector");
  }
  std::ofstream out(path);
  if (!out) throw DataFormatError("cannot open " + path.string() + " for writing");
  for (std::size_t j = 0; j < r.size(); ++j) {
    if (r[j] > 0.0) out << feature_names[j] << '\n';
  }
}

KnowledgeVector read_known_features(const std::filesystem::path& path,
                                    const std::vector<std::string>& feature_names) {
  std::ifstream in(path);
  if (!in) throw DataFormatError("cannot open " + path.string());
  Vec r(feature_names.size(), 0.0);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto it = std::find(feature_names.begin(), feature_names.end(), line);
    if (it == feature_names.end()) {
      throw DataFormatError(path.string() + ": line " + std::to_string(line_no) +
                            ": unknown feature name '" + line + "'");
    }
    r[static_cast<std::size_t>(it - feature_names.begin())] = 1.0;
  }
  return KnowledgeVector(std::move(r));
}

Standardizer Standardizer::fit(const Dataset& train) {
  const std::size_t n = train.rows();
  const std::size_t d = train.cols();
  if (n == 0) throw std::invalid_argument("cannot standardize an empty dataset");
  Standardizer s;
  s.mean.assign(d, 0.0);
  s.scale.assign(d, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) s.mean[j] += train.at(i, j);
  }
  for (double& m : s.mean) m /= static_cast<double>(n);
  Vec var(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const double c = train.at(i, j) - s.mean[j];
      var[j] += c * c;
    }
  }
  for (std::size_t j = 0; j < d; ++j) {
    const double sd = std::sqrt(var[j] / static_cast<double>(n));
    s.scale[j] = sd > 1e-12 ? sd : 1.0;
  }
  return s;
}

Dataset Standardizer::apply(const Dataset& data) const {
  if (data.cols() != mean.size()) throw std::invalid_argument("standardizer dimension mismatch");
  Dataset out = data;
  for (std::size_t i = 0; i < out.rows(); ++i) {
    for (std::size_t j = 0; j < out.cols(); ++j) {
      out.at(i, j) = (out.at(i, j) - mean[j]) / scale[j];
    }
  }
  return out;
}

SplitIndices split_60_20_20(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::mt19937_64 rng(seed ^ 0x5851f42d4c957f2dULL);
  std::shuffle(idx.begin(), idx.end(), rng);
  const std::size_t n_train = (n * 6) / 10;
  const std::size_t n_val = (n * 2) / 10;
  SplitIndices s;
  s.train.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_train));
  s.val.assign(idx.begin() + static_cast<std::ptrdiff_t>(n_train),
               idx.begin() + static_cast<std::ptrdiff_t>(n_train + n_val));
  s.test.assign(idx.begin() + static_cast<std::ptrdiff_t>(n_train + n_val), idx.end());
  return s;
}

Dataset take_rows(const Dataset& data, const std::vector<std::size_t>& rows) {
  Dataset out(rows.size(), data.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto src = data.row(rows[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
    out.targets()[i] = data.targets()[rows[i]];
  }
  out.groups = data.groups;
  return out;
}

DataSplits split_and_standardize(const Dataset& data, std::uint64_t seed) {
  const SplitIndices idx = split_60_20_20(data.rows(), seed);
  DataSplits splits;
  splits.train = take_rows(data, idx.train);
  splits.val = take_rows(data, idx.val);
  splits.test = take_rows(data, idx.test);
  const Standardizer s = Standardizer::fit(splits.train);
  splits.train = s.apply(splits.train);
  splits.val = s.apply(splits.val);
  splits.test = s.apply(splits.test);
  return splits;
}

}  // namespace credible
