#include "advcurate/label_matrix.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "advcurate/errors.hpp"

namespace advcurate {

namespace {

using json = nlohmann::json;

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

bool parse_int(const std::string& text, int& out) {
  if (text.empty()) return false;
  const char* begin = text.data();
  const char* end = begin + text.size();
  if (*begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc{} && ptr == end;
}

std::string where(std::size_t row, std::size_t col) {
  return "row " + std::to_string(row) + ", column " + std::to_string(col);
}

int resolve_num_classes(std::optional<int> declared, const std::vector<int>& entries) {
  if (declared) {
    if (*declared < 2) throw ParseError("declared number of classes must be >= 2, got " +
                                        std::to_string(*declared));
    return *declared;
  }
  int max_entry = 0;
  for (int e : entries) max_entry = std::max(max_entry, e);
  return std::max(2, max_entry);
}

void check_entries(const std::vector<int>& entries, std::size_t num_lfs, int num_classes) {
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (entries[k] < 0 || entries[k] > num_classes) {
      throw ParseError(where(k / num_lfs, k % num_lfs) + ": entry out of range (" +
                       std::to_string(entries[k]) + " not in 0.." +
                       std::to_string(num_classes) + ")");
    }
  }
}

void check_unique_names(const std::vector<std::string>& names) {
  std::unordered_set<std::string> seen;
  for (std::size_t j = 0; j < names.size(); ++j) {
    if (names[j].empty()) throw ParseError("header column " + std::to_string(j) + ": empty LF name");
    if (!seen.insert(names[j]).second) {
      throw ParseError("header column " + std::to_string(j) + ": duplicate LF name '" +
                       names[j] + "'");
    }
  }
}

LoadedMatrix load_csv(std::istream& source) {
  std::optional<int> declared;
  std::vector<std::string> names;
  std::vector<int> entries;
  std::string line;
  std::size_t line_no = 0;
  std::size_t row = 0;
  bool have_header = false;
  while (std::getline(source, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      const std::string body = trim(std::string_view(t).substr(1));
      constexpr std::string_view key = "classes=";
      if (body.starts_with(key)) {
        int k = 0;
        if (!parse_int(trim(std::string_view(body).substr(key.size())), k)) {
          throw ParseError("line " + std::to_string(line_no) + ": malformed '#classes=K' line");
        }
        declared = k;
      }
      continue;
    }
    auto cells = split_csv_line(t);
    if (!have_header) {
      names = std::move(cells);
      check_unique_names(names);
      have_header = true;
      continue;
    }
    if (cells.size() != names.size()) {
      throw ParseError("row " + std::to_string(row) + ": expected " + std::to_string(names.size()) +
                       " entries, found " + std::to_string(cells.size()));
    }
    for (std::size_t j = 0; j < cells.size(); ++j) {
      int v = 0;
      if (!parse_int(cells[j], v)) {
        throw ParseError(where(row, j) + ": non-integer entry '" + cells[j] + "'");
      }
      entries.push_back(v);
    }
    ++row;
  }
  if (!have_header) throw ParseError("missing header row of LF names");
  if (row == 0) throw ParseError("no sample rows");
  const int k = resolve_num_classes(declared, entries);
  check_entries(entries, names.size(), k);
  return {LabelMatrix(std::move(names), k, std::move(entries)), std::nullopt};
}

LoadedMatrix load_json(std::istream& source) {
  json doc;
  try {
    doc = json::parse(source);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("expected a JSON object at top level");
  if (!doc.contains("lf_names") || !doc["lf_names"].is_array()) {
    throw ParseError("missing array field 'lf_names'");
  }
  if (!doc.contains("entries") || !doc["entries"].is_array()) {
    throw ParseError("missing array field 'entries'");
  }
  std::vector<std::string> names;
  for (std::size_t j = 0; j < doc["lf_names"].size(); ++j) {
    const auto& n = doc["lf_names"][j];
    if (!n.is_string()) throw ParseError("lf_names[" + std::to_string(j) + "] is not a string");
    names.push_back(n.get<std::string>());
  }
  check_unique_names(names);

  std::optional<int> declared;
  if (doc.contains("num_classes") && !doc["num_classes"].is_null()) {
    if (!doc["num_classes"].is_number_integer()) throw ParseError("'num_classes' is not an integer");
    declared = doc["num_classes"].get<int>();
  }

  const auto& rows = doc["entries"];
  if (rows.empty()) throw ParseError("no sample rows");
  std::vector<int> entries;
  entries.reserve(rows.size() * names.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (!r.is_array() || r.size() != names.size()) {
      throw ParseError("row " + std::to_string(i) + ": expected an array of " +
                       std::to_string(names.size()) + " entries");
    }
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (!r[j].is_number_integer()) throw ParseError(where(i, j) + ": non-integer entry");
      entries.push_back(r[j].get<int>());
    }
  }
  const int k = resolve_num_classes(declared, entries);
  check_entries(entries, names.size(), k);
  LabelMatrix m(std::move(names), k, std::move(entries));

  std::optional<GroundTruth> truth;
  if (doc.contains("true_labels") && !doc["true_labels"].is_null()) {
    GroundTruth t;
    const auto& labels = doc["true_labels"];
    if (!labels.is_array()) throw ParseError("'true_labels' is not an array");
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (!labels[i].is_number_integer()) {
        throw ParseError("true_labels[" + std::to_string(i) + "] is not an integer");
      }
      t.labels.push_back(labels[i].get<int>());
    }
    try {
      t.check_against(m);
    } catch (const DomainError& e) {
      throw ParseError(e.what());
    }
    truth = std::move(t);
  }
  return {std::move(m), std::move(truth)};
}

}  // namespace

LabelMatrix::LabelMatrix(std::vector<std::string> lf_names, int num_classes,
                         std::vector<int> entries)
    : lf_names_(std::move(lf_names)),
      num_classes_(num_classes),
      entries_(std::move(entries)),
      num_samples_(0) {
  if (lf_names_.empty()) throw DomainError("label matrix needs at least one labeling function");
  if (num_classes_ < 2) throw DomainError("label matrix needs at least two classes");
  if (entries_.empty() || entries_.size() % lf_names_.size() != 0) {
    throw DomainError("entry count is not a positive multiple of the LF count");
  }
  num_samples_ = entries_.size() / lf_names_.size();
  std::unordered_set<std::string> seen(lf_names_.begin(), lf_names_.end());
  if (seen.size() != lf_names_.size()) throw DomainError("duplicate LF names");
  for (int e : entries_) {
    if (e < kAbstain || e > num_classes_) {
      throw DomainError("entry out of range: " + std::to_string(e));
    }
  }
}

LabelMatrix LabelMatrix::from_rows(std::vector<std::string> lf_names, int num_classes,
                                   const std::vector<std::vector<int>>& rows) {
  std::vector<int> entries;
  for (const auto& r : rows) {
    if (r.size() != lf_names.size()) throw DomainError("ragged row in label matrix");
    entries.insert(entries.end(), r.begin(), r.end());
  }
  return LabelMatrix(std::move(lf_names), num_classes, std::move(entries));
}

int LabelMatrix::at(std::size_t sample, std::size_t lf) const {
  if (sample >= num_samples_ || lf >= num_lfs()) throw DomainError("label matrix index out of range");
  return entries_[sample * num_lfs() + lf];
}

std::span<const int> LabelMatrix::row(std::size_t sample) const {
  if (sample >= num_samples_) throw DomainError("sample index out of range");
  return std::span<const int>(entries_).subspan(sample * num_lfs(), num_lfs());
}

std::vector<double> LabelMatrix::column(std::size_t lf) const {
  if (lf >= num_lfs()) throw DomainError("LF index out of range");
  std::vector<double> col(num_samples_);
  for (std::size_t i = 0; i < num_samples_; ++i) col[i] = entries_[i * num_lfs() + lf];
  return col;
}

LabelMatrix LabelMatrix::restrict_to(std::span<const std::size_t> lf_indices) const {
  std::vector<std::string> names;
  names.reserve(lf_indices.size());
  for (auto j : lf_indices) {
    if (j >= num_lfs()) throw DomainError("LF index out of range");
    names.push_back(lf_names_[j]);
  }
  std::vector<int> entries;
  entries.reserve(num_samples_ * lf_indices.size());
  for (std::size_t i = 0; i < num_samples_; ++i) {
    for (auto j : lf_indices) entries.push_back(entries_[i * num_lfs() + j]);
  }
  return LabelMatrix(std::move(names), num_classes_, std::move(entries));
}

void GroundTruth::check_against(const LabelMatrix& m) const {
  if (labels.size() != m.num_samples()) {
    throw DomainError("ground truth has " + std::to_string(labels.size()) + " labels for " +
                      std::to_string(m.num_samples()) + " samples");
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 1 || labels[i] > m.num_classes()) {
      throw DomainError("true label " + std::to_string(labels[i]) + " at sample " +
                        std::to_string(i) + " is outside 1.." + std::to_string(m.num_classes()));
    }
  }
}

MatrixFormat format_for_path(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".json" ? MatrixFormat::json : MatrixFormat::csv;
}

LoadedMatrix load_label_matrix(std::istream& source, MatrixFormat format) {
  return format == MatrixFormat::json ? load_json(source) : load_csv(source);
}

LoadedMatrix load_label_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::filesystem::filesystem_error("cannot open input file", path,
                                                   std::make_error_code(std::errc::no_such_file_or_directory));
  return load_label_matrix(in, format_for_path(path));
}

void write_label_matrix(std::ostream& out, const LabelMatrix& m, MatrixFormat format,
                        const GroundTruth* truth) {
  if (format == MatrixFormat::csv) {
    out << "#classes=" << m.num_classes() << '\n';
    for (std::size_t j = 0; j < m.num_lfs(); ++j) out << (j ? "," : "") << m.lf_names()[j];
    out << '\n';
    for (std::size_t i = 0; i < m.num_samples(); ++i) {
      const auto r = m.row(i);
      for (std::size_t j = 0; j < r.size(); ++j) out << (j ? "," : "") << r[j];
      out << '\n';
    }
    return;
  }
  json doc;
  doc["lf_names"] = m.lf_names();
  doc["num_classes"] = m.num_classes();
  json rows = json::array();
  for (std::size_t i = 0; i < m.num_samples(); ++i) {
    const auto r = m.row(i);
    rows.push_back(std::vector<int>(r.begin(), r.end()));
  }
  doc["entries"] = std::move(rows);
  if (truth) doc["true_labels"] = truth->labels;
  out << doc.dump() << '\n';
}

GroundTruth load_ground_truth(std::istream& source, MatrixFormat format) {
  GroundTruth truth;
  if (format == MatrixFormat::json) {
    json doc;
    try {
      doc = json::parse(source);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    const json* labels = &doc;
    if (doc.is_object()) {
      if (!doc.contains("true_labels")) throw ParseError("missing array field 'true_labels'");
      labels = &doc["true_labels"];
    }
    if (!labels->is_array()) throw ParseError("true labels are not an array");
    for (std::size_t i = 0; i < labels->size(); ++i) {
      if (!(*labels)[i].is_number_integer()) {
        throw ParseError("true label " + std::to_string(i) + " is not an integer");
      }
      truth.labels.push_back((*labels)[i].get<int>());
    }
    return truth;
  }
  std::string line;
  bool header = false;
  std::size_t row = 0;
  while (std::getline(source, line)) {
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (!header) {
      header = true;
      continue;
    }
    int v = 0;
    if (!parse_int(t, v)) throw ParseError(where(row, 0) + ": non-integer true label '" + t + "'");
    truth.labels.push_back(v);
    ++row;
  }
  return truth;
}

GroundTruth load_ground_truth(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::filesystem::filesystem_error("cannot open truth file", path,
                                                   std::make_error_code(std::errc::no_such_file_or_directory));
  return load_ground_truth(in, format_for_path(path));
}

void write_ground_truth_csv(std::ostream& out, const GroundTruth& truth) {
  out << "true_label\n";
  for (int y : truth.labels) out << y << '\n';
}

double coverage(const LabelMatrix& m, std::size_t lf_index) {
  if (lf_index >= m.num_lfs()) throw DomainError("LF index out of range");
  std::size_t voted = 0;
  for (std::size_t i = 0; i < m.num_samples(); ++i) {
    if (m.entries()[i * m.num_lfs() + lf_index] != kAbstain) ++voted;
  }
  return static_cast<double>(voted) / static_cast<double>(m.num_samples());
}

}  // namespace advcurate
