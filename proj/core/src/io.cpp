#include "sdn/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sdn/errors.hpp"

namespace sdn::io {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(trim(cur));
  return out;
}

bool parse_double(const std::string& s, double& v) {
  if (s.empty()) return false;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (*first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  return res.ec == std::errc() && res.ptr == last;
}

bool parse_index(const std::string& s, Index& v) {
  if (s.empty()) return false;
  long long tmp = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), tmp);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) return false;
  v = static_cast<Index>(tmp);
  return true;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace

DenseCsv read_dense_csv(std::istream& in, const std::optional<std::string>& missing_sentinel,
                        std::vector<std::pair<Index, Index>>* missing) {
  DenseCsv out;
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  auto is_missing = [&](const std::string& f) { return f.empty() || (missing_sentinel && f == *missing_sentinel); };
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    std::vector<double> vals(fields.size(), 0.0);
    std::size_t bad = fields.size();
    for (std::size_t k = 0; k < fields.size(); ++k) {
      if (is_missing(fields[k])) continue;
      if (!parse_double(fields[k], vals[k])) {
        bad = k;
        break;
      }
    }
    if (bad < fields.size()) {
      if (rows.empty() && out.header.empty()) {
        out.header = fields;
        width = fields.size();
        continue;
      }
      throw IoError("malformed numeric field '" + fields[bad] + "' on line " + std::to_string(line_no));
    }
    if (width == 0) width = fields.size();
    if (fields.size() != width) {
      throw IoError("line " + std::to_string(line_no) + " has " + std::to_string(fields.size()) +
                    " fields, expected " + std::to_string(width));
    }
    for (std::size_t k = 0; k < fields.size(); ++k) {
      if (!is_missing(fields[k])) continue;
      if (!missing) throw IoError("missing value on line " + std::to_string(line_no));
      missing->emplace_back(static_cast<Index>(rows.size()), static_cast<Index>(k));
    }
    rows.push_back(std::move(vals));
  }
  if (rows.empty()) throw IoError("no numeric rows found");
  out.values.resize(static_cast<Index>(rows.size()), static_cast<Index>(width));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < width; ++j) out.values(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  }
  return out;
}

DenseCsv read_dense_csv_file(const std::string& path, const std::optional<std::string>& missing_sentinel,
                             std::vector<std::pair<Index, Index>>* missing) {
  auto in = open_in(path);
  try {
    return read_dense_csv(in, missing_sentinel, missing);
  } catch (const IoError& e) {
    throw IoError(path + ": " + e.what());
  }
}

void write_dense_csv(std::ostream& out, const MatrixRef& m, const std::vector<std::string>& header) {
  if (!header.empty()) {
    for (std::size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
    out << '\n';
  }
  std::string line;
  for (Index i = 0; i < m.rows(); ++i) {
    line.clear();
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) line.push_back(',');
      line += format_double(m(i, j));
    }
    line.push_back('\n');
    out << line;
  }
}

void write_dense_csv_file(const std::string& path, const MatrixRef& m, const std::vector<std::string>& header) {
  auto out = open_out(path);
  write_dense_csv(out, m, header);
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::vector<Entry> read_coordinate_csv(std::istream& in) {
  std::vector<Entry> entries;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto f = split_fields(line);
    if (!header_seen) {
      header_seen = true;
      if (f.size() == 3 && f[0] == "row" && f[1] == "col" && f[2] == "value") continue;
      throw IoError("coordinate CSV must start with the header row,col,value");
    }
    Entry e;
    if (f.size() != 3 || !parse_index(f[0], e.row) || !parse_index(f[1], e.col) || !parse_double(f[2], e.value)) {
      throw IoError("malformed coordinate entry on line " + std::to_string(line_no));
    }
    if (e.row < 0 || e.col < 0) throw IoError("negative index on line " + std::to_string(line_no));
    entries.push_back(e);
  }
  return entries;
}

std::vector<Entry> read_coordinate_csv_file(const std::string& path) {
  auto in = open_in(path);
  try {
    return read_coordinate_csv(in);
  } catch (const IoError& e) {
    throw IoError(path + ": " + e.what());
  }
}

void write_coordinate_csv(std::ostream& out, const std::vector<Entry>& entries) {
  out << "row,col,value\n";
  for (const Entry& e : entries) out << e.row << ',' << e.col << ',' << format_double(e.value) << '\n';
}

Vector read_vector_file(const std::string& path) {
  const DenseCsv csv = read_dense_csv_file(path);
  if (csv.values.cols() == 1) return csv.values.col(0);
  if (csv.values.rows() == 1) return csv.values.row(0).transpose();
  throw IoError(path + ": expected a single row or column of numbers");
}

namespace {

nlohmann::json parse_json_file(const std::string& path) {
  auto in = open_in(path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path + ": " + e.what());
  }
}

std::vector<Index> to_indices(const nlohmann::json& j, const std::string& path) {
  if (!j.is_array()) throw IoError(path + ": expected an array of indices");
  std::vector<Index> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw IoError(path + ": indices must be integers");
    out.push_back(v.get<Index>());
  }
  return out;
}

}  // namespace

std::vector<Index> read_index_json_file(const std::string& path) {
  return to_indices(parse_json_file(path), path);
}

Partition read_partition_json_file(const std::string& path, Index dim) {
  const nlohmann::json j = parse_json_file(path);
  if (!j.is_array()) throw IoError(path + ": expected an array of index arrays");
  std::vector<std::vector<Index>> blocks;
  for (const auto& b : j) blocks.push_back(to_indices(b, path));
  return Partition(dim, std::move(blocks));
}

std::string partition_to_json(const Partition& part) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& b : part.blocks()) j.push_back(b);
  return j.dump();
}

}  // namespace sdn::io
