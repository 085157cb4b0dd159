#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sdn/applications.hpp"
#include "sdn/localized.hpp"
#include "sdn/types.hpp"

namespace sdn::io {

// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

struct DenseCsv {
  Matrix values;
  std::vector<std::string> header;  // empty if the file had none
};

// Dense CSV, row-major, optional header (detected when the first row is not
// numeric). Empty fields or fields equal to missing_sentinel are reported
// through `missing` when given, otherwise they are an error.
DenseCsv read_dense_csv(std::istream& in, const std::optional<std::string>& missing_sentinel = std::nullopt,
                        std::vector<std::pair<Index, Index>>* missing = nullptr);
DenseCsv read_dense_csv_file(const std::string& path,
                             const std::optional<std::string>& missing_sentinel = std::nullopt,
                             std::vector<std::pair<Index, Index>>* missing = nullptr);
void write_dense_csv(std::ostream& out, const MatrixRef& m, const std::vector<std::string>& header = {});
void write_dense_csv_file(const std::string& path, const MatrixRef& m, const std::vector<std::string>& header = {});

// Coordinate CSV with header row,col,value and zero-based indices.
std::vector<Entry> read_coordinate_csv(std::istream& in);
std::vector<Entry> read_coordinate_csv_file(const std::string& path);
void write_coordinate_csv(std::ostream& out, const std::vector<Entry>& entries);

// A single column (or single row) of numbers.
Vector read_vector_file(const std::string& path);

// JSON array of zero-based indices, or an array of such arrays for partitions.
std::vector<Index> read_index_json_file(const std::string& path);
Partition read_partition_json_file(const std::string& path, Index dim);
std::string partition_to_json(const Partition& part);

}  // namespace sdn::io
