#ifndef MAGCRIT_IO_HPP
#define MAGCRIT_IO_HPP

#include <Eigen/Sparse>

#include <map>
#include <string>
#include <vector>

namespace magcrit {

/// Metadata emitted as '#' comment lines at the top of every output file;
/// stripping comments leaves pure CSV/JSON.
struct OutputMeta {
    std::string command;                        // resolved subcommand
    std::map<std::string, std::string> config;  // full resolved configuration
};

/// 12-significant-digit decimal rendering used for all numeric output.
std::string format_double(double v);

void write_csv(const std::string& path, const OutputMeta& meta,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<std::string>>& rows);

/// payload must already be serialized JSON (one value).
void write_json(const std::string& path, const OutputMeta& meta, const std::string& payload);

/// Coordinate text dump "row col value", one triplet per line.
void write_coordinate_matrix(const std::string& path, const OutputMeta& meta,
                             const Eigen::SparseMatrix<double>& m);

} // namespace magcrit

#endif
