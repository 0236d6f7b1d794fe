#include "magcrit/io.hpp"

#include "magcrit/errors.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#ifndef MAGCRIT_VERSION
#define MAGCRIT_VERSION "unknown"
#endif

namespace magcrit {

namespace {

void write_header(std::ostream& os, const OutputMeta& meta)
{
    os << "# magcrit " << MAGCRIT_VERSION << '\n';
    if (!meta.command.empty()) os << "# command: " << meta.command << '\n';
    for (const auto& [k, v] : meta.config) os << "# " << k << " = " << v << '\n';
    std::time_t now = std::time(nullptr);
    char buf[64];
    if (std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now)))
        os << "# generated: " << buf << '\n';
}

std::ofstream open_output(const std::string& path)
{
    std::ofstream os(path);
    if (!os) throw IoError("cannot open output file: " + path);
    return os;
}

void finish(std::ofstream& os, const std::string& path)
{
    os.flush();
    if (!os) throw IoError("write failed: " + path);
}

} // namespace

std::string format_double(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_csv(const std::string& path, const OutputMeta& meta,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<std::string>>& rows)
{
    std::ofstream os = open_output(path);
    write_header(os, meta);
    for (std::size_t i = 0; i < columns.size(); ++i)
        os << (i ? "," : "") << columns[i];
    os << '\n';
    for (const auto& row : rows) {
        if (row.size() != columns.size())
            throw IoError("csv row width does not match the header: " + path);
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << row[i];
        os << '\n';
    }
    finish(os, path);
}

void write_json(const std::string& path, const OutputMeta& meta, const std::string& payload)
{
    std::ofstream os = open_output(path);
    write_header(os, meta);
    os << payload << '\n';
    finish(os, path);
}

void write_coordinate_matrix(const std::string& path, const OutputMeta& meta,
                             const Eigen::SparseMatrix<double>& m)
{
    std::ofstream os = open_output(path);
    write_header(os, meta);
    os << "# rows cols nnz: " << m.rows() << ' ' << m.cols() << ' ' << m.nonZeros() << '\n';
    for (int k = 0; k < m.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(m, k); it; ++it)
            os << it.row() << ' ' << it.col() << ' ' << format_double(it.value()) << '\n';
    finish(os, path);
}

} // namespace magcrit
