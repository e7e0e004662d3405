#include "dicke/io.hpp"

#include <cstdio>
#include <stdexcept>

namespace dicke {

std::string format_g17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint64_t fnv1a64(std::string_view s)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

CsvWriter::CsvWriter(const std::string& path,
                     const std::vector<std::pair<std::string, std::string>>& metadata,
                     const std::vector<std::string>& columns)
    : out_(path), n_columns_(columns.size())
{
    if (!out_) throw std::runtime_error("CsvWriter: cannot open " + path);
    for (const auto& [key, value] : metadata) out_ << "# " << key << ": " << value << "\n";
    for (size_t i = 0; i < columns.size(); ++i)
        out_ << columns[i] << (i + 1 < columns.size() ? "," : "\n");
}

void CsvWriter::row(const std::vector<double>& values)
{
    if (values.size() != n_columns_)
        throw std::runtime_error("CsvWriter: row width does not match the column header");
    for (size_t i = 0; i < values.size(); ++i)
        out_ << format_g17(values[i]) << (i + 1 < values.size() ? "," : "\n");
}

void CsvWriter::raw_row(const std::vector<std::string>& cells)
{
    if (cells.size() != n_columns_)
        throw std::runtime_error("CsvWriter: row width does not match the column header");
    for (size_t i = 0; i < cells.size(); ++i)
        out_ << cells[i] << (i + 1 < cells.size() ? "," : "\n");
}

}  // namespace dicke
