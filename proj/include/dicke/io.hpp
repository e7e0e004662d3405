#ifndef DICKE_IO_HPP
#define DICKE_IO_HPP

#include <cstdint>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace dicke {

/// Shortest round-trippable decimal form (17 significant digits).
std::string format_g17(double v);

/// FNV-1a 64-bit hash; used to fingerprint resolved run configurations.
std::uint64_t fnv1a64(std::string_view s);

/// CSV writer with a '#'-prefixed metadata header block followed by a
/// column-name line. Every numeric cell goes through format_g17, so files
/// are byte-identical across reruns of the same configuration.
class CsvWriter {
public:
    CsvWriter(const std::string& path,
              const std::vector<std::pair<std::string, std::string>>& metadata,
              const std::vector<std::string>& columns);

    void row(const std::vector<double>& values);
    void raw_row(const std::vector<std::string>& cells);

private:
    std::ofstream out_;
    size_t n_columns_;
};

}  // namespace dicke

#endif
