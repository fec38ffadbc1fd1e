#ifndef INTGOF_IO_HPP
#define INTGOF_IO_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace intgof {

/// Numeric input with the 1-based source line of every value, so
/// validation errors can point at the offending line.
struct InputData {
    std::vector<double> values;
    std::vector<std::size_t> lines;
};

/// One value per line; blank lines and '#' comments are skipped.
InputData read_values_file(const std::string& path);

/// Values from the named column of a CSV file with a header row.
InputData read_csv_column(const std::string& path, const std::string& column);

} // namespace intgof

#endif
