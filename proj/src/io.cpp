#include "intgof/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace intgof {

namespace {

std::string strip(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& token, std::size_t line) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(token, &pos);
        if (pos != token.size()) throw std::invalid_argument(token);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("line " + std::to_string(line) +
                                    ": not a number: '" + token + "'");
    }
}

} // namespace

InputData read_values_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    InputData data;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = strip(line);
        if (line.empty()) continue;
        data.values.push_back(parse_number(line, lineno));
        data.lines.push_back(lineno);
    }
    return data;
}

InputData read_csv_column(const std::string& path, const std::string& column) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    std::string header;
    if (!std::getline(in, header))
        throw std::runtime_error("empty CSV file: " + path);

    std::size_t target = std::string::npos;
    {
        std::stringstream ss(header);
        std::string cell;
        std::size_t idx = 0;
        while (std::getline(ss, cell, ',')) {
            if (strip(cell) == column) {
                target = idx;
                break;
            }
            ++idx;
        }
    }
    if (target == std::string::npos)
        throw std::invalid_argument("CSV file has no column '" + column +
                                    "': " + path);

    InputData data;
    std::string line;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (strip(line).empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::size_t idx = 0;
        bool found = false;
        while (std::getline(ss, cell, ',')) {
            if (idx == target) {
                data.values.push_back(parse_number(strip(cell), lineno));
                data.lines.push_back(lineno);
                found = true;
                break;
            }
            ++idx;
        }
        if (!found)
            throw std::invalid_argument("line " + std::to_string(lineno) +
                                        ": missing column '" + column + "'");
    }
    return data;
}

} // namespace intgof
