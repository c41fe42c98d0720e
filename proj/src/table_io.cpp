#include "fermi/table_io.hpp"

#include <charconv>
#include <fstream>
#include <string>

#include <json.hpp>

#include "fermi/errors.hpp"

namespace fermi {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_number(const std::string& field, std::size_t row) {
    const std::string f = trim(field);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), value);
    if (f.empty() || ec != std::errc() || ptr != f.data() + f.size()) {
        throw ValidationError("table: row " + std::to_string(row) + ": cannot parse '" + f + "'",
                              row);
    }
    return value;
}

}  // namespace

std::vector<ScaleSample> read_samples_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || trim(line) != "t,a") {
        throw ValidationError("table: expected header 't,a'", 0);
    }
    std::vector<ScaleSample> samples;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const auto comma = line.find(',');
        const std::size_t row = samples.size();
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
            throw ValidationError("table: row " + std::to_string(row) + " needs two columns", row);
        }
        samples.push_back({parse_number(line.substr(0, comma), row),
                           parse_number(line.substr(comma + 1), row)});
    }
    return samples;
}

std::vector<ScaleSample> read_samples_json(std::istream& in) {
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("table: invalid JSON: ") + e.what(), 0);
    }
    if (!doc.is_array()) throw ValidationError("table: JSON root must be an array", 0);
    std::vector<ScaleSample> samples;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& pair = doc[i];
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
            throw ValidationError("table: entry " + std::to_string(i) + " must be [t, a]", i);
        }
        samples.push_back({pair[0].get<double>(), pair[1].get<double>()});
    }
    return samples;
}

std::vector<ScaleSample> load_samples(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("table: cannot open " + path.string());
    if (path.extension() == ".json") return read_samples_json(in);
    return read_samples_csv(in);
}

}  // namespace fermi
