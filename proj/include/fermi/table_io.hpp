#pragma once

#include <filesystem>
#include <istream>
#include <vector>

#include "fermi/cosmology.hpp"

namespace fermi {

/// Two-column CSV with header `t,a`. Throws ValidationError on malformed rows.
std::vector<ScaleSample> read_samples_csv(std::istream& in);

/// JSON array of [t, a] pairs.
std::vector<ScaleSample> read_samples_json(std::istream& in);

/// Dispatches on the extension: `.json` reads JSON, anything else CSV.
std::vector<ScaleSample> load_samples(const std::filesystem::path& path);

}  // namespace fermi
