#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "deontic/model.hpp"

namespace deontic {

/// Reads a model document: keys `worlds`, `valuation`, `N_O`, `N_P`.
/// Throws std::runtime_error on malformed JSON, ModelError on invalid content.
ModelDescription parse_model_description(std::string_view json_text);
NeighbourhoodModel parse_model(std::string_view json_text);

/// Loads `path`, falling back to `path` + ".json".
NeighbourhoodModel load_model(const std::filesystem::path& path);

std::string model_to_json(const NeighbourhoodModel& m, int indent = 2);

/// Returns `p` if it exists, else `p` with ".json" appended if that exists,
/// else throws std::runtime_error.
std::filesystem::path resolve_with_extension(const std::filesystem::path& p,
                                             std::string_view ext);

std::string read_text_file(const std::filesystem::path& p);

}  // namespace deontic
