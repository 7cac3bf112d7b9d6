#pragma once

// File formats: spaces and subcategory specifications as JSON documents,
// closure tables as canonical JSON exports.  Output is byte-stable: points
// sorted, opens sorted by (cardinality, lexicographic), object keys sorted.

#include <filesystem>
#include <string>

#include "regclose/closure.hpp"
#include "regclose/finspace.hpp"
#include "regclose/subcat.hpp"

namespace regclose {

FinSpace space_from_json_text(const std::string& text);
std::string space_to_json_text(const FinSpace& x);
FinSpace read_space_file(const std::filesystem::path& path);
void write_space_file(const std::filesystem::path& path, const FinSpace& x);

SubcatSpec subcat_from_json_text(const std::string& text, const std::filesystem::path& base_dir);
SubcatSpec read_subcat_file(const std::filesystem::path& path);

/// Resolves "all" | "t0" | "t1" | "discrete" | "indiscrete" |
/// "seh:<space-file>" | a path to a subcategory JSON file.
SubcatSpec resolve_subcat(const std::string& name, const std::filesystem::path& base_dir = ".");

std::string table_to_json_text(const ClosureOperatorTable& t);

}  // namespace regclose
