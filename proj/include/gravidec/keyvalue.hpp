#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace gravidec {

/// Flat `key = value` text with optional `[section]` headers, as used by run
/// configurations and scenario files. Keys outside any section belong to the
/// section named "". Comments start with ';'.
struct KeyValueFile {
  using Entries = std::vector<std::pair<std::string, std::string>>;

  std::vector<std::string> section_order;
  std::map<std::string, Entries> sections;

  const Entries* find(const std::string& section) const;
};

KeyValueFile parse_key_value(std::istream& in);
KeyValueFile load_key_value(const std::filesystem::path& path);

/// Strict decimal parse; throws InvalidArgument mentioning `what` otherwise.
double parse_double(const std::string& text, const std::string& what);

}  // namespace gravidec
