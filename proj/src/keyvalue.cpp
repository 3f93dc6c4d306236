#include "gravidec/keyvalue.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <fstream>

#include "gravidec/error.hpp"

namespace gravidec {

const KeyValueFile::Entries* KeyValueFile::find(const std::string& section) const {
  auto it = sections.find(section);
  return it == sections.end() ? nullptr : &it->second;
}

KeyValueFile parse_key_value(std::istream& in) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ParseError(e.message(), e.line());
  }

  KeyValueFile out;
  auto touch = [&](const std::string& name) -> KeyValueFile::Entries& {
    if (!out.sections.count(name)) out.section_order.push_back(name);
    return out.sections[name];
  };
  for (const auto& [key, node] : tree) {
    if (node.empty()) {
      touch("").emplace_back(key, node.data());
    } else {
      auto& entries = touch(key);
      for (const auto& [k, v] : node) entries.emplace_back(k, v.data());
    }
  }
  return out;
}

KeyValueFile load_key_value(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  return parse_key_value(in);
}

double parse_double(const std::string& text, const std::string& what) {
  auto first = text.find_first_not_of(" \t");
  auto last = text.find_last_not_of(" \t");
  if (first == std::string::npos) throw InvalidArgument(what + ": empty value");
  const char* b = text.data() + first;
  const char* e = text.data() + last + 1;
  if (*b == '+') ++b;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(b, e, value);
  if (ec != std::errc() || ptr != e)
    throw InvalidArgument(what + ": not a number: '" + text + "'");
  return value;
}

}  // namespace gravidec
