#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace out {

using json = nlohmann::ordered_json;

// Floats use 17 significant digits; non-finite values become the strings
// "inf", "-inf" and "nan".
std::string number(double x);
std::string dump(const json& j, int indent = -1);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
};
std::string to_csv(const Table& t);

// Where to write: explicit path (relative ones go under $RSYM_OUTPUT_DIR when
// set), else $RSYM_OUTPUT_DIR/default_name, else stdout. Returns the path or "-".
std::string resolve_path(const std::string& explicit_path, const std::string& default_name);
void emit(const std::string& content, const std::string& path);

}  // namespace out
