#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace out {

std::string number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void write(std::string& s, const json& j, int indent, int depth) {
  auto newline = [&](int d) {
    if (indent < 0) return;
    s += '\n';
    s.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case json::value_t::number_float: {
      double x = j.get<double>();
      s += std::isfinite(x) ? number(x) : "\"" + number(x) + "\"";
      return;
    }
    case json::value_t::object: {
      if (j.empty()) {
        s += "{}";
        return;
      }
      s += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) s += ',';
        first = false;
        newline(depth + 1);
        s += json(it.key()).dump();
        s += indent < 0 ? ":" : ": ";
        write(s, it.value(), indent, depth + 1);
      }
      newline(depth);
      s += '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        s += "[]";
        return;
      }
      s += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) s += ',';
        first = false;
        newline(depth + 1);
        write(s, v, indent, depth + 1);
      }
      newline(depth);
      s += ']';
      return;
    }
    default:
      s += j.dump();
  }
}

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_number_float()) return number(v.get<double>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  return v.dump();
}

}  // namespace

std::string dump(const json& j, int indent) {
  std::string s;
  write(s, j, indent, 0);
  return s;
}

std::string to_csv(const Table& t) {
  std::string s;
  for (std::size_t i = 0; i < t.columns.size(); ++i) s += (i ? "," : "") + t.columns[i];
  s += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + csv_cell(row[i]);
    s += '\n';
  }
  return s;
}

std::string resolve_path(const std::string& explicit_path, const std::string& default_name) {
  const char* env = std::getenv("RSYM_OUTPUT_DIR");
  std::string dir = env ? env : "";
  if (explicit_path == "-") return "-";
  if (!explicit_path.empty()) {
    std::filesystem::path p(explicit_path);
    if (p.is_relative() && !dir.empty()) return (std::filesystem::path(dir) / p).string();
    return explicit_path;
  }
  if (!dir.empty()) return (std::filesystem::path(dir) / default_name).string();
  return "-";
}

void emit(const std::string& content, const std::string& path) {
  if (path == "-") {
    std::cout << content << std::flush;
    return;
  }
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << content;
  if (!f) throw std::runtime_error("failed writing " + path);
}

}  // namespace out
