#include "lsed/io.hpp"

#include <cstdio>
#include <fstream>

#include "lsed/errors.hpp"

namespace lsed {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("write_csv: cannot open " + path);
  auto line = [&f](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) f << ',';
      f << csv_escape(cells[i]);
    }
    f << "\r\n";
  };
  line(header);
  for (const auto& row : rows) line(row);
  if (!f) throw NumericalError("write_csv: write failed for " + path);
}

void write_json(const std::string& path, const Json& doc) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("write_json: cannot open " + path);
  f << doc.dump(2) << '\n';
  if (!f) throw NumericalError("write_json: write failed for " + path);
}

Json read_json(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("read_json: cannot open " + path);
  Json doc;
  try {
    doc = Json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("read_json: " + path + ": " + e.what());
  }
  return doc;
}

}  // namespace lsed
