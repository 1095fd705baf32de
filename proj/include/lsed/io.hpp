#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace lsed {

using Json = nlohmann::ordered_json;

/// %.17g rendering, round-trip exact for doubles.
std::string format_number(double v);

/// RFC-4180-style quoting: fields containing commas, quotes or newlines are
/// wrapped in double quotes with embedded quotes doubled.
std::string csv_escape(const std::string& field);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

void write_json(const std::string& path, const Json& doc);

Json read_json(const std::string& path);

}  // namespace lsed
