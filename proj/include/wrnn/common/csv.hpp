#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace wrnn::csv {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a header column, or throws MissingColumn.
  std::size_t column(std::string_view name) const;
};

/// Parses RFC-4180 text: quoted fields, doubled quotes, CRLF or LF endings.
Table parse(std::string_view text);
Table read(const std::filesystem::path& path);

/// Shortest text that round-trips the double exactly.
std::string format_double(double value);

/// Quotes a field only when it needs it.
std::string escape(std::string_view field);

/// Writes a header plus rows with LF endings. Throws IoError.
void write(const std::filesystem::path& path, const std::vector<std::string>& header,
           const std::vector<std::vector<std::string>>& rows);

/// Parses a whole cell as a double. Throws ParseError naming the context.
double parse_double(std::string_view cell, const std::string& context);

/// "index,value" file holding one coefficient band.
void write_band(const std::filesystem::path& path, const std::vector<double>& band);
std::vector<double> read_band(const std::filesystem::path& path);

}  // namespace wrnn::csv
