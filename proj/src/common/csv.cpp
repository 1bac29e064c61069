#include "wrnn/common/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "wrnn/common/error.hpp"

namespace wrnn::csv {

std::size_t Table::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  fail(ErrorCode::MissingColumn, "missing column '" + std::string(name) + "'");
}

Table parse(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  std::size_t i = 0;

  auto end_record = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
    // a blank line is not a record
    if (!(record.size() == 1 && record[0].empty())) records.push_back(std::move(record));
    record.clear();
  };

  while (i < text.size()) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"' && !field_started) {
      in_quotes = true;
      field_started = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
      field_started = false;
    } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
      end_record();
      ++i;
    } else if (c == '\n') {
      end_record();
    } else {
      field.push_back(c);
      field_started = true;
    }
    ++i;
  }
  if (in_quotes) fail(ErrorCode::ParseError, "unterminated quoted field");
  if (field_started || !field.empty() || !record.empty()) end_record();

  Table table;
  if (records.empty()) fail(ErrorCode::EmptySeries, "csv has no header row");
  table.header = std::move(records.front());
  table.rows.assign(std::make_move_iterator(records.begin() + 1),
                    std::make_move_iterator(records.end()));
  return table;
}

Table read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write(const std::filesystem::path& path, const std::vector<std::string>& header,
           const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::IoError, "cannot write " + path.string());
  auto write_record = [&](const std::vector<std::string>& record) {
    for (std::size_t i = 0; i < record.size(); ++i) {
      if (i) out << ',';
      out << escape(record[i]);
    }
    out << '\n';
  };
  write_record(header);
  for (const auto& row : rows) write_record(row);
  if (!out) fail(ErrorCode::IoError, "write failed for " + path.string());
}

double parse_double(std::string_view cell, const std::string& context) {
  const auto* first = cell.data();
  const auto* last = cell.data() + cell.size();
  if (first != last && *first == '+') ++first;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) {
    fail(ErrorCode::ParseError, context + ": cannot parse '" + std::string(cell) + "'");
  }
  return v;
}

void write_band(const std::filesystem::path& path, const std::vector<double>& band) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(band.size());
  for (std::size_t i = 0; i < band.size(); ++i) rows.push_back({std::to_string(i), format_double(band[i])});
  write(path, {"index", "value"}, rows);
}

std::vector<double> read_band(const std::filesystem::path& path) {
  const Table table = read(path);
  const std::size_t col = table.column("value");
  std::vector<double> band;
  band.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string context = path.string() + " row " + std::to_string(r + 1);
    if (col >= row.size()) fail(ErrorCode::ParseError, context + ": missing value");
    band.push_back(parse_double(row[col], context));
  }
  return band;
}

}  // namespace wrnn::csv
