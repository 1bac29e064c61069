#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>

#include "wrnn/common/csv.hpp"
#include "wrnn/common/error.hpp"
#include "wrnn/timeseries/timeseries.hpp"

namespace wrnn {
namespace {

// Days since 1970-01-01 for a proleptic Gregorian date (H. Hinnant's algorithm).
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const auto yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool read_int(std::string_view s, std::size_t pos, std::size_t len, int& out) {
  if (pos + len > s.size()) return false;
  for (std::size_t i = pos; i < pos + len; ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  std::from_chars(s.data() + pos, s.data() + pos + len, out);
  return true;
}

std::optional<double> parse_value(std::string_view cell) {
  cell = trim(cell);
  if (cell.empty() || cell == "NA" || cell == "NaN" || cell == "nan" || cell == "null") {
    return std::nullopt;
  }
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::ParseError, "unparseable value '" + std::string(cell) + "'");
  }
  return v;
}

}  // namespace

std::int64_t parse_timestamp(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) fail(ErrorCode::ParseError, "empty timestamp");

  std::int64_t epoch = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), epoch);
  if (ec == std::errc() && ptr == s.data() + s.size()) return epoch;

  int year = 0, month = 0, day = 0, hour = 0, minute = 0, second = 0;
  const auto bad = [&] { fail(ErrorCode::ParseError, "bad timestamp '" + std::string(s) + "'"); };
  if (!read_int(s, 0, 4, year) || s.size() < 10 || s[4] != '-' || !read_int(s, 5, 2, month) ||
      s[7] != '-' || !read_int(s, 8, 2, day)) {
    bad();
  }
  if (month < 1 || month > 12 || day < 1 || day > 31) bad();
  std::size_t pos = 10;
  if (pos < s.size() && (s[pos] == 'T' || s[pos] == ' ')) {
    if (!read_int(s, pos + 1, 2, hour) || pos + 3 >= s.size() || s[pos + 3] != ':' ||
        !read_int(s, pos + 4, 2, minute)) {
      bad();
    }
    pos += 6;
    if (pos < s.size() && s[pos] == ':') {
      if (!read_int(s, pos + 1, 2, second)) bad();
      pos += 3;
      if (pos < s.size() && s[pos] == '.') {
        // sub-second data is truncated to whole seconds
        ++pos;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
      }
    }
  }
  if (hour > 23 || minute > 59 || second > 60) bad();
  std::int64_t offset = 0;
  if (pos < s.size()) {
    if (s[pos] == 'Z' && pos + 1 == s.size()) {
      pos += 1;
    } else if (s[pos] == '+' || s[pos] == '-') {
      int oh = 0, om = 0;
      if (!read_int(s, pos + 1, 2, oh)) bad();
      std::size_t next = pos + 3;
      if (next < s.size() && s[next] == ':') ++next;
      if (next < s.size() && !read_int(s, next, 2, om)) bad();
      if (next < s.size()) next += 2;
      if (next != s.size()) bad();
      offset = (s[pos] == '+' ? 1 : -1) * (oh * 3600 + om * 60);
      pos = s.size();
    } else {
      bad();
    }
  }
  return days_from_civil(year, static_cast<unsigned>(month), static_cast<unsigned>(day)) * 86400 +
         hour * 3600 + minute * 60 + second - offset;
}

TimeSeries load_csv(const std::filesystem::path& path, Channel channel,
                    std::string_view time_column, std::string_view value_column) {
  const csv::Table table = csv::read(path);
  const std::size_t tcol = table.column(time_column);
  const std::size_t vcol = table.column(value_column);
  if (table.rows.empty()) fail(ErrorCode::EmptySeries, path.string() + " has no data rows");

  std::vector<std::int64_t> times;
  std::vector<std::optional<double>> values;
  times.reserve(table.rows.size());
  values.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string where = path.string() + " row " + std::to_string(r + 1);
    if (row.size() <= std::max(tcol, vcol)) {
      fail(ErrorCode::ParseError, where + ": too few fields");
    }
    std::int64_t t = 0;
    try {
      t = parse_timestamp(row[tcol]);
      values.push_back(parse_value(row[vcol]));
    } catch (const Error& e) {
      fail(ErrorCode::ParseError, where + ": " + e.what());
    }
    if (!times.empty() && t <= times.back()) {
      fail(ErrorCode::NonMonotonicTime, where + ": timestamp " + std::to_string(t) +
                                            " does not increase");
    }
    times.push_back(t);
  }

  // step = most frequent spacing, smallest on ties
  std::int64_t step = kDefaultStep;
  if (times.size() > 1) {
    std::map<std::int64_t, std::size_t> counts;
    for (std::size_t i = 1; i < times.size(); ++i) ++counts[times[i] - times[i - 1]];
    std::size_t best = 0;
    for (const auto& [gap, n] : counts) {
      if (n > best) {
        best = n;
        step = gap;
      }
    }
  }

  const std::int64_t t0 = times.front();
  const auto grid_len = static_cast<std::size_t>((times.back() - t0) / step + 1);
  std::vector<std::optional<double>> grid(grid_len);
  for (std::size_t i = 0; i < times.size(); ++i) {
    if ((times[i] - t0) % step != 0) {
      fail(ErrorCode::IrregularSampling, path.string() + " row " + std::to_string(i + 1) +
                                             ": timestamp off the " + std::to_string(step) +
                                             " s grid");
    }
    grid[static_cast<std::size_t>((times[i] - t0) / step)] = values[i];
  }

  // fill short interior gaps, then keep the longest complete segment
  for (std::size_t i = 0; i < grid.size();) {
    if (grid[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < grid.size() && !grid[j]) ++j;
    if (i > 0 && j < grid.size() && j - i <= kMaxFilledGap) {
      const double a = *grid[i - 1];
      const double b = *grid[j];
      const double span = static_cast<double>(j - i + 1);
      for (std::size_t k = i; k < j; ++k) {
        grid[k] = a + (b - a) * static_cast<double>(k - i + 1) / span;
      }
    }
    i = j;
  }
  std::size_t best_start = 0, best_len = 0;
  for (std::size_t i = 0; i < grid.size();) {
    if (!grid[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < grid.size() && grid[j]) ++j;
    if (j - i > best_len) {
      best_len = j - i;
      best_start = i;
    }
    i = j;
  }
  if (best_len == 0) fail(ErrorCode::EmptySeries, path.string() + " has no valid samples");

  std::vector<double> out;
  out.reserve(best_len);
  for (std::size_t k = best_start; k < best_start + best_len; ++k) out.push_back(*grid[k]);
  return TimeSeries(t0 + static_cast<std::int64_t>(best_start) * step, step, std::move(out),
                    channel);
}

void save_csv(const TimeSeries& ts, const std::filesystem::path& path,
              std::string_view value_column) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) {
    rows.push_back({std::to_string(ts.timestamp(k)), csv::format_double(ts[k])});
  }
  csv::write(path, {"timestamp", std::string(value_column)}, rows);
}

}  // namespace wrnn
