#include "steadycheck/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace steadycheck {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string_view unquote(std::string_view s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string_view> split(std::string_view line, std::optional<char> delim) {
  std::vector<std::string_view> fields;
  if (delim) {
    std::size_t start = 0;
    while (true) {
      const auto pos = line.find(*delim, start);
      fields.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
  } else {
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
      if (i == line.size()) break;
      const std::size_t j = line.find_first_of(" \t\r", i);
      const std::size_t end = j == std::string_view::npos ? line.size() : j;
      fields.push_back(line.substr(i, end - i));
      i = end;
    }
  }
  return fields;
}

std::optional<double> parse_number(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

struct Line {
  std::size_t number;
  std::string_view text;
};

std::size_t resolve_column(const std::string& selector, const std::vector<std::string>& names,
                           std::size_t width) {
  const auto it = std::find(names.begin(), names.end(), selector);
  if (it != names.end()) return static_cast<std::size_t>(it - names.begin());
  if (!selector.empty() && std::all_of(selector.begin(), selector.end(),
                                       [](char c) { return c >= '0' && c <= '9'; })) {
    const std::size_t pos = std::stoul(selector);
    if (pos >= 1 && pos <= width) return pos - 1;
  }
  throw Error(ErrorCode::MissingColumn, "no column matches '" + selector + "'");
}

}  // namespace

IngestResult ingest_text(std::string_view text, const IngestOptions& options) {
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  if (options.complete_lines_only) {
    const auto last_newline = text.rfind('\n');
    text = last_newline == std::string_view::npos ? std::string_view{} : text.substr(0, last_newline + 1);
  }

  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto pos = text.find('\n', start);
    const std::string_view raw =
        text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start);
    ++number;
    const std::string_view t = trim(raw);
    if (!t.empty() && t.front() != '#') lines.push_back({number, t});
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  if (lines.empty()) throw Error(ErrorCode::EmptySeries, "input has no data rows");

  std::optional<char> delim;
  if (options.delimiter == Delimiter::Comma ||
      (options.delimiter == Delimiter::Auto && lines.front().text.find(',') != std::string_view::npos)) {
    delim = ',';
  }

  const auto first_fields = split(lines.front().text, delim);
  bool has_header = options.header == HeaderMode::Present;
  if (options.header == HeaderMode::Auto) {
    has_header = std::any_of(first_fields.begin(), first_fields.end(),
                             [](std::string_view f) { return !parse_number(f); });
  }

  const std::size_t width = first_fields.size();
  std::vector<std::string> names(width);
  for (std::size_t c = 0; c < width; ++c) {
    names[c] = has_header ? std::string(unquote(first_fields[c])) : std::to_string(c + 1);
  }

  const std::size_t value_col =
      options.value_column ? resolve_column(*options.value_column, names, width) : width - 1;
  std::optional<std::size_t> time_col;
  if (!options.synthesize_time) {
    if (options.time_column) {
      time_col = resolve_column(*options.time_column, names, width);
    } else if (width >= 2) {
      time_col = 0;
    }
  }
  if (time_col && *time_col == value_col) time_col.reset();

  std::vector<double> values;
  std::vector<double> times;
  for (std::size_t r = has_header ? 1 : 0; r < lines.size(); ++r) {
    const Line& line = lines[r];
    const auto fields = split(line.text, delim);
    if (fields.size() != width) {
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(line.number) + ": expected " + std::to_string(width) +
                      " fields, found " + std::to_string(fields.size()),
                  line.number);
    }
    const auto v = parse_number(fields[value_col]);
    if (!v) {
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(line.number) + ": '" + std::string(fields[value_col]) +
                      "' is not a number",
                  line.number);
    }
    values.push_back(*v);
    if (time_col) {
      const auto t = parse_number(fields[*time_col]);
      if (!t) {
        throw Error(ErrorCode::ParseError,
                    "line " + std::to_string(line.number) + ": '" + std::string(fields[*time_col]) +
                        "' is not a number",
                    line.number);
      }
      times.push_back(*t);
    }
  }
  if (values.empty()) throw Error(ErrorCode::EmptySeries, "input has a header but no data rows");

  IngestResult out;
  out.series = time_col ? validate_series(values, times) : validate_series(values);
  out.value_column = names[value_col];
  if (time_col) out.time_column = names[*time_col];
  out.rows = values.size();
  return out;
}

IngestResult ingest(const std::string& path, const IngestOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileNotFound, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ingest_text(buffer.str(), options);
}

}  // namespace steadycheck
