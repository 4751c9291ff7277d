#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "steadycheck/core.hpp"

namespace steadycheck {

enum class HeaderMode { Auto, Present, Absent };
enum class Delimiter { Auto, Comma, Whitespace };

struct IngestOptions {
  // Column selectors: a header name, or a 1-based position.
  std::optional<std::string> value_column;  // default: last column
  std::optional<std::string> time_column;   // default: first column when there are two or more
  bool synthesize_time = false;             // ignore any time column and stamp 1..N
  HeaderMode header = HeaderMode::Auto;     // auto: header iff the first row is not all numeric
  Delimiter delimiter = Delimiter::Auto;    // auto: comma if the first row has one
  // Drop text after the final newline; a writer may still be appending it.
  bool complete_lines_only = false;
};

struct IngestResult {
  TimeSeries series;
  std::string value_column;
  std::optional<std::string> time_column;
  std::size_t rows = 0;
};

// Comma- or whitespace-delimited table. Blank lines and lines starting with
// '#' are skipped. Throws FileNotFound, ParseError (1-based line number in
// position()), MissingColumn, and any validate_series error.
IngestResult ingest(const std::string& path, const IngestOptions& options = {});
IngestResult ingest_text(std::string_view text, const IngestOptions& options = {});

}  // namespace steadycheck
