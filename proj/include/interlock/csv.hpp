#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace interlock::csv {

using Row = std::vector<std::string>;

// Reads RFC 4180 style records: comma separated, optional double-quote
// quoting with "" as the escaped quote, LF or CRLF line endings.
class Reader {
 public:
  explicit Reader(std::istream& in);

  // Returns false at end of input. Throws std::runtime_error on an
  // unterminated quoted field.
  bool next(Row& row);

  // 1-based physical line on which the last returned record started.
  std::size_t line() const { return record_line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 1;
  std::size_t record_line_ = 0;
};

// Quotes a field only when it contains a comma, quote, CR or LF.
std::string escape(std::string_view field);

void write_row(std::ostream& out, const Row& row);

}  // namespace interlock::csv
