#include <gtest/gtest.h>

#include <sstream>

#include "interlock/csv.hpp"

using interlock::csv::Reader;
using interlock::csv::Row;

namespace {

std::vector<Row> read_all(const std::string& text) {
  std::istringstream in(text);
  Reader reader(in);
  std::vector<Row> rows;
  Row row;
  while (reader.next(row)) rows.push_back(row);
  return rows;
}

}  // namespace

TEST(Csv, PlainFieldsAndLineEndings) {
  EXPECT_EQ(read_all("a,b\nc,d\n"), (std::vector<Row>{{"a", "b"}, {"c", "d"}}));
  EXPECT_EQ(read_all("a,b\r\nc,d"), (std::vector<Row>{{"a", "b"}, {"c", "d"}}));
  EXPECT_EQ(read_all("a,,\n"), (std::vector<Row>{{"a", "", ""}}));
  EXPECT_TRUE(read_all("").empty());
}

TEST(Csv, QuotedFields) {
  EXPECT_EQ(read_all("\"a,b\",\"say \"\"hi\"\"\"\n"), (std::vector<Row>{{"a,b", "say \"hi\""}}));
  EXPECT_EQ(read_all("\"two\nlines\",x\n"), (std::vector<Row>{{"two\nlines", "x"}}));
}

TEST(Csv, UnterminatedQuoteThrows) {
  EXPECT_THROW(read_all("\"open,field\n"), std::runtime_error);
}

TEST(Csv, LineNumbersTrackMultilineRecords) {
  std::istringstream in("h\n\"x\ny\"\nz\n");
  Reader reader(in);
  Row row;
  ASSERT_TRUE(reader.next(row));
  EXPECT_EQ(reader.line(), 1u);
  ASSERT_TRUE(reader.next(row));
  EXPECT_EQ(reader.line(), 2u);
  ASSERT_TRUE(reader.next(row));
  EXPECT_EQ(reader.line(), 4u);
}

TEST(Csv, EscapeRoundTrips) {
  EXPECT_EQ(interlock::csv::escape("plain"), "plain");
  EXPECT_EQ(interlock::csv::escape("a,b"), "\"a,b\"");
  EXPECT_EQ(interlock::csv::escape("q\"q"), "\"q\"\"q\"");

  const Row row{"a,b", "q\"q", "line\nbreak", ""};
  std::ostringstream out;
  interlock::csv::write_row(out, row);
  EXPECT_EQ(read_all(out.str()), std::vector<Row>{row});
}
