#include <sstream>

#include <gtest/gtest.h>

#include "bugsna/csv.hpp"
#include "bugsna/time.hpp"

namespace bugsna {
namespace {

TEST(Time, ParsesZuluAndOffsets) {
  EXPECT_EQ(format_timestamp(parse_timestamp("2010-05-02T10:00:00Z")), "2010-05-02T10:00:00Z");
  EXPECT_EQ(format_timestamp(parse_timestamp("2010-05-02T10:00:00+02:00")), "2010-05-02T08:00:00Z");
  EXPECT_EQ(format_timestamp(parse_timestamp("2010-05-02T23:30:00-01:00")), "2010-05-03T00:30:00Z");
  EXPECT_EQ(format_timestamp(parse_timestamp("2010-05-02 10:00:00.750Z")), "2010-05-02T10:00:00Z");
  EXPECT_EQ(format_timestamp(parse_timestamp("2010-05-02")), "2010-05-02T00:00:00Z");
}

TEST(Time, RejectsGarbage) {
  EXPECT_THROW(parse_timestamp("2010-02-30T00:00:00Z"), std::invalid_argument);
  EXPECT_THROW(parse_timestamp("2010-05-02T10:00"), std::invalid_argument);
  EXPECT_THROW(parse_timestamp("yesterday"), std::invalid_argument);
  EXPECT_THROW(parse_timestamp("2010-05-02T10:00:00Q"), std::invalid_argument);
  EXPECT_THROW(parse_day("2010-5-2"), std::invalid_argument);
}

TEST(Time, InclusiveDayCount) {
  EXPECT_EQ(inclusive_day_count(parse_day("2010-01-01"), parse_day("2011-12-04")), 703);
  EXPECT_EQ(inclusive_day_count(parse_day("2010-01-01"), parse_day("2010-01-01")), 1);
}

TEST(Csv, QuotedFieldsAndEmbeddedNewlines) {
  std::istringstream in("a,\"b,c\",\"say \"\"hi\"\"\"\r\n\n\"multi\nline\",x,y\n");
  CsvReader reader(in);
  CsvRow row;
  ASSERT_TRUE(reader.next(row));
  EXPECT_EQ(row.line, 1u);
  EXPECT_EQ(row.fields, (std::vector<std::string>{"a", "b,c", "say \"hi\""}));
  ASSERT_TRUE(reader.next(row));
  EXPECT_EQ(row.line, 3u);
  EXPECT_EQ(row.fields, (std::vector<std::string>{"multi\nline", "x", "y"}));
  EXPECT_FALSE(reader.next(row));
}

TEST(Csv, UnterminatedQuoteIsRecordError) {
  std::istringstream in("\"open,x\n");
  CsvReader reader(in);
  CsvRow row;
  ASSERT_TRUE(reader.next(row));
  EXPECT_FALSE(row.error.empty());
}

TEST(Csv, EscapeRoundTrip) {
  const std::vector<std::string> fields = {"plain", "with,comma", "with \"quote\"", "line\nbreak", ""};
  std::ostringstream out;
  write_csv_row(out, fields);
  std::istringstream in(out.str());
  CsvReader reader(in);
  CsvRow row;
  ASSERT_TRUE(reader.next(row));
  EXPECT_EQ(row.fields, fields);
}

TEST(Csv, FormatDoubleRoundTrips) {
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(0.0), "0");
  EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
}

}  // namespace
}  // namespace bugsna
