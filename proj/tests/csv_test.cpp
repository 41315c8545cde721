#include "lsasim/csv.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "lsasim/error.hpp"

namespace lsasim::csv {
namespace {

TEST(Csv, SplitHandlesQuotesAndWhitespace) {
  const auto f = split_line(R"(a, "b,c" ,"say ""hi""",)");
  ASSERT_EQ(f.size(), 4u);
  EXPECT_EQ(f[0], "a");
  EXPECT_EQ(f[1], "b,c");
  EXPECT_EQ(f[2], "say \"hi\"");
  EXPECT_EQ(f[3], "");
}

TEST(Csv, SkipsCommentsAndBlankLines) {
  std::istringstream in("# header comment\nx,y\n\n1,2\n# mid\n3,4\n");
  const auto t = Table::parse(in, "t.csv", {"x", "y"});
  ASSERT_EQ(t.rows().size(), 2u);
  EXPECT_EQ(t.rows()[1].line, 6u);
  EXPECT_DOUBLE_EQ(t.number(t.rows()[1], "y"), 4.0);
}

TEST(Csv, MissingColumnIsNamed) {
  std::istringstream in("x,z\n1,2\n");
  try {
    (void)Table::parse(in, "t.csv", {"x", "y"});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::Input);
    EXPECT_NE(std::string(e.what()).find("'y'"), std::string::npos);
  }
}

TEST(Csv, FieldCountMismatchNamesLine) {
  std::istringstream in("x,y\n1,2\n3\n");
  try {
    (void)Table::parse(in, "t.csv", {"x"});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("t.csv:3"), std::string::npos) << e.what();
  }
}

TEST(Csv, BadNumberNamesLineAndColumn) {
  std::istringstream in("x,y\n1,2\n3,abc\n");
  const auto t = Table::parse(in, "t.csv", {"x", "y"});
  EXPECT_NO_THROW((void)t.number(t.rows()[0], "y"));
  try {
    (void)t.number(t.rows()[1], "y");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("t.csv:3"), std::string::npos) << msg;
    EXPECT_NE(msg.find("'y'"), std::string::npos) << msg;
  }
}

TEST(Csv, FormatNumberRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 2.8284271247461903, 1e-300, 12345678.9}) {
    EXPECT_EQ(std::stod(format_number(v)), v);
  }
}

}  // namespace
}  // namespace lsasim::csv
