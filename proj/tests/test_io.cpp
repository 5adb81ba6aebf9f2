#include <gtest/gtest.h>

#include <sstream>

#include "ecoidx/io.hpp"
#include "ecoidx/report.hpp"

namespace ecoidx {
namespace {

std::vector<EdgeEntry> parse(const std::string& text) {
  std::istringstream in(text);
  return io::read_edge_list(in);
}

TEST(EdgeListCsv, ReadsWithAndWithoutWeights) {
  auto plain = parse("source,target\na,b\nb,c\n");
  ASSERT_EQ(plain.size(), 2u);
  EXPECT_FALSE(plain[0].weight);

  auto weighted = parse("source,target,weight\r\na,b,2.5\nb,c,\n");
  ASSERT_EQ(weighted.size(), 2u);
  EXPECT_DOUBLE_EQ(*weighted[0].weight, 2.5);
  EXPECT_FALSE(weighted[1].weight);
}

TEST(EdgeListCsv, QuotedIds) {
  auto e = parse("source,target\n\"Acme, Inc.\",\"The \"\"Hub\"\"\"\n");
  ASSERT_EQ(e.size(), 1u);
  EXPECT_EQ(e[0].source, "Acme, Inc.");
  EXPECT_EQ(e[0].target, "The \"Hub\"");
}

TEST(EdgeListCsv, ErrorsNameTheLine) {
  try {
    parse("a;b\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    EXPECT_NE(std::string(e.what()).find("line 1"), std::string::npos);
  }
  try {
    parse("source,target\na,b\nc\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  try {
    parse("source,target,weight\na,b,heavy\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_THROW(parse(""), Error);
}

TEST(EdgeListCsv, WriteThenReadReproducesGraph) {
  auto g = from_edge_list({{"x,1", "y", 2.0}, {"y", "z", 0.5}}).graph;
  auto text = io::edge_list_string(g);
  std::istringstream in(text);
  EXPECT_EQ(from_edge_list(io::read_edge_list(in)).graph, g);
}

TEST(NodeList, SkipsBlankLines) {
  std::istringstream in("a\n\n  b \n");
  EXPECT_EQ(io::read_node_list(in), (std::vector<std::string>{"a", "b"}));
}

TEST(SurveyMetaJson, ParsesAndRejects) {
  auto s = report::survey_from_text(R"({"respondents": 35, "max_reportable": 24, "avg_collaborations": 19.5})");
  EXPECT_EQ(s.respondents, 35u);
  EXPECT_EQ(s.max_reportable, 24u);
  EXPECT_DOUBLE_EQ(s.avg_collaborations, 19.5);
  EXPECT_THROW(report::survey_from_text(R"({"respondents": 3})"), Error);
  EXPECT_THROW(report::survey_from_text("{"), Error);
}

TEST(ReportFormatting, TwelveSignificantDigits) {
  EXPECT_EQ(report::format12(2.0 / 3.0), "0.666666666667");
  EXPECT_EQ(report::Json(report::round12(2.0 / 3.0)).dump(), "0.666666666667");
}

}  // namespace
}  // namespace ecoidx
