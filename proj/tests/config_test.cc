#include "bwk/config.h"

#include <gtest/gtest.h>

#include <sstream>

#include "bwk/errors.h"

namespace bwk {
namespace {

ConfigMap Parse(const std::string& text) {
  std::istringstream in(text);
  return ParseConfig(in);
}

TEST(ParseConfig, KeysValuesAndComments) {
  const ConfigMap m = Parse(
      "# experiment\n"
      "\n"
      "generator = stochastic\n"
      "  T=100   # horizon\n"
      "rewards = 0.8, 0.4\n");
  EXPECT_EQ(m.size(), 3u);
  EXPECT_EQ(m.at("generator"), "stochastic");
  EXPECT_EQ(m.at("T"), "100");
  EXPECT_EQ(m.at("rewards"), "0.8, 0.4");
}

TEST(ParseConfig, Errors) {
  EXPECT_THROW(Parse("T 100\n"), ConfigError);
  EXPECT_THROW(Parse(" = 100\n"), ConfigError);
  EXPECT_THROW(Parse("T = 1\nT = 2\n"), ConfigError);
}

TEST(ReadConfigFile, MissingFile) {
  EXPECT_THROW(ReadConfigFile("/nonexistent/bwk.cfg"), ConfigError);
}

TEST(ParseDoubleList, Values) {
  EXPECT_EQ(ParseDoubleList("0.5, 1,0", "x"),
            (std::vector<double>{0.5, 1.0, 0.0}));
  EXPECT_THROW(ParseDoubleList("0.5,,1", "x"), ValidationError);
  EXPECT_THROW(ParseDoubleList("0.5,abc", "x"), ValidationError);
}

TEST(ParseMatrix, Rows) {
  EXPECT_EQ(ParseMatrix("0.5, 0.1; 0.2, 0.3", "c"),
            (std::vector<std::vector<double>>{{0.5, 0.1}, {0.2, 0.3}}));
  EXPECT_EQ(ParseMatrix("0.5", "c"),
            (std::vector<std::vector<double>>{{0.5}}));
}

}  // namespace
}  // namespace bwk
