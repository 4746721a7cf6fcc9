#include "oracles.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace rank1lab;

namespace {

ConfigError parse_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e;
  }
  ADD_FAILURE() << "no ConfigError for:\n" << text;
  return ConfigError(0, "", "");
}

}  // namespace

TEST(Config, ParsesTwoPoint) {
  const auto c = parse_config(R"(# comment
name = tp
[group]
free_rank = 0
torsion = 2
[gamma]
a = 2 | 0 1 | (0) (1)   # trailing comment
[schedule]
constant: a
)");
  EXPECT_EQ(c.name(), "tp");
  EXPECT_EQ(c.group().to_string(), "Z/2");
  EXPECT_EQ(c.gamma(5), 2u);
  EXPECT_EQ(c.label(0, 1), c.group().basis(0));
  EXPECT_EQ(check_pwm(c).value, Value::fails);
}

TEST(Config, LabelsOptionalForTrivialGroup) {
  const auto c = parse_config("name = x\n[gamma]\na = 3 | 1 1 0\n[schedule]\nconstant: a\n");
  EXPECT_TRUE(c.group().is_trivial());
  EXPECT_EQ(c.height(1), 5);
}

TEST(Config, PeriodicAndPrefixSchedules) {
  const std::string head = "name = x\n[group]\nfree_rank = 1\n[gamma]\na = 2 | 0 1 | (0) (1)\nb = 3 | 0 0 1 | (0) (0) (-1)\n";
  const auto p = parse_config(head + "[schedule]\nperiodic: a b b\n");
  EXPECT_EQ(p.schedule().kind, ScheduleKind::periodic);
  EXPECT_EQ(p.gamma(4), 3u);
  const auto f = parse_config(head + "[schedule]\nprefix: b a\n");
  EXPECT_EQ(*f.schedule().horizon(), 2u);
  EXPECT_EQ(f.label(0, 2), f.group().element({BigInt(-1)}));
}

TEST(Config, ErrorsCarryLineAndField) {
  auto e = parse_error("name = x\n[gamma]\na = 3 | 1 1 | \n[schedule]\nconstant: a\n");
  EXPECT_EQ(e.line(), 3u);
  EXPECT_EQ(e.field(), "a");

  e = parse_error("name = x\n[group]\ntorsion = 2\n[gamma]\na = 2 | 0 1\n[schedule]\nconstant: a\n");
  EXPECT_EQ(e.line(), 5u);
  EXPECT_NE(e.message().find("labels are required"), std::string::npos);

  e = parse_error("name = x\n[group]\nfree_rank = 2\n[gamma]\na = 2 | 0 1 | (0) (1)\n[schedule]\nconstant: a\n");
  EXPECT_EQ(e.line(), 5u);
  EXPECT_NE(e.message().find("coordinates"), std::string::npos);

  e = parse_error("name = x\n[gamma]\na = 2 | 0 1\n[schedule]\nconstant: b\n");
  EXPECT_EQ(e.line(), 5u);
  EXPECT_EQ(e.field(), "schedule");

  e = parse_error("name = x\n[gamma]\na = 2 | 0 x\n[schedule]\nconstant: a\n");
  EXPECT_EQ(e.line(), 3u);

  e = parse_error("name = x\n[colors]\n");
  EXPECT_EQ(e.line(), 2u);

  e = parse_error("name = x\n[gamma]\na = 2 | 0 1\n");
  EXPECT_EQ(e.field(), "schedule");

  e = parse_error("[gamma]\na = 2 | 0 1\n[schedule]\nconstant: a\n");
  EXPECT_EQ(e.field(), "name");

  e = parse_error("name = x\n[group]\ntorsion = 1\n");
  EXPECT_EQ(e.field(), "torsion");

  e = parse_error("name = x\n[gamma]\na = 2 | 0 1\n[schedule]\nconstant: a a\n");
  EXPECT_EQ(e.line(), 5u);

  e = parse_error("name = x\n[gamma]\na = 1 | 0\n[schedule]\nconstant: a\n");
  EXPECT_EQ(e.line(), 3u);
}

TEST(Config, RoundTripIsIdentityOnRegistry) {
  for (const auto& e : builtin_registry()) {
    const std::string text = serialize_config(e.construction);
    const Construction back = parse_config(text);
    EXPECT_EQ(serialize_config(back), text) << e.name;
    EXPECT_EQ(back.alphabet(), e.construction.alphabet());
    EXPECT_EQ(back.schedule(), e.construction.schedule());
    EXPECT_EQ(back.group().to_string(), e.construction.group().to_string());
  }
}

TEST(Config, ShippedConfigsMatchRegistry) {
  const std::filesystem::path dir = std::filesystem::path(RANK1LAB_SOURCE_DIR) / "configs";
  for (const auto& e : builtin_registry()) {
    const auto path = dir / (e.name + ".cfg");
    ASSERT_TRUE(std::filesystem::exists(path)) << path;
    EXPECT_EQ(serialize_config(load_config(path.string())), serialize_config(e.construction)) << e.name;
  }
  try {
    load_config((dir / "missing.cfg").string());
    FAIL();
  } catch (const ConfigError& err) {
    EXPECT_NE(std::string(err.what()).find("missing.cfg"), std::string::npos);
  }
}
