// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "omx/cli/config.hpp"
#include "omx/cli/units.hpp"

using namespace omx::cli;

TEST(ParseQuantity, Frequencies) {
  EXPECT_DOUBLE_EQ(parse_quantity("1210 MHz", Dimension::frequency), 1.21e9);
  EXPECT_DOUBLE_EQ(parse_quantity("1.85 GHz", Dimension::frequency), 1.85e9);
  EXPECT_DOUBLE_EQ(parse_quantity("70 kHz", Dimension::frequency), 7e4);
  EXPECT_DOUBLE_EQ(parse_quantity("193.414 THz", Dimension::frequency), 193.414e12);
  EXPECT_DOUBLE_EQ(parse_quantity("-3.698 GHz", Dimension::frequency), -3.698e9);
  EXPECT_DOUBLE_EQ(parse_quantity("1e3 Hz", Dimension::frequency), 1e3);
}

TEST(ParseQuantity, PowersIncludingDbm) {
  EXPECT_DOUBLE_EQ(parse_quantity("3.3 uW", Dimension::power), 3.3e-6);
  EXPECT_DOUBLE_EQ(parse_quantity("2 nW", Dimension::power), 2e-9);
  EXPECT_NEAR(parse_quantity("0 dBm", Dimension::power), 1e-3, 1e-18);
  EXPECT_NEAR(parse_quantity("8 dBm", Dimension::power), std::pow(10.0, 0.8) * 1e-3, 1e-15);
  EXPECT_NEAR(parse_quantity("-155 dBm/Hz", Dimension::psd), std::pow(10.0, -15.5) * 1e-3, 1e-30);
}

TEST(ParseQuantity, OtherDimensions) {
  EXPECT_DOUBLE_EQ(parse_quantity("1550 nm", Dimension::length), 1550e-9);
  EXPECT_DOUBLE_EQ(parse_quantity("50 ohm", Dimension::impedance), 50.0);
  EXPECT_DOUBLE_EQ(parse_quantity("24 mV", Dimension::voltage), 0.024);
  EXPECT_DOUBLE_EQ(parse_quantity("97 fJ", Dimension::energy), 97e-15);
}

TEST(ParseQuantity, Rejections) {
  EXPECT_THROW(parse_quantity("1210", Dimension::frequency), std::invalid_argument);
  EXPECT_THROW(parse_quantity("1210 MHz", Dimension::power), std::invalid_argument);
  EXPECT_THROW(parse_quantity("abc MHz", Dimension::frequency), std::invalid_argument);
  EXPECT_THROW(parse_quantity("12 parsecs", Dimension::length), std::invalid_argument);
  EXPECT_THROW(parse_quantity("", Dimension::frequency), std::invalid_argument);
  EXPECT_THROW(parse_quantity("8 dBm", Dimension::frequency), std::invalid_argument);
}

TEST(Config, SyntaxErrorReportsLocation) {
  try {
    ConfigFile::parse("{\n  \"a\": 1,\n  oops\n}");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(Config, QuantityNeedsUnit) {
  const auto f = ConfigFile::parse(R"({"kappa": 1210, "gamma": "1.93 MHz"})");
  const auto root = f.root();
  EXPECT_THROW(root.quantity("kappa", Dimension::frequency), ConfigError);
  EXPECT_DOUBLE_EQ(root.quantity("gamma", Dimension::frequency), 1.93e6);
}

TEST(Config, ErrorNamesFieldPath) {
  const auto f = ConfigFile::parse(R"({"device": {"kappa": "12 V"}})");
  try {
    f.root().child("device").quantity("kappa", Dimension::frequency);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("$.device.kappa"), std::string::npos) << e.what();
  }
}

TEST(Config, UnknownKeysRejected) {
  const auto f = ConfigFile::parse(R"({"used": 1, "typo": 2})");
  const auto root = f.root();
  root.number("used");
  EXPECT_THROW(root.finish(), ConfigError);
}

TEST(Config, MissingKeyRejected) {
  const auto f = ConfigFile::parse(R"({})");
  EXPECT_THROW(f.root().number("x"), ConfigError);
  EXPECT_FALSE(f.root().optional_number("x").has_value());
  EXPECT_EQ(f.root().number_or("x", 2.5), 2.5);
}

TEST(Config, KeysSorted) {
  const auto f = ConfigFile::parse(R"({"b": 1, "a": 2, "c": 3})");
  EXPECT_EQ(f.root().keys(), (std::vector<std::string>{"a", "b", "c"}));
}
