#include <doctest.h>

#include "volterra/config.hpp"

using namespace volterra;
using nlohmann::json;

TEST_CASE("scalar value types")
{
  const json c = parse_toml(
      "title = \"run a\"\n"
      "flag = true\n"
      "off = false\n"
      "count = 42\n"
      "neg = -7\n"
      "x = 1.5\n"
      "y = -2e-3\n"
      "z = 3.\n");
  CHECK(c["title"] == "run a");
  CHECK(c["flag"] == true);
  CHECK(c["off"] == false);
  CHECK(c["count"] == 42);
  CHECK(c["count"].is_number_integer());
  CHECK(c["neg"] == -7);
  CHECK(c["x"] == 1.5);
  CHECK(c["x"].is_number_float());
  CHECK(c["y"] == doctest::Approx(-2e-3));
  CHECK(c["z"] == 3.0);
}

TEST_CASE("sections and dotted headers")
{
  const json c = parse_toml(
      "top = 1\n"
      "[grid]\n"
      "depth = 6\n"
      "[solve.inner]\n"
      "tol = 1e-9\n");
  CHECK(c["top"] == 1);
  CHECK(c["grid"]["depth"] == 6);
  CHECK(c["solve"]["inner"]["tol"] == 1e-9);
}

TEST_CASE("comments and strings containing hashes")
{
  const json c = parse_toml(
      "# full-line comment\n"
      "a = 1  # trailing comment\n"
      "label = \"not # a comment\"\n"
      "\n");
  CHECK(c["a"] == 1);
  CHECK(c["label"] == "not # a comment");
}

TEST_CASE("flat arrays")
{
  const json c = parse_toml(
      "etas = [0.25, 0.5, 0.75]\n"
      "ints = [1, 2, 3]\n"
      "empty = []\n");
  CHECK(c["etas"] == json::array({0.25, 0.5, 0.75}));
  CHECK(c["ints"] == json::array({1, 2, 3}));
  CHECK(c["empty"].is_array());
  CHECK(c["empty"].empty());
}

TEST_CASE("parse errors carry the line number")
{
  auto expect_line = [](const std::string& text, const char* frag) {
    try {
      parse_toml(text);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find(frag) != std::string::npos);
    }
  };
  expect_line("a = 1\nnonsense line\n", "line 2");
  expect_line("a = \n", "line 1");
  expect_line("[]\n", "line 1");
  expect_line("a = [1, oops]\n", "line 1");
}

TEST_CASE("merge precedence")
{
  json base = json{{"grid", {{"depth", 5}, {"T", 1.0}}}, {"kernel", {{"gamma", 0.25}}}};
  const json over = json{{"grid", {{"depth", 8}}}, {"extra", true}};
  const json m = merge_config(base, over);
  CHECK(m["grid"]["depth"] == 8);
  CHECK(m["grid"]["T"] == 1.0);
  CHECK(m["kernel"]["gamma"] == 0.25);
  CHECK(m["extra"] == true);
}

TEST_CASE("defaults survive a TOML round trip")
{
  const json roundtrip = parse_toml(default_config_toml());
  CHECK(roundtrip == default_config());
}

TEST_CASE("defaults cover every subcommand section")
{
  const json d = default_config();
  for (const char* sec : {"grid", "kernel", "driver", "hoelder", "sew", "extend",
                          "chen", "solve", "convergence", "brownian"})
    CHECK(d.contains(sec));
  CHECK(d["kernel"]["kind"] == "fractional");
}

TEST_CASE("missing files are reported")
{
  CHECK_THROWS_AS(load_config_file("/nonexistent/volterra.toml"), ConfigError);
}
