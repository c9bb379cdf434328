#include <gtest/gtest.h>

#include "fixpt/config.hpp"

using namespace fixpt;

namespace {

std::string config_error(const std::string& text) {
  try {
    build_config(parse_config_text(text));
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Config);
    return e.what();
  }
  return "";
}

const char* kBase =
    "pipeline = T35\n"
    "space.dim = 16\n"
    "set.kind = ball\n"
    "set.radius = 0.5\n"
    "map.kind = averaged_rotation\n"
    "map.theta = 0.3\n"
    "x0 = 0.4, 0.1\n";

}  // namespace

TEST(ParseConfig, Grammar) {
  const auto entries = parse_config_text("# comment\n\n  a.b = 1 # trailing\nc=x y\n");
  ASSERT_EQ(entries.size(), 2u);
  EXPECT_EQ(entries[0].key, "a.b");
  EXPECT_EQ(entries[0].value, "1");
  EXPECT_EQ(entries[0].line, 3u);
  EXPECT_EQ(entries[1].value, "x y");
  EXPECT_THROW(parse_config_text("a = 1\na = 2\n"), Error);
  EXPECT_THROW(parse_config_text("no equals sign\n"), Error);
  EXPECT_THROW(parse_config_text(" = 3\n"), Error);
}

TEST(BuildConfig, DefaultsAndPadding) {
  const auto c = build_config(parse_config_text(kBase));
  EXPECT_EQ(c.dim, 16u);
  EXPECT_EQ(c.x0, Vector::padded(std::vector<double>{0.4, 0.1}, 16));
  EXPECT_EQ(c.run.iterations, 10000u);
  EXPECT_EQ(c.run.seed, 0u);
  EXPECT_EQ(*c.pipeline, PipelineKind::T35);
  EXPECT_EQ(c.make_map().name(), MapInstance(AveragedRotation{0.3}, c.set).name());
}

TEST(BuildConfig, ErrorsNameTheField) {
  EXPECT_NE(config_error("pipeline = T35\nspace.dim = 2\nset.kind = ball\nset.radius = 1\nx0 = 0\n").find("map.kind"), std::string::npos);
  EXPECT_NE(config_error(std::string(kBase) + "bogus.key = 1\n").find("bogus.key"),
            std::string::npos);
  EXPECT_NE(config_error(std::string(kBase) + "iterations = -4\n").find("iterations"),
            std::string::npos);
  EXPECT_NE(config_error(std::string(kBase) + "iterations = 12\n").find("iterations"),
            std::string::npos);
  EXPECT_NE(config_error(std::string(kBase) + "tol.fp = nan\n").find("tol.fp"),
            std::string::npos);
  EXPECT_NE(config_error("pipeline = T35\nspace.dim = 2\nset.kind = ball\nset.radius = 1\n"
                         "map.kind = identity\nx0 = 3, 0\n")
                .find("x0"),
            std::string::npos);
  EXPECT_NE(config_error("pipeline = T35\nspace.dim = 2\nset.kind = ball\nset.radius = 1\n"
                         "map.kind = identity\nx0 = 0, 0, 0\n")
                .find("x0"),
            std::string::npos);
  EXPECT_NE(config_error("pipeline = C38\nspace.dim = 2\nset.kind = box\nset.lo = 0, 0\n"
                         "set.hi = 1, 1\nmap.kind = monotone_average\nmap.u = 1, 1\nx0 = 0, 0\n")
                .find("graph.kind"),
            std::string::npos);
  EXPECT_NE(config_error(std::string(kBase) + "map.lambda = 0.5\n").find("map.lambda"),
            std::string::npos);
  EXPECT_NE(config_error("pipeline = T99\nset.kind = ball\nset.radius = 1\nmap.kind = identity\nx0 = 0\n").find("pipeline"),
            std::string::npos);
}

TEST(BuildConfig, EchoRoundTrips) {
  const auto c = build_config(parse_config_text(std::string(kBase) + "output_dir = somewhere\n"));
  EXPECT_EQ(c.output_dir, "somewhere");
  EXPECT_EQ(c.echo.count("output_dir"), 0u);
  std::string text;
  for (const auto& [k, v] : c.echo) text += k + " = " + v + "\n";
  const auto again = build_config(parse_config_text(text));
  EXPECT_EQ(again.echo, c.echo);
  EXPECT_EQ(again.x0, c.x0);
  EXPECT_EQ(again.run.iterations, c.run.iterations);
}

TEST(BuildConfig, VerifyOnlyNeedsNoStart) {
  EXPECT_NO_THROW(build_config(parse_config_text(
      "pipeline = VERIFY_ONLY\nspace.dim = 4\nset.kind = ball\nset.radius = 1\n"
      "map.kind = identity\n")));
}
