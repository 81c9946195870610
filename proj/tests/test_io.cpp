#include <gtest/gtest.h>

#include "urb/io.hpp"

using urb::Integer;
using urb::IntSet;
namespace io = urb::io;

TEST(Io, ArrayRoundTrip) {
  const Integer big = (Integer(1) << 130) + 7;
  const IntSet s{-big, Integer(-3), Integer(5), big};
  const std::string text = io::to_json(s).dump();
  EXPECT_EQ(io::parse_set(text), s);
}

TEST(Io, AcceptsNumbersAndStrings) {
  EXPECT_EQ(io::parse_set("[1, \"-2\", 3]"), (IntSet{-2, 1, 3}));
  EXPECT_EQ(io::parse_set("{\"set\": [\"4\", 2]}"), (IntSet{2, 4}));
}

TEST(Io, UsesLastStageOfArtifacts) {
  const auto r = urb::t1::build(3);
  const std::string text = io::to_json(r).dump();
  EXPECT_EQ(io::parse_set(text), r.final_stage().set);
  const auto j = io::json::parse(text);
  EXPECT_EQ(j["kind"], "construct_t1");
  EXPECT_EQ(j["stages"][1]["b_tilde"], "25");
}

TEST(Io, TextFormatWithComments) {
  const std::string text = "# header\n1 2\n-7  # trailing\n\n  9,\n";
  EXPECT_EQ(io::parse_set(text), (IntSet{-7, 1, 2, 9}));
  EXPECT_EQ(io::parse_set(io::to_text(IntSet{3, -4})), (IntSet{-4, 3}));
}

TEST(Io, MalformedInputThrowsParseError) {
  EXPECT_THROW(io::parse_set("[1, 2"), urb::ParseError);
  EXPECT_THROW(io::parse_set("[1.5]"), urb::ParseError);
  EXPECT_THROW(io::parse_set("{\"other\": 1}"), urb::ParseError);
  EXPECT_THROW(io::parse_set("1 two 3"), urb::ParseError);
  EXPECT_THROW(io::parse_set("[\"1e3\"]"), urb::ParseError);
}

TEST(Io, SidonArtifact) {
  const auto r = urb::sidon::bose_chowla(7);
  const auto j = io::to_json(r);
  EXPECT_EQ(j["method"], "bose_chowla");
  EXPECT_EQ(j["cardinality"], 7);
  EXPECT_EQ(io::set_from_json(j), r.set);
}

TEST(Io, T2Artifact) {
  urb::t2::BuildResult r;
  r.epsilon = urb::Rational(1, 10);
  r.x_ladder = {Integer(1)};
  r.stages.push_back(urb::t2::Stage{1, IntSet{-1, 1}, Integer(1), std::nullopt, std::nullopt});
  const auto j = io::to_json(r);
  EXPECT_EQ(j["epsilon"], "1/10");
  EXPECT_TRUE(j["stages"][0]["sidon"].is_null());
  EXPECT_EQ(io::set_from_json(j), (IntSet{-1, 1}));
}

TEST(Io, SerializationIsDeterministic) {
  const auto a = io::to_json(urb::t1::build(6)).dump(1);
  const auto b = io::to_json(urb::t1::build(6)).dump(1);
  EXPECT_EQ(a, b);
}
