#include <gtest/gtest.h>

#include <filesystem>

#include "gradreg/io.hpp"
#include "helpers.hpp"

using namespace gradreg;

namespace {

const char* kDownUp = R"(# comment line
field Q
gens x:1 y:1

rel x^2*y - y*x^2
rel x*y^2 - y^2*x
)";

template <class Fn>
std::pair<int, int> error_position(Fn&& fn) {
  try {
    fn();
  } catch (const InputError& e) {
    return {e.line(), e.column()};
  }
  return {-1, -1};
}

}  // namespace

TEST(AlgebraFile, ParsesAndBuilds) {
  auto t = parse_algebra_text(kDownUp, "downup");
  EXPECT_TRUE(t.field.is_rational());
  EXPECT_EQ(t.names, (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(t.relations.size(), 2u);
  auto a = build_algebra(t, RationalField{});
  EXPECT_EQ(a.label, "downup");
  auto g = compute_groebner(a, 6);
  EXPECT_EQ(g.dims(), compute_groebner(testing_helpers::downup(), 6).dims());
}

TEST(AlgebraFile, ErrorsPointAtTheOffendingText) {
  EXPECT_EQ(error_position([] { build_algebra(parse_algebra_text("gens x:1 y:1\nrel x*w\n"), RationalField{}); }),
            std::make_pair(2, 7));
  EXPECT_EQ(error_position([] { parse_algebra_text("gens x:1 y:0\n"); }), std::make_pair(1, 12));
  EXPECT_EQ(error_position([] { parse_algebra_text("field Q\nbogus 1\ngens x:1\n"); }), std::make_pair(2, 1));
  EXPECT_EQ(error_position([] { parse_algebra_text("field F 32004\ngens x:1\n"); }).first, 1);
  EXPECT_THROW(parse_algebra_text("field Q\n"), InputError);
  EXPECT_THROW(build_algebra(parse_algebra_text("gens x:1 y:1\nrel x*y - x\n"), RationalField{}), InputError);
}

TEST(FieldSpec, Forms) {
  EXPECT_TRUE(FieldSpec::parse("Q").is_rational());
  EXPECT_EQ(FieldSpec::parse("F 32003").prime, 32003u);
  EXPECT_EQ(FieldSpec::parse("F101").name(), "F101");
  EXPECT_THROW(FieldSpec::parse("R"), InputError);
  EXPECT_THROW(FieldSpec::parse("F 12"), InputError);
}

TEST(ModuleFile, ParsesRowsWithBars) {
  auto a = testing_helpers::kxy();
  a.label = "kxy";
  auto t = parse_module_text("module left\nover kxy\nfree 0 1\nrel x*y | -x\nrel y^2 |\n", "two");
  auto m = build_module(t, a);
  EXPECT_EQ(m.cover.shifts, (std::vector<int>{0, 1}));
  ASSERT_EQ(m.relations.size(), 2u);
  EXPECT_TRUE(m.relations[1][1].is_zero());
  auto g = compute_groebner(a, 8);
  auto res = minimal_free_resolution(m, g, 4, 8);
  EXPECT_TRUE(euler_identity_holds(res.betti, g, module_dims(m, g, 0, 6), 0, 6));
}

TEST(ModuleFile, Errors) {
  auto a = testing_helpers::kxy();
  EXPECT_THROW(build_module(parse_module_text("over other\nfree 0\n"), a), InputError);
  EXPECT_EQ(error_position([&] { build_module(parse_module_text("free 0 0\nrel x\n"), a); }).first, 2);
  EXPECT_EQ(error_position([] { parse_module_text("free 0 q\n"); }), std::make_pair(1, 8));
  EXPECT_EQ(error_position([] { parse_module_text("module up\nfree 0\n"); }), std::make_pair(1, 8));
  EXPECT_EQ(error_position([&] { build_module(parse_module_text("free 0 1\nrel x | x\n"), a); }).first, 2);
}

TEST(MapFile, Builds) {
  auto kx = testing_helpers::make("kx", {"x"}, {1}, {});
  auto x3 = testing_helpers::make("x3", {"x"}, {1}, {"x^3"});
  auto phi = build_map(parse_map_text("source kx.alg\nimage x x\n"), kx, x3);
  EXPECT_EQ(phi.images.size(), 1u);
  EXPECT_THROW(build_map(parse_map_text("source kx.alg\nimage z x\n"), kx, x3), InputError);
  EXPECT_THROW(build_map(parse_map_text("source kx.alg\n"), kx, x3), InputError);
  EXPECT_THROW(parse_map_text("image x x\n"), InputError);
}

TEST(Json, BettiTableShape) {
  auto a = testing_helpers::kxy();
  auto g = compute_groebner(a, 8);
  auto b = minimal_free_resolution(trivial_module(a), g, 4, 8).betti;
  auto j = to_json(b);
  EXPECT_EQ(j["terminated_at"], 2);
  EXPECT_EQ(j["rows"].size(), 3u);
  EXPECT_EQ(j["rows"][1]["entries"][0]["beta"], 2);
  auto v = to_json(torreg(b, Weight::of(Rational(1, 2))));
  EXPECT_EQ(v["value"], "1");
  EXPECT_EQ(v["status"], "exact");
}

TEST(Cache, RoundTripAndInvalidation) {
  namespace fs = std::filesystem;
  auto dir = fs::temp_directory_path() / ("gradreg-cache-test-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  auto a = testing_helpers::downup();
  bool hit = true;
  auto g1 = cached_groebner(a, 8, dir.string(), &hit);
  EXPECT_FALSE(hit);
  auto g2 = cached_groebner(a, 8, dir.string(), &hit);
  EXPECT_TRUE(hit);
  EXPECT_EQ(g1.dims(), g2.dims());
  EXPECT_EQ(g1.gb().size(), g2.gb().size());
  // a different window is a different key
  cached_groebner(a, 9, dir.string(), &hit);
  EXPECT_FALSE(hit);
  // a corrupted entry is recomputed and overwritten
  for (const auto& e : fs::directory_iterator(dir)) {
    std::ofstream(e.path()) << "{not json";
  }
  auto g3 = cached_groebner(a, 8, dir.string(), &hit);
  EXPECT_FALSE(hit);
  EXPECT_EQ(g3.dims(), g1.dims());
  cached_groebner(a, 8, dir.string(), &hit);
  EXPECT_TRUE(hit);
  // no directory: no caching
  cached_groebner(a, 8, std::nullopt, &hit);
  EXPECT_FALSE(hit);
  fs::remove_all(dir);
}
