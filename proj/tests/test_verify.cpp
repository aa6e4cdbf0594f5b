#include <gtest/gtest.h>

#include <random>
#include <set>

#include "helpers.hpp"

using namespace gradreg;

namespace {

Corpus<RationalField> small_corpus() {
  Corpus<RationalField> c;
  auto a = testing_helpers::kxy();
  c.algebras.push_back({"kxy", a, {6, 12}});
  c.modules.push_back({"kxy:k", "kxy", trivial_module(a)});
  c.modules.push_back({"kxy:A", "kxy", free_module_presentation(a, FreeModule{{0}})});
  c.modules.push_back({"kxy:A/(x)", "kxy", cyclic_quotient(a, {"x"})});
  c.modules.push_back({"kxy:A/(x^2,y)", "kxy", cyclic_quotient(a, {"x^2", "y"})});
  auto kx = testing_helpers::make("kx", {"x"}, {1}, {});
  auto z = testing_helpers::make("kz", {"z"}, {1}, {});
  c.algebras.push_back({"kx", kx, {6, 12}});
  c.algebras.push_back({"kz", z, {6, 12}});
  c.algebras.push_back({"kx_x_kz", tensor_algebra(kx, z), {6, 12}});
  c.modules.push_back({"kx_x_kz:k", "kx_x_kz", trivial_module(tensor_algebra(kx, z))});
  c.tensors.push_back({"kx_x_kz", "kx", "kz"});
  c.truncation_modules = {"kxy:A", "kxy:A/(x)"};
  c.random_complexes = 5;
  return c;
}

}  // namespace

TEST(Corpus, DefaultShape) {
  auto c = default_corpus(RationalField{});
  std::set<std::string> labels;
  for (const auto& m : c.modules) labels.insert(m.label);
  EXPECT_EQ(labels.size(), c.modules.size());
  int kxy = 0, du = 0;
  for (const auto& l : labels) {
    kxy += l.rfind("kxy:A/(", 0) == 0;
    du += l.rfind("downup:A/(", 0) == 0;
  }
  EXPECT_GE(kxy, 10);
  EXPECT_GE(du, 10);
  EXPECT_EQ(c.random_complexes, 25);
  for (const auto& t : c.tensors) EXPECT_TRUE(labels.count(t.label + ":k"));
}

TEST(RandomComplex, MinimalAndSquareZero) {
  auto a = testing_helpers::kxy();
  auto g = compute_groebner(a, 16);
  std::mt19937 rng(5);
  for (int n = 0; n < 20; ++n) {
    auto f = random_minimal_complex(g, rng);
    EXPECT_TRUE(is_minimal_complex(f, a.gens));
    EXPECT_TRUE(check_dd(f, g, 12));
    EXPECT_LE(f.p_lo, 0);
  }
  std::mt19937 r1(42), r2(42);
  auto f1 = random_minimal_complex(g, r1), f2 = random_minimal_complex(g, r2);
  ASSERT_EQ(f1.terms, f2.terms);
}

TEST(Duality, KoszulComplexSides) {
  auto a = testing_helpers::kxy();
  auto g = compute_groebner(a, 12);
  auto res = minimal_free_resolution(trivial_module(a), g, 4, 12);
  for (const char* x : {"1", "0", "-2"}) {
    auto cmp = compare_dual_complex(res.complex, g, Rational::parse(x));
    ASSERT_TRUE(cmp.resolved);
    ASSERT_EQ(cmp.lhs.size(), cmp.rhs.size());
    for (std::size_t c = 0; c < cmp.lhs.size(); ++c) EXPECT_TRUE(same_value(cmp.lhs[c], cmp.rhs[c])) << x << " c=" << c;
  }
}

TEST(Verifier, SmallCorpusHasNoFailures) {
  Verifier<RationalField> v(small_corpus(), default_weights());
  auto cases = v.run(suite_names());
  EXPECT_TRUE(all_passed(cases));
  for (const auto& c : cases)
    if (c.outcome == Outcome::fail) {
      ADD_FAILURE() << c.suite << " " << c.subject << " " << c.check << ": " << c.witness;
    }
  auto s = summarize(cases);
  for (const auto& name : suite_names()) EXPECT_GT(s[name].pass, 0) << name;
}

TEST(Verifier, ReportIsDeterministicAndSorted) {
  Verifier<RationalField> v1(small_corpus(), default_weights()), v2(small_corpus(), default_weights());
  auto c1 = v1.run(suite_names());
  auto c2 = v2.run({"thm33", "asreg_cert", "thm45", "thm310", "lem27", "lem31", "rem47", "thm46", "cor312", "thm313", "thm35"});
  EXPECT_EQ(report_json(c1, "Q", "x").dump(), report_json(c2, "Q", "x").dump());
  auto j = report_json(c1, "Q", "x");
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["cases"].size(), c1.size());
  for (std::size_t i = 1; i < c1.size(); ++i) {
    if (c1[i].subject != c1[i - 1].subject || c1[i].suite != c1[i - 1].suite) continue;
    if (c1[i].xi && !c1[i - 1].xi) continue;
    if (c1[i - 1].xi && c1[i].xi && !(c1[i - 1].xi->xi0 == c1[i].xi->xi0)) continue;
    if (c1[i - 1].xi && c1[i].xi) {
      EXPECT_LE(c1[i - 1].xi->xi1, c1[i].xi->xi1);
    }
  }
  EXPECT_FALSE(report_table(c1).empty());
}

TEST(Verifier, UnknownSubjects) {
  Verifier<RationalField> v(small_corpus(), default_weights());
  EXPECT_THROW(v.module("kxy:nothing"), InputError);
  EXPECT_THROW(v.algebra("nothing"), InputError);
  EXPECT_TRUE(is_suite("thm45"));
  EXPECT_FALSE(is_suite("thm99"));
}

TEST(Verifier, SkipsCarryReasons) {
  Verifier<RationalField> v(small_corpus(), default_weights());
  for (const auto& c : v.run("thm33"))
    if (c.outcome == Outcome::skipped) {
      EXPECT_FALSE(c.reason.empty());
    }
}
