#include <gtest/gtest.h>

#include <map>

#include "helpers.hpp"

using namespace gradreg;
using testing_helpers::make;

namespace {

void words_of_degree(const GeneratorSet& g, int n, Word& cur, std::vector<Word>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (std::uint16_t x = 0; x < g.size(); ++x)
    if (g.degree(x) <= n) {
      cur.push_back(x);
      words_of_degree(g, n - g.degree(x), cur, out);
      cur.pop_back();
    }
}

std::vector<Word> words_of_degree(const GeneratorSet& g, int n) {
  std::vector<Word> out;
  Word cur;
  words_of_degree(g, n, cur, out);
  return out;
}

// dim A_n from the span of all u*r*v in the free algebra, without any rewriting.
template <class Field>
int brute_dim(const AlgebraPresentation<Field>& a, int n) {
  using K = typename Field::scalar;
  auto words = words_of_degree(a.gens, n);
  std::map<Word, std::size_t> idx;
  for (const auto& w : words) idx.emplace(w, idx.size());
  std::vector<std::vector<K>> rows;
  for (const auto& r : a.relations) {
    int d = r.degree(a.gens);
    for (int du = 0; du + d <= n; ++du)
      for (const auto& u : words_of_degree(a.gens, du))
        for (const auto& v : words_of_degree(a.gens, n - d - du)) {
          std::vector<K> row(words.size(), a.field.from_int(0));
          for (const auto& t : r.terms()) row[idx.at(concat(u, t.word, v))] += t.coef;
          rows.push_back(std::move(row));
        }
  }
  return static_cast<int>(words.size() - testing_helpers::dense_rank(rows));
}

template <class Field>
void expect_dims_match_oracle(const AlgebraPresentation<Field>& a, int dmax) {
  auto g = compute_groebner(a, dmax);
  for (int n = 0; n <= dmax; ++n) EXPECT_EQ(static_cast<int>(g.dim(n)), brute_dim(a, n)) << a.label << " degree " << n;
}

}  // namespace

TEST(Groebner, DimsMatchBruteForce) {
  expect_dims_match_oracle(testing_helpers::kxy(), 7);
  expect_dims_match_oracle(testing_helpers::downup(), 7);
  expect_dims_match_oracle(make("jordan", {"x", "y"}, {1, 1}, {"y*x - x*y - x^2"}), 7);
  expect_dims_match_oracle(make("x3", {"x"}, {1}, {"x^3"}), 6);
  expect_dims_match_oracle(make("mixed", {"x", "z"}, {1, 2}, {"z*x - x*z", "x^4 - z^2"}), 8);
  expect_dims_match_oracle(make("noeth", {"x", "y"}, {1, 1}, {"x*y"}), 6);
  expect_dims_match_oracle(make<PrimeField>("skew", {"x", "y"}, {1, 1}, {"y*x - 3*x*y"}, PrimeField(7)), 7);
}

TEST(Groebner, KnownHilbertFunctions) {
  // down-up algebra: 1/((1-t)^2 (1-t^2))
  auto g = compute_groebner(testing_helpers::downup(), 10);
  for (int n = 0; n <= 10; ++n) {
    int want = 0;
    for (int k = 0; 2 * k <= n; ++k) want += n - 2 * k + 1;
    EXPECT_EQ(static_cast<int>(g.dim(n)), want);
  }
  auto kx2 = compute_groebner(make("kx2", {"x"}, {2}, {}), 9);
  for (int n = 0; n <= 9; ++n) EXPECT_EQ(kx2.dim(n), n % 2 == 0 ? 1u : 0u);
}

TEST(Groebner, FiniteDimensionalTopDegree) {
  auto g = compute_groebner(make("x3", {"x"}, {1}, {"x^3"}), 8);
  ASSERT_TRUE(g.top_degree().has_value());
  EXPECT_EQ(*g.top_degree(), 2);
  EXPECT_FALSE(compute_groebner(testing_helpers::kxy(), 8).top_degree().has_value());
}

TEST(Groebner, NormalFormIsIdempotentAndKillsRelations) {
  auto a = testing_helpers::downup();
  auto g = compute_groebner(a, 8);
  for (const auto& r : a.relations) EXPECT_TRUE(g.normal_form(r).is_zero());
  auto f = parse_polynomial(a.field, a.gens, "y*x*y*x*x + x*x*y*y*x");
  auto nf = g.normal_form(f);
  EXPECT_EQ(g.normal_form(nf), nf);
  EXPECT_EQ(g.from_vector(g.to_vector(nf, 5), 5), nf);
}

TEST(Groebner, FieldsAgreeOnDims) {
  auto q = compute_groebner(testing_helpers::downup(), 9);
  auto p = compute_groebner(testing_helpers::downup(PrimeField(32003)), 9);
  EXPECT_EQ(q.dims(), p.dims());
}

TEST(Groebner, RejectsInhomogeneousRelations) {
  EXPECT_THROW(make("bad", {"x", "y"}, {1, 1}, {"x*y - x"}).validate(), InputError);
  EXPECT_THROW(make("bad", {"x", "y"}, {1, 1}, {"x"}).validate(), InputError);
}
