#pragma once

// Words and noncommutative polynomials over weighted generators.
//
// Monomial order: weighted degree, then length, then left-lexicographic by
// generator index. It is compatible with concatenation, so it is an
// admissible order for two-sided reduction.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gradreg/errors.hpp"
#include "gradreg/field.hpp"

namespace gradreg {

using Word = std::vector<std::uint16_t>;

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto g : w) h = (h ^ g) * 1099511628211ULL;
    return h ^ w.size();
  }
};

class GeneratorSet {
 public:
  GeneratorSet() = default;
  GeneratorSet(std::vector<std::string> names, std::vector<int> degrees)
      : names_(std::move(names)), degrees_(std::move(degrees)) {
    if (names_.size() != degrees_.size()) throw InputError("generator names and degrees differ in length");
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (degrees_[i] < 1) throw InputError("generator '" + names_[i] + "' must have positive degree");
      for (std::size_t j = 0; j < i; ++j)
        if (names_[i] == names_[j]) throw InputError("duplicate generator name '" + names_[i] + "'");
    }
  }

  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  int degree(std::size_t i) const { return degrees_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<int>& degrees() const { return degrees_; }
  int max_degree() const { return degrees_.empty() ? 0 : *std::max_element(degrees_.begin(), degrees_.end()); }

  std::optional<std::size_t> index_of(const std::string& n) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == n) return i;
    return std::nullopt;
  }

  int degree(const Word& w) const {
    int d = 0;
    for (auto g : w) d += degrees_[g];
    return d;
  }

  friend bool operator==(const GeneratorSet& a, const GeneratorSet& b) {
    return a.names_ == b.names_ && a.degrees_ == b.degrees_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<int> degrees_;
};

/// -1, 0, 1 as a <, =, > b.
inline int monomial_compare(const GeneratorSet& gens, const Word& a, const Word& b) {
  int da = gens.degree(a), db = gens.degree(b);
  if (da != db) return da < db ? -1 : 1;
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

struct WordLess {
  const GeneratorSet* gens;
  bool operator()(const Word& a, const Word& b) const { return monomial_compare(*gens, a, b) < 0; }
};

inline Word concat(const Word& a, const Word& b) {
  Word w;
  w.reserve(a.size() + b.size());
  w.insert(w.end(), a.begin(), a.end());
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

inline Word concat(const Word& a, const Word& b, const Word& c) {
  Word w;
  w.reserve(a.size() + b.size() + c.size());
  w.insert(w.end(), a.begin(), a.end());
  w.insert(w.end(), b.begin(), b.end());
  w.insert(w.end(), c.begin(), c.end());
  return w;
}

/// Position of the leftmost occurrence of `needle` in `hay`.
inline std::optional<std::size_t> find_subword(const Word& hay, const Word& needle) {
  if (needle.size() > hay.size()) return std::nullopt;
  auto it = std::search(hay.begin(), hay.end(), needle.begin(), needle.end());
  if (it == hay.end() && !needle.empty()) return std::nullopt;
  return static_cast<std::size_t>(it - hay.begin());
}

template <class K>
struct Term {
  Word word;
  K coef;
};

/// Terms sorted strictly descending in the monomial order; no zero coefficients.
template <class K>
class NcPolynomial {
 public:
  NcPolynomial() = default;

  /// Canonicalizes arbitrary terms (merging duplicates, dropping zeros).
  static NcPolynomial from_terms(const GeneratorSet& gens, std::vector<Term<K>> raw) {
    std::map<Word, K, WordLess> acc(WordLess{&gens});
    for (auto& t : raw) {
      auto [it, fresh] = acc.try_emplace(std::move(t.word), t.coef);
      if (!fresh) it->second += t.coef;
    }
    NcPolynomial p;
    for (auto it = acc.rbegin(); it != acc.rend(); ++it)
      if (!it->second.is_zero()) p.terms_.push_back({it->first, it->second});
    return p;
  }
  static NcPolynomial monomial(Word w, K c) {
    NcPolynomial p;
    if (!c.is_zero()) p.terms_.push_back({std::move(w), std::move(c)});
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term<K>>& terms() const { return terms_; }
  const Word& leading_word() const { return terms_.front().word; }
  const K& leading_coef() const { return terms_.front().coef; }

  /// Degree of the leading word; all words share it when homogeneous.
  int degree(const GeneratorSet& gens) const { return is_zero() ? -1 : gens.degree(leading_word()); }
  bool is_homogeneous(const GeneratorSet& gens) const {
    for (const auto& t : terms_)
      if (gens.degree(t.word) != gens.degree(leading_word())) return false;
    return true;
  }

  NcPolynomial monic() const {
    if (is_zero()) return *this;
    NcPolynomial p = *this;
    K inv = leading_coef().inverse();
    for (auto& t : p.terms_) t.coef *= inv;
    return p;
  }

  NcPolynomial scaled(const K& c) const {
    if (c.is_zero()) return {};
    NcPolynomial p = *this;
    for (auto& t : p.terms_) t.coef *= c;
    return p;
  }

  friend bool operator==(const NcPolynomial& a, const NcPolynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (a.terms_[i].word != b.terms_[i].word || a.terms_[i].coef != b.terms_[i].coef) return false;
    return true;
  }

 private:
  std::vector<Term<K>> terms_;
};

template <class K>
NcPolynomial<K> add(const GeneratorSet& gens, const NcPolynomial<K>& a, const NcPolynomial<K>& b, const K& cb) {
  std::vector<Term<K>> raw = a.terms();
  for (const auto& t : b.terms()) raw.push_back({t.word, t.coef * cb});
  return NcPolynomial<K>::from_terms(gens, std::move(raw));
}

template <class K>
NcPolynomial<K> multiply(const GeneratorSet& gens, const NcPolynomial<K>& a, const NcPolynomial<K>& b) {
  std::vector<Term<K>> raw;
  raw.reserve(a.size() * b.size());
  for (const auto& s : a.terms())
    for (const auto& t : b.terms()) raw.push_back({concat(s.word, t.word), s.coef * t.coef});
  return NcPolynomial<K>::from_terms(gens, std::move(raw));
}

/// u * p * v for words u, v.
template <class K>
NcPolynomial<K> sandwich(const GeneratorSet& gens, const Word& u, const NcPolynomial<K>& p, const Word& v) {
  std::vector<Term<K>> raw;
  raw.reserve(p.size());
  for (const auto& t : p.terms()) raw.push_back({concat(u, t.word, v), t.coef});
  return NcPolynomial<K>::from_terms(gens, std::move(raw));
}

/// Index of leading words for repeated subword search.
template <class K>
class ReducerIndex {
 public:
  ReducerIndex() = default;
  explicit ReducerIndex(const std::vector<NcPolynomial<K>>& reducers) {
    for (std::size_t i = 0; i < reducers.size(); ++i) add(reducers[i].leading_word(), i);
  }
  void add(const Word& lead, std::size_t idx) {
    leads_.try_emplace(lead, idx);
    if (std::find(lengths_.begin(), lengths_.end(), lead.size()) == lengths_.end()) {
      lengths_.push_back(lead.size());
      std::sort(lengths_.begin(), lengths_.end());
    }
  }
  bool empty() const { return leads_.empty(); }

  /// Leftmost occurrence of any leading word; ties broken by reducer index.
  std::optional<std::pair<std::size_t, std::size_t>> find(const Word& w) const {
    Word probe;
    for (std::size_t pos = 0; pos < w.size(); ++pos) {
      std::optional<std::size_t> best;
      for (std::size_t len : lengths_) {
        if (pos + len > w.size()) break;
        probe.assign(w.begin() + pos, w.begin() + pos + len);
        auto it = leads_.find(probe);
        if (it != leads_.end() && (!best || it->second < *best)) best = it->second;
      }
      if (best) return std::make_pair(pos, *best);
    }
    return std::nullopt;
  }
  bool reducible(const Word& w) const { return find(w).has_value(); }

 private:
  std::unordered_map<Word, std::size_t, WordHash> leads_;
  std::vector<std::size_t> lengths_;
};

/// Two-sided reduction. Reducers must be monic; the largest reducible word is
/// always rewritten first.
template <class K>
NcPolynomial<K> reduce(const GeneratorSet& gens, const NcPolynomial<K>& f, const std::vector<NcPolynomial<K>>& reducers,
                       const ReducerIndex<K>& index) {
  if (index.empty() || f.is_zero()) return f;
  std::map<Word, K, WordLess> acc(WordLess{&gens});
  for (const auto& t : f.terms()) acc.emplace(t.word, t.coef);
  auto it = acc.end();
  while (it != acc.begin()) {
    --it;
    auto hit = index.find(it->first);
    if (!hit) continue;
    Word w = it->first;
    K c = it->second;
    const auto& g = reducers[hit->second];
    Word u(w.begin(), w.begin() + hit->first);
    Word v(w.begin() + hit->first + g.leading_word().size(), w.end());
    acc.erase(it);
    for (std::size_t k = 1; k < g.terms().size(); ++k) {
      const auto& t = g.terms()[k];
      auto [pos, fresh] = acc.try_emplace(concat(u, t.word, v), -(c * t.coef));
      if (!fresh) {
        pos->second -= c * t.coef;
        if (pos->second.is_zero()) acc.erase(pos);
      }
    }
    it = acc.lower_bound(w);
  }
  std::vector<Term<K>> out;
  out.reserve(acc.size());
  for (auto r = acc.rbegin(); r != acc.rend(); ++r) out.push_back({r->first, r->second});
  return NcPolynomial<K>::from_terms(gens, std::move(out));
}

template <class K>
NcPolynomial<K> reduce(const GeneratorSet& gens, const NcPolynomial<K>& f, const std::vector<NcPolynomial<K>>& reducers) {
  for (const auto& r : reducers)
    if (r.is_zero() || !r.leading_coef().is_one()) throw std::invalid_argument("reducers must be monic");
  return reduce(gens, f, reducers, ReducerIndex<K>(reducers));
}

// ---------------------------------------------------------------------------
// Text syntax: `*` concatenation, `+`/`-`, integer or a/b coefficients,
// generator names, optional `^n` powers and parentheses.

namespace detail {

template <class Field>
class PolyParser {
 public:
  using K = typename Field::scalar;
  PolyParser(const Field& field, const GeneratorSet& gens, const std::string& text, int line, int col0)
      : field_(field), gens_(gens), s_(text), line_(line), col0_(col0) {}

  NcPolynomial<K> parse() {
    auto p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError(msg, line_, col0_ + static_cast<int>(pos_) + 1);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  NcPolynomial<K> expr() {
    std::vector<Term<K>> raw;
    bool first = true;
    while (true) {
      skip();
      K sign = field_.from_int(1);
      if (eat('-')) sign = field_.from_int(-1);
      else if (!eat('+') && !first) break;
      auto t = term();
      for (const auto& x : t.terms()) raw.push_back({x.word, x.coef * sign});
      first = false;
      skip();
      if (pos_ >= s_.size() || (s_[pos_] != '+' && s_[pos_] != '-')) break;
    }
    return NcPolynomial<K>::from_terms(gens_, std::move(raw));
  }
  NcPolynomial<K> term() {
    auto p = factor();
    while (eat('*')) p = multiply(gens_, p, factor());
    return p;
  }
  NcPolynomial<K> factor() {
    skip();
    if (pos_ >= s_.size()) fail("expected a factor");
    char c = s_[pos_];
    NcPolynomial<K> base;
    if (c == '(') {
      ++pos_;
      base = expr();
      if (!eat(')')) fail("expected ')'");
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/')) ++pos_;
      std::string num = s_.substr(start, pos_ - start);
      Rational r;
      try {
        r = Rational::parse(num);
      } catch (const std::exception&) {
        pos_ = start;
        fail("bad coefficient '" + num + "'");
      }
      return NcPolynomial<K>::monomial(Word{}, field_.from_rational(r));
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      auto idx = gens_.index_of(name);
      if (!idx) {
        pos_ = start;
        fail("unknown generator '" + name + "'");
      }
      base = NcPolynomial<K>::monomial(Word{static_cast<std::uint16_t>(*idx)}, field_.from_int(1));
    } else {
      fail("unexpected '" + std::string(1, c) + "'");
    }
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      int e = std::stoi(s_.substr(start, pos_ - start));
      NcPolynomial<K> acc = NcPolynomial<K>::monomial(Word{}, field_.from_int(1));
      for (int k = 0; k < e; ++k) acc = multiply(gens_, acc, base);
      return acc;
    }
    return base;
  }

  const Field& field_;
  const GeneratorSet& gens_;
  const std::string& s_;
  std::size_t pos_ = 0;
  int line_;
  int col0_;
};

}  // namespace detail

template <class Field>
NcPolynomial<typename Field::scalar> parse_polynomial(const Field& field, const GeneratorSet& gens,
                                                      const std::string& text, int line = 0, int column_offset = 0) {
  return detail::PolyParser<Field>(field, gens, text, line, column_offset).parse();
}

inline std::string word_to_string(const GeneratorSet& gens, const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += '*';
    s += gens.name(w[i]);
  }
  return s;
}

template <class K>
std::string to_string(const GeneratorSet& gens, const NcPolynomial<K>& p) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : p.terms()) {
    std::string c = t.coef.to_string();
    bool neg = !c.empty() && c[0] == '-';
    if (neg) c.erase(0, 1);
    if (first) s += neg ? "-" : "";
    else s += neg ? " - " : " + ";
    first = false;
    if (t.word.empty()) s += c;
    else if (c == "1") s += word_to_string(gens, t.word);
    else s += c + "*" + word_to_string(gens, t.word);
  }
  return s;
}

}  // namespace gradreg
