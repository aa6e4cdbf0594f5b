#pragma once

// Named identity/inequality suites run over a corpus of algebras, modules
// and free complexes. Every value is exact; a case fails only when both
// sides were computed and disagree with the claimed relation.

#include <algorithm>
#include <climits>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "gradreg/errors.hpp"
#include "gradreg/modpres.hpp"
#include "gradreg/regularity.hpp"

namespace gradreg {

enum class Outcome { pass, fail, skipped };

inline const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::pass: return "pass";
    case Outcome::fail: return "fail";
    default: return "skipped";
  }
}

struct VerificationCase {
  std::string suite;
  std::string subject;
  std::string check;
  std::optional<Weight> xi;
  Outcome outcome = Outcome::pass;
  std::string lhs, rhs;
  std::string witness;  // confirming values, or the offending data on a fail
  std::string reason;   // unmet precondition when skipped
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"thm33", "thm35",  "thm310", "cor312", "thm313",    "thm45",
                                              "thm46", "lem27",  "lem31",  "rem47",  "asreg_cert"};
  return names;
}

inline bool is_suite(const std::string& s) {
  const auto& n = suite_names();
  return std::find(n.begin(), n.end(), s) != n.end();
}

inline std::vector<Weight> default_weights() {
  std::vector<Weight> w;
  for (const char* x : {"-100", "-10", "-2", "-1", "0", "1/2", "1", "3/2", "2", "3"})
    w.push_back(Weight::of(Rational::parse(x)));
  w.push_back(Weight(Rational(0), Rational(1)));
  w.push_back(Weight(Rational(0), Rational(-1)));
  return w;
}

template <class Field>
struct AlgebraSubject {
  std::string label;
  AlgebraPresentation<Field> algebra;
  Window window;
};

template <class Field>
struct ModuleSubject {
  std::string label;
  std::string algebra;
  ModulePresentation<Field> module;
  int valid_through = INT_MAX;
};

struct TensorSubject {
  std::string label;  // algebra subject holding the product
  std::string left, right;
};

template <class Field>
struct Corpus {
  std::vector<AlgebraSubject<Field>> algebras;
  std::vector<ModuleSubject<Field>> modules;
  std::vector<TensorSubject> tensors;
  std::vector<std::string> truncation_modules;
  std::string complex_algebra = "kxy";
  int random_complexes = 25;
  std::uint32_t seed = 1729;
};

/// Left module A/(A w_1 + ... + A w_r) for polynomials w_i.
template <class Field>
ModulePresentation<Field> cyclic_quotient(const AlgebraPresentation<Field>& a, const std::vector<std::string>& gens,
                                          Side side = Side::left) {
  ModulePresentation<Field> m{a, side, FreeModule{{0}}, {}, ""};
  std::string label = "A/(";
  for (std::size_t i = 0; i < gens.size(); ++i) {
    m.relations.push_back({parse_polynomial(a.field, a.gens, gens[i])});
    label += (i ? "," : "") + gens[i];
  }
  m.label = label + ")";
  return m;
}

namespace detail {

template <class Field>
AlgebraPresentation<Field> make_algebra(const Field& f, const std::string& label, std::vector<std::string> names,
                                        std::vector<int> degrees, const std::vector<std::string>& rels) {
  AlgebraPresentation<Field> a{f, GeneratorSet(std::move(names), std::move(degrees)), {}, label};
  for (const auto& r : rels) a.relations.push_back(parse_polynomial(f, a.gens, r));
  return a;
}

}  // namespace detail

/// The subalgebra R = k + Uy of U = k<x,y>/(yx - xy - x^2), generated by y
/// and xy, presented through degree rel_bound.
template <class Field>
EmbeddedPresentation<Field> jordan_subalgebra(const GroebnerData<Field>& gu, int rel_bound) {
  const auto& u = gu.algebra();
  return subalgebra_presentation(gu, {parse_polynomial(u.field, u.gens, "y"), parse_polynomial(u.field, u.gens, "x*y")},
                                 2, rel_bound);
}

template <class Field>
Corpus<Field> default_corpus(const Field& f = Field{}) {
  using detail::make_algebra;
  Corpus<Field> c;
  auto add_alg = [&](AlgebraPresentation<Field> a, Window w) {
    c.algebras.push_back({a.label, std::move(a), w});
    return c.algebras.back().algebra;
  };
  auto add_mod = [&](const AlgebraPresentation<Field>& a, ModulePresentation<Field> m, int valid = INT_MAX) {
    c.modules.push_back({a.label + ":" + m.label, a.label, std::move(m), valid});
  };
  auto standard = [&](const AlgebraPresentation<Field>& a) {
    add_mod(a, trivial_module(a));
    add_mod(a, free_module_presentation(a, FreeModule{{0}}));
  };

  auto kx = add_alg(make_algebra(f, "kx", {"x"}, {1}, {}), {8, 16});
  standard(kx);
  add_mod(kx, free_module_presentation(kx, FreeModule{{1}}, Side::left, "A(-1)"));
  add_mod(kx, cyclic_quotient(kx, {"x^2"}));

  auto kx2 = add_alg(make_algebra(f, "kx2", {"x"}, {2}, {}), {8, 16});
  standard(kx2);
  add_mod(kx2, cyclic_quotient(kx2, {"x^2"}));

  auto kxy = add_alg(make_algebra(f, "kxy", {"x", "y"}, {1, 1}, {"x*y - y*x"}), {8, 16});
  standard(kxy);
  add_mod(kxy, free_module_presentation(kxy, FreeModule{{1}}, Side::left, "A(-1)"));
  for (const auto& q : std::vector<std::vector<std::string>>{{"x"},
                                                             {"y"},
                                                             {"x^2"},
                                                             {"x*y"},
                                                             {"x*y^2"},
                                                             {"x^2", "y"},
                                                             {"x", "y^2"},
                                                             {"x^2", "x*y"},
                                                             {"x^2", "y^2"},
                                                             {"x^3", "x*y"},
                                                             {"x^2", "x*y", "y^2"}})
    add_mod(kxy, cyclic_quotient(kxy, q));
  c.truncation_modules = {"kxy:A", "kxy:A/(x^2)", "kxy:A/(x)"};

  add_alg(make_algebra(f, "x3", {"x"}, {1}, {"x^3"}), {8, 16});
  standard(c.algebras.back().algebra);

  auto du = add_alg(make_algebra(f, "downup", {"x", "y"}, {1, 1}, {"x^2*y - y*x^2", "x*y^2 - y^2*x"}), {8, 16});
  standard(du);
  add_mod(du, free_module_presentation(du, FreeModule{{1}}, Side::left, "A(-1)"));
  for (const auto& q : std::vector<std::vector<std::string>>{{"x"},
                                                             {"y"},
                                                             {"x^2"},
                                                             {"y^2"},
                                                             {"x*y"},
                                                             {"y*x"},
                                                             {"x", "y^2"},
                                                             {"x^2", "y"},
                                                             {"x*y", "y*x"},
                                                             {"x^2", "y^2"}})
    add_mod(du, cyclic_quotient(du, q));

  auto U = add_alg(make_algebra(f, "U", {"x", "y"}, {1, 1}, {"y*x - x*y - x^2"}), {8, 16});
  standard(U);
  add_mod(U, cyclic_quotient(U, {"x"}));
  add_mod(U, cyclic_quotient(U, {"y"}));

  // R = k + Uy inside U, windowed.
  {
    const int dmax = 14;
    auto gu = compute_groebner(U, dmax);
    auto sub = jordan_subalgebra(gu, dmax);
    sub.presentation.label = "R";
    auto R = add_alg(sub.presentation, {4, dmax});
    add_mod(R, trivial_module(R));
    auto gr = compute_groebner(R, dmax);
    AlgebraMap<Field> phi{R, U, sub.images};
    auto ru = restrict_scalars(gu, gr, phi, free_module_presentation(U, FreeModule{{0}}), dmax, dmax);
    ru.module.label = "U";
    add_mod(R, ru.module, ru.valid_through);
  }

  auto tensor = [&](const AlgebraPresentation<Field>& l, const AlgebraPresentation<Field>& r, Window w) {
    auto t = tensor_algebra(l, r);
    c.tensors.push_back({t.label, l.label, r.label});
    auto a = add_alg(std::move(t), w);
    add_mod(a, trivial_module(a));
  };
  tensor(du, kx, {8, 12});
  tensor(kx, kx2, {8, 16});
  tensor(c.algebras[3].algebra, kx, {6, 12});  // x3 (x) k[x]: k does not resolve finitely
  return c;
}

/// Random minimal complex F_s -> ... -> F_0 over g's algebra with shifts in
/// [lo, hi], consecutive maps composing to zero.
template <class Field>
FreeComplex<Field> random_minimal_complex(const GroebnerData<Field>& g, std::mt19937& rng, int max_len = 3,
                                          int lo = -5, int hi = 5) {
  using K = typename Field::scalar;
  auto uni = [&](int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); };
  int s = uni(0, max_len);
  std::vector<FreeModule> F(s + 1);
  for (int i = 0; i <= s; ++i) {
    int r = uni(1, 3);
    for (int k = 0; k < r; ++k) F[i].shifts.push_back(uni(lo, hi));
    std::sort(F[i].shifts.begin(), F[i].shifts.end());
  }
  auto coef = [&] {
    int c = 0;
    while (c == 0) c = uni(-3, 3);
    return g.field().from_int(c);
  };
  std::vector<std::vector<PolyVector<K>>> maps(s + 1);  // maps[i]: F_i -> F_{i-1}
  for (int i = 1; i <= s; ++i) {
    GradedFree<Field> src(g, Side::left, F[i]);
    for (int sigma : F[i].shifts) {
      PolyVector<K> img(F[i - 1].rank());
      if (i == 1) {
        for (std::size_t j = 0; j < F[0].rank(); ++j) {
          int m = sigma - F[0].shifts[j];
          if (m < 1) continue;
          std::vector<Term<K>> raw;
          for (const auto& w : g.normal_words(m))
            if (uni(0, 2)) raw.push_back({w, coef()});
          img[j] = NcPolynomial<K>::from_terms(g.gens(), std::move(raw));
        }
      } else {
        // Kernel of the previous map in degree sigma, with zero constant coordinates.
        FreeMap<Field> prev(g, Side::left, F[i - 1], F[i - 2], maps[i - 1]);
        GradedFree<Field> mid(g, Side::left, F[i - 1]);
        auto off = mid.offsets(sigma);
        std::size_t dim = prev.target().dim(sigma);
        std::vector<SparseVector<K>> cols = prev.columns(sigma);
        std::uint32_t extra = 0;
        for (std::size_t j = 0; j < F[i - 1].rank(); ++j)
          if (F[i - 1].shifts[j] == sigma) {
            auto& c = cols[off[j]];
            c.push_back({static_cast<std::uint32_t>(dim + extra), g.one()});
            ++extra;
          }
        auto ker = kernel_of_columns(dim + extra, cols, g.one());
        if (!ker.empty()) {
          std::vector<Entry<K>> raw;
          for (const auto& v : ker) {
            auto c = coef();
            for (const auto& e : v) raw.push_back({e.idx, e.val * c});
          }
          img = mid.element(canonicalize(std::move(raw)), sigma);
        }
      }
      maps[i].push_back(std::move(img));
    }
  }
  FreeComplex<Field> out;
  out.side = Side::left;
  out.p_lo = -s;
  for (int i = s; i >= 0; --i) out.terms.push_back(F[i]);
  for (int i = s; i >= 1; --i) out.diffs.push_back(maps[i]);
  out.minimal = true;
  return out;
}

/// Both sides of the duality comparison for a minimal complex F_s .. F_0:
/// max_{j<=c} {-ged H^{s-j}(F^dual) + xi j} and max_{j<=c} {t(F_{s-j}) + xi j}.
struct DualityComparison {
  std::vector<ExtendedValue> lhs, rhs;  // index c
  bool resolved = true;
  std::string note;
};

template <class Field>
DualityComparison compare_dual_complex(const FreeComplex<Field>& f, const GroebnerData<Field>& g, const Rational& xi) {
  DualityComparison out;
  int s = -f.p_lo;
  auto dual = dualize(f);
  int lo = INT_MAX, lowest = INT_MAX;
  for (const auto& t : dual.terms)
    if (!t.empty()) lo = std::min(lo, t.min_shift()), lowest = std::min(lowest, t.min_shift());
  int ceiling = g.dmax() + lowest;
  std::vector<std::optional<int>> ged(s + 1);
  int hi = std::min(ceiling, lo + 8);
  while (true) {
    auto coh = complex_cohomology(dual, g, lo, hi);
    for (int j = 0; j <= s; ++j) {
      auto it = coh.ged.find(s - j);
      ged[j] = it == coh.ged.end() ? std::nullopt : it->second.value;
    }
    // A group with nothing in [lo, hi] contributes at most -(hi + 1) + xi*j.
    out.lhs.clear();
    out.rhs.clear();
    out.resolved = true;
    for (int c = 0; c <= s; ++c) {
      std::optional<Rational> best, bound;
      std::optional<Rational> rbest;
      for (int j = 0; j <= c; ++j) {
        const auto& term = f.term(-(s - j));
        if (!term.empty()) {
          Rational v = Rational(term.max_shift()) + xi * Rational(j);
          if (!rbest || *rbest < v) rbest = v;
        }
        bool zero_term = dual.term(s - j).empty();
        if (ged[j]) {
          Rational v = Rational(-*ged[j]) + xi * Rational(j);
          if (!best || *best < v) best = v;
        } else if (!zero_term) {
          Rational b = Rational(-(hi + 1)) + xi * Rational(j);
          if (!bound || *bound < b) bound = b;
        }
      }
      if (bound && (!best || !(*bound < *best))) out.resolved = false;
      out.lhs.push_back(best ? ExtendedValue::finite(*best) : ExtendedValue::neg_inf());
      out.rhs.push_back(rbest ? ExtendedValue::finite(*rbest) : ExtendedValue::neg_inf());
    }
    if (out.resolved || hi >= ceiling) break;
    hi = std::min(ceiling, hi + 4);
  }
  if (!out.resolved) out.note = "cohomology vanishing not settled through degree " + std::to_string(hi);
  return out;
}

/// Runs suites over a corpus, computing each Groebner basis, resolution and
/// local cohomology table once.
template <class Field>
class Verifier {
 public:
  using K = typename Field::scalar;

  Verifier(Corpus<Field> corpus, std::vector<Weight> weights)
      : corpus_(std::move(corpus)), weights_(std::move(weights)) {}

  const Corpus<Field>& corpus() const { return corpus_; }
  const std::vector<Weight>& weights() const { return weights_; }

  std::vector<VerificationCase> run(const std::string& suite) {
    if (!is_suite(suite)) throw InputError("unknown suite '" + suite + "'");
    std::vector<VerificationCase> out;
    if (suite == "thm33") for_modules(out, suite, &Verifier::thm33);
    else if (suite == "thm35") for_modules(out, suite, &Verifier::thm35);
    else if (suite == "thm310") thm310(out);
    else if (suite == "cor312") cor312(out);
    else if (suite == "thm313") thm313(out);
    else if (suite == "thm45") thm45(out);
    else if (suite == "thm46") for_modules(out, suite, &Verifier::thm46);
    else if (suite == "lem27") lem27(out);
    else if (suite == "lem31") for_modules(out, suite, &Verifier::lem31);
    else if (suite == "rem47") rem47(out);
    else asreg_cert(out);
    sort_cases(out);
    return out;
  }

  std::vector<VerificationCase> run(const std::vector<std::string>& suites) {
    std::vector<VerificationCase> all;
    for (const auto& s : suites) {
      auto part = run(s);
      all.insert(all.end(), part.begin(), part.end());
    }
    sort_cases(all);
    return all;
  }

  static void sort_cases(std::vector<VerificationCase>& v) {
    std::stable_sort(v.begin(), v.end(), [](const VerificationCase& a, const VerificationCase& b) {
      if (a.subject != b.subject) return a.subject < b.subject;
      if (a.suite != b.suite) return a.suite < b.suite;
      if (a.xi.has_value() != b.xi.has_value()) return !a.xi.has_value();
      if (a.xi && !(*a.xi == *b.xi)) {
        if (!(a.xi->xi0 == b.xi->xi0)) return a.xi->xi0 < b.xi->xi0;
        return a.xi->xi1 < b.xi->xi1;
      }
      return a.check < b.check;
    });
  }

  // Cached per-subject data, exposed for the acceptance checks.
  struct AlgebraData {
    const AlgebraSubject<Field>* subject = nullptr;
    std::unique_ptr<GroebnerData<Field>> g;
    std::optional<Resolution<Field>> kres;
    ASType type;
    std::string error;
  };
  struct ModuleData {
    const ModuleSubject<Field>* subject = nullptr;
    AlgebraData* algebra = nullptr;
    std::optional<Resolution<Field>> res;
    std::optional<LocalCohomologyDegrees> lc;
    std::string error;     // resolution could not be computed
    std::string lc_error;  // local cohomology unavailable
  };

  AlgebraData& algebra(const std::string& label) {
    auto it = algebras_.find(label);
    if (it != algebras_.end()) return it->second;
    auto& d = algebras_[label];
    for (const auto& a : corpus_.algebras)
      if (a.label == label) d.subject = &a;
    if (!d.subject) throw InputError("corpus has no algebra '" + label + "'");
    try {
      const auto& w = d.subject->window;
      d.g = std::make_unique<GroebnerData<Field>>(compute_groebner(d.subject->algebra, w.dmax));
      d.kres = minimal_free_resolution(trivial_module(d.subject->algebra), *d.g, w.hmax, w.dmax);
      d.type = as_type_from_resolution(*d.kres, *d.g);
    } catch (const Refusal& e) {
      d.error = e.what();
      d.type.evidence = e.what();
    }
    return d;
  }

  ModuleData& module(const std::string& label) {
    auto it = modules_.find(label);
    if (it != modules_.end()) return it->second;
    auto& d = modules_[label];
    for (const auto& m : corpus_.modules)
      if (m.label == label) d.subject = &m;
    if (!d.subject) throw InputError("corpus has no module '" + label + "'");
    d.algebra = &algebra(d.subject->algebra);
    if (!d.algebra->g) {
      d.error = d.lc_error = d.algebra->error;
      return d;
    }
    try {
      const auto& w = d.algebra->subject->window;
      int hmax = w.hmax;
      if (d.algebra->type.certified()) hmax = std::max(hmax, d.algebra->type.d + 1);
      d.res = minimal_free_resolution(d.subject->module, *d.algebra->g, hmax,
                                      std::min(w.dmax, d.subject->valid_through));
      d.lc = local_cohomology_from_resolution(*d.res, d.algebra->type, *d.algebra->g);
    } catch (const Refusal& e) {
      (d.res ? d.lc_error : d.error) = e.what();
      if (d.error.empty() && d.lc_error.empty()) d.lc_error = e.what();
    }
    return d;
  }

 private:
  using ModuleCheck = void (Verifier::*)(ModuleData&, const Weight&, VerificationCase&);

  static VerificationCase make_case(const std::string& suite, const std::string& subject,
                                    std::optional<Weight> xi = std::nullopt, std::string check = "") {
    VerificationCase c;
    c.suite = suite;
    c.subject = subject;
    c.xi = std::move(xi);
    c.check = std::move(check);
    return c;
  }

  static void skip(VerificationCase& c, std::string reason) {
    c.outcome = Outcome::skipped;
    c.reason = std::move(reason);
  }

  static std::string show(const ExtendedValue& v) {
    return v.status() == Status::exact ? v.value_string() : v.value_string() + " [" + status_name(v.status()) + "]";
  }

  /// Reason the module lacks what a local-duality suite needs, if any.
  static std::optional<std::string> unsupported(const ModuleData& m) {
    if (!m.error.empty()) return m.error;
    if (!m.algebra->type.certified()) return "algebra not certified AS Gorenstein: " + m.algebra->type.evidence;
    if (!m.res || !m.res->betti.terminated_at) return "resolution does not terminate within the window";
    if (!m.lc) return m.lc_error.empty() ? std::string("local cohomology unavailable") : m.lc_error;
    return std::nullopt;
  }

  void for_modules(std::vector<VerificationCase>& out, const std::string& suite, ModuleCheck fn) {
    for (const auto& ms : corpus_.modules) {
      auto& m = module(ms.label);
      for (const auto& xi : weights_) {
        auto c = make_case(suite, ms.label, xi);
        guarded(c, [&] { (this->*fn)(m, xi, c); });
        out.push_back(std::move(c));
      }
    }
  }

  template <class Fn>
  static void guarded(VerificationCase& c, Fn&& fn) {
    try {
      fn();
    } catch (const Refusal& e) {
      c.lhs.clear();
      c.rhs.clear();
      c.witness.clear();
      skip(c, e.what());
    }
  }

  static void judge(VerificationCase& c, bool ok, const std::string& witness) {
    c.outcome = ok ? Outcome::pass : Outcome::fail;
    c.witness = witness;
  }

  // Torreg = Extreg <= CMreg + Torreg(k).
  void thm33(ModuleData& m, const Weight& xi, VerificationCase& c) {
    if (xi.xi0.sign() <= 0) return skip(c, "needs xi0 > 0");
    if (auto r = unsupported(m)) return skip(c, *r);
    if (!m.algebra->kres->betti.terminated_at) return skip(c, "resolution of k does not terminate");
    auto T = torreg(m.res->betti, xi);
    auto E = extreg_via_hom(*m.res, xi);
    auto C = cmreg_module(*m.lc, xi);
    auto Tk = torreg(m.algebra->kres->betti, xi);
    auto R = C + Tk;
    c.lhs = T.value_string();
    c.rhs = R.value_string();
    judge(c, same_value(T, E) && leq_value(T, R),
          "Torreg=" + show(T) + " Extreg=" + show(E) + " CMreg=" + show(C) + " Torreg(k)=" + show(Tk));
  }

  // CMreg <= Extreg + CMreg(A).
  void thm35(ModuleData& m, const Weight& xi, VerificationCase& c) {
    if (xi.xi0.sign() <= 0) return skip(c, "needs xi0 > 0");
    if (auto r = unsupported(m)) return skip(c, *r);
    auto C = cmreg_module(*m.lc, xi);
    auto E = extreg_via_hom(*m.res, xi);
    auto CA = cmreg_algebra(m.algebra->type, xi);
    auto R = E + CA;
    c.lhs = C.value_string();
    c.rhs = R.value_string();
    judge(c, leq_value(C, R), "CMreg=" + show(C) + " Extreg=" + show(E) + " CMreg(A)=" + CA.value_string());
  }

  void thm310(std::vector<VerificationCase>& out) {
    for (const auto& ms : corpus_.modules) {
      auto& m = module(ms.label);
      for (const auto& xi : weights_) {
        auto c = make_case("thm310", ms.label, xi, "equality");
        guarded(c, [&] { thm310_point(m, xi, c); });
        out.push_back(std::move(c));
      }
      auto c = make_case("thm310", ms.label, std::nullopt, "affine");
      guarded(c, [&] { thm310_affine(m, c); });
      out.push_back(std::move(c));
    }
  }

  void thm310_point(ModuleData& m, const Weight& xi, VerificationCase& c) {
    if (xi.xi0.sign() <= 0) return skip(c, "needs xi0 > 0");
    if (xi.xi0 < xi.xi1) return skip(c, "equality is claimed only for 0 <= xi1 <= xi0 and xi1 << 0");
    if (auto r = unsupported(m)) return skip(c, *r);
    auto C = cmreg_module(*m.lc, xi);
    auto T = torreg(m.res->betti, xi);
    auto R = T + cmreg_algebra(m.algebra->type, xi);
    c.lhs = C.value_string();
    c.rhs = R.value_string();
    std::string w = "CMreg=" + show(C) + " Torreg=" + show(T);
    if (same_value(C, R)) return judge(c, true, w);
    if (xi.xi1.sign() >= 0) return judge(c, false, w);
    // Negative xi1: only a violation once both sides are on their asymptotic lines.
    auto fc = cmreg_asymptotic(*m.lc, xi.xi0);
    auto ft = torreg_asymptotic(m.res->betti, xi.xi0);
    bool below = (!fc || !fc->threshold || !(*fc->threshold < xi.xi1)) &&
                 (!ft || !ft->threshold || !(*ft->threshold < xi.xi1));
    if (below) return judge(c, false, w + " (below both asymptotic thresholds)");
    skip(c, "sides differ above the asymptotic thresholds; equality is only claimed for xi1 << 0 (" + w + ")");
  }

  void thm310_affine(ModuleData& m, VerificationCase& c) {
    if (auto r = unsupported(m)) return skip(c, *r);
    const auto& t = m.algebra->type;
    auto fc = cmreg_asymptotic(*m.lc, Rational(1));
    auto ft = torreg_asymptotic(m.res->betti, Rational(1));
    if (!fc || !ft) return skip(c, "zero module");
    Rational ti = ft->intercept - Rational(t.l), ts = ft->slope + Rational(t.d);
    auto dep = depth(*m.lc);
    auto pd = pdim(m.res->betti);
    c.lhs = "slope=" + fc->slope.to_string() + " intercept=" + fc->intercept.to_string();
    c.rhs = "slope=" + ts.to_string() + " intercept=" + ti.to_string();
    bool ok = fc->slope == ts && fc->intercept == ti;
    // The CM line is (depth, deg H^depth); the Tor line is (-pdim, t_pdim).
    ok = ok && dep.is_finite() && fc->slope == dep.value() && pd.is_finite() && ft->slope == -pd.value();
    judge(c, ok, "depth=" + show(dep) + " pdim=" + show(pd) + " d(A)=" + std::to_string(t.d) +
                     " l=" + std::to_string(t.l));
  }

  void cor312(std::vector<VerificationCase>& out) {
    for (const auto& ms : corpus_.modules) {
      auto& m = module(ms.label);
      auto ab = make_case("cor312", ms.label, std::nullopt, "auslander_buchsbaum");
      auto dg = make_case("cor312", ms.label, std::nullopt, "degree_identity");
      guarded(ab, [&] {
        if (auto r = unsupported(m)) return skip(ab, *r);
        auto pd = pdim(m.res->betti);
        auto dep = depth(*m.lc);
        if (!dep.is_finite()) return skip(ab, "depth is infinite");
        ab.lhs = (pd.value() + dep.value()).to_string();
        ab.rhs = std::to_string(m.algebra->type.d);
        judge(ab, pd.value() + dep.value() == Rational(m.algebra->type.d),
              "pdim=" + show(pd) + " depth=" + show(dep));
      });
      guarded(dg, [&] {
        if (auto r = unsupported(m)) return skip(dg, *r);
        auto dep = depth(*m.lc);
        if (!dep.is_finite()) return skip(dg, "depth is infinite");
        long dj = dep.value().floor();
        auto p = m.res->betti.max_row();
        const auto& h = m.lc->deg[dj];
        auto rhs = ExtendedValue::finite(Rational(*m.res->betti.t(*p) - m.algebra->type.l));
        dg.lhs = h.value_string();
        dg.rhs = rhs.value_string();
        judge(dg, same_value(h, rhs),
              "deg H^" + std::to_string(dj) + "=" + show(h) + " t_" + std::to_string(*p) + "=" +
                  std::to_string(*m.res->betti.t(*p)) + " deg H^d(A)=" + std::to_string(-m.algebra->type.l));
      });
      out.push_back(std::move(ab));
      out.push_back(std::move(dg));
    }
  }

  void thm313(std::vector<VerificationCase>& out) {
    for (const auto& label : corpus_.truncation_modules) {
      auto& m = module(label);
      for (const auto& xi : weights_) {
        auto c = make_case("thm313", label, xi);
        guarded(c, [&] { thm313_point(m, xi, c); });
        out.push_back(std::move(c));
      }
    }
  }

 public:
  /// Betti table of M_{>=s}(s), resolved through the window where its presentation is valid.
  BettiTable truncated_table(ModuleData& m, int s) {
    auto key = std::make_pair(m.subject->label, s);
    auto it = truncations_.find(key);
    if (it != truncations_.end()) return it->second;
    const auto& g = *m.algebra->g;
    auto tr = truncate_module(m.subject->module, s, g);
    auto shifted = shift_module(tr.module, s);
    const auto& w = m.algebra->subject->window;
    int top = tr.valid_through == INT_MAX ? w.dmax : tr.valid_through - s;
    auto res = minimal_free_resolution(shifted, g, w.hmax, top);
    return truncations_.emplace(key, res.betti).first->second;
  }

 private:
  void thm313_point(ModuleData& m, const Weight& xi, VerificationCase& c) {
    if (!(xi.xi0 == Rational(1))) return skip(c, "stated for xi0 = 1");
    if (auto r = unsupported(m)) return skip(c, *r);
    const auto& kb = m.algebra->kres->betti;
    if (!kb.terminated_at) return skip(c, "resolution of k does not terminate");
    auto cval = torreg(kb, xi);
    Rational eps = std::max(Rational(0), xi.xi1 - Rational(1));
    auto cm = cmreg_module(*m.lc, xi);
    if (!cm.is_finite()) return skip(c, "CM regularity is not finite");
    int s0 = static_cast<int>(cm.value().ceil());
    std::string witness, offending;
    for (int s : {s0, s0 + 2}) {
      auto b = truncated_table(m, s);
      for (int i = 0; i <= b.hmax; ++i) {
        auto lo = b.ged(i), hi = b.t(i);
        if (!lo) continue;
        Rational bound = cval.value() + eps + Rational(i) * xi.xi1;
        if (*lo < i) offending += " s=" + std::to_string(s) + ": ged Tor_" + std::to_string(i) + "=" + std::to_string(*lo) + " < " + std::to_string(i);
        if (bound < Rational(*hi))
          offending += " s=" + std::to_string(s) + ": (i,j)=(" + std::to_string(i) + "," + std::to_string(*hi) +
                       ") above " + bound.to_string();
      }
      witness += " s=" + std::to_string(s) + " rows=" + std::to_string(b.max_row().value_or(-1)) +
                 (b.exact() ? " exact" : " windowed");
    }
    c.lhs = "max_i (deg Tor_i - i*xi1)";
    c.rhs = (cval.value() + eps).to_string();
    if (!offending.empty() && cm.status() != Status::exact)
      return skip(c, "hypothesis s >= CMreg not certified (CMreg " + show(cm) + "):" + offending);
    judge(c, offending.empty(),
          offending.empty() ? "c=" + cval.value_string() + " eps=" + eps.to_string() + " CMreg=" + show(cm) + witness
                            : offending.substr(1));
  }

 public:
  /// The complexes checked by the duality suite: the Koszul complex of k and seeded random ones.
  std::vector<std::pair<std::string, FreeComplex<Field>>> complexes() {
    auto& a = algebra(corpus_.complex_algebra);
    std::vector<std::pair<std::string, FreeComplex<Field>>> out;
    if (!a.g) return out;
    out.emplace_back(corpus_.complex_algebra + ":koszul(k)", a.kres->complex);
    std::mt19937 rng(corpus_.seed);
    for (int n = 1; n <= corpus_.random_complexes; ++n) {
      std::string id = std::to_string(n);
      if (id.size() < 2) id = "0" + id;
      out.emplace_back(corpus_.complex_algebra + ":random" + id, random_minimal_complex(*a.g, rng));
    }
    return out;
  }

 private:
  void thm45(std::vector<VerificationCase>& out) {
    auto& a = algebra(corpus_.complex_algebra);
    for (auto& [label, f] : complexes()) {
      bool ok_complex = is_minimal_complex(f, a.g->gens()) && check_dd(f, *a.g, a.g->dmax());
      std::map<std::string, DualityComparison> cache;
      for (const auto& xi : weights_) {
        auto c = make_case("thm45", label, xi);
        guarded(c, [&] {
          if (!(xi.xi0 == Rational(1)) || Rational(1) < xi.xi1) return skip(c, "needs xi0 = 1 and xi1 <= 1");
          if (!ok_complex) return skip(c, "not a minimal complex");
          auto cmp = compare_dual_complex(f, *a.g, xi.xi1);
          if (!cmp.resolved) return skip(c, cmp.note);
          std::string bad, all;
          for (std::size_t k = 0; k < cmp.lhs.size(); ++k) {
            std::string pair = " c=" + std::to_string(k) + ":" + cmp.lhs[k].value_string() + "/" + cmp.rhs[k].value_string();
            all += pair;
            if (!same_value(cmp.lhs[k], cmp.rhs[k])) bad += pair;
          }
          c.lhs = cmp.lhs.back().value_string();
          c.rhs = cmp.rhs.back().value_string();
          judge(c, bad.empty(), "s=" + std::to_string(-f.p_lo) + (bad.empty() ? all : bad));
        });
        out.push_back(std::move(c));
      }
    }
  }

  void thm46(ModuleData& m, const Weight& xi, VerificationCase& c) {
    if (!(xi.xi0 == Rational(1)) || Rational(1) < xi.xi1) return skip(c, "needs xi0 = 1 and xi1 <= 1");
    if (auto r = unsupported(m)) return skip(c, *r);
    const auto& t = m.algebra->type;
    const auto& b = m.res->betti;
    const auto& H = m.lc->deg;
    const Rational& x = xi.xi1;
    auto lhs_w = [&](int w) {
      auto best = ExtendedValue::neg_inf();
      for (int j = 0; j <= w; ++j)
        if (H[j].is_finite()) {
          auto v = ExtendedValue::finite(H[j].value() + x * Rational(j));
          if (best.is_neg_inf() || less_value(best, v)) best = v;
        }
      return best;
    };
    auto rhs_w = [&](int w) {
      auto best = ExtendedValue::neg_inf();
      for (int j = t.d - w; j <= t.d; ++j)
        if (auto tj = b.t(j)) {
          auto v = ExtendedValue::finite(Rational(*tj) - x * Rational(j));
          if (best.is_neg_inf() || less_value(best, v)) best = v;
        }
      if (best.is_neg_inf()) return best;
      return ExtendedValue::finite(best.value() - Rational(t.l) + x * Rational(t.d));
    };
    std::string bad;
    int wmax = -1;
    for (int w = 0; w <= t.d; ++w) {
      if (!H[w].is_neg_inf()) wmax = w;
      auto L = lhs_w(w), R = rhs_w(w);
      if (!same_value(L, R)) bad += " w=" + std::to_string(w) + ":" + L.value_string() + "/" + R.value_string();
    }
    auto cm = cmreg_module(*m.lc, xi);
    auto formula = wmax < 0 ? ExtendedValue::neg_inf() : rhs_w(wmax);
    if (!same_value(cm, formula)) bad += " part2:" + cm.value_string() + "/" + formula.value_string();
    int nonzero = 0;
    for (const auto& h : H) nonzero += h.is_neg_inf() ? 0 : 1;
    std::string cm_note;
    if (nonzero == 1) {
      auto via = cmreg_via_tor(b, t, wmax, xi);
      if (!same_value(cm, via)) bad += " part3:" + cm.value_string() + "/" + via.value_string();
      cm_note = " " + std::to_string(wmax) + "-CM";
    }
    c.lhs = cm.value_string();
    c.rhs = formula.value_string();
    judge(c, bad.empty(), bad.empty() ? "CMreg=" + show(cm) + cm_note : bad.substr(1));
  }

  void lem27(std::vector<VerificationCase>& out) {
    for (const auto& ts : corpus_.tensors) {
      auto& T = algebra(ts.label);
      auto& L = algebra(ts.left);
      auto& R = algebra(ts.right);
      for (const auto& xi : weights_) {
        auto c = make_case("lem27", ts.label, xi);
        guarded(c, [&] {
          if (xi.xi0.sign() <= 0) return skip(c, "needs xi0 > 0");
          for (auto* d : {&T, &L, &R}) {
            if (!d->kres) return skip(c, d->subject->label + ": " + d->error);
            if (!d->kres->betti.terminated_at)
              return skip(c, "resolution of k over " + d->subject->label + " does not terminate");
          }
          auto v = torreg(T.kres->betti, xi);
          auto a = torreg(L.kres->betti, xi), b = torreg(R.kres->betti, xi);
          auto sum = kunneth_torreg(a, b);
          c.lhs = v.value_string();
          c.rhs = sum.value_string();
          judge(c, same_value(v, sum), ts.left + "=" + a.value_string() + " " + ts.right + "=" + b.value_string());
        });
        out.push_back(std::move(c));
      }
    }
  }

 public:
  /// Resolution and local cohomology of M(1), cached.
  std::pair<BettiTable, std::optional<LocalCohomologyDegrees>> shifted_data(ModuleData& m) {
    auto it = shifted_.find(m.subject->label);
    if (it != shifted_.end()) return it->second;
    const auto& w = m.algebra->subject->window;
    auto res = minimal_free_resolution(shift_module(m.subject->module, 1), *m.algebra->g,
                                       std::max(w.hmax, m.algebra->type.d + 1),
                                       std::min(w.dmax, m.subject->valid_through));
    std::optional<LocalCohomologyDegrees> lc;
    if (res.betti.terminated_at && m.algebra->type.certified())
      lc = local_cohomology_from_resolution(res, m.algebra->type, *m.algebra->g);
    return shifted_.emplace(m.subject->label, std::make_pair(res.betti, lc)).first->second;
  }

 private:
  // Scaling and the two shift laws.
  void lem31(ModuleData& m, const Weight& xi, VerificationCase& c) {
    if (!m.error.empty()) return skip(c, m.error);
    if (!m.res->betti.terminated_at) return skip(c, "resolution does not terminate within the window");
    const auto& b = m.res->betti;
    auto T = torreg(b, xi);
    std::optional<ExtendedValue> C;
    if (m.lc) C = cmreg_module(*m.lc, xi);
    std::string bad;
    auto expect = [&](const std::string& what, const ExtendedValue& got, const ExtendedValue& want) {
      if (!same_value(got, want)) bad += " " + what + ":" + got.value_string() + "/" + want.value_string();
    };
    for (const char* l : {"2", "1/3"}) {
      Rational lam = Rational::parse(l);
      expect(std::string("Torreg scale ") + l, torreg(b, xi.scaled(lam)), T.scaled(lam));
      if (C) expect(std::string("CMreg scale ") + l, cmreg_module(*m.lc, xi.scaled(lam)), C->scaled(lam));
    }
    auto minus = [](const ExtendedValue& v, const Rational& r) {
      return v.is_finite() ? ExtendedValue::finite(v.value() - r) : v;
    };
    auto [b1, lc1] = shifted_data(m);
    expect("Torreg M(1)", torreg(b1, xi), minus(T, xi.xi0));
    if (C && lc1) expect("CMreg M(1)", cmreg_module(*lc1, xi), minus(*C, xi.xi0));
    // Homological shift X[1]: Tor_i(X[1]) = Tor_{i-1}(X) and H^j(X[1]) = H^{j+1}(X).
    std::vector<std::tuple<int, int, long>> tor_shift;
    for (const auto& [k, v] : b.entries) tor_shift.emplace_back(k.second, -(k.first + 1), v);
    expect("Torreg X[1]", weighted_extremum(tor_shift, xi, Extremum::sup), minus(T, xi.xi1));
    if (C) {
      std::vector<std::tuple<int, int, long>> lc_shift;
      for (std::size_t j = 0; j < m.lc->deg.size(); ++j)
        if (m.lc->deg[j].is_finite()) {
          lc_shift.emplace_back(static_cast<int>(m.lc->deg[j].value().floor()), static_cast<int>(j) - 1, 1);
        }
      expect("CMreg X[1]", weighted_extremum(lc_shift, xi, Extremum::sup), minus(*C, xi.xi1));
    }
    c.lhs = T.value_string();
    c.rhs = C ? C->value_string() : "n/a";
    judge(c, bad.empty(), bad.empty() ? "Torreg=" + show(T) + (C ? " CMreg=" + show(*C) : "") : bad.substr(1));
  }

  void rem47(std::vector<VerificationCase>& out) {
    for (const auto& ms : corpus_.modules) {
      auto& m = module(ms.label);
      auto c = make_case("rem47", ms.label);
      guarded(c, [&] {
        if (auto r = unsupported(m)) return skip(c, *r);
        int nonzero = 0;
        for (const auto& h : m.lc->deg) nonzero += h.is_neg_inf() ? 0 : 1;
        if (nonzero != 1) return skip(c, "module is not Cohen-Macaulay");
        const auto& b = m.res->betti;
        int p = *b.max_row();
        std::string bad, all;
        for (int j = 0; j <= p; ++j) {
          auto tj = b.t(j);
          if (!tj) {
            bad += " t_" + std::to_string(j) + " missing";
            continue;
          }
          all += " t_" + std::to_string(j) + "=" + std::to_string(*tj);
          if (*b.t(p) - *tj < p - j)
            bad += " j=" + std::to_string(j) + ": t_p - t_j=" + std::to_string(*b.t(p) - *tj) + " < " +
                   std::to_string(p - j);
        }
        c.lhs = "min_j (t_p - t_j) - (p - j)";
        c.rhs = "0";
        judge(c, bad.empty(), bad.empty() ? "p=" + std::to_string(p) + all : bad.substr(1));
      });
      out.push_back(std::move(c));
    }
  }

  void asreg_cert(std::vector<VerificationCase>& out) {
    for (const auto& as : corpus_.algebras) {
      auto& a = algebra(as.label);
      std::optional<Weight> zero_at;
      for (const auto& xi : weights_) {
        auto c = make_case("asreg_cert", as.label, xi);
        guarded(c, [&] {
          if (!a.type.certified()) return skip(c, "not certified AS regular: " + a.type.evidence);
          if (xi.xi0.sign() <= 0) return skip(c, "needs xi0 > 0");
          auto v = asreg(a.kres->betti, a.type, xi);
          bool claims_zero = !(xi.xi0 < xi.xi1);
          c.lhs = v.value_string();
          c.rhs = claims_zero ? "0" : ">= 0";
          bool nonneg = leq_value(ExtendedValue::finite(Rational(0)), v);
          bool zero = same_value(v, ExtendedValue::finite(Rational(0)));
          if (zero && !zero_at) zero_at = xi;
          judge(c, nonneg && (!claims_zero || zero),
                "type (" + std::to_string(a.type.d) + "," + std::to_string(a.type.l) +
                    ") Torreg(k)=" + show(torreg(a.kres->betti, xi)));
        });
        out.push_back(std::move(c));
      }
      auto c = make_case("asreg_cert", as.label, std::nullopt, "existence");
      guarded(c, [&] {
        if (!a.type.certified()) return skip(c, "not certified AS regular: " + a.type.evidence);
        c.lhs = zero_at ? "ASreg=0 at " + zero_at->to_string() : "no grid weight with ASreg=0";
        c.rhs = "exists xi with xi0 > 0 and ASreg = 0";
        judge(c, zero_at.has_value(), "checked at grid weights only");
      });
      out.push_back(std::move(c));
    }
  }

  Corpus<Field> corpus_;
  std::vector<Weight> weights_;
  std::map<std::string, AlgebraData> algebras_;
  std::map<std::string, ModuleData> modules_;
  std::map<std::pair<std::string, int>, BettiTable> truncations_;
  std::map<std::string, std::pair<BettiTable, std::optional<LocalCohomologyDegrees>>> shifted_;
};

struct SuiteSummary {
  std::size_t pass = 0, fail = 0, skipped = 0;
};

inline std::map<std::string, SuiteSummary> summarize(const std::vector<VerificationCase>& cases) {
  std::map<std::string, SuiteSummary> out;
  for (const auto& c : cases) {
    auto& s = out[c.suite];
    if (c.outcome == Outcome::pass) ++s.pass;
    else if (c.outcome == Outcome::fail) ++s.fail;
    else ++s.skipped;
  }
  return out;
}

inline bool all_passed(const std::vector<VerificationCase>& cases) {
  return std::none_of(cases.begin(), cases.end(), [](const VerificationCase& c) { return c.outcome == Outcome::fail; });
}

inline nlohmann::ordered_json report_json(const std::vector<VerificationCase>& cases, const std::string& field,
                                          const std::string& version) {
  using J = nlohmann::ordered_json;
  J list = J::array();
  for (const auto& c : cases) {
    J e{{"suite", c.suite}, {"subject", c.subject}};
    if (!c.check.empty()) e["check"] = c.check;
    e["xi"] = c.xi ? J::array({c.xi->xi0.to_string(), c.xi->xi1.to_string()}) : J(nullptr);
    e["outcome"] = outcome_name(c.outcome);
    e["lhs"] = c.lhs;
    e["rhs"] = c.rhs;
    e["witness"] = c.witness;
    if (c.outcome == Outcome::skipped) e["reason"] = c.reason;
    list.push_back(std::move(e));
  }
  J summary = J::object();
  for (const auto& [s, v] : summarize(cases)) summary[s] = J{{"pass", v.pass}, {"fail", v.fail}, {"skipped", v.skipped}};
  return J{{"schema", 1}, {"version", version}, {"field", field}, {"summary", summary}, {"cases", list}};
}

inline std::string report_table(const std::vector<VerificationCase>& cases) {
  std::string out = "suite        pass  fail  skipped\n";
  auto pad = [](std::string s, std::size_t w) {
    if (s.size() < w) s += std::string(w - s.size(), ' ');
    return s;
  };
  for (const auto& [s, v] : summarize(cases))
    out += pad(s, 13) + pad(std::to_string(v.pass), 6) + pad(std::to_string(v.fail), 6) + std::to_string(v.skipped) + "\n";
  for (const auto& c : cases)
    if (c.outcome == Outcome::fail)
      out += "FAIL " + c.suite + " " + c.subject + (c.xi ? " xi=" + c.xi->to_string() : "") + ": " + c.witness + "\n";
  return out;
}

}  // namespace gradreg
