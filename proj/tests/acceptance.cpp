// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Criteria 1-11 are evaluated over Q and over F_32003; criterion 12 compares
// the two runs and repeats the full verification report for byte identity.

#include <climits>
#include <cstdio>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "gradreg/gradreg.hpp"

using namespace gradreg;

namespace {

struct Check {
  bool ok = true;
  std::string detail;     // first failures, for the report line
  std::string fingerprint;  // every computed value, compared across fields

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) detail = what;
      ok = false;
    }
  }
  void note(const std::string& v) { fingerprint += v + ";"; }
};

Rational q(const char* s) { return Rational::parse(s); }

template <class Field>
AlgebraPresentation<Field> algebra(const std::string& label, std::vector<std::string> names, std::vector<int> degrees,
                                   const std::vector<std::string>& rels) {
  Field f{};
  AlgebraPresentation<Field> a{f, GeneratorSet(std::move(names), std::move(degrees)), {}, label};
  for (const auto& r : rels) a.relations.push_back(parse_polynomial(f, a.gens, r));
  return a;
}

bool exact_finite(const ExtendedValue& v, const Rational& r) {
  return v.is_finite() && v.value() == r && v.status() == Status::exact;
}

// Down-up algebra: t-table, type, Torreg formula and ASreg signs.
template <class Field>
Check criterion1() {
  Check c;
  auto a = algebra<Field>("downup", {"x", "y"}, {1, 1}, {"x^2*y - y*x^2", "x*y^2 - y^2*x"});
  auto g = compute_groebner(a, 16);
  auto res = minimal_free_resolution(trivial_module(a), g, 8, 16);
  const auto& b = res.betti;
  c.expect(b.terminated_at == 3, "k resolution does not terminate at 3");
  std::vector<int> t;
  for (int i = 0; i <= 3; ++i) t.push_back(b.t(i).value_or(-1));
  c.expect(t == std::vector<int>({0, 1, 3, 4}), "t-table is not (0,1,3,4)");
  auto type = as_type_from_resolution(res, g);
  c.expect(type.kind == ASType::Kind::as_regular && type.d == 3 && type.l == 4, "AS type is not (3,4)");
  for (const char* s : {"0", "1", "5/4", "3/2", "2"}) {
    Rational x = q(s);
    Rational want = std::max({Rational(0), Rational(1) - x, Rational(3) - Rational(2) * x, Rational(4) - Rational(3) * x});
    auto v = torreg(b, Weight::of(x));
    c.note(v.to_string());
    c.expect(exact_finite(v, want), std::string("Torreg at xi1=") + s + " is " + v.to_string());
  }
  for (const char* s : {"0", "1/2", "1", "3/2", "2"}) {
    auto v = asreg(b, type, Weight::of(q(s)));
    c.note(v.to_string());
    bool zero_expected = !(Rational(1) < q(s));
    c.expect(v.is_finite() && (zero_expected ? v.value().is_zero() : v.value().sign() > 0),
             std::string("ASreg at xi1=") + s + " is " + v.to_string());
  }
  c.detail = c.ok ? "t=(0,1,3,4), type (3,4), Torreg and ASreg match at all points" : c.detail;
  return c;
}

// k[x] with deg x = 2.
template <class Field>
Check criterion2() {
  Check c;
  auto a = algebra<Field>("kx2", {"x"}, {2}, {});
  auto g = compute_groebner(a, 16);
  auto kres = minimal_free_resolution(trivial_module(a), g, 8, 16);
  auto type = as_type_from_resolution(kres, g);
  c.expect(type.certified() && type.d == 1 && type.l == 2, "type is not (1,2)");
  auto ares = minimal_free_resolution(free_module_presentation(a, FreeModule{{0}}), g, 8, 16);
  auto lc = local_cohomology_from_resolution(ares, type, g);
  for (int x : {1, 2, 3}) {
    Weight w = Weight::of(Rational(x));
    auto cm = cmreg_module(lc, w);
    auto cma = cmreg_algebra(type, w);
    auto tk = torreg(kres.betti, w);
    auto as = asreg(kres.betti, type, w);
    c.note(cm.to_string() + tk.to_string() + as.to_string());
    c.expect(exact_finite(cm, Rational(x - 2)) && same_value(cm, cma), "CMreg(A) at " + std::to_string(x) + " is " + cm.to_string());
    c.expect(exact_finite(tk, Rational(std::max(2 - x, 0))), "Torreg(k) at " + std::to_string(x) + " is " + tk.to_string());
    c.expect(exact_finite(as, Rational(x <= 2 ? 0 : x - 2)), "ASreg at " + std::to_string(x) + " is " + as.to_string());
  }
  if (c.ok) c.detail = "CMreg(A)=xi1-2, Torreg(k)=max{2-xi1,0}, ASreg piecewise, at xi1=1,2,3";
  return c;
}

// k[x,y]: Koszul, type (2,2), and M = A/(x) by two routes.
template <class Field>
Check criterion3() {
  Check c;
  auto a = algebra<Field>("kxy", {"x", "y"}, {1, 1}, {"x*y - y*x"});
  auto g = compute_groebner(a, 16);
  auto kres = minimal_free_resolution(trivial_module(a), g, 8, 16);
  auto kz = koszul_check(kres.betti);
  c.expect(kz.koszul_through_window && kz.window.hmax == 8, "not Koszul through hmax 8");
  auto type = as_type_from_resolution(kres, g);
  c.expect(type.certified() && type.d == 2 && type.l == 2, "type is not (2,2)");
  ModulePresentation<Field> m{a, Side::left, FreeModule{{0}}, {{parse_polynomial(a.field, a.gens, "x")}}, "A/(x)"};
  auto res = minimal_free_resolution(m, g, 8, 16);
  auto lc = local_cohomology_from_resolution(res, type, g);
  auto dep = depth(lc);
  auto pd = pdim(res.betti);
  c.expect(exact_finite(dep, Rational(1)), "depth is " + dep.to_string());
  c.expect(exact_finite(pd, Rational(1)), "pdim is " + pd.to_string());
  c.expect(exact_finite(lc.deg[1], Rational(-1)), "deg H^1 is " + lc.deg[1].to_string());
  c.note(dep.to_string() + pd.to_string() + lc.deg[1].to_string());
  for (const char* s : {"0", "1/2", "1"}) {
    Weight w = Weight::of(q(s));
    auto duality = cmreg_module(lc, w);
    auto closed = cmreg_via_tor(res.betti, type, 1, w);
    c.note(duality.value_string() + "/" + closed.value_string());
    c.expect(same_value(duality, closed) && duality.is_finite() && duality.value() == q(s) - Rational(1),
             std::string("CMreg at xi1=") + s + ": duality " + duality.to_string() + ", closed form " + closed.to_string());
  }
  if (c.ok) c.detail = "Koszul through hmax 8, type (2,2), A/(x): depth 1, pdim 1, deg H^1=-1, both CMreg routes = xi1-1";
  return c;
}

std::string first_fail(const std::vector<VerificationCase>& cases) {
  for (const auto& v : cases)
    if (v.outcome == Outcome::fail)
      return v.suite + " " + v.subject + (v.xi ? " " + v.xi->to_string() : "") + ": " + v.witness;
  return "";
}

void fingerprint_cases(Check& c, const std::vector<VerificationCase>& cases) {
  for (const auto& v : cases) c.note(v.suite + v.subject + v.check + outcome_name(v.outcome) + v.lhs + v.rhs);
}

bool starts_with(const std::string& s, const std::string& p) { return s.compare(0, p.size(), p) == 0; }

// Auslander-Buchsbaum and the degree identity on monomial quotients.
template <class Field>
Check criterion4(Verifier<Field>& v) {
  Check c;
  auto cases = v.run("cor312");
  fingerprint_cases(c, cases);
  c.expect(all_passed(cases), "failure: " + first_fail(cases));
  for (const char* alg : {"kxy", "downup"}) {
    std::string prefix = std::string(alg) + ":A/(";
    std::map<std::string, int> passed;
    for (const auto& x : cases)
      if (starts_with(x.subject, prefix) && x.outcome == Outcome::pass) passed[x.subject] += 1;
    int both = 0;
    for (const auto& [s, n] : passed) both += n == 2;
    c.expect(both >= 10, std::string(alg) + ": only " + std::to_string(both) + " quotients pass both identities");
    c.detail += std::string(c.detail.empty() ? "" : ", ") + alg + ": " + std::to_string(both) + " quotients";
  }
  return c;
}

template <class Field>
bool has_certified_data(Verifier<Field>& v, const std::string& label) {
  auto& m = v.module(label);
  return m.res && m.res->betti.terminated_at && m.lc && m.algebra->type.certified();
}

// Torreg = Extreg <= CMreg + Torreg(k), CMreg <= Extreg + CMreg(A), and ASreg >= 0.
template <class Field>
Check criterion5(Verifier<Field>& v) {
  Check c;
  int checked = 0;
  for (const char* s : {"thm33", "thm35", "asreg_cert"}) {
    auto cases = v.run(s);
    fingerprint_cases(c, cases);
    c.expect(all_passed(cases), "failure: " + first_fail(cases));
    for (const auto& x : cases) {
      if (!x.xi || x.xi->xi0.sign() <= 0) continue;
      bool certified = std::string(s) == "asreg_cert" ? v.algebra(x.subject).type.certified()
                                                     : has_certified_data(v, x.subject);
      if (!certified) continue;
      c.expect(x.outcome == Outcome::pass, std::string(s) + " " + x.subject + " " + x.xi->to_string() + " not evaluated: " + x.reason);
      ++checked;
    }
  }
  c.expect(checked > 0, "nothing was checked");
  if (c.ok) c.detail = std::to_string(checked) + " certified cases, zero failures";
  return c;
}

// CMreg = Extreg + CMreg(A) at the named points, and the affine forms for xi1 << 0.
template <class Field>
Check criterion6(Verifier<Field>& v) {
  Check c;
  auto cases = v.run("thm310");
  fingerprint_cases(c, cases);
  c.expect(all_passed(cases), "failure: " + first_fail(cases));
  int n = 0;
  for (const auto& x : cases) {
    if (!has_certified_data(v, x.subject)) continue;
    bool wanted = !x.xi;
    if (x.xi && x.xi->xi0 == Rational(1))
      for (const char* s : {"0", "1/2", "1", "-10", "-100"}) wanted = wanted || x.xi->xi1 == q(s);
    if (!wanted) continue;
    c.expect(x.outcome == Outcome::pass, x.subject + " " + x.check + (x.xi ? " " + x.xi->to_string() : "") + " did not pass");
    ++n;
  }
  c.expect(n > 0, "nothing was checked");
  if (c.ok) c.detail = std::to_string(n) + " equality/affine cases on finite-pdim modules";
  return c;
}

// Duality of random minimal complexes.
template <class Field>
Check criterion7(Verifier<Field>& v) {
  Check c;
  auto cases = v.run("thm45");
  fingerprint_cases(c, cases);
  c.expect(all_passed(cases), "failure: " + first_fail(cases));
  std::set<std::string> random;
  int n = 0;
  for (const auto& x : cases) {
    if (!x.xi || !(x.xi->xi0 == Rational(1))) continue;
    if (!(x.xi->xi1 == q("1") || x.xi->xi1 == q("0") || x.xi->xi1 == q("-2"))) continue;
    c.expect(x.outcome == Outcome::pass, x.subject + " " + x.xi->to_string() + " did not pass: " + x.reason);
    if (x.subject.find("random") != std::string::npos) random.insert(x.subject);
    ++n;
  }
  c.expect(random.size() == 25, "expected 25 random complexes, got " + std::to_string(random.size()));
  if (c.ok) c.detail = std::to_string(random.size()) + " random complexes plus the Koszul dual, " + std::to_string(n) + " cases";
  return c;
}

// Truncation bound, and linearity of the truncation at xi1 = 1.
template <class Field>
Check criterion8(Verifier<Field>& v) {
  Check c;
  auto cases = v.run("thm313");
  fingerprint_cases(c, cases);
  c.expect(all_passed(cases), "failure: " + first_fail(cases));
  for (const char* m : {"kxy:A", "kxy:A/(x^2)"})
    for (const char* s : {"1", "3/2"}) {
      bool found = false;
      for (const auto& x : cases)
        if (x.subject == m && x.xi && x.xi->xi0 == Rational(1) && x.xi->xi1 == q(s)) {
          found = true;
          c.expect(x.outcome == Outcome::pass, std::string(m) + " at xi1=" + s + " did not pass: " + x.reason + x.witness);
        }
      c.expect(found, std::string(m) + " at xi1=" + s + " missing");
    }
  for (const char* m : {"kxy:A", "kxy:A/(x^2)"}) {
    auto& md = v.module(m);
    auto cm = cmreg_module(*md.lc, Weight::classic());
    int s0 = static_cast<int>(cm.value().ceil());
    for (int s : {s0, s0 + 2}) {
      auto b = v.truncated_table(md, s);
      bool linear = true;
      for (const auto& [k, beta] : b.entries)
        if (beta && k.first != k.second) linear = false;
      c.note(std::string(m) + std::to_string(s) + (linear ? "L" : "N"));
      c.expect(linear, std::string(m) + " truncated at " + std::to_string(s) + " is not linear");
    }
  }
  if (c.ok) c.detail = "bounds hold for k[x,y] and k[x,y]/(x^2); truncations at CMreg, CMreg+2 are linear at xi1=1";
  return c;
}

// Kunneth for down-up (x) k[z].
template <class Field>
Check criterion9() {
  Check c;
  auto du = algebra<Field>("downup", {"x", "y"}, {1, 1}, {"x^2*y - y*x^2", "x*y^2 - y^2*x"});
  auto kz = algebra<Field>("kz", {"z"}, {1}, {});
  auto t = tensor_algebra(du, kz);
  auto gt = compute_groebner(t, 12), gd = compute_groebner(du, 12), gz = compute_groebner(kz, 12);
  auto bt = minimal_free_resolution(trivial_module(t), gt, 8, 12).betti;
  auto bd = minimal_free_resolution(trivial_module(du), gd, 8, 12).betti;
  auto bz = minimal_free_resolution(trivial_module(kz), gz, 8, 12).betti;
  for (const char* s : {"0", "1"}) {
    Weight w = Weight::of(q(s));
    auto direct = torreg(bt, w);
    auto sum = torreg(bd, w) + torreg(bz, w);
    c.note(direct.to_string() + sum.to_string());
    c.expect(direct.status() == Status::exact && same_value(direct, sum),
             std::string("xi1=") + s + ": direct " + direct.to_string() + " vs sum " + sum.to_string());
  }
  if (c.ok) c.detail = "Torreg(k) over the tensor product equals the sum at xi1=0,1 (dmax 12)";
  return c;
}

// Finite map k[x] -> k<x>/(x^3) and the Veronese of k[x,y].
template <class Field>
Check criterion10() {
  Check c;
  auto kx = algebra<Field>("kx", {"x"}, {1}, {});
  auto x3 = algebra<Field>("x3", {"x"}, {1}, {"x^3"});
  auto gT = compute_groebner(kx, 16), gA = compute_groebner(x3, 16);
  AlgebraMap<Field> phi{kx, x3, {parse_polynomial(x3.field, x3.gens, "x")}};
  auto ta = restrict_scalars(gA, gT, phi, free_module_presentation(x3, FreeModule{{0}}), 16, 16);
  auto bt = minimal_free_resolution(ta.module, gT, 6, std::min(16, ta.valid_through)).betti;
  Rational cval = prop58_bound(bt);
  c.note(cval.to_string());
  c.expect(cval == Rational(3), "c = " + cval.to_string());
  auto kb = minimal_free_resolution(trivial_module(x3), gA, 6, 16).betti;
  auto tk = torreg(kb, Weight::of(Rational(3)));
  c.note(tk.to_string());
  c.expect(tk.is_finite() && tk.value().is_zero(), "Torreg_(1,3)(k) = " + tk.to_string());
  for (int i = 0; i <= 6; ++i) {
    auto t = kb.t(i);
    c.expect(t && *t - 3 * i <= 0, "t_" + std::to_string(i) + " - 3i > 0 or row missing");
  }
  auto r = rate(kb);
  auto rb = rate_bound(tk.value(), Rational(3));
  c.note(r.to_string() + rb.to_string());
  c.expect(r.is_finite() && r.value() == Rational(2) && rb == Rational(5) && r.value() <= rb,
           "rate " + r.to_string() + ", bound " + rb.to_string());
  auto sl = slope(kb);
  c.note(sl.to_string());
  c.expect(sl.is_finite() && sl.value() == q("3/2"), "slope " + sl.to_string());

  // Veronese: 3 generators; relations quadratic, one beyond the commutators.
  auto kxy = algebra<Field>("kxy", {"x", "y"}, {1, 1}, {"x*y - y*x"});
  auto g = compute_groebner(kxy, 12);
  auto ver = veronese_presentation(g, 2, 2, 4);
  const auto& p = ver.presentation;
  c.expect(p.gens.size() == 3, "Veronese has " + std::to_string(p.gens.size()) + " generators");
  using K = typename Field::scalar;
  std::map<Word, std::uint32_t> index;
  auto vec = [&](const NcPolynomial<K>& f) {
    std::vector<Entry<K>> raw;
    for (const auto& t : f.terms()) {
      auto it = index.emplace(t.word, static_cast<std::uint32_t>(index.size())).first;
      raw.push_back({it->second, t.coef});
    }
    return canonicalize(std::move(raw));
  };
  Echelon<K> comm;
  auto one = p.field.from_int(1);
  for (std::uint16_t i = 0; i < p.gens.size(); ++i)
    for (std::uint16_t j = i + 1; j < p.gens.size(); ++j)
      comm.insert(vec(NcPolynomial<K>::from_terms(p.gens, {{Word{i, j}, one}, {Word{j, i}, -one}})));
  std::size_t base = comm.rank();
  bool quadratic = true;
  for (const auto& r : p.relations) {
    quadratic = quadratic && r.degree(p.gens) == 2;
    comm.insert(vec(r));
  }
  std::size_t extra = comm.rank() - base;
  c.note(std::to_string(p.relations.size()) + "/" + std::to_string(extra));
  c.expect(quadratic, "a Veronese relation is not quadratic");
  c.expect(extra == 1, std::to_string(extra) + " relations beyond the commutators");
  auto gv = compute_groebner(p, 8);
  auto vb = minimal_free_resolution(trivial_module(p), gv, 6, 8).betti;
  auto kz = koszul_check(vb);
  c.expect(kz.koszul_through_window && vb.hmax == 6, "Veronese is not Koszul through hmax 6");
  if (c.ok)
    c.detail = "c=3, Torreg_(1,3)(k)=0, rate 2 <= 5, slope 3/2; Veronese: 3 generators, " +
               std::to_string(p.relations.size()) + " quadratic relations (1 beyond commutators), Koszul";
  return c;
}

// The subalgebra R = k + Uy of the Jordan plane, in the window hmax 4, dmax 14.
template <class Field>
Check criterion11(Verifier<Field>& v) {
  Check c;
  auto& ru = v.module("R:U");
  auto& rk = v.module("R:k");
  c.expect(ru.res.has_value() && rk.res.has_value(), "resolutions over R unavailable");
  if (!c.ok) return c;
  const auto& bu = ru.res->betti;
  for (int i = 0; i <= 4; ++i) {
    auto t = bu.t(i);
    c.note(std::to_string(t.value_or(-99)));
    c.expect(t == 3 * i + 1, "t_" + std::to_string(i) + "(R U) = " + std::to_string(t.value_or(-99)));
  }
  const auto& bk = rk.res->betti;
  for (int n = 1; n <= 4; ++n) {
    std::vector<int> degs;
    for (const auto& [k, beta] : bk.entries)
      if (k.first == n)
        for (long r = 0; r < beta; ++r) degs.push_back(k.second);
    c.expect(degs == std::vector<int>({3 * n - 2, 3 * n - 1}), "row " + std::to_string(n) + " of k over R");
  }
  auto t3 = torreg(bk, Weight::of(Rational(3)));
  c.expect(t3.is_finite() && t3.value().is_zero(), "Torreg_(1,3)(k_R) = " + t3.to_string());
  auto t1 = torreg(bk, Weight::of(Rational(1)));
  c.expect(t1.is_finite() && t1.value().sign() > 0 && t1.status() != Status::exact, "Torreg_(1,1)(k_R) = " + t1.to_string());
  int prev = INT_MIN;
  for (int n = 1; n <= 4; ++n) {
    int val = *bk.t(n) - n;
    c.expect(val > prev, "t_n - n is not increasing at n=" + std::to_string(n));
    prev = val;
  }
  c.note(t3.to_string() + t1.to_string());
  if (c.ok) c.detail = "t_i(R U)=3i+1, k over R rows {3n-2,3n-1}, Torreg_(1,3)=0, Torreg_(1,1)=" + t1.to_string() + " and growing";
  return c;
}

std::string strip_version(nlohmann::ordered_json j) {
  j["version"] = "";
  return j.dump();
}

template <class Field>
std::vector<Check> run_all(Field f, std::string& report) {
  Verifier<Field> v(default_corpus(f), default_weights());
  std::vector<Check> out;
  out.push_back(criterion1<Field>());
  out.push_back(criterion2<Field>());
  out.push_back(criterion3<Field>());
  out.push_back(criterion4(v));
  out.push_back(criterion5(v));
  out.push_back(criterion6(v));
  out.push_back(criterion7(v));
  out.push_back(criterion8(v));
  out.push_back(criterion9<Field>());
  out.push_back(criterion10<Field>());
  out.push_back(criterion11(v));
  auto cases = v.run(suite_names());
  auto j = report_json(cases, "", kVersion);
  j.erase("field");
  report = strip_version(j);
  Check all;
  all.expect(all_passed(cases), "full verify run has a failure: " + first_fail(cases));
  out.push_back(all);
  return out;
}

}  // namespace

int main() {
  std::string rq, rq2, rp;
  auto Q = run_all(RationalField{}, rq);
  auto P = run_all(PrimeField(32003), rp);
  {
    Verifier<RationalField> again(default_corpus(RationalField{}), default_weights());
    auto j = report_json(again.run(suite_names()), "", "other-version");
    j.erase("field");
    rq2 = strip_version(j);
  }
  bool all_ok = true;
  for (std::size_t i = 0; i < 11; ++i) {
    bool ok = Q[i].ok;
    std::string detail = Q[i].detail;
    std::printf("criterion %zu: %s  %s\n", i + 1, ok ? "PASS" : "FAIL", detail.c_str());
    all_ok = all_ok && ok;
  }
  Check c12;
  c12.expect(rq == rq2, "two runs of the full verify suite differ");
  c12.expect(Q.back().ok, Q.back().detail);
  c12.expect(P.back().ok, "F_32003: " + P.back().detail);
  for (std::size_t i = 0; i < 11; ++i) {
    c12.expect(P[i].ok, "F_32003 fails criterion " + std::to_string(i + 1) + ": " + P[i].detail);
    c12.expect(P[i].fingerprint == Q[i].fingerprint, "Q and F_32003 values differ for criterion " + std::to_string(i + 1));
  }
  c12.expect(rq == rp, "Q and F_32003 verify reports differ");
  if (c12.ok) c12.detail = "verify JSON byte-identical across runs (" + std::to_string(rq.size()) + " bytes); Q and F_32003 agree";
  std::printf("criterion 12: %s  %s\n", c12.ok ? "PASS" : "FAIL", c12.detail.c_str());
  all_ok = all_ok && c12.ok;
  return all_ok ? 0 : 1;
}
