#pragma once

// Weighted regularity invariants evaluated on Betti tables and local
// cohomology degrees. All values are exact rationals or +-infinity, tagged
// with how much the finite window proves.

#include <algorithm>
#include <cctype>
#include <climits>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "gradreg/errors.hpp"
#include "gradreg/field.hpp"
#include "gradreg/resolution.hpp"

namespace gradreg {

struct Weight {
  Rational xi0{1};
  Rational xi1{1};

  Weight() = default;
  Weight(Rational a, Rational b) : xi0(std::move(a)), xi1(std::move(b)) {
    if (xi0.is_zero() && xi1.is_zero()) throw InputError("weight (0,0) is not allowed");
  }
  static Weight classic() { return {Rational(1), Rational(1)}; }
  static Weight pdim() { return {Rational(0), Rational(-1)}; }
  static Weight sup() { return {Rational(0), Rational(1)}; }
  static Weight of(Rational xi) { return {Rational(1), std::move(xi)}; }

  /// "a,b" with rationals a, b, or one of classic, pdim, sup.
  static Weight parse(const std::string& text) {
    if (text == "classic") return classic();
    if (text == "pdim") return pdim();
    if (text == "sup") return sup();
    auto comma = text.find(',');
    if (comma == std::string::npos) throw InputError("weight must look like 'a,b': '" + text + "'");
    try {
      return {Rational::parse(trim(text.substr(0, comma))), Rational::parse(trim(text.substr(comma + 1)))};
    } catch (const InputError&) {
      throw;
    } catch (const std::exception&) {
      throw InputError("bad weight '" + text + "'");
    }
  }
  Weight scaled(const Rational& l) const { return {xi0 * l, xi1 * l}; }
  std::string to_string() const { return "(" + xi0.to_string() + "," + xi1.to_string() + ")"; }
  friend bool operator==(const Weight& a, const Weight& b) { return a.xi0 == b.xi0 && a.xi1 == b.xi1; }

 private:
  static std::string trim(std::string s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    return s.substr(i);
  }
};

enum class Status { exact, observed_lower_bound, upper_bound };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::exact: return "exact";
    case Status::observed_lower_bound: return "observed_lower_bound";
    default: return "upper_bound";
  }
}

struct Window {
  int hmax = 0;
  int dmax = 0;
  friend bool operator==(const Window& a, const Window& b) { return a.hmax == b.hmax && a.dmax == b.dmax; }
};

inline Status combine(Status a, Status b) {
  if (a == Status::exact) return b;
  if (b == Status::exact || a == b) return a;
  return Status::observed_lower_bound;
}

class ExtendedValue {
 public:
  enum class Kind { neg_inf, finite, pos_inf };

  ExtendedValue() = default;
  static ExtendedValue neg_inf(Status s = Status::exact, Window w = {}) { return {Kind::neg_inf, {}, s, w}; }
  static ExtendedValue pos_inf(Status s = Status::exact, Window w = {}) { return {Kind::pos_inf, {}, s, w}; }
  static ExtendedValue finite(Rational v, Status s = Status::exact, Window w = {}) {
    return {Kind::finite, std::move(v), s, w};
  }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::finite; }
  bool is_neg_inf() const { return kind_ == Kind::neg_inf; }
  bool is_pos_inf() const { return kind_ == Kind::pos_inf; }
  const Rational& value() const {
    if (!is_finite()) throw std::logic_error("infinite value has no rational part");
    return value_;
  }
  Status status() const { return status_; }
  const Window& window() const { return window_; }
  ExtendedValue with_status(Status s) const { return {kind_, value_, s, window_}; }
  ExtendedValue with_window(Window w) const { return {kind_, value_, status_, w}; }

  std::string value_string() const {
    if (kind_ == Kind::neg_inf) return "-inf";
    if (kind_ == Kind::pos_inf) return "+inf";
    return value_.to_string();
  }
  std::string to_string() const { return value_string() + " (" + status_name(status_) + ")"; }

  /// Compares the values only (status and window ignored).
  friend bool same_value(const ExtendedValue& a, const ExtendedValue& b) {
    return a.kind_ == b.kind_ && (a.kind_ != Kind::finite || a.value_ == b.value_);
  }
  friend bool less_value(const ExtendedValue& a, const ExtendedValue& b) {
    if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) < static_cast<int>(b.kind_);
    return a.kind_ == Kind::finite && a.value_ < b.value_;
  }
  friend bool leq_value(const ExtendedValue& a, const ExtendedValue& b) { return !less_value(b, a); }

  /// Sum with -inf/+inf absorbing; opposite infinities are rejected.
  friend ExtendedValue operator+(const ExtendedValue& a, const ExtendedValue& b) {
    Status s = combine(a.status_, b.status_);
    Window w = a.window_;
    if ((a.is_neg_inf() && b.is_pos_inf()) || (a.is_pos_inf() && b.is_neg_inf()))
      throw Refusal("sum of opposite infinities");
    if (a.is_neg_inf() || b.is_neg_inf()) return neg_inf(s, w);
    if (a.is_pos_inf() || b.is_pos_inf()) return pos_inf(s, w);
    return finite(a.value_ + b.value_, s, w);
  }
  ExtendedValue scaled(const Rational& l) const {
    if (l.sign() <= 0) throw std::invalid_argument("scaling factor must be positive");
    if (!is_finite()) return *this;
    return finite(value_ * l, status_, window_);
  }

 private:
  ExtendedValue(Kind k, Rational v, Status s, Window w) : kind_(k), value_(std::move(v)), status_(s), window_(w) {}
  Kind kind_ = Kind::neg_inf;
  Rational value_;
  Status status_ = Status::exact;
  Window window_;
};

inline Window window_of(const BettiTable& b) { return {b.hmax, b.dmax}; }
inline Status table_status(const BettiTable& b) { return b.exact() ? Status::exact : Status::observed_lower_bound; }

enum class Extremum { sup, inf };

/// Support entries are (internal m, homological n, multiplicity).
inline ExtendedValue weighted_extremum(const std::vector<std::tuple<int, int, long>>& support, const Weight& xi,
                                       Extremum mode, Status status = Status::exact, Window w = {}) {
  std::optional<Rational> best;
  for (const auto& [m, n, mult] : support) {
    if (mult == 0) continue;
    Rational v = xi.xi0 * Rational(m) + xi.xi1 * Rational(n);
    if (!best || (mode == Extremum::sup ? *best < v : v < *best)) best = v;
  }
  if (!best) return mode == Extremum::sup ? ExtendedValue::neg_inf(status, w) : ExtendedValue::pos_inf(status, w);
  return ExtendedValue::finite(*best, status, w);
}

/// sup over the table of xi0*j - xi1*i. With `infinite_gldim` asserted,
/// 0 < xi0 and xi1 < xi0 give +inf.
inline ExtendedValue torreg(const BettiTable& b, const Weight& xi, bool infinite_gldim = false) {
  if (infinite_gldim && xi.xi0.sign() > 0 && xi.xi1 < xi.xi0) return ExtendedValue::pos_inf(Status::exact, window_of(b));
  std::vector<std::tuple<int, int, long>> support;
  for (const auto& [k, v] : b.entries) support.emplace_back(k.second, -k.first, v);
  return weighted_extremum(support, xi, Extremum::sup, table_status(b), window_of(b));
}

inline ExtendedValue extreg(const BettiTable& b, const Weight& xi, bool infinite_gldim = false) {
  return torreg(b, xi, infinite_gldim);
}

/// Degrees of Ext^i(X, k) read from Hom(P, k) for a resolution P at
/// positions -i: the degree -s piece of Hom(P_i, k) has one coordinate per
/// generator of shift s, and the differential is given by constant terms.
/// Support entries are (degree, i, dim).
template <class Field>
std::vector<std::tuple<int, int, long>> ext_k_support(const FreeComplex<Field>& p) {
  using K = typename Field::scalar;
  std::vector<std::tuple<int, int, long>> out;
  if (p.empty()) return out;
  // Constant-term matrix of the map Hom(P_i, k)_{-s} -> Hom(P_{i+1}, k)_{-s}
  // is the transpose of the degree-zero part of d: P_{i+1} -> P_i at shift s.
  auto constant_rank = [&](int pos, int s) -> long {
    // d leaves position pos - 1 (P_{i+1}) into position pos (P_i).
    if (pos - 1 < p.p_lo) return 0;
    const auto& src = p.term(pos - 1);
    const auto& dst = p.term(pos);
    auto d = p.differential(pos - 1);
    Echelon<K> e;
    for (std::size_t k = 0; k < src.rank(); ++k) {
      if (src.shifts[k] != s) continue;
      std::vector<Entry<K>> raw;
      std::uint32_t row = 0;
      for (std::size_t j = 0; j < dst.rank(); ++j) {
        if (dst.shifts[j] != s) continue;
        for (const auto& t : d[k][j].terms())
          if (t.word.empty()) raw.push_back({row, t.coef});
        ++row;
      }
      e.insert(canonicalize(std::move(raw)));
    }
    return static_cast<long>(e.rank());
  };
  for (int pos = p.p_lo; pos <= p.p_hi(); ++pos) {
    std::map<int, long> count;
    for (int s : p.term(pos).shifts) count[s] += 1;
    for (const auto& [s, c] : count) {
      long h = c - constant_rank(pos, s) - constant_rank(pos + 1, s);
      if (h) out.emplace_back(-s, -pos, h);
    }
  }
  return out;
}

/// -inf over Ext^i(X, k) of xi0*ged + xi1*i, from Hom(P, k).
template <class Field>
ExtendedValue extreg_via_hom(const Resolution<Field>& res, const Weight& xi) {
  std::vector<std::tuple<int, int, long>> support;
  std::map<int, int> low;
  for (const auto& [m, i, h] : ext_k_support(res.complex)) {
    auto it = low.find(i);
    if (it == low.end() || m < it->second) low[i] = m;
  }
  for (const auto& [i, m] : low) support.emplace_back(m, i, 1);
  auto v = weighted_extremum(support, xi, Extremum::inf, table_status(res.betti), window_of(res.betti));
  if (v.is_pos_inf()) return ExtendedValue::neg_inf(v.status(), v.window());
  if (v.is_neg_inf()) return ExtendedValue::pos_inf(v.status(), v.window());
  return ExtendedValue::finite(-v.value(), v.status(), v.window());
}

inline ExtendedValue pdim(const BettiTable& b) {
  auto r = b.max_row();
  if (!r) return ExtendedValue::neg_inf(table_status(b), window_of(b));
  return ExtendedValue::finite(Rational(*r), table_status(b), window_of(b));
}

struct ASType {
  enum class Kind { as_regular, as_gorenstein_assumed, uncertified };
  int d = 0;
  int l = 0;
  Kind kind = Kind::uncertified;
  std::string evidence;

  bool certified() const { return kind != Kind::uncertified; }
  static ASType assumed(int d, int l) {
    if (d < 0) throw InputError("AS dimension must be nonnegative");
    return {d, l, Kind::as_gorenstein_assumed, "type supplied by the user"};
  }
};

inline const char* as_kind_name(ASType::Kind k) {
  switch (k) {
    case ASType::Kind::as_regular: return "AS_regular";
    case ASType::Kind::as_gorenstein_assumed: return "AS_Gorenstein_assumed";
    default: return "uncertified";
  }
}

/// Degree window [lo, hi] usable for the cohomology of the dual of a complex.
template <class Field>
std::pair<int, int> dual_window(const FreeComplex<Field>& f, const GroebnerData<Field>& g) {
  int mx = INT_MIN;
  for (const auto& t : f.terms)
    if (!t.empty()) mx = std::max(mx, t.max_shift());
  if (mx == INT_MIN) return {0, -1};
  return {-mx, g.dmax() - mx};
}

/// Resolve k, dualize, and look for Ext concentrated in one degree.
template <class Field>
ASType as_type_from_resolution(const Resolution<Field>& res, const GroebnerData<Field>& g) {
  ASType out;
  const auto& b = res.betti;
  if (!b.terminated_at) {
    out.evidence = "resolution of k does not terminate within hmax=" + std::to_string(b.hmax) +
                   ", dmax=" + std::to_string(res.degree_top);
    return out;
  }
  int d = *b.terminated_at;
  if (b.row_total(d) != 1) {
    out.evidence = "last term of the resolution has rank " + std::to_string(b.row_total(d));
    return out;
  }
  int l = *b.t(d);
  auto dual = dualize(res.complex);
  auto [lo, hi] = dual_window(res.complex, g);
  if (hi < -l) {
    out.evidence = "window too small to see Ext in degree " + std::to_string(-l);
    return out;
  }
  auto coh = complex_cohomology(dual, g, lo, hi);
  auto supp = coh.support();
  if (supp.size() != 1 || std::get<0>(supp[0]) != d || std::get<1>(supp[0]) != -l || std::get<2>(supp[0]) != 1) {
    std::string s;
    for (const auto& [p, n, v] : supp)
      s += " (" + std::to_string(p) + "," + std::to_string(n) + "):" + std::to_string(v);
    out.evidence = "Ext(k,A) not concentrated in one degree within [" + std::to_string(lo) + "," +
                   std::to_string(hi) + "]:" + s;
    return out;
  }
  out.d = d;
  out.l = l;
  out.kind = ASType::Kind::as_regular;
  out.evidence = "k resolution terminates at " + std::to_string(d) + "; Ext^" + std::to_string(d) +
                 "(k,A) is one-dimensional in degree " + std::to_string(-l) + " within degrees [" +
                 std::to_string(lo) + "," + std::to_string(hi) + "]";
  return out;
}

template <class Field>
ASType check_as_regular(const GroebnerData<Field>& g, int hmax, int dmax) {
  return as_type_from_resolution(minimal_free_resolution(trivial_module(g.algebra()), g, hmax, dmax), g);
}

inline ExtendedValue cmreg_algebra(const ASType& t, const Weight& xi) {
  if (!t.certified()) throw Refusal("unsupported: CM regularity of an algebra needs a certified AS Gorenstein type");
  return ExtendedValue::finite(xi.xi1 * Rational(t.d) - xi.xi0 * Rational(t.l));
}

struct LocalCohomologyDegrees {
  std::vector<ExtendedValue> deg;  // index j = 0..d
  Window window;
};

template <class Field>
LocalCohomologyDegrees local_cohomology_from_resolution(const Resolution<Field>& res, const ASType& t,
                                                        const GroebnerData<Field>& g) {
  if (!t.certified()) throw Refusal("unsupported: local cohomology needs a certified AS Gorenstein algebra");
  if (!res.betti.terminated_at) throw Refusal("unsupported: infinite projective dimension");
  LocalCohomologyDegrees lc;
  lc.window = window_of(res.betti);
  auto dual = dualize(res.complex);
  auto [lo, hi] = dual_window(res.complex, g);
  ExtDegreeTable coh;
  if (lo <= hi) coh = complex_cohomology(dual, g, lo, hi);
  for (int j = 0; j <= t.d; ++j) {
    int p = t.d - j;
    auto it = coh.ged.find(p);
    if (it == coh.ged.end() || !it->second.value) {
      bool proven = it == coh.ged.end() ? dual.term(p).empty() : it->second.certified;
      lc.deg.push_back(ExtendedValue::neg_inf(proven ? Status::exact : Status::observed_lower_bound, lc.window));
    } else {
      lc.deg.push_back(ExtendedValue::finite(Rational(-*it->second.value - t.l),
                                             it->second.certified ? Status::exact : Status::observed_lower_bound,
                                             lc.window));
    }
  }
  return lc;
}

/// deg H^j_m(M) = -ged Ext^{d-j}(M, A) - l, from the dual of a minimal resolution.
template <class Field>
LocalCohomologyDegrees local_cohomology_degrees(const ModulePresentation<Field>& m, const ASType& t,
                                                const GroebnerData<Field>& g, int hmax, int dmax) {
  if (!t.certified()) throw Refusal("unsupported: local cohomology needs a certified AS Gorenstein algebra");
  auto res = minimal_free_resolution(m, g, std::max(hmax, t.d + 1), dmax);
  if (!res.betti.terminated_at)
    throw Refusal("unsupported: the resolution does not terminate within the window (infinite pdim)");
  return local_cohomology_from_resolution(res, t, g);
}

inline ExtendedValue cmreg_module(const LocalCohomologyDegrees& lc, const Weight& xi) {
  if (xi.xi0.sign() < 0) throw Refusal("CM regularity is evaluated only for xi0 >= 0");
  ExtendedValue best = ExtendedValue::neg_inf(Status::exact, lc.window);
  Status s = Status::exact;
  for (std::size_t j = 0; j < lc.deg.size(); ++j) {
    const auto& v = lc.deg[j];
    s = combine(s, v.status());
    if (!v.is_finite()) continue;
    auto c = ExtendedValue::finite(xi.xi0 * v.value() + xi.xi1 * Rational(static_cast<long>(j)));
    if (best.is_neg_inf() || less_value(best, c)) best = c;
  }
  return best.with_status(s).with_window(lc.window);
}

inline ExtendedValue depth(const LocalCohomologyDegrees& lc) {
  Status s = Status::exact;
  for (std::size_t j = 0; j < lc.deg.size(); ++j) {
    if (!lc.deg[j].is_neg_inf()) return ExtendedValue::finite(Rational(static_cast<long>(j)), s, lc.window);
    if (lc.deg[j].status() != Status::exact) s = Status::upper_bound;
  }
  return ExtendedValue::pos_inf(s, lc.window);
}

/// Closed form for an s-Cohen-Macaulay module: -xi0*l + xi1*s + xi0*deg Tor_{d-s}.
inline ExtendedValue cmreg_via_tor(const BettiTable& b, const ASType& t, int s, const Weight& xi) {
  if (!t.certified()) throw Refusal("unsupported: needs a certified AS Gorenstein type");
  auto ts = b.t(t.d - s);
  if (!ts) return ExtendedValue::neg_inf(table_status(b), window_of(b));
  return ExtendedValue::finite(-xi.xi0 * Rational(t.l) + xi.xi1 * Rational(s) + xi.xi0 * Rational(*ts),
                               table_status(b), window_of(b));
}

inline ExtendedValue asreg(const BettiTable& k_table, const ASType& t, const Weight& xi) {
  return torreg(k_table, xi) + cmreg_algebra(t, xi);
}

struct KoszulVerdict {
  bool koszul_through_window = true;
  std::optional<std::pair<int, int>> witness;
  Window window;
};

inline KoszulVerdict koszul_check(const BettiTable& b) {
  KoszulVerdict v;
  v.window = window_of(b);
  for (const auto& [k, beta] : b.entries)
    if (beta && k.first != k.second) {
      v.koszul_through_window = false;
      v.witness = k;
      break;
    }
  return v;
}

/// max{1, sup_{i>=2} (t_i - 1)/(i - 1)} over the table of k.
inline ExtendedValue rate(const BettiTable& b) {
  Rational best(1);
  for (int i = 2; i <= b.hmax; ++i) {
    auto t = b.t(i);
    if (!t) continue;
    Rational v = Rational(*t - 1) / Rational(i - 1);
    if (best < v) best = v;
  }
  return ExtendedValue::finite(best, table_status(b), window_of(b));
}

/// sup_{i>=1} (t_i - t_0)/i.
inline ExtendedValue slope(const BettiTable& b) {
  auto t0 = b.t(0);
  std::optional<Rational> best;
  if (t0)
    for (int i = 1; i <= b.hmax; ++i) {
      auto t = b.t(i);
      if (!t) continue;
      Rational v = Rational(*t - *t0) / Rational(i);
      if (!best || *best < v) best = v;
    }
  if (!best) return ExtendedValue::neg_inf(table_status(b), window_of(b));
  return ExtendedValue::finite(*best, table_status(b), window_of(b));
}

inline ExtendedValue kunneth_torreg(const ExtendedValue& rT, const ExtendedValue& rA) { return rT + rA; }

/// max{t_0, max_{1<=s<=pdim} t_s/s} for the table of A over T.
inline Rational prop58_bound(const BettiTable& b) {
  if (!b.terminated_at) throw Refusal("the table of A over T must be terminated");
  auto t0 = b.t(0);
  if (!t0) throw Refusal("A is zero over T");
  Rational c(*t0);
  for (int s = 1; s <= *b.terminated_at; ++s)
    if (auto t = b.t(s)) c = std::max(c, Rational(*t) / Rational(s));
  return c;
}

/// max{1, a' + 2*xi - 1} with a' = max{a, 1 - xi}.
inline Rational rate_bound(const Rational& a, const Rational& xi) {
  Rational ap = std::max(a, Rational(1) - xi);
  return std::max(Rational(1), ap + Rational(2) * xi - Rational(1));
}

inline ExtendedValue concavity(const ASType& t, const Weight& xi) {
  if (xi.xi0.sign() <= 0 || xi.xi1.sign() < 0 || xi.xi0 < xi.xi1)
    throw Refusal("concavity closed form needs 0 <= xi1 <= xi0 with xi0 > 0");
  auto c = cmreg_algebra(t, xi);
  return ExtendedValue::finite(-c.value());
}

inline ExtendedValue concavity_upper_bound(const std::vector<ASType>& types, const Weight& xi) {
  if (types.empty()) return ExtendedValue::pos_inf(Status::upper_bound);
  std::optional<Rational> best;
  for (const auto& t : types) {
    auto v = concavity(t, xi).value();
    if (!best || v < *best) best = v;
  }
  return ExtendedValue::finite(*best, Status::upper_bound);
}

/// xi1 -> -infinity behaviour at fixed xi0: value = intercept + slope*xi1
/// for every xi1 <= threshold (no threshold: valid for all xi1).
struct AffineForm {
  Rational intercept;
  Rational slope;
  std::optional<Rational> threshold;
};

namespace detail {

/// Lines (intercept, slope); the one with least slope wins as xi1 -> -inf.
inline std::optional<AffineForm> lower_envelope_winner(const std::vector<std::pair<Rational, Rational>>& lines) {
  if (lines.empty()) return std::nullopt;
  auto win = lines.front();
  for (const auto& l : lines)
    if (l.second < win.second || (l.second == win.second && win.first < l.first)) win = l;
  AffineForm f{win.first, win.second, std::nullopt};
  for (const auto& l : lines) {
    if (l.second == win.second) continue;
    // win.first + x*win.second >= l.first + x*l.second  <=>  x <= (l.first - win.first)/(win.second - l.second)
    Rational x = (l.first - win.first) / (win.second - l.second);
    if (!f.threshold || x < *f.threshold) f.threshold = x;
  }
  return f;
}

}  // namespace detail

inline std::optional<AffineForm> cmreg_asymptotic(const LocalCohomologyDegrees& lc, const Rational& xi0) {
  std::vector<std::pair<Rational, Rational>> lines;
  for (std::size_t j = 0; j < lc.deg.size(); ++j)
    if (lc.deg[j].is_finite()) lines.emplace_back(xi0 * lc.deg[j].value(), Rational(static_cast<long>(j)));
  return detail::lower_envelope_winner(lines);
}

inline std::optional<AffineForm> torreg_asymptotic(const BettiTable& b, const Rational& xi0) {
  std::vector<std::pair<Rational, Rational>> lines;
  auto top = b.max_row();
  if (!top) return std::nullopt;
  for (int i = 0; i <= *top; ++i)
    if (auto t = b.t(i)) lines.emplace_back(xi0 * Rational(*t), Rational(-i));
  return detail::lower_envelope_winner(lines);
}

}  // namespace gradreg
