#pragma once

// Text formats for algebras, modules and algebra maps, JSON export and the
// on-disk Groebner cache.

#include <algorithm>
#include <cstdio>
#include <map>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gradreg/errors.hpp"
#include "gradreg/modpres.hpp"
#include "gradreg/regularity.hpp"

namespace gradreg {

using Json = nlohmann::ordered_json;

/// A source line split into a keyword and the rest, with positions for diagnostics.
struct SourceLine {
  int line = 0;
  std::string keyword;
  std::string rest;
  int rest_column = 0;  // 0-based column of `rest` in the raw line
};

inline std::vector<SourceLine> split_lines(const std::string& text) {
  std::vector<SourceLine> out;
  std::istringstream in(text);
  std::string raw;
  int no = 0;
  while (std::getline(in, raw)) {
    ++no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::size_t i = 0;
    while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
    if (i == raw.size() || raw[i] == '#') continue;
    std::size_t j = i;
    while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
    SourceLine l;
    l.line = no;
    l.keyword = raw.substr(i, j - i);
    while (j < raw.size() && std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
    l.rest = raw.substr(j);
    while (!l.rest.empty() && std::isspace(static_cast<unsigned char>(l.rest.back()))) l.rest.pop_back();
    l.rest_column = static_cast<int>(j);
    out.push_back(std::move(l));
  }
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

/// Field named in a file or on the command line: "Q" or "F <p>" / "F<p>".
struct FieldSpec {
  std::uint32_t prime = 0;  // 0 means the rationals
  bool is_rational() const { return prime == 0; }
  std::string name() const { return prime ? "F" + std::to_string(prime) : "Q"; }

  static FieldSpec parse(const std::string& text, int line = 0, int column = 0) {
    std::string t;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t == "Q" || t == "QQ") return {};
    if (t.size() > 1 && (t[0] == 'F' || t[0] == 'f')) {
      std::string digits = t.substr(1);
      if (!digits.empty() && digits[0] == '_') digits.erase(0, 1);
      if (!digits.empty() && std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(c); })) {
        unsigned long long p = std::stoull(digits);
        if (!is_prime(p) || p >= (1ULL << 31)) throw InputError("field size " + digits + " is not a prime below 2^31", line, column);
        return {static_cast<std::uint32_t>(p)};
      }
    }
    throw InputError("unknown field '" + text + "' (use Q or F <prime>)", line, column);
  }
};

/// Field-independent content of an algebra file.
struct AlgebraText {
  FieldSpec field;
  std::vector<std::string> names;
  std::vector<int> degrees;
  struct Rel {
    std::string text;
    int line;
    int column;
  };
  std::vector<Rel> relations;
  std::string label;
  int gens_line = 0;
};

inline AlgebraText parse_algebra_text(const std::string& text, const std::string& default_label = "A") {
  AlgebraText a;
  a.label = default_label;
  bool have_gens = false, have_field = false;
  for (const auto& l : split_lines(text)) {
    if (l.keyword == "field") {
      a.field = FieldSpec::parse(l.rest, l.line, l.rest_column + 1);
      have_field = true;
    } else if (l.keyword == "gens") {
      if (have_gens) throw InputError("duplicate gens line", l.line, 1);
      have_gens = true;
      a.gens_line = l.line;
      std::istringstream ss(l.rest);
      std::string tok;
      std::size_t search = 0;
      while (ss >> tok) {
        std::size_t at = l.rest.find(tok, search);
        search = at + tok.size();
        int col = l.rest_column + static_cast<int>(at) + 1;
        auto colon = tok.find(':');
        if (colon == std::string::npos || colon == 0) throw InputError("expected name:degree, got '" + tok + "'", l.line, col);
        std::string name = tok.substr(0, colon), deg = tok.substr(colon + 1);
        if (!(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_') ||
            !std::all_of(name.begin(), name.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }))
          throw InputError("bad generator name '" + name + "'", l.line, col);
        if (deg.empty() || !std::all_of(deg.begin(), deg.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
          throw InputError("bad degree '" + deg + "'", l.line, col + static_cast<int>(colon) + 1);
        int d = std::stoi(deg);
        if (d < 1) throw InputError("generator degrees must be positive", l.line, col + static_cast<int>(colon) + 1);
        a.names.push_back(name);
        a.degrees.push_back(d);
      }
    } else if (l.keyword == "rel") {
      if (l.rest.empty()) throw InputError("empty relation", l.line, l.rest_column + 1);
      a.relations.push_back({l.rest, l.line, l.rest_column});
    } else if (l.keyword == "label") {
      a.label = l.rest;
    } else {
      throw InputError("unknown keyword '" + l.keyword + "'", l.line, 1);
    }
  }
  (void)have_field;
  if (!have_gens) throw InputError("missing gens line");
  return a;
}

template <class Field>
AlgebraPresentation<Field> build_algebra(const AlgebraText& t, const Field& field) {
  AlgebraPresentation<Field> a;
  a.field = field;
  try {
    a.gens = GeneratorSet(t.names, t.degrees);
  } catch (const InputError& e) {
    throw InputError(e.what(), t.gens_line, 1);
  }
  a.label = t.label;
  for (const auto& r : t.relations) {
    auto p = parse_polynomial(field, a.gens, r.text, r.line, r.column);
    if (!p.is_zero() && !p.is_homogeneous(a.gens)) throw InputError("relation is not homogeneous", r.line, r.column + 1);
    if (!p.is_zero() && p.degree(a.gens) < 2) throw InputError("relation has degree < 2", r.line, r.column + 1);
    a.relations.push_back(std::move(p));
  }
  return a;
}

inline std::string file_stem(const std::string& path) { return std::filesystem::path(path).stem().string(); }

/// Module file content; polynomials parsed once the algebra is known.
struct ModuleText {
  Side side = Side::left;
  std::string over;
  std::vector<int> shifts;
  struct Row {
    std::vector<std::string> entries;
    std::vector<int> columns;
    int line;
  };
  std::vector<Row> rows;
  std::string label;
};

inline ModuleText parse_module_text(const std::string& text, const std::string& default_label = "M") {
  ModuleText m;
  m.label = default_label;
  bool have_free = false;
  for (const auto& l : split_lines(text)) {
    if (l.keyword == "module") {
      if (l.rest == "left") m.side = Side::left;
      else if (l.rest == "right") m.side = Side::right;
      else throw InputError("expected 'left' or 'right'", l.line, l.rest_column + 1);
    } else if (l.keyword == "over") {
      m.over = l.rest;
    } else if (l.keyword == "free") {
      have_free = true;
      std::istringstream ss(l.rest);
      std::string tok;
      while (ss >> tok) {
        try {
          std::size_t used = 0;
          int v = std::stoi(tok, &used);
          if (used != tok.size()) throw std::invalid_argument(tok);
          m.shifts.push_back(v);
        } catch (const std::exception&) {
          throw InputError("bad shift '" + tok + "'", l.line, l.rest_column + static_cast<int>(l.rest.find(tok)) + 1);
        }
      }
    } else if (l.keyword == "rel") {
      ModuleText::Row row;
      row.line = l.line;
      std::size_t start = 0;
      while (true) {
        auto bar = l.rest.find('|', start);
        std::string part = l.rest.substr(start, bar == std::string::npos ? std::string::npos : bar - start);
        row.entries.push_back(part);
        row.columns.push_back(l.rest_column + static_cast<int>(start));
        if (bar == std::string::npos) break;
        start = bar + 1;
      }
      m.rows.push_back(std::move(row));
    } else if (l.keyword == "label") {
      m.label = l.rest;
    } else {
      throw InputError("unknown keyword '" + l.keyword + "'", l.line, 1);
    }
  }
  if (!have_free) throw InputError("missing free line");
  return m;
}

template <class Field>
ModulePresentation<Field> build_module(const ModuleText& t, const AlgebraPresentation<Field>& a) {
  using K = typename Field::scalar;
  if (!t.over.empty() && t.over != a.label)
    throw InputError("module is over '" + t.over + "' but the algebra is '" + a.label + "'");
  ModulePresentation<Field> m;
  m.algebra = a;
  m.side = t.side;
  m.cover.shifts = t.shifts;
  m.label = t.label;
  for (const auto& r : t.rows) {
    if (r.entries.size() != t.shifts.size())
      throw InputError("relation has " + std::to_string(r.entries.size()) + " entries for " +
                           std::to_string(t.shifts.size()) + " generators",
                       r.line, 1);
    PolyVector<K> row;
    for (std::size_t j = 0; j < r.entries.size(); ++j) {
      std::string e = r.entries[j];
      bool blank = std::all_of(e.begin(), e.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
      row.push_back(blank ? NcPolynomial<K>{} : parse_polynomial(a.field, a.gens, e, r.line, r.columns[j]));
    }
    try {
      row_degree(a.gens, m.cover, row);
    } catch (const InputError& ex) {
      throw InputError(ex.what(), r.line, 1);
    }
    m.relations.push_back(std::move(row));
  }
  return m;
}

/// Map file: `source <algebra file>` then `image <generator> <polynomial>` lines.
struct MapText {
  std::string source;
  int source_line = 0;
  struct Image {
    std::string gen;
    std::string poly;
    int line;
    int column;
  };
  std::vector<Image> images;
};

inline MapText parse_map_text(const std::string& text) {
  MapText m;
  for (const auto& l : split_lines(text)) {
    if (l.keyword == "source") {
      m.source = l.rest;
      m.source_line = l.line;
    } else if (l.keyword == "image") {
      auto sp = l.rest.find_first_of(" \t");
      if (sp == std::string::npos) throw InputError("expected 'image <generator> <polynomial>'", l.line, l.rest_column + 1);
      std::size_t p = sp;
      while (p < l.rest.size() && std::isspace(static_cast<unsigned char>(l.rest[p]))) ++p;
      m.images.push_back({l.rest.substr(0, sp), l.rest.substr(p), l.line, l.rest_column + static_cast<int>(p)});
    } else {
      throw InputError("unknown keyword '" + l.keyword + "'", l.line, 1);
    }
  }
  if (m.source.empty()) throw InputError("missing source line");
  return m;
}

template <class Field>
AlgebraMap<Field> build_map(const MapText& t, const AlgebraPresentation<Field>& source,
                            const AlgebraPresentation<Field>& target) {
  using K = typename Field::scalar;
  AlgebraMap<Field> phi{source, target, std::vector<NcPolynomial<K>>(source.gens.size())};
  std::vector<bool> seen(source.gens.size(), false);
  for (const auto& im : t.images) {
    auto idx = source.gens.index_of(im.gen);
    if (!idx) throw InputError("unknown source generator '" + im.gen + "'", im.line, 1);
    phi.images[*idx] = parse_polynomial(target.field, target.gens, im.poly, im.line, im.column);
    seen[*idx] = true;
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i]) throw InputError("no image given for '" + source.gens.name(i) + "'");
  return phi;
}

// ---------------------------------------------------------------------------
// JSON

inline Json to_json(const Window& w) { return Json{{"hmax", w.hmax}, {"dmax", w.dmax}}; }

inline Json to_json(const ExtendedValue& v) {
  return Json{{"value", v.value_string()}, {"status", status_name(v.status())}, {"window", to_json(v.window())}};
}

inline Json to_json(const BettiTable& b) {
  Json rows = Json::array();
  std::map<int, Json> by_row;
  for (const auto& [k, v] : b.entries) {
    if (!v) continue;
    auto& r = by_row[k.first];
    if (r.is_null()) r = Json::array();
    r.push_back(Json{{"j", k.second}, {"beta", v}});
  }
  for (auto& [i, e] : by_row) rows.push_back(Json{{"i", i}, {"entries", e}});
  Json out{{"hmax", b.hmax}, {"dmax", b.dmax}};
  out["terminated_at"] = b.terminated_at ? Json(*b.terminated_at) : Json(nullptr);
  out["complete_rows"] = Json(std::vector<int>(b.complete_rows.begin(), b.complete_rows.end()));
  out["rows"] = rows;
  return out;
}

inline Json to_json(const Weight& w) { return Json::array({w.xi0.to_string(), w.xi1.to_string()}); }

inline Json to_json(const ASType& t) {
  return Json{{"kind", as_kind_name(t.kind)}, {"d", t.d}, {"l", t.l}, {"evidence", t.evidence}};
}

// ---------------------------------------------------------------------------
// Groebner cache

template <class Field>
Json gb_to_json(const GroebnerData<Field>& g, const std::string& key) {
  Json gb = Json::array();
  for (const auto& p : g.gb()) gb.push_back(to_string(g.gens(), p));
  return Json{{"format", kGbFormatVersion}, {"key", key}, {"dmax", g.dmax()}, {"gb", gb}, {"dims", g.dims()}};
}

/// Loads cached data when present and consistent; otherwise computes and stores it.
template <class Field>
GroebnerData<Field> cached_groebner(const AlgebraPresentation<Field>& a, int dmax,
                                    const std::optional<std::string>& cache_dir, bool* hit = nullptr) {
  if (hit) *hit = false;
  if (!cache_dir || cache_dir->empty()) return compute_groebner(a, dmax);
  namespace fs = std::filesystem;
  std::string key = cache_key(a, dmax);
  fs::path file = fs::path(*cache_dir) / ("gb-" + key + ".json");
  std::error_code ec;
  if (fs::exists(file, ec)) {
    try {
      auto doc = Json::parse(read_file(file.string()));
      if (doc.at("key").get<std::string>() == key && doc.at("format").get<int>() == kGbFormatVersion &&
          doc.at("dmax").get<int>() == dmax) {
        std::vector<NcPolynomial<typename Field::scalar>> gb;
        for (const auto& s : doc.at("gb")) gb.push_back(parse_polynomial(a.field, a.gens, s.get<std::string>()));
        auto g = groebner_from_basis(a, dmax, std::move(gb));
        if (doc.at("dims").get<std::vector<int>>() == g.dims()) {
          if (hit) *hit = true;
          return g;
        }
      }
    } catch (const std::exception&) {
      // Unreadable or stale entry: recompute below and overwrite it.
    }
  }
  auto g = compute_groebner(a, dmax);
  fs::create_directories(*cache_dir, ec);
  fs::path tmp = file;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary);
    if (out) out << gb_to_json(g, key).dump(1) << "\n";
  }
  fs::rename(tmp, file, ec);
  if (ec) fs::remove(tmp, ec);
  return g;
}

}  // namespace gradreg
