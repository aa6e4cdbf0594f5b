// gradreg: command-line front end.
//
// Exit codes: 0 success, 1 refusal (uncertified or unsupported, or a
// failing verify case), 2 malformed input.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gradreg/gradreg.hpp"

using namespace gradreg;

namespace {

struct RunConfig {
  std::string command;
  std::string invariant;  // reg: tor | ext | cm | as
  std::string algebra_path;
  std::string module = "k";
  int dmax = 16;
  int hmax = 8;
  std::vector<std::string> xi;
  std::string field;
  std::string cache_dir;
  std::string format = "table";
  std::string as_type;
  int veronese_d = 2;
  std::string gens;
  std::string via;
  std::string suite = "all";
  int gen_bound = 0;
  int rel_bound = 0;
};

/// Writes either the table text or the JSON document.
struct Output {
  bool json = false;
  Json doc = Json::object();
  std::ostringstream text;

  void flush() {
    if (json)
      std::cout << doc.dump(2) << "\n";
    else
      std::cout << text.str();
  }
};

std::string with_path(const std::string& path, const InputError& e) { return path + ": " + e.what(); }

AlgebraText load_algebra_text(const std::string& path) {
  try {
    return parse_algebra_text(read_file(path), file_stem(path));
  } catch (const InputError& e) {
    throw InputError(with_path(path, e));
  }
}

std::vector<Weight> parse_weights(const RunConfig& cfg) {
  if (cfg.xi.empty()) throw InputError("at least one --xi weight is required");
  std::vector<Weight> out;
  for (const auto& s : cfg.xi) out.push_back(Weight::parse(s));
  return out;
}

template <class Field>
class Session {
 public:
  using K = typename Field::scalar;

  Session(const RunConfig& cfg, const AlgebraText& text, const Field& field) : cfg_(cfg) {
    try {
      algebra_ = build_algebra(text, field);
    } catch (const InputError& e) {
      throw InputError(with_path(cfg.algebra_path, e));
    }
  }

  int run(Output& out) {
    const auto& c = cfg_.command;
    if (c == "gb") return gb(out);
    if (c == "hilbert") return hilbert(out);
    if (c == "betti") return betti(out);
    if (c == "reg") return reg(out);
    if (c == "depth") return depth_cmd(out);
    if (c == "pdim") return pdim_cmd(out);
    if (c == "rate" || c == "slope") return rate_slope(out);
    if (c == "koszul") return koszul(out);
    if (c == "veronese") return veronese(out);
    if (c == "subalgebra") return subalgebra(out);
    if (c == "astype") return astype(out);
    if (c == "bound58") return bound58(out);
    throw InputError("unknown command '" + c + "'");
  }

 private:
  const GroebnerData<Field>& groebner() {
    if (!g_) {
      std::optional<std::string> dir;
      if (!cfg_.cache_dir.empty()) dir = cfg_.cache_dir;
      g_.emplace(cached_groebner(algebra_, cfg_.dmax, dir));
    }
    return *g_;
  }

  ModulePresentation<Field> module() {
    if (cfg_.module == "k") return trivial_module(algebra_);
    if (cfg_.module == "A") return free_module_presentation(algebra_, FreeModule{{0}});
    try {
      return build_module(parse_module_text(read_file(cfg_.module), file_stem(cfg_.module)), algebra_);
    } catch (const InputError& e) {
      throw InputError(with_path(cfg_.module, e));
    }
  }

  const Resolution<Field>& resolution() {
    if (!res_) {
      int hmax = cfg_.hmax;
      if (auto t = type(false); t.certified()) hmax = std::max(hmax, t.d + 1);
      res_.emplace(minimal_free_resolution(module(), groebner(), hmax, cfg_.dmax));
    }
    return *res_;
  }

  const Resolution<Field>& k_resolution() {
    if (!kres_) kres_.emplace(minimal_free_resolution(trivial_module(algebra_), groebner(), cfg_.hmax, cfg_.dmax));
    return *kres_;
  }

  /// AS Gorenstein type: assumed via --as-type, else certified from the window.
  ASType type(bool required) {
    if (!type_) {
      if (!cfg_.as_type.empty()) {
        auto comma = cfg_.as_type.find(',');
        if (comma == std::string::npos) throw InputError("--as-type must look like 'd,l'");
        try {
          type_ = ASType::assumed(std::stoi(cfg_.as_type.substr(0, comma)), std::stoi(cfg_.as_type.substr(comma + 1)));
        } catch (const std::logic_error&) {
          throw InputError("bad --as-type '" + cfg_.as_type + "'");
        }
      } else {
        type_ = as_type_from_resolution(k_resolution(), groebner());
      }
    }
    if (required && !type_->certified())
      throw Refusal("uncertified: the algebra is not certified AS Gorenstein (" + type_->evidence + ")");
    return *type_;
  }

  LocalCohomologyDegrees local_cohomology() {
    auto t = type(true);
    return local_cohomology_from_resolution(resolution(), t, groebner());
  }

  void value_line(Output& out, const std::string& name, const ExtendedValue& v, const std::optional<Weight>& xi) {
    auto w = v.window();
    out.text << name << (xi ? xi->to_string() : "") << " = " << v.value_string() << "  [" << status_name(v.status())
             << ", window hmax=" << w.hmax << " dmax=" << w.dmax << "]\n";
    auto j = to_json(v);
    if (xi) j["xi"] = to_json(*xi);
    if (!out.doc.contains("results")) out.doc["results"] = Json::array();
    out.doc["results"].push_back(j);
  }

  void header(Output& out) {
    out.doc["algebra"] = algebra_.label;
    out.doc["field"] = algebra_.field.name();
  }

  int gb(Output& out) {
    const auto& g = groebner();
    header(out);
    out.doc["dmax"] = g.dmax();
    Json gb = Json::array();
    out.text << "Groebner basis through degree " << g.dmax() << ":\n";
    for (const auto& p : g.gb()) {
      gb.push_back(to_string(g.gens(), p));
      out.text << "  " << to_string(g.gens(), p) << "\n";
    }
    out.doc["gb"] = gb;
    out.doc["dims"] = g.dims();
    out.text << "dims:";
    for (auto d : g.dims()) out.text << " " << d;
    out.text << "\n";
    return 0;
  }

  int hilbert(Output& out) {
    const auto& g = groebner();
    header(out);
    out.doc["dims"] = g.dims();
    Json values = Json::array();
    Window w{0, g.dmax()};
    for (int n = 0; n <= g.dmax(); ++n) {
      auto v = to_json(ExtendedValue::finite(Rational(static_cast<long>(g.dim(n))), Status::exact, w));
      v["degree"] = n;
      values.push_back(v);
    }
    out.doc["values"] = values;
    if (auto t = g.top_degree()) out.doc["top_degree"] = *t;
    for (int n = 0; n <= g.dmax(); ++n) out.text << n << " " << g.dim(n) << "\n";
    out.text << "window: dmax=" << g.dmax() << ", dimensions exact through dmax\n";
    if (auto t = g.top_degree()) out.text << "finite dimensional, top degree " << *t << "\n";
    return 0;
  }

  int betti(Output& out) {
    const auto& r = resolution();
    header(out);
    out.doc["module"] = cfg_.module;
    out.doc["betti"] = to_json(r.betti);
    out.doc["notes"] = r.notes;
    out.text << betti_text(r.betti);
    for (const auto& n : r.notes) out.text << "note: " << n << "\n";
    return 0;
  }

  int reg(Output& out) {
    auto weights = parse_weights(cfg_);
    header(out);
    out.doc["invariant"] = cfg_.invariant;
    if (cfg_.invariant != "as") out.doc["module"] = cfg_.module;
    for (const auto& xi : weights) {
      if (cfg_.invariant == "tor") {
        value_line(out, "Torreg", torreg(resolution().betti, xi), xi);
      } else if (cfg_.invariant == "ext") {
        value_line(out, "Extreg", extreg_via_hom(resolution(), xi), xi);
      } else if (cfg_.invariant == "cm") {
        value_line(out, "CMreg", cmreg_module(local_cohomology(), xi), xi);
      } else if (cfg_.invariant == "as") {
        auto t = type(true);
        value_line(out, "ASreg", asreg(k_resolution().betti, t, xi).with_window(window_of(k_resolution().betti)), xi);
      } else {
        throw InputError("unknown invariant '" + cfg_.invariant + "' (use tor, ext, cm or as)");
      }
    }
    return 0;
  }

  int depth_cmd(Output& out) {
    auto lc = local_cohomology();
    header(out);
    out.doc["module"] = cfg_.module;
    value_line(out, "depth", depth(lc), std::nullopt);
    Json degs = Json::array();
    for (std::size_t j = 0; j < lc.deg.size(); ++j) {
      out.text << "deg H^" << j << " = " << lc.deg[j].to_string() << "\n";
      degs.push_back(to_json(lc.deg[j]));
    }
    out.doc["local_cohomology_degrees"] = degs;
    return 0;
  }

  int pdim_cmd(Output& out) {
    header(out);
    out.doc["module"] = cfg_.module;
    value_line(out, "pdim", pdim(resolution().betti), std::nullopt);
    return 0;
  }

  int rate_slope(Output& out) {
    header(out);
    if (cfg_.command == "rate") {
      value_line(out, "rate", rate(k_resolution().betti), std::nullopt);
    } else {
      out.doc["module"] = cfg_.module;
      value_line(out, "slope", slope(resolution().betti), std::nullopt);
    }
    return 0;
  }

  int koszul(Output& out) {
    auto v = koszul_check(k_resolution().betti);
    header(out);
    out.doc["koszul_through_window"] = v.koszul_through_window;
    out.doc["window"] = to_json(v.window);
    if (v.witness) out.doc["witness"] = Json::array({v.witness->first, v.witness->second});
    if (v.koszul_through_window)
      out.text << "Koszul through window hmax=" << v.window.hmax << " dmax=" << v.window.dmax << "\n";
    else
      out.text << "not Koszul: beta(" << v.witness->first << "," << v.witness->second << ") != 0\n";
    return 0;
  }

  void presentation_out(Output& out, const EmbeddedPresentation<Field>& p) {
    const auto& a = p.presentation;
    header(out);
    Json gens = Json::array(), rels = Json::array(), images = Json::array();
    std::string gl;
    for (std::size_t i = 0; i < a.gens.size(); ++i) {
      gens.push_back(a.gens.name(i) + ":" + std::to_string(a.gens.degree(i)));
      gl += " " + a.gens.name(i) + ":" + std::to_string(a.gens.degree(i));
      images.push_back(to_string(algebra_.gens, p.images[i]));
    }
    out.text << "# valid through degree " << p.valid_through << "\n";
    out.text << "field " << a.field.name() << "\n";
    out.text << "gens" << gl << "\n";
    for (const auto& r : a.relations) {
      rels.push_back(to_string(a.gens, r));
      out.text << "rel " << to_string(a.gens, r) << "\n";
    }
    for (std::size_t i = 0; i < a.gens.size(); ++i)
      out.text << "# " << a.gens.name(i) << " = " << to_string(algebra_.gens, p.images[i]) << "\n";
    out.doc["generators"] = gens;
    out.doc["relations"] = rels;
    out.doc["images"] = images;
    out.doc["valid_through"] = p.valid_through;
  }

  int veronese(Output& out) {
    if (cfg_.veronese_d < 1) throw InputError("--d must be positive");
    int rb = cfg_.rel_bound ? cfg_.rel_bound : std::max(2, cfg_.dmax / cfg_.veronese_d);
    int gb = cfg_.gen_bound ? cfg_.gen_bound : rb;
    presentation_out(out, veronese_presentation(groebner(), cfg_.veronese_d, gb, rb));
    return 0;
  }

  int subalgebra(Output& out) {
    std::vector<NcPolynomial<K>> gens;
    std::stringstream ss(cfg_.gens);
    std::string item;
    while (std::getline(ss, item, ','))
      if (item.find_first_not_of(" \t") != std::string::npos)
        gens.push_back(parse_polynomial(algebra_.field, algebra_.gens, item));
    if (gens.empty()) throw InputError("--gens needs at least one polynomial");
    int rb = cfg_.rel_bound ? cfg_.rel_bound : cfg_.dmax;
    int gb = cfg_.gen_bound ? cfg_.gen_bound : rb;
    presentation_out(out, subalgebra_presentation(groebner(), gens, gb, rb));
    return 0;
  }

  int astype(Output& out) {
    auto t = type(false);
    header(out);
    out.doc["as_type"] = to_json(t);
    if (!t.certified()) {
      out.text << "uncertified: " << t.evidence << "\n";
      return 1;
    }
    out.text << (t.kind == ASType::Kind::as_regular ? "AS regular" : "AS Gorenstein (assumed)") << ", type (" << t.d
             << "," << t.l << ")\n";
    out.text << "evidence: " << t.evidence << "\n";
    return 0;
  }

  int bound58(Output& out) {
    if (cfg_.via.empty()) throw InputError("bound58 needs --via <map file>");
    MapText mt;
    try {
      mt = parse_map_text(read_file(cfg_.via));
    } catch (const InputError& e) {
      throw InputError(with_path(cfg_.via, e));
    }
    namespace fs = std::filesystem;
    fs::path src = mt.source;
    if (src.is_relative()) src = fs::path(cfg_.via).parent_path() / src;
    auto ttext = load_algebra_text(src.string());
    AlgebraPresentation<Field> T;
    try {
      T = build_algebra(ttext, algebra_.field);
    } catch (const InputError& e) {
      throw InputError(with_path(src.string(), e));
    }
    AlgebraMap<Field> phi;
    try {
      phi = build_map(mt, T, algebra_);
    } catch (const InputError& e) {
      throw InputError(with_path(cfg_.via, e));
    }
    const auto& gA = groebner();
    validate_map(phi, gA);
    auto gT = compute_groebner(T, cfg_.dmax);
    auto ta = restrict_scalars(gA, gT, phi, free_module_presentation(algebra_, FreeModule{{0}}), cfg_.dmax, cfg_.dmax);
    auto rt = minimal_free_resolution(ta.module, gT, cfg_.hmax, std::min(cfg_.dmax, ta.valid_through));
    Rational c = prop58_bound(rt.betti);
    const auto& kb = k_resolution().betti;
    auto tk = torreg(kb, Weight::of(c));
    auto r = rate(kb);
    header(out);
    out.doc["source"] = T.label;
    out.doc["betti_over_source"] = to_json(rt.betti);
    out.doc["c"] = c.to_string();
    out.doc["torreg_k_at_c"] = to_json(tk);
    out.doc["rate"] = to_json(r);
    out.text << "table of A over " << T.label << ":\n" << betti_text(rt.betti);
    out.text << "c = " << c.to_string() << "\n";
    out.text << "Torreg(1," << c.to_string() << ")(k) = " << tk.to_string() << "\n";
    out.text << "rate(A) = " << r.to_string() << "\n";
    if (tk.is_finite()) {
      auto rb = rate_bound(tk.value(), c);
      out.doc["rate_bound"] = rb.to_string();
      out.text << "rate bound = " << rb.to_string() << "\n";
    }
    return 0;
  }

  const RunConfig& cfg_;
  AlgebraPresentation<Field> algebra_;
  std::optional<GroebnerData<Field>> g_;
  std::optional<Resolution<Field>> res_, kres_;
  std::optional<ASType> type_;
};

template <class Field>
int run_verify(const RunConfig& cfg, const Field& field, Output& out) {
  std::vector<std::string> suites;
  if (cfg.suite == "all")
    suites = suite_names();
  else if (is_suite(cfg.suite))
    suites = {cfg.suite};
  else
    throw InputError("unknown suite '" + cfg.suite + "'");
  std::vector<Weight> weights = cfg.xi.empty() ? default_weights() : parse_weights(cfg);
  Verifier<Field> v(default_corpus(field), weights);
  auto cases = v.run(suites);
  out.doc = report_json(cases, field.name(), kVersion);
  out.text << report_table(cases);
  return all_passed(cases) ? 0 : 1;
}

int dispatch(const RunConfig& cfg, Output& out) {
  if (cfg.dmax < 2) throw InputError("--dmax must be at least 2");
  if (cfg.hmax < 1) throw InputError("--hmax must be at least 1");
  if (cfg.format != "table" && cfg.format != "json") throw InputError("--format must be table or json");
  std::optional<FieldSpec> override;
  if (!cfg.field.empty()) override = FieldSpec::parse(cfg.field);
  if (cfg.command == "verify") {
    FieldSpec f = override.value_or(FieldSpec{});
    if (f.is_rational()) return run_verify(cfg, RationalField{}, out);
    return run_verify(cfg, PrimeField(f.prime), out);
  }
  auto text = load_algebra_text(cfg.algebra_path);
  FieldSpec f = override.value_or(text.field);
  if (f.is_rational()) return Session<RationalField>(cfg, text, RationalField{}).run(out);
  return Session<PrimeField>(cfg, text, PrimeField(f.prime)).run(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted regularity of noncommutative graded algebras and modules"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("gradreg ") + kVersion);
  RunConfig cfg;
  if (const char* env = std::getenv("GRADREG_CACHE")) cfg.cache_dir = env;

  auto common = [&](CLI::App* sub, bool algebra, bool module, bool weights) {
    if (algebra) sub->add_option("algebra", cfg.algebra_path, "algebra file")->required();
    sub->add_option("--dmax", cfg.dmax, "internal degree window")->capture_default_str();
    sub->add_option("--hmax", cfg.hmax, "homological window")->capture_default_str();
    sub->add_option("--field", cfg.field, "coefficient field: Q or F<p> (overrides the file)");
    sub->add_option("--format", cfg.format, "table or json")->capture_default_str();
    sub->add_option("--cache-dir", cfg.cache_dir, "Groebner cache directory (default $GRADREG_CACHE)");
    if (module) sub->add_option("--module", cfg.module, "k, A, or a module file")->capture_default_str();
    if (weights) sub->add_option("--xi", cfg.xi, "weight xi0,xi1 or classic|pdim|sup (repeatable)")->allow_extra_args(false);
    sub->add_option("--as-type", cfg.as_type, "assume AS Gorenstein type d,l instead of certifying");
    sub->callback([&cfg, sub] { cfg.command = sub->get_name(); });
  };

  common(app.add_subcommand("gb", "Groebner basis and dimensions"), true, false, false);
  common(app.add_subcommand("hilbert", "Hilbert function through the window"), true, false, false);
  common(app.add_subcommand("betti", "Betti table of a module"), true, true, false);
  auto* reg = app.add_subcommand("reg", "weighted regularity: tor, ext, cm or as");
  reg->add_option("invariant", cfg.invariant, "tor | ext | cm | as")->required();
  common(reg, true, true, true);
  common(app.add_subcommand("depth", "depth and local cohomology degrees"), true, true, false);
  common(app.add_subcommand("pdim", "projective dimension"), true, true, false);
  common(app.add_subcommand("rate", "rate of the algebra"), true, false, false);
  common(app.add_subcommand("slope", "slope of a module"), true, true, false);
  common(app.add_subcommand("koszul", "Koszul check through the window"), true, false, false);
  auto* ver = app.add_subcommand("veronese", "presentation of a Veronese subalgebra");
  ver->add_option("--d", cfg.veronese_d, "Veronese degree")->required();
  ver->add_option("--gen-bound", cfg.gen_bound, "generator degree bound (in Veronese degrees)");
  ver->add_option("--rel-bound", cfg.rel_bound, "relation degree bound (in Veronese degrees)");
  common(ver, true, false, false);
  auto* sub = app.add_subcommand("subalgebra", "presentation of a subalgebra");
  sub->add_option("--gens", cfg.gens, "comma separated homogeneous polynomials")->required();
  sub->add_option("--gen-bound", cfg.gen_bound, "generator degree bound");
  sub->add_option("--rel-bound", cfg.rel_bound, "relation degree bound");
  common(sub, true, false, false);
  common(app.add_subcommand("astype", "certify AS regularity and the type (d,l)"), true, false, false);
  auto* b58 = app.add_subcommand("bound58", "finite-map bound c and the rate bound");
  b58->add_option("--via", cfg.via, "map file")->required();
  common(b58, true, false, false);
  auto* verify = app.add_subcommand("verify", "run verification suites on the built-in corpus");
  verify->add_option("--suite", cfg.suite, "suite name or all")->capture_default_str();
  common(verify, false, false, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Output out;
  out.json = cfg.format == "json";
  try {
    int code = dispatch(cfg, out);
    out.flush();
    return code;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Refusal& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 1;
  }
}
