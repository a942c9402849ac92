#pragma once

#include <iostream>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "koszul/decompose.hpp"
#include "koszul/duality.hpp"
#include "koszul/hecke.hpp"
#include "koszul/io.hpp"
#include "koszul/kl_cache.hpp"
#include "koszul/parabolic.hpp"

namespace koszul::cli {

using ojson = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2 };

struct RunConfig {
  std::string gcm_path;
  int max_length = 3;
  std::optional<int> degree_bound_override;
  std::string output_format = "json";
  std::string cache_dir;
  bool symmetrizable_self = false;
  bool use_cache = true;
  bool trust_cache = false;
  unsigned threads = 0;
};

struct Report {
  std::string command;
  ojson meta = ojson::object();
  std::vector<std::string> columns;
  std::vector<bool> math;  // per column, LaTeX math mode
  std::vector<std::vector<ojson>> rows;
  bool check_failed = false;

  void set_columns(std::vector<std::string> c, std::vector<bool> m = {}) {
    columns = std::move(c);
    math = m.empty() ? std::vector<bool>(columns.size(), false) : std::move(m);
  }
};

struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// emission

inline std::string cell_text(const ojson& c) {
  if (c.is_string()) return c.get<std::string>();
  if (c.is_boolean()) return c.get<bool>() ? "true" : "false";
  return c.dump();
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string r = "\"";
  for (char c : s) {
    if (c == '"') r += '"';
    r += c;
  }
  return r + "\"";
}

inline std::string latex_escape(const std::string& s) {
  std::string r;
  for (char c : s) {
    if (c == '_' || c == '&' || c == '%' || c == '#' || c == '$') r += '\\';
    r += c;
  }
  return r;
}

// "2*v^-3 + v" -> "2v^{-3} + v"
inline std::string latex_math(const std::string& s) {
  static const std::regex power(R"(\^(-?[0-9]+))");
  std::string r = std::regex_replace(s, power, "^{$1}");
  r.erase(std::remove(r.begin(), r.end(), '*'), r.end());
  return r;
}

inline void emit(const Report& r, const std::string& format, std::ostream& out) {
  if (format == "json") {
    ojson j;
    j["command"] = r.command;
    j["meta"] = r.meta;
    j["columns"] = r.columns;
    ojson rows = ojson::array();
    for (auto& row : r.rows) rows.push_back(row);
    j["rows"] = rows;
    out << j.dump(2) << '\n';
  } else if (format == "csv") {
    for (std::size_t i = 0; i < r.columns.size(); ++i) out << (i ? "," : "") << csv_escape(r.columns[i]);
    out << '\n';
    for (auto& row : r.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(cell_text(row[i]));
      out << '\n';
    }
  } else {
    out << "\\begin{tabular}{" << std::string(r.columns.size(), 'l') << "}\n";
    for (std::size_t i = 0; i < r.columns.size(); ++i)
      out << (i ? " & " : "") << latex_escape(r.columns[i]);
    out << "\\\\\n";
    for (auto& row : r.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        std::string t = cell_text(row[i]);
        out << (i ? " & " : "") << (r.math[i] ? "$" + latex_math(t) + "$" : latex_escape(t));
      }
      out << "\\\\\n";
    }
    out << "\\end{tabular}\n";
  }
}

// ---------------------------------------------------------------------------
// helpers

inline std::string wstr(const WeylElement& w) { return word_to_string(w.word); }
inline std::string wstr(const Word& w) { return word_to_string(w); }

inline ojson type_meta(const Realization& re, const RunConfig& cfg) {
  ojson m;
  m["cartan"] = re.cartan.entries();
  m["dim_h"] = re.dim_h;
  m["gcm_hash"] = realization_hash(re);
  m["max_length"] = cfg.max_length;
  return m;
}

inline void load_kl(KLTable& table, const RunConfig& cfg, int bound, std::ostream& err) {
  if (!cfg.use_cache) return;
  const Realization& re = table.group().realization();
  auto dir = kl_cache_dir(cfg.cache_dir.empty() ? std::nullopt : std::optional<std::string>(cfg.cache_dir));
  auto path = kl_cache_path(dir, re, bound);
  KLCacheStatus st = KLCacheStatus::missing;
  try {
    st = read_kl_cache(path, table, bound);
  } catch (const std::exception& e) {
    err << "warning: ignoring unreadable cache " << path.string() << ": " << e.what() << '\n';
    st = KLCacheStatus::stale;
  }
  if (st == KLCacheStatus::loaded) {
    if (!cfg.trust_cache)
      if (auto bad = verify_kl_table(table, bound))
        throw CheckFailure("cache " + path.string() + " is inconsistent: " + *bad);
    return;
  }
  for (auto& w : table.group().enumerate(bound)) table.kl_basis(w);
  try {
    write_kl_cache(path, table, bound);
  } catch (const std::exception& e) {
    err << "warning: could not write cache " << path.string() << ": " << e.what() << '\n';
  }
}

inline RingSide parse_side(const std::string& s) {
  if (s == "equivariant" || s == "E") return RingSide::equivariant;
  if (s == "monodromic" || s == "M") return RingSide::monodromic;
  throw InputError("unknown side \"" + s + "\"");
}

inline RingPtr ring_for_side(const Realization& re, RingSide side, bool self) {
  if (side == RingSide::equivariant) return PolyRing::make(re, RingSide::equivariant);
  return monodromic_partner(re, self);
}

inline ParabolicSubset parse_theta(const WeylGroup& g, const std::string& text) {
  return g.parabolic(parse_index_list(text, g.rank()));
}

// ---------------------------------------------------------------------------
// commands

inline Report cmd_group(const WeylGroup& g, const RunConfig& cfg, const std::string& theta_text) {
  Report r;
  r.command = "group";
  r.meta = type_meta(g.realization(), cfg);
  std::optional<ParabolicSubset> theta;
  if (!theta_text.empty()) {
    theta = parse_theta(g, theta_text);
    r.meta["theta"] = theta->generators;
    r.meta["theta_finite_type"] = theta->finite_type;
  }
  std::vector<std::string> cols{"word", "length", "left_descents", "right_descents"};
  if (theta) cols.push_back("minimal_in_coset");
  r.set_columns(cols);
  for (auto& w : g.enumerate(cfg.max_length)) {
    std::vector<ojson> row{wstr(w), w.length(), wstr(g.left_descents(w)), wstr(g.right_descents(w))};
    if (theta) row.push_back(g.is_minimal_representative(w, *theta, CosetSide::left));
    r.rows.push_back(std::move(row));
  }
  return r;
}

inline Report cmd_kl(const WeylGroup& g, const RunConfig& cfg, std::ostream& err) {
  Report r;
  r.command = "kl";
  r.meta = type_meta(g.realization(), cfg);
  r.set_columns({"u", "w", "P"}, {false, false, true});
  KLTable t{HeckeAlgebra(g)};
  load_kl(t, cfg, cfg.max_length, err);
  for (auto& w : g.enumerate(cfg.max_length))
    for (auto& [u, c] : t.kl_basis(w).terms) r.rows.push_back({wstr(u), wstr(w), t.kl_poly(u, w).to_string("q")});
  return r;
}

inline Report cmd_mult(const WeylGroup& g, const RunConfig& cfg, const std::string& a, const std::string& b) {
  Report r;
  r.command = "mult";
  WeylElement x = g.element(parse_word(a, g.rank())), y = g.element(parse_word(b, g.rank()));
  r.meta = type_meta(g.realization(), cfg);
  r.meta["x"] = wstr(x);
  r.meta["y"] = wstr(y);
  KLTable t{HeckeAlgebra(g)};
  HeckeElement prod = t.to_kl(t.algebra().multiply(t.kl_basis(x), t.kl_basis(y)));
  WeylElement xy = g.multiply(x, y);
  bool additive = xy.length() == x.length() + y.length();
  bool parity = true;
  r.set_columns({"w", "multiplicity"}, {false, true});
  for (auto& [w, m] : prod.terms) {
    for (auto [e, c] : m.terms())
      if (((x.length() + y.length() - w.length() - e) % 2 + 2) % 2 != 0 || c < 0) parity = false;
    r.rows.push_back({wstr(w), m.to_string()});
  }
  r.meta["parity_ok"] = parity;
  r.meta["length_additive"] = additive;
  if (additive) {
    bool once = prod.coeff(xy) == Laurent(1);
    r.meta["product_label_once"] = once;
    if (!once) r.check_failed = true;
  }
  if (!parity) r.check_failed = true;
  return r;
}

inline Report cmd_pairing(const WeylGroup& g, const RunConfig& cfg, const std::vector<std::string>& words,
                          bool kl_basis) {
  Report r;
  r.command = "pairing";
  r.meta = type_meta(g.realization(), cfg);
  r.meta["basis"] = kl_basis ? "kl" : "bott-samelson";
  HeckeAlgebra h(g);
  KLTable t{h};
  std::vector<std::pair<Word, Word>> pairs;
  if (words.empty()) {
    pairs = all_pairs(reduced_words(g, cfg.max_length));
  } else if (words.size() == 2) {
    pairs.emplace_back(parse_word(words[0], g.rank()), parse_word(words[1], g.rank()));
  } else {
    throw InputError("pairing takes two words or none");
  }
  if (kl_basis) {
    r.set_columns({"x", "y", "pairing"}, {false, false, true});
    for (auto& [x, y] : pairs) {
      WeylElement ex = g.element(x), ey = g.element(y);
      r.rows.push_back({wstr(ex), wstr(ey), h.hom_pairing(t.kl_basis(ex), t.kl_basis(ey)).to_string()});
    }
    return r;
  }
  r.set_columns({"x", "y", "pairing", "predicted_hom_rank"}, {false, false, true, true});
  for (auto& [x, y] : pairs)
    r.rows.push_back({wstr(x), wstr(y), h.hom_pairing(h.bott_samelson(x), h.bott_samelson(y)).to_string(),
                      predicted_hom_rank(h, x, y).to_string()});
  return r;
}

inline Report cmd_parabolic_kl(const WeylGroup& g, const RunConfig& cfg, const std::string& theta_text,
                               const std::string& flavor) {
  Report r;
  r.command = "parabolic-kl";
  ParabolicSubset theta = parse_theta(g, theta_text);
  ParabolicFlavor f;
  if (flavor == "spherical")
    f = ParabolicFlavor::spherical;
  else if (flavor == "antispherical")
    f = ParabolicFlavor::antispherical;
  else
    throw InputError("unknown flavor \"" + flavor + "\"");
  r.meta = type_meta(g.realization(), cfg);
  r.meta["theta"] = theta.generators;
  r.meta["flavor"] = flavor;
  r.set_columns({"y", "x", "P"}, {false, false, true});
  ParabolicModule m(HeckeAlgebra(g), theta, f);
  for (auto& x : g.coset_representatives(theta, CosetSide::left, CosetKind::minimal, cfg.max_length))
    for (auto& [y, c] : m.kl_basis(x).terms) r.rows.push_back({wstr(y), wstr(x), m.parabolic_kl(y, x).to_string("q")});
  return r;
}

inline ojson bimodule_json(const Bimodule& b) {
  ojson j;
  j["word"] = b.word();
  j["side"] = to_string(b.ring_data().side());
  ojson gens = ojson::array();
  for (auto& gen : b.generators()) gens.push_back({{"degree", gen.degree}, {"weight", gen.weight}});
  j["generators"] = gens;
  ojson left = ojson::array();
  for (auto& l : b.left_actions()) {
    ojson mat = ojson::array();
    for (int i = 0; i < l.rows(); ++i) {
      ojson row = ojson::array();
      for (int k = 0; k < l.cols(); ++k) row.push_back(l(i, k).to_string());
      mat.push_back(row);
    }
    left.push_back(mat);
  }
  j["left"] = left;
  return j;
}

inline Report cmd_bimod_bs(const Realization& re, const RunConfig& cfg, const std::string& word, RingSide side) {
  WeylGroup g(re);
  Report r;
  r.command = "bimod bs";
  Bimodule b = bott_samelson(ring_for_side(re, side, cfg.symmetrizable_self), parse_word(word, g.rank()));
  r.meta = type_meta(re, cfg);
  r.meta["bimodule"] = bimodule_json(b);
  r.meta["graded_rank"] = b.graded_rank().to_string();
  r.set_columns({"generator", "degree", "weight"});
  for (int i = 0; i < b.rank(); ++i) r.rows.push_back({i, b.generators()[i].degree, b.generators()[i].weight});
  return r;
}

inline Report cmd_bimod_hom(const Realization& re, const RunConfig& cfg, const std::string& a, const std::string& c,
                            RingSide side) {
  WeylGroup g(re);
  Report r;
  r.command = "bimod hom";
  Word x = parse_word(a, g.rank()), y = parse_word(c, g.rank());
  RingPtr ring = ring_for_side(re, side, cfg.symmetrizable_self);
  GradedHomSpace h = hom_graded(bott_samelson(ring, x), bott_samelson(ring, y), cfg.degree_bound_override);
  BigradedDim table = bigraded_rank(h);
  r.meta = type_meta(re, cfg);
  r.meta["x"] = wstr(x);
  r.meta["y"] = wstr(y);
  r.meta["side"] = to_string(side);
  r.meta["degree_bound"] = h.degree_bound;
  r.meta["graded_rank"] = h.rank->to_string();
  if (side == RingSide::equivariant) {
    Laurent want = predicted_hom_rank(HeckeAlgebra(g), x, y);
    r.meta["predicted_hom_rank"] = want.to_string();
    r.meta["matches_prediction"] = want == *h.rank;
    if (want != *h.rank) r.check_failed = true;
  }
  r.set_columns({"degree", "weight", "rank"});
  for (auto& [k, m] : table.dims()) r.rows.push_back({k.first, k.second, m});
  return r;
}

inline Report cmd_bimod_decompose(const Realization& re, const RunConfig& cfg, const std::string& word,
                                  RingSide side) {
  WeylGroup g(re);
  Report r;
  r.command = "bimod decompose";
  Word x = parse_word(word, g.rank());
  SoergelLibrary lib(ring_for_side(re, side, cfg.symmetrizable_self));
  Decomposition d = lib.decompose_word(x);
  HeckeAlgebra h(g);
  KLTable t{h};
  HeckeElement want = t.to_kl(h.bott_samelson(x));
  std::map<WeylElement, Laurent> got = d.multiplicities();
  bool agree = got.size() == want.terms.size();
  for (auto& [w, m] : want.terms) agree = agree && got.count(w) && got.at(w) == m;
  r.meta = type_meta(re, cfg);
  r.meta["word"] = wstr(x);
  r.meta["side"] = to_string(side);
  r.meta["matches_hecke"] = agree;
  if (!agree) r.check_failed = true;
  r.set_columns({"label", "shift", "twist_doubled", "multiplicity"});
  for (auto& e : d.entries) r.rows.push_back({wstr(e.label), e.shift, e.twist_doubled, e.multiplicity});
  return r;
}

inline Report cmd_duality_check(const Realization& re, const RunConfig& cfg) {
  WeylGroup g(re);
  Report r;
  r.command = "duality check";
  EMCheckOptions opt;
  opt.symmetrizable_self = cfg.symmetrizable_self;
  opt.degree_bound = cfg.degree_bound_override;
  opt.threads = cfg.threads;
  EMReport rep = em_check(re, all_pairs(reduced_words(g, cfg.max_length)), opt);
  r.meta = type_meta(re, cfg);
  r.meta["symmetrizable_self"] = cfg.symmetrizable_self;
  r.meta["pairs"] = rep.pairs.size();
  r.meta["failures"] = rep.failures();
  r.meta["all_pass"] = rep.all_pass();
  r.check_failed = !rep.all_pass();
  r.set_columns({"x", "y", "equivariant", "regraded", "monodromic", "pass"});
  for (auto& p : rep.pairs)
    r.rows.push_back({wstr(p.x), wstr(p.y), p.equivariant.to_string(), p.regraded.to_string(), p.monodromic.to_string(),
                      p.pass});
  return r;
}

inline std::vector<WeylElement> elements_for(const WeylGroup& g, const RunConfig& cfg, const std::string& word) {
  if (!word.empty()) return {g.element(parse_word(word, g.rank()))};
  return g.enumerate(cfg.max_length);
}

inline Report cmd_parabolic(const WeylGroup& g, const RunConfig& cfg, const std::string& action,
                            const std::string& theta_text, const std::string& variance, const std::string& word) {
  Report r;
  r.command = "parabolic " + action;
  ParabolicSubset theta = parse_theta(g, theta_text);
  r.meta = type_meta(g.realization(), cfg);
  r.meta["theta"] = theta.generators;
  if (action == "push") {
    Variance v;
    if (variance == "!" || variance == "shriek")
      v = Variance::shriek;
    else if (variance == "*" || variance == "star")
      v = Variance::star;
    else
      throw InputError("unknown variance \"" + variance + "\"");
    r.meta["variance"] = v == Variance::shriek ? "!" : "*";
    r.set_columns({"w", "coset", "shift", "twist_doubled"});
    for (auto& w : elements_for(g, cfg, word)) {
      auto c = push_standard(g, w, theta, v);
      r.rows.push_back({wstr(w), wstr(c.terms[0].coset), c.terms[0].shift, c.terms[0].twist_doubled});
    }
  } else if (action == "average") {
    r.set_columns({"w", "coset", "shift", "twist_doubled", "costandard_twist_doubled", "ic_killed"});
    for (auto& w : elements_for(g, cfg, word)) {
      auto c = average_standard(g, w, theta);
      auto n = average_costandard(g, w, theta);
      r.rows.push_back({wstr(w), wstr(c.terms[0].coset), c.terms[0].shift, c.terms[0].twist_doubled,
                        n.terms[0].twist_doubled, kill_nonminimal(g, w, theta)});
    }
  } else if (action == "decomp") {
    KLTable t{HeckeAlgebra(g)};
    r.set_columns({"w", "coset", "shift", "multiplicity"});
    for (auto& w : elements_for(g, cfg, word))
      for (auto& m : parabolic_decomp_multiplicities(t, w, theta))
        r.rows.push_back({wstr(w), wstr(m.coset), m.shift, m.multiplicity});
  } else if (action == "match") {
    r.set_columns({"coset", "parabolic_shift", "parabolic_twist_doubled", "whittaker_shift",
                   "whittaker_twist_doubled", "supports_equal"});
    bool all = true;
    for (auto& v : g.coset_representatives(theta, CosetSide::left, CosetKind::minimal, cfg.max_length)) {
      auto [par, whit] = pw_match(g, v, theta);
      bool same = par.support() == whit.support();
      all = all && same;
      r.rows.push_back({wstr(v), par.terms[0].shift, par.terms[0].twist_doubled, whit.terms[0].shift,
                        whit.terms[0].twist_doubled, same});
    }
    ojson flag = ojson::array();
    for (auto& [key, m] : ptheta_flag(g, theta))
      flag.push_back({{"u", wstr(key.first)}, {"twist_doubled", key.second}, {"multiplicity", m}});
    r.meta["projective_flag"] = flag;
    r.check_failed = !all;
  } else {
    throw InputError("unknown parabolic action \"" + action + "\"");
  }
  return r;
}

// ---------------------------------------------------------------------------

inline void diagnostic(std::ostream& err, const std::string& kind, const std::string& message) {
  ojson j;
  j["error"] = {{"kind", kind}, {"message", message}};
  err << j.dump() << '\n';
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Soergel bimodule, Hecke algebra and Koszul duality checks"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  bool fmt_json = false, fmt_csv = false, fmt_latex = false, no_cache = false;
  std::optional<int> degree_bound;
  app.add_option("--type,--gcm", cfg.gcm_path, "Cartan matrix / realization JSON (bundled names allowed)");
  app.add_option("--max-length", cfg.max_length, "length bound")->check(CLI::NonNegativeNumber);
  app.add_option("--degree-bound", degree_bound, "override the Hom degree bound");
  app.add_option("--format", cfg.output_format, "json, csv or latex")
      ->check(CLI::IsMember({"json", "csv", "latex"}));
  auto* fj = app.add_flag("--json", fmt_json, "JSON output");
  auto* fc = app.add_flag("--csv", fmt_csv, "CSV output");
  auto* fl = app.add_flag("--latex", fmt_latex, "LaTeX output");
  fj->excludes(fc)->excludes(fl);
  fc->excludes(fl);
  app.add_option("--cache-dir", cfg.cache_dir, "KL cache directory (default $KOSZUL_CACHE_DIR)");
  app.add_flag("--no-cache", no_cache, "do not read or write the KL cache");
  app.add_flag("--trust-cache", cfg.trust_cache, "skip recomputing cached KL data");
  app.add_flag("--symmetrizable-self", cfg.symmetrizable_self,
               "use the same realization on the monodromic side (symmetrizable types only)");
  app.add_option("--threads", cfg.threads, "worker threads (0: all cores)");

  std::string theta, flavor = "spherical", variance = "!", side_text = "equivariant", word;
  std::vector<std::string> words;
  bool kl_pairing = false;

  auto* group = app.add_subcommand("group", "enumerate elements");
  group->add_option("--theta", theta, "parabolic generators, e.g. 0,1");
  auto* kl = app.add_subcommand("kl", "Kazhdan-Lusztig polynomials P_{u,w}");
  auto* mult = app.add_subcommand("mult", "b_x b_y in the KL basis");
  mult->add_option("words", words, "x y")->expected(2)->required();
  auto* pairing = app.add_subcommand("pairing", "Hom pairing of Bott-Samelson (or KL) elements");
  pairing->add_option("words", words, "x y (default: all reduced words up to --max-length)")->expected(0, 2);
  pairing->add_flag("--kl", kl_pairing, "pair KL basis elements b_x, b_y");
  auto* pkl = app.add_subcommand("parabolic-kl", "parabolic KL polynomials");
  pkl->add_option("--theta", theta, "parabolic generators")->required();
  pkl->add_option("--flavor", flavor, "spherical or antispherical");

  auto* bimod = app.add_subcommand("bimod", "Soergel bimodules");
  bimod->require_subcommand(1);
  bimod->add_option("--side", side_text, "equivariant or monodromic");
  auto* bs = bimod->add_subcommand("bs", "Bott-Samelson bimodule");
  bs->add_option("word", word, "word")->required();
  auto* hom = bimod->add_subcommand("hom", "graded Hom between Bott-Samelson bimodules");
  hom->add_option("words", words, "x y")->expected(2)->required();
  auto* dec = bimod->add_subcommand("decompose", "indecomposable summands of a Bott-Samelson bimodule");
  dec->add_option("word", word, "word")->required();

  auto* duality = app.add_subcommand("duality", "equivariant-monodromic duality");
  duality->require_subcommand(1);
  auto* check = duality->add_subcommand("check", "compare regraded E-side and M-side Hom tables");

  auto* parabolic = app.add_subcommand("parabolic", "parabolic and Whittaker characters");
  parabolic->require_subcommand(1);
  parabolic->add_option("--theta", theta, "parabolic generators")->required();
  parabolic->add_option("--word", word, "single element instead of all up to --max-length");
  std::vector<CLI::App*> par_actions;
  for (const char* a : {"push", "average", "decomp", "match"}) par_actions.push_back(parabolic->add_subcommand(a));
  par_actions[0]->add_option("--variance", variance, "! (shriek) or * (star)");

  for (auto* sc : {bimod, duality, parabolic})
    for (auto* sub : sc->get_subcommands({})) sub->fallthrough();

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  if (fmt_json) cfg.output_format = "json";
  if (fmt_csv) cfg.output_format = "csv";
  if (fmt_latex) cfg.output_format = "latex";
  cfg.degree_bound_override = degree_bound;
  cfg.use_cache = !no_cache;

  try {
    if (cfg.gcm_path.empty()) throw InputError("--type is required");
    Realization re = load_realization(cfg.gcm_path);
    WeylGroup g(re);
    RingSide side = parse_side(side_text);
    Report rep;
    if (group->parsed()) {
      rep = cmd_group(g, cfg, theta);
    } else if (kl->parsed()) {
      rep = cmd_kl(g, cfg, err);
    } else if (mult->parsed()) {
      rep = cmd_mult(g, cfg, words[0], words[1]);
    } else if (pairing->parsed()) {
      rep = cmd_pairing(g, cfg, words, kl_pairing);
    } else if (pkl->parsed()) {
      rep = cmd_parabolic_kl(g, cfg, theta, flavor);
    } else if (bs->parsed()) {
      rep = cmd_bimod_bs(re, cfg, word, side);
    } else if (hom->parsed()) {
      rep = cmd_bimod_hom(re, cfg, words[0], words[1], side);
    } else if (dec->parsed()) {
      rep = cmd_bimod_decompose(re, cfg, word, side);
    } else if (check->parsed()) {
      rep = cmd_duality_check(re, cfg);
    } else {
      std::string action;
      for (auto* a : par_actions)
        if (a->parsed()) action = a->get_name();
      rep = cmd_parabolic(g, cfg, action, theta, variance, word);
    }
    emit(rep, cfg.output_format, out);
    return rep.check_failed ? kCheckFailed : kOk;
  } catch (const CheckFailure& e) {
    diagnostic(err, "check_failed", e.what());
    return kCheckFailed;
  } catch (const std::invalid_argument& e) {
    diagnostic(err, "invalid_input", e.what());
    return kUsage;
  } catch (const std::out_of_range& e) {
    diagnostic(err, "invalid_input", e.what());
    return kUsage;
  } catch (const NotFiniteType& e) {
    diagnostic(err, "not_finite_type", e.what());
    return kUsage;
  } catch (const DegreeBoundExceeded& e) {
    diagnostic(err, "degree_bound_exceeded", e.what());
    return kCheckFailed;
  } catch (const std::exception& e) {
    diagnostic(err, "engine_error", e.what());
    return kCheckFailed;
  }
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, out, err);
}

}  // namespace koszul::cli
