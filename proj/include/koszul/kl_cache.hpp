#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "koszul/hecke.hpp"
#include "koszul/io.hpp"

namespace koszul {

inline constexpr const char* kConventionVersion = "Hs^2=(v^-1-v)Hs+1;bs=Hs+v;bs-twist=1";
inline constexpr const char* kEngineVersion = "koszul 0.1.0";

struct KLCacheError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Explicit directory, else $KOSZUL_CACHE_DIR, else $XDG_CACHE_HOME/koszul, else
// ~/.cache/koszul.
inline std::filesystem::path kl_cache_dir(const std::optional<std::string>& override_dir = std::nullopt) {
  if (override_dir && !override_dir->empty()) return *override_dir;
  if (const char* d = std::getenv("KOSZUL_CACHE_DIR"); d && *d) return d;
  if (const char* d = std::getenv("XDG_CACHE_HOME"); d && *d) return std::filesystem::path(d) / "koszul";
  if (const char* d = std::getenv("HOME"); d && *d) return std::filesystem::path(d) / ".cache" / "koszul";
  return ".koszul-cache";
}

inline std::filesystem::path kl_cache_path(const std::filesystem::path& dir, const Realization& re, int length_bound) {
  return dir / ("kl-" + realization_hash(re) + "-L" + std::to_string(length_bound) + ".jsonl");
}

inline nlohmann::json kl_cache_header(const Realization& re, int length_bound) {
  return {{"kind", "header"},          {"gcm_hash", realization_hash(re)}, {"convention", kConventionVersion},
          {"engine", kEngineVersion},  {"length_bound", length_bound},       {"cartan", re.cartan.entries()}};
}

// P_{u,w} as coefficients of 1, q, q^2, ...
inline std::vector<std::int64_t> kl_poly_coefficients(const Laurent& p) {
  std::vector<std::int64_t> c;
  for (auto [e, a] : p.terms()) {
    if (e < 0) throw KLError("KL polynomial with negative exponent");
    if (static_cast<int>(c.size()) <= e) c.resize(e + 1, 0);
    c[e] = a;
  }
  return c;
}

inline void write_kl_cache(const std::filesystem::path& path, KLTable& table, int length_bound) {
  const WeylGroup& g = table.group();
  std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw KLCacheError("cannot write cache file " + tmp.string());
    out << kl_cache_header(g.realization(), length_bound).dump() << '\n';
    for (auto& w : g.enumerate(length_bound))
      for (auto& [u, c] : table.kl_basis(w).terms) {
        nlohmann::json rec{{"u", u.word}, {"w", w.word}, {"p", kl_poly_coefficients(table.kl_poly(u, w))}};
        out << rec.dump() << '\n';
      }
  }
  std::filesystem::rename(tmp, path);
}

enum class KLCacheStatus { missing, stale, loaded };

inline std::string to_string(KLCacheStatus s) {
  switch (s) {
    case KLCacheStatus::missing: return "missing";
    case KLCacheStatus::stale: return "stale";
    default: return "loaded";
  }
}

// Loads every b_w with l(w) <= length_bound into the table. A header that does not
// match the realization, conventions or engine leaves the table untouched.
inline KLCacheStatus read_kl_cache(const std::filesystem::path& path, KLTable& table, int length_bound) {
  std::ifstream in(path);
  if (!in) return KLCacheStatus::missing;
  const WeylGroup& g = table.group();
  std::string line;
  if (!std::getline(in, line)) return KLCacheStatus::stale;
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error&) {
    return KLCacheStatus::stale;
  }
  if (header != kl_cache_header(g.realization(), length_bound)) return KLCacheStatus::stale;
  std::map<WeylElement, HeckeElement> loaded;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto rec = nlohmann::json::parse(line);
    WeylElement u = g.element(rec.at("u").get<Word>());
    WeylElement w = g.element(rec.at("w").get<Word>());
    if (u.word != rec.at("u").get<Word>() || w.word != rec.at("w").get<Word>())
      throw KLCacheError("cache record with non-canonical word in " + path.string());
    auto p = rec.at("p").get<std::vector<std::int64_t>>();
    int d = w.length() - u.length();
    Laurent h;
    for (std::size_t k = 0; k < p.size(); ++k) h.add_term(d - 2 * static_cast<int>(k), p[k]);
    loaded[w].add(u, h);
  }
  std::size_t expected = g.enumerate(length_bound).size();
  if (loaded.size() != expected)
    throw KLCacheError("cache " + path.string() + " holds " + std::to_string(loaded.size()) + " elements, expected " +
                       std::to_string(expected));
  for (auto& [w, b] : loaded) table.insert(w, std::move(b));
  table.mark_clean();
  table.provenance = "cache";
  return KLCacheStatus::loaded;
}

// Recomputes every cached b_w from scratch; returns the first disagreement.
inline std::optional<std::string> verify_kl_table(KLTable& table, int length_bound) {
  KLTable fresh{table.algebra()};
  for (auto& w : table.group().enumerate(length_bound))
    if (!(fresh.kl_basis(w) == table.kl_basis(w))) return "b_" + w.to_string() + " disagrees with recomputation";
  return std::nullopt;
}

}  // namespace koszul
