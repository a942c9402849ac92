#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "koszul/coxeter.hpp"

namespace koszul {

struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// {"cartan": [[...]], "dim_h": n, "roots": [[...]], "coroots": [[...]]}; roots and
// coroots are optional and default to the minimal realization.
inline Realization realization_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("cartan")) throw InputError("realization document needs a \"cartan\" matrix");
  IntMatrix a;
  try {
    a = j.at("cartan").get<IntMatrix>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("\"cartan\" must be a square integer matrix: ") + e.what());
  }
  GeneralizedCartanMatrix gcm(a);
  bool has_roots = j.contains("roots"), has_coroots = j.contains("coroots");
  if (has_roots != has_coroots) throw InputError("\"roots\" and \"coroots\" must be given together");
  if (!has_roots) {
    Realization re = Realization::minimal(gcm);
    if (j.contains("dim_h") && j.at("dim_h").get<int>() != re.dim_h)
      throw InputError("dim_h " + std::to_string(j.at("dim_h").get<int>()) +
                       " needs explicit roots and coroots; the minimal realization has dim_h " +
                       std::to_string(re.dim_h));
    return re;
  }
  Realization re;
  re.cartan = gcm;
  try {
    re.roots = j.at("roots").get<IntMatrix>();
    re.coroots = j.at("coroots").get<IntMatrix>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("roots/coroots must be integer matrices: ") + e.what());
  }
  re.dim_h = j.contains("dim_h") ? j.at("dim_h").get<int>()
                                 : (re.roots.empty() ? 0 : static_cast<int>(re.roots.front().size()));
  re.validate();
  return re;
}

inline nlohmann::json realization_to_json(const Realization& re) {
  return {{"cartan", re.cartan.entries()}, {"dim_h", re.dim_h}, {"roots", re.roots}, {"coroots", re.coroots}};
}

// Relative names that do not exist are looked up in the bundled data directory.
inline std::filesystem::path resolve_data_path(const std::string& name) {
  std::filesystem::path p(name);
  if (std::filesystem::exists(p) || p.is_absolute()) return p;
#ifdef KOSZUL_DATA_DIR
  std::filesystem::path bundled = std::filesystem::path(KOSZUL_DATA_DIR) / p;
  if (std::filesystem::exists(bundled)) return bundled;
#endif
  return p;
}

inline Realization load_realization(const std::string& name) {
  auto path = resolve_data_path(name);
  std::ifstream in(path);
  if (!in) throw InputError("cannot open Cartan matrix file: " + name);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("malformed JSON in " + path.string() + ": " + e.what());
  }
  return realization_from_json(j);
}

// FNV-1a over the realization data.
inline std::string realization_hash(const Realization& re) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::int64_t x) {
    for (int b = 0; b < 8; ++b) {
      h ^= static_cast<std::uint64_t>(x >> (8 * b)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  auto mix_matrix = [&](const IntMatrix& m) {
    mix(static_cast<std::int64_t>(m.size()));
    for (auto& row : m) {
      mix(static_cast<std::int64_t>(row.size()));
      for (auto x : row) mix(x);
    }
  };
  mix_matrix(re.cartan.entries());
  mix(re.dim_h);
  mix_matrix(re.roots);
  mix_matrix(re.coroots);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// "e" or "" is the empty word; otherwise comma separated indices, or a run of
// single digits when every generator index is below 10.
inline Word parse_word(const std::string& text, int rank) {
  Word w;
  if (text.empty() || text == "e") return w;
  auto push = [&](const std::string& tok) {
    if (tok.empty()) throw InputError("empty generator in word \"" + text + "\"");
    for (char c : tok)
      if (c < '0' || c > '9') throw InputError("bad generator \"" + tok + "\" in word \"" + text + "\"");
    int s = std::stoi(tok);
    if (s >= rank) throw InputError("generator " + tok + " out of range for rank " + std::to_string(rank));
    w.push_back(s);
  };
  if (text.find(',') != std::string::npos || rank > 10) {
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) push(tok);
  } else {
    for (char c : text) push(std::string(1, c));
  }
  return w;
}

inline std::vector<int> parse_index_list(const std::string& text, int rank) {
  std::vector<int> out;
  if (text.empty()) return out;
  return parse_word(text, rank);
}

}  // namespace koszul
