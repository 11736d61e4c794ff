#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "covers.hpp"
#include "error.hpp"
#include "field.hpp"

namespace ellcover {

// Enumeration cache. One file per (q, ell, n, conditions):
//
//   ellcover-cache 1
//   params q=<q> ell=<ell> n=<n> conditions=<fnv1a-64 hex> sets=<count>
//   <one encode_record() line per extension field>
//   end <record count>
//
// Files are written to a temporary name and renamed into place, so readers
// never observe a partial file.

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string conditions_key(const Field& F, const std::vector<Conditions>& sets) {
  std::string s;
  for (std::size_t i = 0; i < sets.size(); ++i) s += (i ? ";" : "") + to_string(F, sets[i]);
  return s;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline std::string cache_params_line(const Field& F, unsigned n, const std::vector<Conditions>& sets) {
  return "params q=" + std::to_string(F.q()) + " ell=" + std::to_string(F.ell()) + " n=" + std::to_string(n) +
         " conditions=" + hex64(fnv1a64(conditions_key(F, sets))) + " sets=" + std::to_string(sets.size());
}

inline std::filesystem::path cache_path(const std::filesystem::path& dir, const Field& F, unsigned n,
                                        const std::vector<Conditions>& sets) {
  return dir / ("ellcover-q" + std::to_string(F.q()) + "-l" + std::to_string(F.ell()) + "-n" + std::to_string(n) + "-" +
                hex64(fnv1a64(conditions_key(F, sets))) + ".cache");
}

/// Rebuilds the enumeration summary from cached orbit records.
inline EnumerationSummary summary_from_records(const Field& F, unsigned n, std::size_t sets,
                                               const std::vector<std::string>& records) {
  EnumerationSummary s = empty_summary(F, n, sets);
  const std::uint64_t orbit = F.ell() - 1;
  for (const auto& line : records) {
    std::istringstream is(line);
    std::string beta, factors, types, mask;
    unsigned cdeg = 0;
    std::uint64_t points = 0;
    if (!(is >> beta >> factors >> cdeg >> types >> points >> mask)) throw ValidationError("malformed cache record");
    if (cdeg != n || types.size() != s.marginals.size() || points >= s.point_hist.size())
      throw ValidationError("cache record does not fit its parameters");
    if (!(mask == "-" ? sets == 0 : mask.size() == sets)) throw ValidationError("cache record mask has wrong width");
    s.fields += 1;
    s.characters += orbit;
    s.point_hist[points] += 1;
    for (std::size_t i = 0; i < types.size(); ++i) {
      const char t = types[i];
      if (t != 'R' && t != 'S' && t != 'I') throw ValidationError("bad splitting code in cache record");
      s.marginals[i][t == 'R' ? 0 : (t == 'S' ? 1 : 2)] += 1;
    }
    for (std::size_t k = 0; k < sets; ++k)
      if (mask[k] == '1') {
        s.cond_fields[k] += 1;
        s.cond_characters[k] += orbit;
      }
  }
  return s;
}

/// Records from a valid cache file, or nullopt if it is missing or does not match.
inline std::optional<std::vector<std::string>> read_cache(const std::filesystem::path& path, const Field& F, unsigned n,
                                                          const std::vector<Conditions>& sets) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string line;
  if (!std::getline(in, line) || line != "ellcover-cache 1") return std::nullopt;
  if (!std::getline(in, line) || line != cache_params_line(F, n, sets)) return std::nullopt;
  std::vector<std::string> records;
  while (std::getline(in, line)) {
    if (line.rfind("end ", 0) == 0) {
      if (line != "end " + std::to_string(records.size())) return std::nullopt;
      return records;
    }
    records.push_back(line);
  }
  return std::nullopt;  // no trailer: truncated file
}

inline void write_cache(const std::filesystem::path& path, const Field& F, unsigned n,
                        const std::vector<Conditions>& sets, const std::vector<std::string>& records) {
  std::filesystem::create_directories(path.parent_path());
  const auto tmp = path.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw ValidationError("cannot write cache file " + tmp);
    out << "ellcover-cache 1\n" << cache_params_line(F, n, sets) << "\n";
    for (const auto& r : records) out << r << "\n";
    out << "end " << records.size() << "\n";
    if (!out) throw ValidationError("failed writing cache file " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

/// enumerate_summary with an optional on-disk cache keyed by (q, ell, n, conditions).
inline EnumerationSummary cached_summary(const Field& F, unsigned n, const std::vector<Conditions>& sets,
                                         const EnumOptions& opts, const std::optional<std::filesystem::path>& dir) {
  if (!dir) return enumerate_summary(F, n, sets, opts);
  const auto path = cache_path(*dir, F, n, sets);
  if (auto recs = read_cache(path, F, n, sets)) return summary_from_records(F, n, sets.size(), *recs);
  std::vector<std::string> records;
  EnumerationSummary s = enumerate_summary(F, n, sets, opts, &records);
  write_cache(path, F, n, sets, records);
  return s;
}

}  // namespace ellcover
