#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "dff/pwl.hpp"

namespace dff {

using Params = std::map<std::string, Rational>;

struct FamilyEntry {
  std::string name;
  std::string parameter_spec;
  std::string provenance;
  std::function<PwlFunction(const Params&)> constructor;
};

PwlFunction identity();
// (floor(Cx) + max(0, (frac(Cx) - frac(C)) / (1 - frac(C)))) / floor(C), for C > 1 not an integer.
PwlFunction phi_bj_1(const Rational& C);

/// Named constructors; reads may run concurrently, registration is exclusive.
class Registry {
 public:
  // Registry preloaded with the built-in families.
  Registry();

  std::vector<std::string> list() const;
  FamilyEntry entry(const std::string& name) const;
  PwlFunction get(const std::string& name, const Params& params = {}) const;
  void register_entry(FamilyEntry e);
  void register_function(const std::string& name, const PwlFunction& f, const std::string& provenance);

 private:
  mutable std::shared_mutex mu_;
  std::map<std::string, FamilyEntry> entries_;
};

struct ManifestEntry {
  std::string name;
  Params parameters;
  std::string provenance;
  std::string file;
  bool maximal = false;
  std::string extremality;  // Extreme, NotExtreme or Inconclusive
};

// Writes <dir>/<file> for each entry plus <dir>/manifest.json.
void write_compendium(const std::filesystem::path& dir, const std::vector<std::pair<ManifestEntry, PwlFunction>>& items);
// Loads a compendium directory into the registry. Entries recorded as Extreme are
// re-tested and a mismatch raises an error.
std::vector<ManifestEntry> load_compendium(const std::filesystem::path& dir, Registry& reg);

// The built-in entries written to the checked-in compendium directory.
std::vector<std::pair<ManifestEntry, PwlFunction>> builtin_compendium();

}  // namespace dff
