#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coxtwist/common.hpp"
#include "coxtwist/coxeter.hpp"

namespace coxtwist {

struct CatalogEntry {
  std::string name;
  std::string json;
};

// Built-in copy of the default instance catalog; tests pin it to catalog/*.json.
const std::vector<CatalogEntry>& builtin_catalog();
const CatalogEntry* catalog_lookup(const std::string& name);

struct CheckResult {
  std::string instance;
  std::string check;
  bool ok = true;
  std::string detail;
};

struct BatterySettings {
  bool full = false;
  std::uint64_t seed = kDefaultSeed;
  int shelling_samples = 0;  // 0: suite default (quick 10, full 100)
  BuildCaps caps;
};

// Runs the invariant battery for one parsed instance, fail-fast: on the first
// failing check the partial results end with the failure.  Structural checks
// with documented size bounds are skipped (with an "ok ... skipped" record)
// when the instance exceeds them.
std::vector<CheckResult> run_battery_on(const std::string& name, const std::string& json,
                                        const BatterySettings& settings);

// Whole-catalog run, fail-fast across instances.
std::vector<CheckResult> run_battery(const BatterySettings& settings);

}  // namespace coxtwist
