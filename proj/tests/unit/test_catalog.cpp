#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "coxtwist/battery.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace coxtwist;

TEST_CASE("catalog entries are well formed") {
  const auto& entries = builtin_catalog();
  REQUIRE(entries.size() == 17);
  for (const auto& entry : entries) {
    CAPTURE(entry.name);
    CHECK_NOTHROW(parse_system_spec(entry.json));
  }
  CHECK(catalog_lookup("a2_id") != nullptr);
  CHECK(catalog_lookup("a2_id")->name == "a2_id");
  CHECK(catalog_lookup("missing") == nullptr);
}

TEST_CASE("catalog files mirror the built-in table") {
  namespace fs = std::filesystem;
  const char* env = std::getenv("COXTWIST_CATALOG");
  fs::path dir = env ? fs::path(env) : fs::path("catalog");
  if (!fs::is_directory(dir)) {
    MESSAGE("catalog directory not found, set COXTWIST_CATALOG");
    return;
  }
  std::size_t seen = 0;
  for (const auto& entry : builtin_catalog()) {
    fs::path file = dir / (entry.name + ".json");
    CAPTURE(entry.name);
    REQUIRE(fs::is_regular_file(file));
    std::ifstream in(file);
    std::ostringstream text;
    text << in.rdbuf();
    CHECK(nlohmann::json::parse(text.str()) == nlohmann::json::parse(entry.json));
    ++seen;
  }
  CHECK(seen == std::distance(fs::directory_iterator(dir), fs::directory_iterator()));
}

TEST_CASE("battery smoke run") {
  BatterySettings settings;
  settings.shelling_samples = 2;
  auto results = run_battery_on("a1_id", catalog_lookup("a1_id")->json, settings);
  REQUIRE_FALSE(results.empty());
  for (const auto& r : results) {
    CAPTURE(r.check);
    CAPTURE(r.detail);
    CHECK(r.ok);
  }

  auto broken = run_battery_on("broken", "{", settings);
  REQUIRE(broken.size() == 1);
  CHECK_FALSE(broken[0].ok);
  CHECK(broken[0].check == "build");
}
