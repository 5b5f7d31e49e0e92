#include "coxtwist/battery.hpp"

namespace coxtwist {

// Mirrors catalog/*.json; a unit test pins the two copies together.
const std::vector<CatalogEntry>& builtin_catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"a1_id", R"({"generators":["s1"],"matrix":[[1]]})"},
      {"a2_id", R"({"generators":["s1","s2"],"matrix":[[1,3],[3,1]]})"},
      {"a3_id", R"({"generators":["s1","s2","s3"],"matrix":[[1,3,2],[3,1,3],[2,3,1]]})"},
      {"a4_id",
       R"({"generators":["s1","s2","s3","s4"],"matrix":[[1,3,2,2],[3,1,3,2],[2,3,1,3],[2,2,3,1]]})"},
      {"a3_flip",
       R"({"generators":["s1","s2","s3"],"matrix":[[1,3,2],[3,1,3],[2,3,1]],"automorphism":{"s1":"s3","s3":"s1"}})"},
      {"a4_flip",
       R"({"generators":["s1","s2","s3","s4"],"matrix":[[1,3,2,2],[3,1,3,2],[2,3,1,3],[2,2,3,1]],"automorphism":{"s1":"s4","s2":"s3","s3":"s2","s4":"s1"}})"},
      {"b2_id", R"({"generators":["s1","s2"],"matrix":[[1,4],[4,1]]})"},
      {"b3_id", R"({"generators":["s1","s2","s3"],"matrix":[[1,4,2],[4,1,3],[2,3,1]]})"},
      {"d4_swap",
       R"({"generators":["s1","s2","s3","s4"],"matrix":[[1,3,2,2],[3,1,3,3],[2,3,1,2],[2,3,2,1]],"automorphism":{"s3":"s4","s4":"s3"}})"},
      {"i2_5_id", R"({"generators":["s1","s2"],"matrix":[[1,5],[5,1]]})"},
      {"i2_6_id", R"({"generators":["s1","s2"],"matrix":[[1,6],[6,1]]})"},
      {"i2_7_id", R"({"generators":["s1","s2"],"matrix":[[1,7],[7,1]]})"},
      {"i2_8_id", R"({"generators":["s1","s2"],"matrix":[[1,8],[8,1]]})"},
      {"h3_id", R"({"generators":["s1","s2","s3"],"matrix":[[1,5,2],[5,1,3],[2,3,1]]})"},
      {"a1xa1_swap",
       R"({"generators":["a1","b1"],"matrix":[[1,2],[2,1]],"automorphism":{"a1":"b1","b1":"a1"}})"},
      {"a2xa2_swap",
       R"({"generators":["a1","a2","b1","b2"],"matrix":[[1,3,2,2],[3,1,2,2],[2,2,1,3],[2,2,3,1]],"automorphism":{"a1":"b1","a2":"b2","b1":"a1","b2":"a2"}})"},
      {"b2xb2_swap",
       R"({"generators":["a1","a2","b1","b2"],"matrix":[[1,4,2,2],[4,1,2,2],[2,2,1,4],[2,2,4,1]],"automorphism":{"a1":"b1","a2":"b2","b1":"a1","b2":"a2"}})"},
  };
  return entries;
}

const CatalogEntry* catalog_lookup(const std::string& name) {
  for (const auto& e : builtin_catalog())
    if (e.name == name) return &e;
  return nullptr;
}

}  // namespace coxtwist
