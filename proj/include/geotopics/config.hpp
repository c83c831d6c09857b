#ifndef GEOTOPICS_CONFIG_HPP
#define GEOTOPICS_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "geotopics/geo.hpp"
#include "geotopics/lda.hpp"

namespace geotopics {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CityConfig {
  std::string name;
  GeoBox box;
  int utc_offset_minutes = -180;
};

struct VocabConfig {
  std::int64_t min_count = 10;
  double max_df = 0.40;
  std::int64_t cap = 10000;
};

// One source of truth for a pipeline run; CLI flags override single keys.
struct PipelineConfig {
  std::string language = "pt";
  std::string stopwords_path;
  std::string group_map_path;
  std::vector<CityConfig> cities;
  VocabConfig vocab;
  LdaConfig lda;
  std::string input_path;
  std::string output_dir = ".";

  const CityConfig& city(const std::string& name) const;
};

PipelineConfig load_config(const std::string& path);
PipelineConfig parse_config(const std::string& json_text);

// Stable FNV-1a hash of the serialized config, recorded in run manifests.
std::uint64_t config_hash(const std::string& json_text);

}  // namespace geotopics

#endif
