#include "geotopics/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace geotopics {

using nlohmann::json;

const CityConfig& PipelineConfig::city(const std::string& name) const {
  for (const auto& c : cities)
    if (c.name == name) return c;
  throw ConfigError("unknown city: " + name);
}

PipelineConfig parse_config(const std::string& json_text) {
  json j = json::parse(json_text, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw ConfigError("config is not a JSON object");

  PipelineConfig cfg;
  cfg.language = j.value("language", cfg.language);
  cfg.stopwords_path = j.value("stopwords", std::string{});
  cfg.group_map_path = j.value("group_map", std::string{});
  cfg.input_path = j.value("input", std::string{});
  cfg.output_dir = j.value("output_dir", cfg.output_dir);

  if (auto it = j.find("cities"); it != j.end()) {
    if (!it->is_array()) throw ConfigError("cities must be an array");
    for (const auto& c : *it) {
      CityConfig city;
      try {
        city.name = c.at("name").get<std::string>();
        city.box = GeoBox::make(c.at("sw_lat").get<double>(),
                                c.at("sw_lon").get<double>(),
                                c.at("ne_lat").get<double>(),
                                c.at("ne_lon").get<double>());
      } catch (const std::exception& e) {
        throw ConfigError(std::string("bad city entry: ") + e.what());
      }
      city.utc_offset_minutes = c.value("utc_offset_minutes", -180);
      cfg.cities.push_back(std::move(city));
    }
  }

  if (auto it = j.find("vocab"); it != j.end()) {
    cfg.vocab.min_count = it->value("min_count", cfg.vocab.min_count);
    cfg.vocab.max_df = it->value("max_df", cfg.vocab.max_df);
    cfg.vocab.cap = it->value("cap", cfg.vocab.cap);
  }
  if (cfg.vocab.min_count < 1) throw ConfigError("vocab.min_count must be >= 1");
  if (cfg.vocab.max_df <= 0.0 || cfg.vocab.max_df > 1.0)
    throw ConfigError("vocab.max_df must be in (0, 1]");
  if (cfg.vocab.cap < 1) throw ConfigError("vocab.cap must be >= 1");

  if (auto it = j.find("lda"); it != j.end()) {
    cfg.lda.topics = it->value("topics", cfg.lda.topics);
    cfg.lda.iterations = it->value("iterations", cfg.lda.iterations);
    cfg.lda.alpha = it->value("alpha", cfg.lda.alpha);
    cfg.lda.beta = it->value("beta", cfg.lda.beta);
    cfg.lda.seed = it->value("seed", cfg.lda.seed);
  }
  if (cfg.lda.topics < 1) throw ConfigError("lda.topics must be >= 1");
  if (cfg.lda.iterations < 1) throw ConfigError("lda.iterations must be >= 1");
  if (cfg.lda.beta <= 0.0) throw ConfigError("lda.beta must be > 0");

  return cfg;
}

PipelineConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::uint64_t config_hash(const std::string& json_text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : json_text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace geotopics
