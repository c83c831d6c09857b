#include "geotopics/ingest.hpp"

#include <algorithm>
#include <limits>

#include "json.hpp"

namespace geotopics {

namespace {

using nlohmann::json;

ParseFailure fail(ParseError e, std::string detail) {
  return ParseFailure{e, std::move(detail)};
}

// Collects every [lon, lat] pair found in a (possibly ring-nested)
// coordinate array and returns the axis-aligned hull.
bool hull_of_corners(const json& coords, GeoBox& out) {
  double min_lat = std::numeric_limits<double>::max();
  double max_lat = std::numeric_limits<double>::lowest();
  double min_lon = std::numeric_limits<double>::max();
  double max_lon = std::numeric_limits<double>::lowest();
  int found = 0;

  std::function<bool(const json&)> walk = [&](const json& node) -> bool {
    if (!node.is_array()) return false;
    if (node.size() == 2 && node[0].is_number() && node[1].is_number()) {
      const double lon = node[0].get<double>();
      const double lat = node[1].get<double>();
      if (lat < -90.0 || lat > 90.0 || lon < -180.0 || lon > 180.0)
        return false;
      min_lat = std::min(min_lat, lat);
      max_lat = std::max(max_lat, lat);
      min_lon = std::min(min_lon, lon);
      max_lon = std::max(max_lon, lon);
      ++found;
      return true;
    }
    for (const auto& child : node)
      if (!walk(child)) return false;
    return true;
  };

  if (!walk(coords) || found == 0) return false;
  out = GeoBox{{min_lat, min_lon}, {max_lat, max_lon}};
  return true;
}

const json* find_string(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) return nullptr;
  return &*it;
}

int array_len(const json& entities, const char* key) {
  auto it = entities.find(key);
  if (it == entities.end() || !it->is_array()) return 0;
  return static_cast<int>(it->size());
}

}  // namespace

ParseResult parse_post(const std::string& line) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    return fail(ParseError::BadStructure, "not a record object");

  const json* id = find_string(j, "id_str");
  if (!id) return fail(ParseError::MissingField, "id_str");
  const json* text = find_string(j, "text");
  if (!text) return fail(ParseError::MissingField, "text");
  const json* created = find_string(j, "created_at");
  if (!created) return fail(ParseError::MissingField, "created_at");
  const json* lang = find_string(j, "lang");
  if (!lang) return fail(ParseError::MissingField, "lang");

  auto user = j.find("user");
  if (user == j.end() || !user->is_object())
    return fail(ParseError::MissingField, "user");
  const json* uid = find_string(*user, "id_str");
  if (!uid) return fail(ParseError::MissingField, "user.id_str");

  auto ts = parse_timestamp(created->get<std::string>());
  if (!ts) return fail(ParseError::BadTimestamp, created->get<std::string>());

  RawPost post;
  post.id = id->get<std::string>();
  post.text = text->get<std::string>();
  post.created_at = *ts;
  post.lang = lang->get<std::string>();
  post.user_id = uid->get<std::string>();

  // Source order is [longitude, latitude].
  auto coords = j.find("coordinates");
  if (coords != j.end() && coords->is_object()) {
    auto arr = coords->find("coordinates");
    if (arr != coords->end() && arr->is_array() && arr->size() == 2 &&
        (*arr)[0].is_number() && (*arr)[1].is_number()) {
      GeoPoint p{(*arr)[1].get<double>(), (*arr)[0].get<double>()};
      if (!valid_point(p))
        return fail(ParseError::BadCoordinates, "point out of range");
      post.point = p;
    } else if (arr != coords->end()) {
      return fail(ParseError::BadCoordinates, "malformed coordinates");
    }
  }

  auto place = j.find("place");
  if (place != j.end() && place->is_object()) {
    auto bb = place->find("bounding_box");
    if (bb != place->end() && bb->is_object()) {
      auto corners = bb->find("coordinates");
      if (corners != bb->end()) {
        GeoBox box;
        if (!hull_of_corners(*corners, box))
          return fail(ParseError::BadCoordinates, "malformed place box");
        post.place_box = box;
      }
    }
  }

  auto entities = j.find("entities");
  if (entities != j.end() && entities->is_object()) {
    post.n_hashtags = array_len(*entities, "hashtags");
    post.n_mentions = array_len(*entities, "user_mentions");
    post.n_urls = array_len(*entities, "urls");
    post.n_media = array_len(*entities, "media");
  }

  return post;
}

void IngestReport::add(const ParseResult& r) {
  if (const auto* f = std::get_if<ParseFailure>(&r)) {
    (void)f;
    ++malformed;
    return;
  }
  const auto& post = std::get<RawPost>(r);
  ++total;
  ++by_lang[post.lang];
  if (post.point)
    ++with_point;
  else if (post.place_box)
    ++with_place_only;
  else
    ++with_neither;
}

void IngestReport::merge(const IngestReport& other) {
  total += other.total;
  with_point += other.with_point;
  with_place_only += other.with_place_only;
  with_neither += other.with_neither;
  malformed += other.malformed;
  for (const auto& [lang, n] : other.by_lang) by_lang[lang] += n;
}

IngestReport scan_corpus(const std::function<bool(std::string&)>& next_line) {
  IngestReport report;
  std::string line;
  while (next_line(line)) {
    if (line.empty()) continue;
    report.add(parse_post(line));
  }
  return report;
}

}  // namespace geotopics
