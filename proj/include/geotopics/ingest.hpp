#ifndef GEOTOPICS_INGEST_HPP
#define GEOTOPICS_INGEST_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>

#include "geotopics/geo.hpp"
#include "geotopics/time.hpp"

namespace geotopics {

// One ingested microblog record. Entity arrays are reduced to their
// lengths at parse time; the raw arrays are not retained.
struct RawPost {
  std::string id;
  std::string text;
  Timestamp created_at;
  std::string lang;
  std::optional<GeoPoint> point;
  std::optional<GeoBox> place_box;
  std::string user_id;
  int n_hashtags = 0;
  int n_mentions = 0;
  int n_urls = 0;
  int n_media = 0;
};

enum class ParseError {
  BadStructure,     // not a record object at all
  MissingField,     // id, text, created_at, lang or user id absent
  BadTimestamp,
  BadCoordinates,   // latitude/longitude out of range or malformed
};

struct ParseFailure {
  ParseError error;
  std::string detail;
};

using ParseResult = std::variant<RawPost, ParseFailure>;

// Parses one newline-delimited record. Total and deterministic: every line
// yields exactly one of RawPost or ParseFailure.
ParseResult parse_post(const std::string& line);

struct IngestReport {
  std::int64_t total = 0;
  std::map<std::string, std::int64_t> by_lang;
  std::int64_t with_point = 0;
  std::int64_t with_place_only = 0;
  std::int64_t with_neither = 0;
  std::int64_t malformed = 0;

  void add(const ParseResult& r);
  // Commutative and associative, so per-chunk partial reports merge freely.
  void merge(const IngestReport& other);
};

// Streams lines from `next_line` (a LineReader::next-style callable),
// parsing each and accumulating the corpus composition. Memory use is
// bounded by a constant plus the by_lang map.
IngestReport scan_corpus(const std::function<bool(std::string&)>& next_line);

}  // namespace geotopics

#endif
