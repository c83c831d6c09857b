#ifndef GEOTOPICS_REPORTING_HPP
#define GEOTOPICS_REPORTING_HPP

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "geotopics/ingest.hpp"

namespace geotopics {

struct GroupMapError : std::runtime_error {
  enum class Kind { IncompleteMap, DuplicateTopicId, UnknownTopicId, Io };
  GroupMapError(Kind k, const std::string& msg)
      : std::runtime_error(msg), kind(k) {}
  Kind kind;
};

// Human-authored raw-topic -> group-label mapping. Total over 0..K-1;
// groups keeps labels in first-appearance order.
struct TopicGroupMap {
  std::vector<std::string> group_of_topic;  // indexed by raw topic id
  std::vector<std::string> groups;

  int group_index(const std::string& label) const;
};

// File format: one line per raw topic, "<topic_id>\t<group label>".
TopicGroupMap load_group_map(const std::string& path, int K);
TopicGroupMap parse_group_map(const std::vector<std::string>& lines, int K);

struct GroupReport {
  std::vector<std::string> labels;
  std::vector<std::int64_t> counts;
  std::int64_t total_docs = 0;

  double percentage(size_t i) const {
    return total_docs == 0 ? 0.0 : 100.0 * counts[i] / total_docs;
  }
};

GroupReport aggregate_groups(const std::vector<int>& topic_per_doc,
                             const TopicGroupMap& map);

struct ComparisonRow {
  std::string label;
  double a_pct = 0.0;
  double b_pct = 0.0;
  double diff = 0.0;  // a_pct - b_pct
};

// Union of both label sets; a group absent from one city contributes 0.00%.
// Rows ordered by label.
std::vector<ComparisonRow> compare_cities(const GroupReport& a,
                                          const GroupReport& b);

struct EntityStats {
  std::int64_t hashtags = 0;
  std::int64_t mentions = 0;
  std::int64_t urls = 0;
  std::int64_t media = 0;
  std::int64_t reference_count = 0;

  // Nearest-integer percentage of the reference post count.
  static int pct(std::int64_t total, std::int64_t reference);
};

// Counts posts containing at least one entity of each kind.
EntityStats entity_stats(const std::vector<RawPost>& posts,
                         std::int64_t reference_count);
void entity_stats_add(EntityStats& stats, const RawPost& post);

// For each weekday (0 = Monday), per-local-date post totals, box-plot ready.
using WeekdayDistribution = std::array<std::map<std::int64_t, std::int64_t>, 7>;

struct TimedPost {
  std::int64_t epoch_utc = 0;
  std::string user_id;
};

WeekdayDistribution weekday_distribution(const std::vector<TimedPost>& posts,
                                         int tz_offset_minutes);

std::array<std::int64_t, 24> hourly_distribution(
    const std::vector<TimedPost>& posts, int tz_offset_minutes);

struct UserActivity {
  std::int64_t distinct_users = 0;
  // posts-per-user -> number of users, log-log plot ready.
  std::map<std::int64_t, std::int64_t> histogram;
};

UserActivity user_activity_histogram(const std::vector<TimedPost>& posts);

struct HeatmapTable {
  std::vector<std::string> rows;                 // group labels
  std::vector<std::array<double, 7>> values;     // row-normalized, Mon first
  std::vector<bool> zero_row;                    // flagged all-zero rows
};

struct UnknownGroupError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AssignedPost {
  std::int64_t epoch_utc = 0;
  int topic = 0;
};

// Per selected group, counts by local weekday, each row divided by its own
// sum. Empty selection means all groups of the map, in map order.
HeatmapTable topic_weekday_heatmap(const std::vector<AssignedPost>& posts,
                                   const TopicGroupMap& map,
                                   const std::vector<std::string>& selected,
                                   int tz_offset_minutes);

}  // namespace geotopics

#endif
