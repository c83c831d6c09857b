#include "geotopics/reporting.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <unordered_map>

#include "geotopics/time.hpp"

namespace geotopics {

int TopicGroupMap::group_index(const std::string& label) const {
  auto it = std::find(groups.begin(), groups.end(), label);
  return it == groups.end() ? -1 : static_cast<int>(it - groups.begin());
}

TopicGroupMap parse_group_map(const std::vector<std::string>& lines, int K) {
  std::vector<std::string> entries(K);
  std::vector<bool> seen(K, false);
  TopicGroupMap map;
  for (const auto& raw : lines) {
    std::string line = raw;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw GroupMapError(GroupMapError::Kind::Io,
                          "group map line missing tab: " + line);
    int id = 0;
    try {
      id = std::stoi(line.substr(0, tab));
    } catch (const std::exception&) {
      throw GroupMapError(GroupMapError::Kind::Io,
                          "bad topic id in group map: " + line);
    }
    if (id < 0 || id >= K)
      throw GroupMapError(GroupMapError::Kind::UnknownTopicId,
                          "topic id " + std::to_string(id) +
                              " outside 0.." + std::to_string(K - 1));
    if (seen[id])
      throw GroupMapError(GroupMapError::Kind::DuplicateTopicId,
                          "duplicate topic id " + std::to_string(id));
    seen[id] = true;
    entries[id] = line.substr(tab + 1);
  }
  for (int id = 0; id < K; ++id)
    if (!seen[id])
      throw GroupMapError(GroupMapError::Kind::IncompleteMap,
                          "topic id " + std::to_string(id) + " unmapped");
  for (int id = 0; id < K; ++id)
    if (std::find(map.groups.begin(), map.groups.end(), entries[id]) ==
        map.groups.end())
      map.groups.push_back(entries[id]);
  map.group_of_topic = std::move(entries);
  return map;
}

TopicGroupMap load_group_map(const std::string& path, int K) {
  std::ifstream in(path);
  if (!in)
    throw GroupMapError(GroupMapError::Kind::Io, "cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return parse_group_map(lines, K);
}

GroupReport aggregate_groups(const std::vector<int>& topic_per_doc,
                             const TopicGroupMap& map) {
  GroupReport report;
  report.labels = map.groups;
  report.counts.assign(map.groups.size(), 0);
  std::vector<int> topic_to_group(map.group_of_topic.size());
  for (size_t t = 0; t < map.group_of_topic.size(); ++t)
    topic_to_group[t] = map.group_index(map.group_of_topic[t]);
  for (int t : topic_per_doc) {
    if (t < 0 || t >= static_cast<int>(topic_to_group.size()))
      throw GroupMapError(GroupMapError::Kind::UnknownTopicId,
                          "assignment has topic id " + std::to_string(t) +
                              " not covered by the map");
    ++report.counts[topic_to_group[t]];
  }
  report.total_docs = static_cast<std::int64_t>(topic_per_doc.size());
  return report;
}

std::vector<ComparisonRow> compare_cities(const GroupReport& a,
                                          const GroupReport& b) {
  std::set<std::string> labels(a.labels.begin(), a.labels.end());
  labels.insert(b.labels.begin(), b.labels.end());

  auto pct_of = [](const GroupReport& r, const std::string& label) {
    for (size_t i = 0; i < r.labels.size(); ++i)
      if (r.labels[i] == label) return r.percentage(i);
    return 0.0;
  };

  std::vector<ComparisonRow> rows;
  rows.reserve(labels.size());
  for (const auto& label : labels) {
    ComparisonRow row;
    row.label = label;
    row.a_pct = pct_of(a, label);
    row.b_pct = pct_of(b, label);
    row.diff = row.a_pct - row.b_pct;
    rows.push_back(std::move(row));
  }
  return rows;
}

int EntityStats::pct(std::int64_t total, std::int64_t reference) {
  if (reference <= 0) return 0;
  return static_cast<int>(std::llround(100.0 * static_cast<double>(total) /
                                       static_cast<double>(reference)));
}

void entity_stats_add(EntityStats& stats, const RawPost& post) {
  if (post.n_hashtags > 0) ++stats.hashtags;
  if (post.n_mentions > 0) ++stats.mentions;
  if (post.n_urls > 0) ++stats.urls;
  if (post.n_media > 0) ++stats.media;
}

EntityStats entity_stats(const std::vector<RawPost>& posts,
                         std::int64_t reference_count) {
  EntityStats stats;
  stats.reference_count = reference_count;
  for (const auto& post : posts) entity_stats_add(stats, post);
  return stats;
}

WeekdayDistribution weekday_distribution(const std::vector<TimedPost>& posts,
                                         int tz_offset_minutes) {
  WeekdayDistribution dist;
  for (const auto& p : posts) {
    const std::int64_t day = local_day(p.epoch_utc, tz_offset_minutes);
    ++dist[weekday_monday0(day)][day];
  }
  return dist;
}

std::array<std::int64_t, 24> hourly_distribution(
    const std::vector<TimedPost>& posts, int tz_offset_minutes) {
  std::array<std::int64_t, 24> bins{};
  for (const auto& p : posts)
    ++bins[local_hour(p.epoch_utc, tz_offset_minutes)];
  return bins;
}

UserActivity user_activity_histogram(const std::vector<TimedPost>& posts) {
  std::unordered_map<std::string, std::int64_t> per_user;
  for (const auto& p : posts) ++per_user[p.user_id];
  UserActivity act;
  act.distinct_users = static_cast<std::int64_t>(per_user.size());
  for (const auto& [user, n] : per_user) ++act.histogram[n];
  return act;
}

HeatmapTable topic_weekday_heatmap(const std::vector<AssignedPost>& posts,
                                   const TopicGroupMap& map,
                                   const std::vector<std::string>& selected,
                                   int tz_offset_minutes) {
  const std::vector<std::string>& rows =
      selected.empty() ? map.groups : selected;
  std::unordered_map<std::string, int> row_of;
  for (size_t i = 0; i < rows.size(); ++i) {
    if (map.group_index(rows[i]) < 0)
      throw UnknownGroupError("group not in map: " + rows[i]);
    row_of.emplace(rows[i], static_cast<int>(i));
  }

  std::vector<std::array<std::int64_t, 7>> counts(rows.size(),
                                                  std::array<std::int64_t, 7>{});
  for (const auto& p : posts) {
    if (p.topic < 0 || p.topic >= static_cast<int>(map.group_of_topic.size()))
      throw GroupMapError(GroupMapError::Kind::UnknownTopicId,
                          "topic id " + std::to_string(p.topic));
    auto it = row_of.find(map.group_of_topic[p.topic]);
    if (it == row_of.end()) continue;
    const int wd = weekday_monday0(local_day(p.epoch_utc, tz_offset_minutes));
    ++counts[it->second][wd];
  }

  HeatmapTable table;
  table.rows = rows;
  table.values.resize(rows.size());
  table.zero_row.resize(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    std::int64_t sum = 0;
    for (auto c : counts[i]) sum += c;
    table.zero_row[i] = sum == 0;
    for (int d = 0; d < 7; ++d)
      table.values[i][d] =
          sum == 0 ? 0.0
                   : static_cast<double>(counts[i][d]) / static_cast<double>(sum);
  }
  return table;
}

}  // namespace geotopics
