// Pipeline driver: composable subcommands over a shared config file. Each
// stage reads the previous stage's output file and writes exactly one
// primary output plus a run manifest, so long runs are resumable.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "geotopics/config.hpp"
#include "geotopics/geo.hpp"
#include "geotopics/ingest.hpp"
#include "geotopics/lda.hpp"
#include "geotopics/line_reader.hpp"
#include "geotopics/reporting.hpp"
#include "geotopics/textprep.hpp"
#include "geotopics/time.hpp"
#include "geotopics/vocab.hpp"

namespace gt = geotopics;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Exit codes: 0 success, 1 usage/config error, 2 data error, 3 I/O error.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config_path;
  std::string output_dir;
  std::string format = "csv";
  int threads = 1;
  bool seed_set = false;
  std::uint64_t seed = 0;
  std::string config_text;

  gt::PipelineConfig cfg;

  void load() {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw IoError("cannot open config file " + config_path);
      std::ostringstream ss;
      ss << in.rdbuf();
      config_text = ss.str();
      cfg = gt::parse_config(config_text);
    }
    if (!output_dir.empty()) cfg.output_dir = output_dir;
    if (seed_set) cfg.lda.seed = seed;
    fs::create_directories(cfg.output_dir);
  }

  std::string out_path(const std::string& name) const {
    return (fs::path(cfg.output_dir) / name).string();
  }
};

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  return out;
}

void require_readable(const std::string& path) {
  std::ifstream probe(path);
  if (!probe) throw IoError("cannot open " + path);
}

class ManifestScope {
 public:
  ManifestScope(const Options& opt, std::string command,
                std::vector<std::string> inputs, std::string output)
      : opt_(opt),
        command_(std::move(command)),
        inputs_(std::move(inputs)),
        output_(std::move(output)),
        start_(std::chrono::steady_clock::now()) {}

  void extra(const std::string& key, const json& value) { extra_[key] = value; }

  void write() {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start_)
                        .count();
    json m;
    m["command"] = command_;
    m["inputs"] = inputs_;
    m["output"] = output_;
    m["config_hash"] = gt::config_hash(opt_.config_text);
    m["seed"] = opt_.cfg.lda.seed;
    m["duration_ms"] = ms;
    for (auto& [k, v] : extra_.items()) m[k] = v;
    auto out = open_out(output_ + ".manifest.json");
    out << m.dump(2) << "\n";
  }

 private:
  const Options& opt_;
  std::string command_;
  std::vector<std::string> inputs_;
  std::string output_;
  json extra_ = json::object();
  std::chrono::steady_clock::time_point start_;
};

// ---------- shared file formats ----------

void write_ingest_report(std::ostream& out, const gt::IngestReport& r) {
  out << "key,value\n";
  out << "total," << r.total << "\n";
  out << "with_point," << r.with_point << "\n";
  out << "with_place_only," << r.with_place_only << "\n";
  out << "with_neither," << r.with_neither << "\n";
  out << "malformed," << r.malformed << "\n";
  for (const auto& [lang, n] : r.by_lang) out << "lang." << lang << "," << n << "\n";
}

struct DocRecord {
  std::string post_id, user_id, created_at;
  std::vector<std::string> tokens;
};

bool parse_doc_line(const std::string& line, DocRecord& doc) {
  const auto t1 = line.find('\t');
  if (t1 == std::string::npos) return false;
  const auto t2 = line.find('\t', t1 + 1);
  if (t2 == std::string::npos) return false;
  const auto t3 = line.find('\t', t2 + 1);
  if (t3 == std::string::npos) return false;
  doc.post_id = line.substr(0, t1);
  doc.user_id = line.substr(t1 + 1, t2 - t1 - 1);
  doc.created_at = line.substr(t2 + 1, t3 - t2 - 1);
  doc.tokens.clear();
  std::istringstream toks(line.substr(t3 + 1));
  std::string tok;
  while (toks >> tok) doc.tokens.push_back(tok);
  return true;
}

gt::Vocabulary read_vocab_file(const std::string& path) {
  require_readable(path);
  std::ifstream in(path);
  gt::Vocabulary v;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    int idx;
    std::string term;
    std::int64_t total, df;
    if (!(ss >> idx >> term >> total >> df))
      throw std::runtime_error("bad vocabulary line: " + line);
    if (idx != static_cast<int>(v.terms.size()))
      throw std::runtime_error("vocabulary indices out of order");
    v.index.emplace(term, idx);
    v.terms.push_back(term);
    v.total_count.push_back(total);
    v.doc_freq.push_back(df);
  }
  return v;
}

std::vector<std::pair<std::string, int>> read_assignments(
    const std::string& path) {
  require_readable(path);
  std::ifstream in(path);
  std::vector<std::pair<std::string, int>> out;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      header = false;
      continue;
    }
    if (line.empty()) continue;
    const auto comma = line.rfind(',');
    if (comma == std::string::npos)
      throw std::runtime_error("bad assignment line: " + line);
    out.emplace_back(line.substr(0, comma),
                     std::stoi(line.substr(comma + 1)));
  }
  return out;
}

gt::GroupReport read_group_report(const std::string& path) {
  require_readable(path);
  std::ifstream in(path);
  gt::GroupReport r;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      header = false;
      continue;
    }
    if (line.empty()) continue;
    // group label may contain commas; count and percentage are the last
    // two fields
    const auto c2 = line.rfind(',');
    const auto c1 = line.rfind(',', c2 - 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw std::runtime_error("bad group report line: " + line);
    r.labels.push_back(line.substr(0, c1));
    r.counts.push_back(std::stoll(line.substr(c1 + 1, c2 - c1 - 1)));
    r.total_docs += r.counts.back();
  }
  return r;
}

std::string fmt2(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

int infer_topics_from_map(const std::string& path) {
  require_readable(path);
  std::ifstream in(path);
  std::string line;
  int max_id = -1;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) continue;
    try {
      max_id = std::max(max_id, std::stoi(line.substr(0, tab)));
    } catch (const std::exception&) {
    }
  }
  return max_id + 1;
}

// ---------- subcommand bodies ----------

gt::IngestReport scan_file(const std::string& path, int threads) {
  require_readable(path);
  gt::LineReader reader(path);
  if (threads <= 1) {
    return gt::scan_corpus(
        [&reader](std::string& line) { return reader.next(line); });
  }
  // Chunked scan: per-chunk reports merge associatively.
  gt::IngestReport report;
  std::vector<std::string> batch;
  std::string line;
  bool more = true;
  while (more) {
    batch.clear();
    while (batch.size() < 40000 && (more = reader.next(line)))
      batch.push_back(line);
    const size_t per = (batch.size() + threads - 1) / threads;
    std::vector<std::future<gt::IngestReport>> parts;
    for (size_t lo = 0; lo < batch.size(); lo += per) {
      const size_t hi = std::min(batch.size(), lo + per);
      parts.push_back(std::async(std::launch::async, [&batch, lo, hi] {
        gt::IngestReport part;
        for (size_t i = lo; i < hi; ++i)
          if (!batch[i].empty()) part.add(gt::parse_post(batch[i]));
        return part;
      }));
    }
    for (auto& f : parts) report.merge(f.get());
  }
  return report;
}

int cmd_scan(Options& opt, const std::vector<std::string>& inputs,
             std::string out_path) {
  if (out_path.empty()) out_path = opt.out_path("ingest_report.csv");
  ManifestScope manifest(opt, "scan", inputs, out_path);
  gt::IngestReport report;
  for (const auto& path : inputs) report.merge(scan_file(path, opt.threads));
  auto out = open_out(out_path);
  write_ingest_report(out, report);
  manifest.write();
  std::cout << "scan: " << report.total << " records, " << report.malformed
            << " malformed -> " << out_path << "\n";
  return 0;
}

int cmd_filter(Options& opt, const std::string& input,
               const std::string& city_name, std::string out_path,
               std::string report_path) {
  const auto& city = opt.cfg.city(city_name);
  if (out_path.empty())
    out_path = opt.out_path(city_name + "_accepted.ndjson");
  if (report_path.empty())
    report_path = opt.out_path(city_name + "_filter_report.csv");
  require_readable(input);

  ManifestScope manifest(opt, "filter", {input}, out_path);
  gt::LineReader reader(input);
  auto out = open_out(out_path);

  std::int64_t by_coords = 0, by_place = 0, overlap_only = 0, no_geo = 0,
               wrong_lang = 0, malformed = 0;
  std::string line;
  while (reader.next(line)) {
    if (line.empty()) continue;
    auto result = gt::parse_post(line);
    if (std::holds_alternative<gt::ParseFailure>(result)) {
      ++malformed;
      continue;
    }
    const auto& post = std::get<gt::RawPost>(result);
    if (post.lang != opt.cfg.language) {
      ++wrong_lang;
      continue;
    }
    if (gt::strict_city_match(post.point, post.place_box, city.box)) {
      if (post.point)
        ++by_coords;
      else
        ++by_place;
      out << line << "\n";
    } else if (gt::match_geometry(post.point, post.place_box, city.box) !=
               gt::MatchOutcome::NoMatch) {
      ++overlap_only;
    } else {
      ++no_geo;
    }
  }

  auto rep = open_out(report_path);
  rep << "key,value\n";
  rep << "accepted_by_coordinates," << by_coords << "\n";
  rep << "accepted_by_place_containment," << by_place << "\n";
  rep << "rejected_overlap_only," << overlap_only << "\n";
  rep << "rejected_no_geo," << no_geo << "\n";
  rep << "rejected_language," << wrong_lang << "\n";
  rep << "malformed," << malformed << "\n";
  manifest.extra("report", report_path);
  manifest.write();
  std::cout << "filter " << city_name << ": accepted "
            << (by_coords + by_place) << " -> " << out_path << "\n";
  return 0;
}

int cmd_prep(Options& opt, const std::string& input, std::string out_path) {
  if (out_path.empty()) out_path = opt.out_path("documents.tsv");
  if (opt.cfg.stopwords_path.empty())
    throw gt::ConfigError("config key 'stopwords' is required for prep");
  require_readable(opt.cfg.stopwords_path);
  require_readable(input);
  const auto stopwords = gt::load_stopwords(opt.cfg.stopwords_path);

  ManifestScope manifest(opt, "prep", {input, opt.cfg.stopwords_path},
                         out_path);
  gt::LineReader reader(input);
  auto out = open_out(out_path);

  auto next = [&reader](gt::PrepInput& in) {
    std::string line;
    while (reader.next(line)) {
      if (line.empty()) continue;
      auto result = gt::parse_post(line);
      if (std::holds_alternative<gt::ParseFailure>(result)) continue;
      auto& post = std::get<gt::RawPost>(result);
      in.post_id = std::move(post.id);
      in.user_id = std::move(post.user_id);
      in.created_at = post.created_at.raw;
      in.text = std::move(post.text);
      return true;
    }
    return false;
  };
  auto emit = [&out](const gt::Document& doc) {
    out << doc.post_id << '\t' << doc.user_id << '\t' << doc.created_at
        << '\t';
    for (size_t i = 0; i < doc.tokens.size(); ++i) {
      if (i) out << ' ';
      out << doc.tokens[i];
    }
    out << '\n';
  };
  const auto report = gt::prep_stream(next, stopwords, emit);

  manifest.extra("input_count", report.input_count);
  manifest.extra("emptied_count", report.emptied_count);
  manifest.extra("emitted_count", report.emitted_count);
  manifest.write();
  std::cout << "prep: " << report.emitted_count << " documents, "
            << report.emptied_count << " emptied -> " << out_path << "\n";
  return 0;
}

int cmd_vocab(Options& opt, const std::string& input, std::string out_path) {
  if (out_path.empty()) out_path = opt.out_path("vocabulary.tsv");
  require_readable(input);
  ManifestScope manifest(opt, "vocab", {input}, out_path);

  gt::VocabularyBuilder builder;
  gt::LineReader reader(input);
  std::string line;
  DocRecord doc;
  while (reader.next(line)) {
    if (line.empty()) continue;
    if (!parse_doc_line(line, doc))
      throw std::runtime_error("bad document line: " + line);
    builder.add_document(doc.tokens);
  }
  const auto v = builder.build(opt.cfg.vocab.min_count, opt.cfg.vocab.max_df,
                               opt.cfg.vocab.cap);

  auto out = open_out(out_path);
  for (int i = 0; i < v.size(); ++i)
    out << i << '\t' << v.terms[i] << '\t' << v.total_count[i] << '\t'
        << v.doc_freq[i] << '\n';
  manifest.extra("terms", v.size());
  manifest.extra("corpus_docs", v.corpus_docs);
  manifest.write();
  std::cout << "vocab: " << v.size() << " terms -> " << out_path << "\n";
  return 0;
}

std::vector<gt::BowDocument> vectorize_docs(const std::string& docs_path,
                                            const gt::Vocabulary& v,
                                            std::int64_t* dropped = nullptr) {
  gt::LineReader reader(docs_path);
  std::vector<gt::BowDocument> corpus;
  std::string line;
  DocRecord doc;
  std::int64_t zero_len = 0;
  while (reader.next(line)) {
    if (line.empty()) continue;
    if (!parse_doc_line(line, doc))
      throw std::runtime_error("bad document line: " + line);
    auto bow = gt::vectorize(doc.post_id, doc.tokens, v);
    if (bow.length == 0) {
      ++zero_len;  // undefined under LDA, excluded and counted
      continue;
    }
    corpus.push_back(std::move(bow));
  }
  if (dropped) *dropped = zero_len;
  return corpus;
}

int cmd_train(Options& opt, const std::string& docs_path,
              const std::string& vocab_path, std::string out_path) {
  if (out_path.empty()) out_path = opt.out_path("model.txt");
  require_readable(docs_path);
  const auto v = read_vocab_file(vocab_path);
  ManifestScope manifest(opt, "train", {docs_path, vocab_path}, out_path);

  std::int64_t dropped = 0;
  const auto corpus = vectorize_docs(docs_path, v, &dropped);
  const auto model = gt::TopicModel::train(corpus, v.size(), opt.cfg.lda);

  auto out = open_out(out_path);
  model.save(out);
  manifest.extra("documents", static_cast<std::int64_t>(corpus.size()));
  manifest.extra("dropped_zero_length", dropped);
  manifest.extra("log_likelihood", model.log_likelihood(corpus));
  manifest.write();
  std::cout << "train: K=" << model.K() << " over " << corpus.size()
            << " docs -> " << out_path << "\n";
  return 0;
}

gt::TopicModel load_model(const std::string& path) {
  require_readable(path);
  std::ifstream in(path);
  return gt::TopicModel::load(in);
}

int cmd_assign(Options& opt, const std::string& model_path,
               std::string out_path) {
  if (out_path.empty()) out_path = opt.out_path("assignments.csv");
  ManifestScope manifest(opt, "assign", {model_path}, out_path);
  const auto model = load_model(model_path);
  auto out = open_out(out_path);
  out << "post_id,topic\n";
  for (int d = 0; d < model.D(); ++d)
    out << model.post_id(d) << ',' << model.dominant_topic(d) << '\n';
  manifest.write();
  std::cout << "assign: " << model.D() << " documents -> " << out_path << "\n";
  return 0;
}

int cmd_topwords(Options& opt, const std::string& model_path,
                 const std::string& vocab_path, std::string out_path, int n) {
  if (out_path.empty()) out_path = opt.out_path("top_words.csv");
  const auto model = load_model(model_path);
  const auto v = read_vocab_file(vocab_path);
  ManifestScope manifest(opt, "top-words", {model_path, vocab_path}, out_path);
  auto out = open_out(out_path);
  out << "topic,rank,term,phi\n";
  char buf[32];
  for (int k = 0; k < model.K(); ++k) {
    const auto ranked = model.top_words(k, n);
    for (size_t r = 0; r < ranked.size(); ++r) {
      std::snprintf(buf, sizeof buf, "%.9g", ranked[r].second);
      out << k << ',' << (r + 1) << ',' << csv_quote(v.terms[ranked[r].first])
          << ',' << buf << '\n';
    }
  }
  manifest.write();
  std::cout << "top-words -> " << out_path << "\n";
  return 0;
}

int cmd_aggregate(Options& opt, const std::string& assignments_path,
                  std::string map_path, int topics, std::string out_path) {
  if (map_path.empty()) map_path = opt.cfg.group_map_path;
  if (map_path.empty())
    throw gt::ConfigError("group map path required (config 'group_map' or --map)");
  if (out_path.empty()) out_path = opt.out_path("group_report.csv");
  if (topics <= 0) topics = infer_topics_from_map(map_path);
  const auto map = gt::load_group_map(map_path, topics);
  const auto assignments = read_assignments(assignments_path);

  ManifestScope manifest(opt, "aggregate", {assignments_path, map_path},
                         out_path);
  std::vector<int> topic_per_doc;
  topic_per_doc.reserve(assignments.size());
  for (const auto& [id, topic] : assignments) topic_per_doc.push_back(topic);
  const auto report = gt::aggregate_groups(topic_per_doc, map);

  auto out = open_out(out_path);
  out << "group,count,percentage\n";
  for (size_t i = 0; i < report.labels.size(); ++i)
    out << csv_quote(report.labels[i]) << ',' << report.counts[i] << ','
        << fmt2(report.percentage(i)) << '\n';
  manifest.extra("total_docs", report.total_docs);
  manifest.write();
  std::cout << "aggregate: " << report.labels.size() << " groups -> "
            << out_path << "\n";
  return 0;
}

int cmd_compare(Options& opt, const std::string& a_path,
                const std::string& b_path, std::string out_path) {
  if (out_path.empty()) out_path = opt.out_path("comparison.csv");
  const auto a = read_group_report(a_path);
  const auto b = read_group_report(b_path);
  ManifestScope manifest(opt, "compare", {a_path, b_path}, out_path);
  const auto rows = gt::compare_cities(a, b);
  auto out = open_out(out_path);
  out << "group,a_pct,b_pct,diff\n";
  for (const auto& row : rows)
    out << csv_quote(row.label) << ',' << fmt2(row.a_pct) << ','
        << fmt2(row.b_pct) << ',' << fmt2(row.diff) << '\n';
  manifest.write();
  std::cout << "compare: " << rows.size() << " groups -> " << out_path << "\n";
  return 0;
}

std::vector<gt::RawPost> read_posts(const std::string& path) {
  require_readable(path);
  gt::LineReader reader(path);
  std::vector<gt::RawPost> posts;
  std::string line;
  while (reader.next(line)) {
    if (line.empty()) continue;
    auto result = gt::parse_post(line);
    if (auto* post = std::get_if<gt::RawPost>(&result))
      posts.push_back(std::move(*post));
  }
  return posts;
}

int cmd_stats(Options& opt, const std::string& input, const std::string& kind,
              const std::string& city_name, std::int64_t reference,
              std::string out_path) {
  if (out_path.empty()) out_path = opt.out_path("stats_" + kind + ".csv");
  int tz = -180;
  if (!city_name.empty()) tz = opt.cfg.city(city_name).utc_offset_minutes;
  const auto posts = read_posts(input);
  std::vector<gt::TimedPost> timed;
  timed.reserve(posts.size());
  for (const auto& p : posts)
    timed.push_back({p.created_at.epoch_utc, p.user_id});

  ManifestScope manifest(opt, "stats", {input}, out_path);
  auto out = open_out(out_path);
  if (kind == "entities") {
    if (reference <= 0) reference = static_cast<std::int64_t>(posts.size());
    const auto stats = gt::entity_stats(posts, reference);
    out << "entity,total,percentage\n";
    out << "hashtags," << stats.hashtags << ','
        << gt::EntityStats::pct(stats.hashtags, reference) << '\n';
    out << "user_mentions," << stats.mentions << ','
        << gt::EntityStats::pct(stats.mentions, reference) << '\n';
    out << "urls," << stats.urls << ','
        << gt::EntityStats::pct(stats.urls, reference) << '\n';
    out << "media," << stats.media << ','
        << gt::EntityStats::pct(stats.media, reference) << '\n';
  } else if (kind == "weekday") {
    static const char* days[7] = {"mon", "tue", "wed", "thu",
                                  "fri", "sat", "sun"};
    const auto dist = gt::weekday_distribution(timed, tz);
    out << "weekday,date,count\n";
    for (int d = 0; d < 7; ++d)
      for (const auto& [day, n] : dist[d]) {
        int y, m, dd;
        gt::civil_from_days(day, y, m, dd);
        char date[16];
        std::snprintf(date, sizeof date, "%04d-%02d-%02d", y, m, dd);
        out << days[d] << ',' << date << ',' << n << '\n';
      }
  } else if (kind == "hourly") {
    const auto bins = gt::hourly_distribution(timed, tz);
    out << "hour,count\n";
    for (int h = 0; h < 24; ++h) out << h << ',' << bins[h] << '\n';
  } else if (kind == "users") {
    const auto act = gt::user_activity_histogram(timed);
    out << "posts_per_user,users\n";
    for (const auto& [n, users] : act.histogram) out << n << ',' << users << '\n';
    manifest.extra("distinct_users", act.distinct_users);
  } else {
    throw gt::ConfigError("unknown stats kind: " + kind);
  }
  manifest.write();
  std::cout << "stats " << kind << " -> " << out_path << "\n";
  return 0;
}

void write_heatmap_svg(const std::string& path, const gt::HeatmapTable& table) {
  auto out = open_out(path);
  const int cell = 40, left = 240, top = 30;
  const int w = left + 7 * cell + 10;
  const int h = top + static_cast<int>(table.rows.size()) * cell + 10;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
      << "\" height=\"" << h << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  static const char* days[7] = {"Mon", "Tue", "Wed", "Thu", "Fri", "Sat", "Sun"};
  for (int d = 0; d < 7; ++d)
    out << "<text x=\"" << (left + d * cell + 10) << "\" y=\"" << (top - 8)
        << "\">" << days[d] << "</text>\n";
  for (size_t i = 0; i < table.rows.size(); ++i) {
    out << "<text x=\"4\" y=\"" << (top + i * cell + 24) << "\">"
        << table.rows[i] << "</text>\n";
    for (int d = 0; d < 7; ++d) {
      const int shade =
          255 - static_cast<int>(table.values[i][d] * 255.0 + 0.5);
      out << "<rect x=\"" << (left + d * cell) << "\" y=\"" << (top + i * cell)
          << "\" width=\"" << cell << "\" height=\"" << cell
          << "\" fill=\"rgb(255," << shade << ',' << shade
          << ")\" stroke=\"#888\"/>\n";
    }
  }
  out << "</svg>\n";
}

int cmd_heatmap(Options& opt, const std::string& assignments_path,
                const std::string& docs_path, std::string map_path,
                const std::string& city_name, const std::string& groups_csv,
                int topics, std::string out_path) {
  if (map_path.empty()) map_path = opt.cfg.group_map_path;
  if (map_path.empty())
    throw gt::ConfigError("group map path required (config 'group_map' or --map)");
  if (out_path.empty()) out_path = opt.out_path("heatmap.csv");
  if (topics <= 0) topics = infer_topics_from_map(map_path);
  int tz = -180;
  if (!city_name.empty()) tz = opt.cfg.city(city_name).utc_offset_minutes;

  const auto map = gt::load_group_map(map_path, topics);
  const auto assignments = read_assignments(assignments_path);
  std::unordered_map<std::string, int> topic_of;
  for (const auto& [id, topic] : assignments) topic_of.emplace(id, topic);

  // Timestamps come from the documents file the assignments were made from.
  require_readable(docs_path);
  gt::LineReader reader(docs_path);
  std::vector<gt::AssignedPost> posts;
  std::string line;
  DocRecord doc;
  while (reader.next(line)) {
    if (line.empty()) continue;
    if (!parse_doc_line(line, doc)) continue;
    auto it = topic_of.find(doc.post_id);
    if (it == topic_of.end()) continue;
    auto ts = gt::parse_timestamp(doc.created_at);
    if (!ts) continue;
    posts.push_back({ts->epoch_utc, it->second});
  }

  std::vector<std::string> selected;
  if (!groups_csv.empty()) {
    std::istringstream ss(groups_csv);
    std::string g;
    while (std::getline(ss, g, ',')) selected.push_back(g);
  }

  ManifestScope manifest(opt, "heatmap", {assignments_path, docs_path, map_path},
                         out_path);
  const auto table =
      gt::topic_weekday_heatmap(posts, map, selected, tz);

  auto out = open_out(out_path);
  out << "group,mon,tue,wed,thu,fri,sat,sun,zero_row\n";
  char buf[32];
  for (size_t i = 0; i < table.rows.size(); ++i) {
    out << csv_quote(table.rows[i]);
    for (int d = 0; d < 7; ++d) {
      std::snprintf(buf, sizeof buf, "%.12g", table.values[i][d]);
      out << ',' << buf;
    }
    out << ',' << (table.zero_row[i] ? 1 : 0) << '\n';
  }
  if (opt.format == "svg")
    write_heatmap_svg(out_path.substr(0, out_path.rfind('.')) + ".svg", table);
  manifest.write();
  std::cout << "heatmap: " << table.rows.size() << " groups -> " << out_path
            << "\n";
  return 0;
}

int cmd_run_all(Options& opt, const std::string& input) {
  if (opt.cfg.cities.empty())
    throw gt::ConfigError("run-all needs at least one city in the config");
  cmd_scan(opt, {input}, "");
  std::vector<std::string> group_reports;
  for (const auto& city : opt.cfg.cities) {
    const std::string accepted = opt.out_path(city.name + "_accepted.ndjson");
    const std::string docs = opt.out_path(city.name + "_documents.tsv");
    const std::string vocab = opt.out_path(city.name + "_vocabulary.tsv");
    const std::string model = opt.out_path(city.name + "_model.txt");
    const std::string assignments = opt.out_path(city.name + "_assignments.csv");
    const std::string groups = opt.out_path(city.name + "_group_report.csv");
    cmd_filter(opt, input, city.name, accepted, "");
    cmd_prep(opt, accepted, docs);
    cmd_vocab(opt, docs, vocab);
    cmd_train(opt, docs, vocab, model);
    cmd_assign(opt, model, assignments);
    cmd_topwords(opt, model, vocab, opt.out_path(city.name + "_top_words.csv"),
                 50);
    cmd_aggregate(opt, assignments, "", 0, groups);
    for (const char* kind : {"entities", "weekday", "hourly", "users"})
      cmd_stats(opt, accepted, kind, city.name, 0,
                opt.out_path(city.name + "_stats_" + kind + ".csv"));
    cmd_heatmap(opt, assignments, docs, "", city.name, "", 0,
                opt.out_path(city.name + "_heatmap.csv"));
    group_reports.push_back(groups);
  }
  if (group_reports.size() >= 2)
    cmd_compare(opt, group_reports[0], group_reports[1],
                opt.out_path("comparison.csv"));
  std::cout << "run-all: done\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geo-located microblog topic pipeline"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--config", opt.config_path, "pipeline config file (JSON)");
  app.add_option("--output-dir", opt.output_dir, "directory for outputs");
  app.add_option("--threads", opt.threads, "worker threads where supported")
      ->check(CLI::Range(1, 256));
  app.add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"csv", "svg"}));
  auto* seed_opt = app.add_option("--seed", opt.seed, "override the config seed");

  std::vector<std::string> inputs;
  std::string input, city, out, report, vocab_path, model_path, docs_path,
      assignments_path, map_path, kind = "entities", groups_csv, b_path;
  std::int64_t reference = 0;
  int topics = 0, topn = 50;

  auto* scan = app.add_subcommand("scan", "corpus composition report");
  scan->add_option("input", inputs, "record file(s)")->required();
  scan->add_option("--out", out, "report path");

  auto* filter = app.add_subcommand("filter", "strict city filter");
  filter->add_option("input", input, "record file")->required();
  filter->add_option("--city", city, "city name from config")->required();
  filter->add_option("--out", out, "accepted records path");
  filter->add_option("--report", report, "filter report path");

  auto* prep = app.add_subcommand("prep", "normalize and tokenize");
  prep->add_option("input", input, "accepted records file")->required();
  prep->add_option("--out", out, "documents path");

  auto* vocab = app.add_subcommand("vocab", "build pruned vocabulary");
  vocab->add_option("input", input, "documents file")->required();
  vocab->add_option("--out", out, "vocabulary path");
  std::int64_t ov_min_count = 0, ov_cap = 0;
  double ov_max_df = 0.0, ov_alpha = 0.0, ov_beta = 0.0;
  int ov_topics = 0, ov_iterations = 0;
  auto* o_min = vocab->add_option("--min-count", ov_min_count, "");
  auto* o_mdf = vocab->add_option("--max-df", ov_max_df, "");
  auto* o_cap = vocab->add_option("--cap", ov_cap, "");

  auto* train = app.add_subcommand("train", "train the topic model");
  train->add_option("input", input, "documents file")->required();
  train->add_option("--vocab", vocab_path, "vocabulary file")->required();
  train->add_option("--out", out, "model path");
  auto* o_k = train->add_option("-k,--topics", ov_topics, "");
  auto* o_it = train->add_option("--iterations", ov_iterations, "");
  auto* o_al = train->add_option("--alpha", ov_alpha, "");
  auto* o_be = train->add_option("--beta", ov_beta, "");

  auto* assign = app.add_subcommand("assign", "dominant topic per document");
  assign->add_option("input", model_path, "model file")->required();
  assign->add_option("--out", out, "assignments path");

  auto* topwords = app.add_subcommand("top-words", "ranked terms per topic");
  topwords->add_option("input", model_path, "model file")->required();
  topwords->add_option("--vocab", vocab_path, "vocabulary file")->required();
  topwords->add_option("--out", out, "export path");
  topwords->add_option("-n", topn, "words per topic");

  auto* aggregate = app.add_subcommand("aggregate", "group raw topics");
  aggregate->add_option("input", assignments_path, "assignments file")
      ->required();
  aggregate->add_option("--map", map_path, "group map file");
  aggregate->add_option("--topics", topics, "raw topic count");
  aggregate->add_option("--out", out, "group report path");

  auto* compare = app.add_subcommand("compare", "cross-city comparison");
  compare->add_option("a", input, "first group report")->required();
  compare->add_option("b", b_path, "second group report")->required();
  compare->add_option("--out", out, "comparison path");

  auto* stats = app.add_subcommand("stats", "corpus analytics");
  stats->add_option("input", input, "accepted records file")->required();
  stats->add_option("--kind", kind, "entities|weekday|hourly|users")
      ->check(CLI::IsMember({"entities", "weekday", "hourly", "users"}));
  stats->add_option("--city", city, "city for local-time conversion");
  stats->add_option("--reference", reference, "entity percentage denominator");
  stats->add_option("--out", out, "stats path");

  auto* heatmap = app.add_subcommand("heatmap", "topic x weekday heatmap");
  heatmap->add_option("assignments", assignments_path, "assignments file")
      ->required();
  heatmap->add_option("docs", docs_path, "documents file (timestamps)")
      ->required();
  heatmap->add_option("--map", map_path, "group map file");
  heatmap->add_option("--city", city, "city for local-time conversion");
  heatmap->add_option("--groups", groups_csv, "comma-separated group subset");
  heatmap->add_option("--topics", topics, "raw topic count");
  heatmap->add_option("--out", out, "heatmap path");

  auto* runall = app.add_subcommand("run-all", "full pipeline per city");
  runall->add_option("input", input, "record file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    opt.seed_set = seed_opt->count() > 0;
    opt.load();
    // CLI flags override config keys.
    if (o_min->count()) opt.cfg.vocab.min_count = ov_min_count;
    if (o_mdf->count()) opt.cfg.vocab.max_df = ov_max_df;
    if (o_cap->count()) opt.cfg.vocab.cap = ov_cap;
    if (o_k->count()) opt.cfg.lda.topics = ov_topics;
    if (o_it->count()) opt.cfg.lda.iterations = ov_iterations;
    if (o_al->count()) opt.cfg.lda.alpha = ov_alpha;
    if (o_be->count()) opt.cfg.lda.beta = ov_beta;
    if (scan->parsed()) return cmd_scan(opt, inputs, out);
    if (filter->parsed()) return cmd_filter(opt, input, city, out, report);
    if (prep->parsed()) return cmd_prep(opt, input, out);
    if (vocab->parsed()) return cmd_vocab(opt, input, out);
    if (train->parsed()) return cmd_train(opt, input, vocab_path, out);
    if (assign->parsed()) return cmd_assign(opt, model_path, out);
    if (topwords->parsed())
      return cmd_topwords(opt, model_path, vocab_path, out, topn);
    if (aggregate->parsed())
      return cmd_aggregate(opt, assignments_path, map_path, topics, out);
    if (compare->parsed()) return cmd_compare(opt, input, b_path, out);
    if (stats->parsed())
      return cmd_stats(opt, input, kind, city, reference, out);
    if (heatmap->parsed())
      return cmd_heatmap(opt, assignments_path, docs_path, map_path, city,
                         groups_csv, topics, out);
    if (runall->parsed()) {
      if (input.empty()) input = opt.cfg.input_path;
      if (input.empty())
        throw gt::ConfigError("run-all needs an input file (argument or config)");
      return cmd_run_all(opt, input);
    }
  } catch (const gt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
