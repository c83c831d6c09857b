#include "geotopics/vocab.hpp"

#include <algorithm>
#include <map>

namespace geotopics {

void VocabularyBuilder::add_document(std::span<const std::string> tokens) {
  ++docs_;
  std::unordered_map<std::string, int> local;
  for (const auto& t : tokens) ++local[t];
  for (const auto& [term, n] : local) {
    auto& s = stats_[term];
    s.total += n;
    s.df += 1;
  }
}

void VocabularyBuilder::merge(const VocabularyBuilder& other) {
  docs_ += other.docs_;
  for (const auto& [term, s] : other.stats_) {
    auto& mine = stats_[term];
    mine.total += s.total;
    mine.df += s.df;
  }
}

Vocabulary VocabularyBuilder::build(std::int64_t min_count, double max_df,
                                    std::int64_t cap) const {
  struct Entry {
    const std::string* term;
    std::int64_t total;
    std::int64_t df;
  };
  std::vector<Entry> survivors;
  survivors.reserve(stats_.size());
  for (const auto& [term, s] : stats_) {
    if (s.total < min_count) continue;
    if (docs_ > 0 &&
        static_cast<double>(s.df) / static_cast<double>(docs_) >= max_df)
      continue;
    survivors.push_back({&term, s.total, s.df});
  }
  if (survivors.empty()) throw EmptyVocabularyError();

  std::sort(survivors.begin(), survivors.end(),
            [](const Entry& a, const Entry& b) {
              if (a.total != b.total) return a.total > b.total;
              return *a.term < *b.term;
            });
  if (static_cast<std::int64_t>(survivors.size()) > cap)
    survivors.resize(static_cast<size_t>(cap));

  Vocabulary v;
  v.corpus_docs = docs_;
  v.terms.reserve(survivors.size());
  for (size_t i = 0; i < survivors.size(); ++i) {
    v.terms.push_back(*survivors[i].term);
    v.total_count.push_back(survivors[i].total);
    v.doc_freq.push_back(survivors[i].df);
    v.index.emplace(*survivors[i].term, static_cast<int>(i));
  }
  return v;
}

BowDocument vectorize(const std::string& post_id,
                      std::span<const std::string> tokens,
                      const Vocabulary& v) {
  std::map<int, int> counts;
  int length = 0;
  for (const auto& t : tokens) {
    auto it = v.index.find(t);
    if (it == v.index.end()) continue;
    ++counts[it->second];
    ++length;
  }
  BowDocument bow;
  bow.post_id = post_id;
  bow.length = length;
  bow.pairs.assign(counts.begin(), counts.end());
  return bow;
}

}  // namespace geotopics
