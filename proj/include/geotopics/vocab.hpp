#ifndef GEOTOPICS_VOCAB_HPP
#define GEOTOPICS_VOCAB_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace geotopics {

struct EmptyVocabularyError : std::runtime_error {
  EmptyVocabularyError()
      : std::runtime_error("no term survives the vocabulary filters") {}
};

// Pruned term<->index bijection. Terms are ordered by descending total
// frequency, ties broken lexicographically.
struct Vocabulary {
  std::vector<std::string> terms;
  std::unordered_map<std::string, int> index;
  std::vector<std::int64_t> total_count;  // per retained term
  std::vector<std::int64_t> doc_freq;     // per retained term
  std::int64_t corpus_docs = 0;

  int size() const { return static_cast<int>(terms.size()); }
};

// Bag-of-words form of one document: (term index, count) pairs with
// strictly increasing indices. length counts in-vocabulary tokens only.
struct BowDocument {
  std::string post_id;
  std::vector<std::pair<int, int>> pairs;
  int length = 0;
};

// Streaming frequency accumulator. add_document may be applied to disjoint
// chunks and the accumulators merged before build.
class VocabularyBuilder {
 public:
  void add_document(std::span<const std::string> tokens);
  void merge(const VocabularyBuilder& other);

  // Filter order: min_count on total occurrences, then max_df (strict,
  // df/docs < max_df), then the cap keeps the highest-total-frequency
  // survivors. Throws EmptyVocabularyError if nothing survives.
  Vocabulary build(std::int64_t min_count = 10, double max_df = 0.40,
                   std::int64_t cap = 10000) const;

  std::int64_t docs() const { return docs_; }

 private:
  struct TermStats {
    std::int64_t total = 0;
    std::int64_t df = 0;
  };
  std::unordered_map<std::string, TermStats> stats_;
  std::int64_t docs_ = 0;
};

// Out-of-vocabulary tokens are silently dropped; counts are exact
// multiplicities.
BowDocument vectorize(const std::string& post_id,
                      std::span<const std::string> tokens,
                      const Vocabulary& v);

}  // namespace geotopics

#endif
