#ifndef GEOTOPICS_TEXTPREP_HPP
#define GEOTOPICS_TEXTPREP_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_set>
#include <vector>

namespace geotopics {

// Token sequence for one post after normalization. Tokens are non-empty,
// lowercase, free of digits and punctuation, at least 3 characters long,
// and keep original text order.
struct Document {
  std::string post_id;
  std::string user_id;
  std::string created_at;  // raw source timestamp, re-parsed downstream
  std::vector<std::string> tokens;
};

struct PrepReport {
  std::int64_t input_count = 0;
  std::int64_t emptied_count = 0;
  std::int64_t emitted_count = 0;

  void merge(const PrepReport& o) {
    input_count += o.input_count;
    emptied_count += o.emptied_count;
    emitted_count += o.emitted_count;
  }
};

using StopwordSet = std::unordered_set<std::string>;

// Stopword file: UTF-8, one term per line, '#'-prefixed comment lines ignored.
StopwordSet load_stopwords(const std::string& path);

// Every maximal run of one character longer than 3 becomes exactly 3.
// Operates on codepoints, so accented letters collapse correctly.
std::string collapse_repeats(const std::string& token);

// Rule-based Portuguese de-pluralization. Idempotent; applies suffix rules
// to a fixpoint with a small invariant-word exception list.
std::string singularize(const std::string& token);

// The full normalization pipeline, applied in this order:
//   1. lowercase
//   2. remove URLs, @-mentions, whole #hashtags, and digit runs
//   3. singularize each word
//   4. collapse character runs longer than 3 to exactly 3
//   5. strip punctuation, symbols and pictographs (keep letters, marks,
//      whitespace)
//   6. drop stopwords
//   7. drop tokens shorter than 3 characters and single-character repeats
// Word boundaries are Unicode whitespace. Worst case is an empty sequence.
std::vector<std::string> normalize(const std::string& text,
                                   const StopwordSet& stopwords);

// Minimal view of a post entering preparation.
struct PrepInput {
  std::string post_id;
  std::string user_id;
  std::string created_at;
  std::string text;
};

// Runs normalize over a post stream, emitting only non-empty Documents and
// counting the posts whose token sequence came out empty.
PrepReport prep_stream(
    const std::function<bool(PrepInput&)>& next_post,
    const StopwordSet& stopwords,
    const std::function<void(const Document&)>& emit);

}  // namespace geotopics

#endif
