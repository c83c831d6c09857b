#ifndef GEOTOPICS_TESTS_SYNTHETIC_HPP
#define GEOTOPICS_TESTS_SYNTHETIC_HPP

// Synthetic corpus generator used by the sampler tests: documents drawn
// from known well-separated topic-word distributions, so recovered topics
// can be matched back to the truth.

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "geotopics/vocab.hpp"

namespace gt_test {

struct SyntheticCorpus {
  std::vector<geotopics::BowDocument> docs;
  std::vector<std::vector<double>> true_phi;  // K x V
  int V = 0;
};

// Each topic owns a contiguous block of V/K terms; a document's tokens come
// from its main topic's block with probability 1 - noise, else uniform.
inline SyntheticCorpus make_synthetic(int n_docs, int topics, int vocab_size,
                                      int doc_len, double noise,
                                      unsigned seed) {
  SyntheticCorpus corpus;
  corpus.V = vocab_size;
  const int block = vocab_size / topics;

  corpus.true_phi.assign(topics, std::vector<double>(vocab_size, 0.0));
  for (int k = 0; k < topics; ++k) {
    for (int w = 0; w < vocab_size; ++w) {
      const bool owned = w >= k * block && w < (k + 1) * block;
      corpus.true_phi[k][w] =
          noise / vocab_size + (owned ? (1.0 - noise) / block : 0.0);
    }
  }

  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int d = 0; d < n_docs; ++d) {
    const int k = d % topics;
    std::map<int, int> counts;
    for (int i = 0; i < doc_len; ++i) {
      int w;
      if (u01(rng) < noise) {
        w = std::uniform_int_distribution<int>(0, vocab_size - 1)(rng);
      } else {
        w = k * block + std::uniform_int_distribution<int>(0, block - 1)(rng);
      }
      ++counts[w];
    }
    geotopics::BowDocument doc;
    doc.post_id = "d" + std::to_string(d);
    doc.length = doc_len;
    doc.pairs.assign(counts.begin(), counts.end());
    corpus.docs.push_back(std::move(doc));
  }
  return corpus;
}

// Mean cosine similarity between true and recovered phi rows under the best
// topic permutation, found exhaustively.
inline double best_permutation_cosine(
    const std::vector<std::vector<double>>& true_phi,
    const std::vector<std::vector<double>>& got_phi) {
  const int K = static_cast<int>(true_phi.size());
  auto cosine = [](const std::vector<double>& a, const std::vector<double>& b) {
    double dot = 0, na = 0, nb = 0;
    for (size_t i = 0; i < a.size(); ++i) {
      dot += a[i] * b[i];
      na += a[i] * a[i];
      nb += b[i] * b[i];
    }
    return dot / std::sqrt(na * nb);
  };
  std::vector<int> perm(K);
  for (int k = 0; k < K; ++k) perm[k] = k;
  double best = -1.0;
  do {
    double sum = 0.0;
    for (int k = 0; k < K; ++k) sum += cosine(true_phi[k], got_phi[perm[k]]);
    best = std::max(best, sum / K);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace gt_test

#endif
