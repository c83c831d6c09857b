#ifndef GEOTOPICS_LDA_HPP
#define GEOTOPICS_LDA_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "geotopics/vocab.hpp"

namespace geotopics {

struct InvalidConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct InvalidCorpusError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct LdaConfig {
  int topics = 50;
  int iterations = 20;
  double alpha = 0.0;  // <= 0 selects the 50/K default
  double beta = 0.01;
  std::uint64_t seed = 1;

  double resolved_alpha() const {
    return alpha > 0.0 ? alpha : 50.0 / topics;
  }
};

// Collapsed conditional p(z = k | rest), normalized over K topics:
//   p(k) ∝ (n_dk[k] + alpha) * (n_kw[k] + beta) / (n_k[k] + V*beta)
// where the counts exclude the token being resampled.
std::vector<double> gibbs_conditional(std::span<const int> n_dk_minus,
                                      std::span<const int> n_kw_minus_w,
                                      std::span<const std::int64_t> n_k_minus,
                                      double alpha, double beta, int V);

// Trained LDA state. Count matrices are authoritative; phi/theta are the
// smoothed distributions derived from the final sweep's counts.
class TopicModel {
 public:
  // Seeded collapsed Gibbs sampling: uniform random topic initialization,
  // then cfg.iterations full sweeps in document order. Deterministic for a
  // fixed (corpus, cfg).
  static TopicModel train(const std::vector<BowDocument>& corpus, int V,
                          const LdaConfig& cfg);

  int K() const { return cfg_.topics; }
  int V() const { return V_; }
  int D() const { return static_cast<int>(n_dk_.size()); }
  const LdaConfig& config() const { return cfg_; }

  const std::vector<int>& doc_topic_counts(int d) const { return n_dk_[d]; }
  const std::vector<int>& topic_word_counts(int k) const { return n_kw_[k]; }
  std::int64_t topic_total(int k) const { return n_k_[k]; }
  const std::string& post_id(int d) const { return post_ids_[d]; }
  const std::vector<std::vector<int>>& assignments() const { return z_; }

  double phi(int k, int w) const;
  double theta(int d, int k) const;
  std::vector<double> phi_row(int k) const;
  std::vector<double> theta_row(int d) const;

  // n highest-phi terms of topic k, ties broken by ascending term index.
  std::vector<std::pair<int, double>> top_words(int k, int n = 50) const;

  // argmax over theta[d], ties broken by lowest topic index.
  int dominant_topic(int d) const;

  // Sum over tokens of log sum_k theta[d][k] * phi[k][w].
  double log_likelihood(const std::vector<BowDocument>& corpus) const;

  void save(std::ostream& out) const;
  static TopicModel load(std::istream& in);

 private:
  TopicModel() = default;

  LdaConfig cfg_;
  int V_ = 0;
  std::vector<std::string> post_ids_;
  std::vector<int> doc_len_;
  std::vector<std::vector<int>> n_dk_;   // D x K
  std::vector<std::vector<int>> n_kw_;   // K x V
  std::vector<std::int64_t> n_k_;        // K
  std::vector<std::vector<int>> z_;      // per doc, per token
};

}  // namespace geotopics

#endif
