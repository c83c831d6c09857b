#include "geotopics/lda.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

namespace geotopics {

namespace {

// All randomness flows through mt19937_64; doubles are derived from the
// top 53 bits so the sampling stream is identical on every platform.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int sample_discrete(std::span<const double> weights, double u) {
  double total = 0.0;
  for (double w : weights) total += w;
  const double target = u * total;
  double cum = 0.0;
  for (size_t k = 0; k < weights.size(); ++k) {
    cum += weights[k];
    if (target < cum) return static_cast<int>(k);
  }
  return static_cast<int>(weights.size()) - 1;
}

void validate(const std::vector<BowDocument>& corpus, int V,
              const LdaConfig& cfg) {
  if (cfg.topics < 1) throw InvalidConfigError("topics must be >= 1");
  if (cfg.iterations < 1) throw InvalidConfigError("iterations must be >= 1");
  if (cfg.resolved_alpha() <= 0.0) throw InvalidConfigError("alpha must be > 0");
  if (cfg.beta <= 0.0) throw InvalidConfigError("beta must be > 0");
  if (corpus.empty()) throw InvalidCorpusError("corpus is empty");
  for (const auto& doc : corpus) {
    if (doc.length < 1)
      throw InvalidCorpusError("document " + doc.post_id + " is empty");
    int sum = 0;
    for (auto [w, c] : doc.pairs) {
      if (w < 0 || w >= V)
        throw InvalidCorpusError("term index out of range in " + doc.post_id);
      if (c < 1) throw InvalidCorpusError("non-positive count in " + doc.post_id);
      sum += c;
    }
    if (sum != doc.length)
      throw InvalidCorpusError("length mismatch in " + doc.post_id);
  }
}

}  // namespace

std::vector<double> gibbs_conditional(std::span<const int> n_dk_minus,
                                      std::span<const int> n_kw_minus_w,
                                      std::span<const std::int64_t> n_k_minus,
                                      double alpha, double beta, int V) {
  const size_t K = n_dk_minus.size();
  std::vector<double> p(K);
  double total = 0.0;
  for (size_t k = 0; k < K; ++k) {
    p[k] = (n_dk_minus[k] + alpha) * (n_kw_minus_w[k] + beta) /
           (n_k_minus[k] + V * beta);
    total += p[k];
  }
  for (double& x : p) x /= total;
  return p;
}

TopicModel TopicModel::train(const std::vector<BowDocument>& corpus, int V,
                             const LdaConfig& cfg) {
  validate(corpus, V, cfg);
  const int K = cfg.topics;
  const double alpha = cfg.resolved_alpha();
  const double beta = cfg.beta;
  const double Vbeta = V * beta;

  TopicModel m;
  m.cfg_ = cfg;
  m.V_ = V;
  const int D = static_cast<int>(corpus.size());
  m.post_ids_.reserve(D);
  m.doc_len_.reserve(D);
  m.n_dk_.assign(D, std::vector<int>(K, 0));
  m.n_kw_.assign(K, std::vector<int>(V, 0));
  m.n_k_.assign(K, 0);
  m.z_.resize(D);

  // Token word ids, expanded in pair order.
  std::vector<std::vector<int>> words(D);
  for (int d = 0; d < D; ++d) {
    const auto& doc = corpus[d];
    m.post_ids_.push_back(doc.post_id);
    m.doc_len_.push_back(doc.length);
    words[d].reserve(doc.length);
    for (auto [w, c] : doc.pairs)
      for (int i = 0; i < c; ++i) words[d].push_back(w);
  }

  std::mt19937_64 rng(cfg.seed);

  for (int d = 0; d < D; ++d) {
    m.z_[d].resize(words[d].size());
    for (size_t i = 0; i < words[d].size(); ++i) {
      const int k = std::min(K - 1, static_cast<int>(uniform01(rng) * K));
      m.z_[d][i] = k;
      ++m.n_dk_[d][k];
      ++m.n_kw_[k][words[d][i]];
      ++m.n_k_[k];
    }
  }

  std::vector<double> weights(K);
  for (int iter = 0; iter < cfg.iterations; ++iter) {
    for (int d = 0; d < D; ++d) {
      auto& ndk = m.n_dk_[d];
      const auto& ws = words[d];
      for (size_t i = 0; i < ws.size(); ++i) {
        const int w = ws[i];
        const int old = m.z_[d][i];
        --ndk[old];
        --m.n_kw_[old][w];
        --m.n_k_[old];

        for (int k = 0; k < K; ++k)
          weights[k] = (ndk[k] + alpha) * (m.n_kw_[k][w] + beta) /
                       (m.n_k_[k] + Vbeta);
        const int k = sample_discrete(weights, uniform01(rng));

        m.z_[d][i] = k;
        ++ndk[k];
        ++m.n_kw_[k][w];
        ++m.n_k_[k];
      }
    }
  }
  return m;
}

double TopicModel::phi(int k, int w) const {
  return (n_kw_[k][w] + cfg_.beta) / (n_k_[k] + V_ * cfg_.beta);
}

double TopicModel::theta(int d, int k) const {
  const double alpha = cfg_.resolved_alpha();
  return (n_dk_[d][k] + alpha) / (doc_len_[d] + K() * alpha);
}

std::vector<double> TopicModel::phi_row(int k) const {
  std::vector<double> row(V_);
  for (int w = 0; w < V_; ++w) row[w] = phi(k, w);
  return row;
}

std::vector<double> TopicModel::theta_row(int d) const {
  std::vector<double> row(K());
  for (int k = 0; k < K(); ++k) row[k] = theta(d, k);
  return row;
}

std::vector<std::pair<int, double>> TopicModel::top_words(int k, int n) const {
  if (k < 0 || k >= K()) throw std::out_of_range("topic id out of range");
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  std::vector<std::pair<int, double>> ranked(V_);
  for (int w = 0; w < V_; ++w) ranked[w] = {w, phi(k, w)};
  const size_t keep = std::min<size_t>(n, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + keep, ranked.end(),
                    [](const auto& a, const auto& b) {
                      if (a.second != b.second) return a.second > b.second;
                      return a.first < b.first;
                    });
  ranked.resize(keep);
  return ranked;
}

int TopicModel::dominant_topic(int d) const {
  if (d < 0 || d >= D()) throw std::out_of_range("document index out of range");
  int best = 0;
  double best_val = theta(d, 0);
  for (int k = 1; k < K(); ++k) {
    const double v = theta(d, k);
    if (v > best_val) {
      best_val = v;
      best = k;
    }
  }
  return best;
}

double TopicModel::log_likelihood(const std::vector<BowDocument>& corpus) const {
  double ll = 0.0;
  for (int d = 0; d < static_cast<int>(corpus.size()); ++d) {
    const auto th = theta_row(d);
    for (auto [w, c] : corpus[d].pairs) {
      double p = 0.0;
      for (int k = 0; k < K(); ++k) p += th[k] * phi(k, w);
      ll += c * std::log(p);
    }
  }
  return ll;
}

void TopicModel::save(std::ostream& out) const {
  char buf[64];
  out << "geotopics-lda-model v1\n";
  out << "K " << K() << "\nV " << V_ << "\nD " << D() << "\n";
  std::snprintf(buf, sizeof buf, "%.17g", cfg_.resolved_alpha());
  out << "alpha " << buf;
  std::snprintf(buf, sizeof buf, "%.17g", cfg_.beta);
  out << " beta " << buf << " iterations " << cfg_.iterations << " seed "
      << cfg_.seed << "\n";
  out << "n_k";
  for (int k = 0; k < K(); ++k) out << ' ' << n_k_[k];
  out << "\n";
  for (int k = 0; k < K(); ++k) {
    out << "n_kw";
    for (int w = 0; w < V_; ++w) out << ' ' << n_kw_[k][w];
    out << "\n";
  }
  for (int d = 0; d < D(); ++d) {
    out << "doc " << post_ids_[d] << ' ' << doc_len_[d];
    for (int k = 0; k < K(); ++k) out << ' ' << n_dk_[d][k];
    out << "\n";
  }
}

TopicModel TopicModel::load(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "geotopics-lda-model v1")
    throw std::runtime_error("unrecognized model file format");

  TopicModel m;
  std::string tag;
  int K = 0, D = 0;
  in >> tag >> K;
  if (tag != "K") throw std::runtime_error("bad model file: K");
  in >> tag >> m.V_;
  if (tag != "V") throw std::runtime_error("bad model file: V");
  in >> tag >> D;
  if (tag != "D") throw std::runtime_error("bad model file: D");
  in >> tag >> m.cfg_.alpha;
  if (tag != "alpha") throw std::runtime_error("bad model file: alpha");
  in >> tag >> m.cfg_.beta >> tag >> m.cfg_.iterations >> tag >> m.cfg_.seed;
  m.cfg_.topics = K;

  m.n_k_.assign(K, 0);
  in >> tag;
  if (tag != "n_k") throw std::runtime_error("bad model file: n_k");
  for (int k = 0; k < K; ++k) in >> m.n_k_[k];
  m.n_kw_.assign(K, std::vector<int>(m.V_, 0));
  for (int k = 0; k < K; ++k) {
    in >> tag;
    if (tag != "n_kw") throw std::runtime_error("bad model file: n_kw");
    for (int w = 0; w < m.V_; ++w) in >> m.n_kw_[k][w];
  }
  m.n_dk_.assign(D, std::vector<int>(K, 0));
  m.post_ids_.resize(D);
  m.doc_len_.resize(D);
  for (int d = 0; d < D; ++d) {
    in >> tag;
    if (tag != "doc") throw std::runtime_error("bad model file: doc");
    in >> m.post_ids_[d] >> m.doc_len_[d];
    for (int k = 0; k < K; ++k) in >> m.n_dk_[d][k];
  }
  if (!in) throw std::runtime_error("truncated model file");
  return m;
}

}  // namespace geotopics
