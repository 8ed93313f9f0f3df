#pragma once

// Desk-scale latent semantic analysis over raw term counts, plus the
// order-free and order-preserving sentence encodings it is contrasted with.

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ctxprob {

struct Document {
  std::string label;
  std::vector<std::string> tokens;
};

/// Parses one document per non-blank line, whitespace-tokenized. Documents are
/// labeled "d1", "d2", ... by line order among non-blank lines.
std::vector<Document> parse_corpus(std::string_view text, bool lowercase = true);
std::vector<Document> load_corpus(const std::string& path, bool lowercase = true);

/// Whitespace tokenization of one sentence.
std::vector<std::string> tokenize(std::string_view sentence, bool lowercase = true);

class TermDocMatrix {
 public:
  TermDocMatrix(std::vector<std::string> terms, std::vector<std::string> docs,
                std::vector<std::vector<long>> counts);

  const std::vector<std::string>& terms() const noexcept { return terms_; }
  const std::vector<std::string>& docs() const noexcept { return docs_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  std::size_t doc_count() const noexcept { return docs_.size(); }
  long count(std::size_t term, std::size_t doc) const { return counts_[term][doc]; }
  long count(const std::string& term, const std::string& doc) const;
  std::size_t term_index(const std::string& term) const;

  /// Column of counts for one document.
  std::vector<long> column(std::size_t doc) const;

 private:
  std::vector<std::string> terms_;
  std::vector<std::string> docs_;
  std::vector<std::vector<long>> counts_;
};

/// Vocabulary in first-seen order. Throws Error on an empty corpus or an empty
/// token.
TermDocMatrix build_matrix(const std::vector<Document>& corpus);

/// Rank-k factorization U_k diag(sigma) V_k^T.
class SemanticSpace {
 public:
  SemanticSpace(std::vector<std::string> terms, std::vector<std::string> docs,
                std::vector<double> singular_values, std::vector<std::vector<double>> term_vectors,
                std::vector<std::vector<double>> doc_vectors);

  std::size_t rank() const noexcept { return singular_values_.size(); }
  const std::vector<double>& singular_values() const noexcept { return singular_values_; }
  const std::vector<std::string>& terms() const noexcept { return terms_; }
  const std::vector<std::string>& docs() const noexcept { return docs_; }

  /// Row of U_k (unscaled).
  const std::vector<double>& left_vector(std::size_t term) const { return u_[term]; }
  const std::vector<double>& right_vector(std::size_t doc) const { return v_[doc]; }

  /// Row of U_k diag(sigma).
  std::vector<double> word_vector(const std::string& term) const;

  /// Dense U_k diag(sigma) V_k^T, terms x docs.
  std::vector<std::vector<double>> reconstruct() const;

 private:
  std::vector<std::string> terms_;
  std::vector<std::string> docs_;
  std::vector<double> singular_values_;
  std::vector<std::vector<double>> u_;
  std::vector<std::vector<double>> v_;
};

/// Best rank-k approximation. Throws Error unless 1 <= k <= min(terms, docs).
SemanticSpace svd_truncate(const TermDocMatrix& m, std::size_t k);

/// Frobenius norm of (m - reconstruction).
double reconstruction_error(const TermDocMatrix& m, const SemanticSpace& s);

struct Similarity {
  double value = 0.0;
  /// Set when either word vector is zero; value is 0 then.
  bool degenerate = false;
};

/// Cosine of the singular-value-scaled word vectors.
Similarity similarity(const SemanticSpace& s, const std::string& t1, const std::string& t2);

/// Term counts of `tokens` over `vocab`. Throws Error listing out-of-vocabulary
/// tokens.
std::vector<long> bow_vector(const std::vector<std::string>& tokens,
                             const std::vector<std::string>& vocab);

inline constexpr std::size_t kOrderRepresentationBudget = 1'000'000;

/// Sequential tensor product of one-hot word vectors. Only the single nonzero
/// entry is stored: it sits at `index` in a space of `dimension` entries.
struct OrderRepresentation {
  std::size_t vocab_size = 0;
  std::size_t length = 0;
  std::size_t dimension = 0;
  std::size_t index = 0;

  /// Fully materialized vector (dimension entries).
  std::vector<double> dense() const;

  friend bool operator==(const OrderRepresentation&, const OrderRepresentation&) = default;
};

/// Throws Error for OOV tokens, an empty token list, or |vocab|^n above
/// `budget`.
OrderRepresentation order_representation(const std::vector<std::string>& tokens,
                                         const std::vector<std::string>& vocab,
                                         std::size_t budget = kOrderRepresentationBudget);

}  // namespace ctxprob
