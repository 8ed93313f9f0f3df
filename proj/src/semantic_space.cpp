#include "ctxprob/semantic_space.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cctype>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "ctxprob/error.hpp"
#include "text_util.hpp"

namespace ctxprob {

std::vector<std::string> tokenize(std::string_view sentence, bool lowercase) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : sentence) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(lowercase ? static_cast<char>(std::tolower(static_cast<unsigned char>(ch)))
                                  : ch);
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::vector<Document> parse_corpus(std::string_view text, bool lowercase) {
  std::vector<Document> docs;
  for (std::string_view line : detail::split_lines(text)) {
    auto tokens = tokenize(line, lowercase);
    if (tokens.empty()) continue;
    docs.push_back({"d" + std::to_string(docs.size() + 1), std::move(tokens)});
  }
  return docs;
}

std::vector<Document> load_corpus(const std::string& path, bool lowercase) {
  return parse_corpus(detail::read_file(path), lowercase);
}

TermDocMatrix::TermDocMatrix(std::vector<std::string> terms, std::vector<std::string> docs,
                             std::vector<std::vector<long>> counts)
    : terms_(std::move(terms)), docs_(std::move(docs)), counts_(std::move(counts)) {
  std::unordered_set<std::string> seen;
  for (const auto& t : terms_) {
    if (!seen.insert(t).second) throw Error("duplicate term \"" + t + "\"");
  }
  seen.clear();
  for (const auto& d : docs_) {
    if (!seen.insert(d).second) throw Error("duplicate document label \"" + d + "\"");
  }
  if (counts_.size() != terms_.size()) throw Error("count rows do not match terms");
  bool any = false;
  for (const auto& row : counts_) {
    if (row.size() != docs_.size()) throw Error("count columns do not match documents");
    for (long c : row) {
      if (c < 0) throw Error("negative term count");
      any = any || c > 0;
    }
  }
  if (!any) throw Error("term-document matrix has no nonzero count");
}

std::size_t TermDocMatrix::term_index(const std::string& term) const {
  auto it = std::find(terms_.begin(), terms_.end(), term);
  if (it == terms_.end()) throw Error("unknown term \"" + term + "\"");
  return static_cast<std::size_t>(it - terms_.begin());
}

long TermDocMatrix::count(const std::string& term, const std::string& doc) const {
  auto it = std::find(docs_.begin(), docs_.end(), doc);
  if (it == docs_.end()) throw Error("unknown document \"" + doc + "\"");
  return counts_[term_index(term)][static_cast<std::size_t>(it - docs_.begin())];
}

std::vector<long> TermDocMatrix::column(std::size_t doc) const {
  std::vector<long> out(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) out[i] = counts_[i][doc];
  return out;
}

TermDocMatrix build_matrix(const std::vector<Document>& corpus) {
  if (corpus.empty()) throw Error("empty corpus");
  std::vector<std::string> terms;
  std::unordered_map<std::string, std::size_t> index;
  std::vector<std::string> docs;
  for (const auto& d : corpus) {
    docs.push_back(d.label);
    for (const auto& tok : d.tokens) {
      if (tok.empty()) throw Error("empty token in document \"" + d.label + "\"");
      if (index.emplace(tok, terms.size()).second) terms.push_back(tok);
    }
  }
  std::vector<std::vector<long>> counts(terms.size(), std::vector<long>(corpus.size(), 0));
  for (std::size_t j = 0; j < corpus.size(); ++j) {
    for (const auto& tok : corpus[j].tokens) ++counts[index.at(tok)][j];
  }
  return TermDocMatrix(std::move(terms), std::move(docs), std::move(counts));
}

SemanticSpace::SemanticSpace(std::vector<std::string> terms, std::vector<std::string> docs,
                             std::vector<double> singular_values,
                             std::vector<std::vector<double>> term_vectors,
                             std::vector<std::vector<double>> doc_vectors)
    : terms_(std::move(terms)),
      docs_(std::move(docs)),
      singular_values_(std::move(singular_values)),
      u_(std::move(term_vectors)),
      v_(std::move(doc_vectors)) {
  if (!std::is_sorted(singular_values_.rbegin(), singular_values_.rend())) {
    throw Error("singular values must be nonincreasing");
  }
  const std::size_t k = singular_values_.size();
  if (u_.size() != terms_.size() || v_.size() != docs_.size()) {
    throw Error("factor rows do not match labels");
  }
  for (const auto& row : u_) {
    if (row.size() != k) throw Error("left factor width does not match rank");
  }
  for (const auto& row : v_) {
    if (row.size() != k) throw Error("right factor width does not match rank");
  }
}

std::vector<double> SemanticSpace::word_vector(const std::string& term) const {
  auto it = std::find(terms_.begin(), terms_.end(), term);
  if (it == terms_.end()) throw Error("unknown term \"" + term + "\"");
  const auto& u = u_[static_cast<std::size_t>(it - terms_.begin())];
  std::vector<double> out(rank());
  for (std::size_t r = 0; r < rank(); ++r) out[r] = u[r] * singular_values_[r];
  return out;
}

std::vector<std::vector<double>> SemanticSpace::reconstruct() const {
  std::vector<std::vector<double>> out(terms_.size(), std::vector<double>(docs_.size(), 0.0));
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    for (std::size_t j = 0; j < docs_.size(); ++j) {
      for (std::size_t r = 0; r < rank(); ++r) {
        out[i][j] += u_[i][r] * singular_values_[r] * v_[j][r];
      }
    }
  }
  return out;
}

SemanticSpace svd_truncate(const TermDocMatrix& m, std::size_t k) {
  const std::size_t max_rank = std::min(m.term_count(), m.doc_count());
  if (k < 1 || k > max_rank) {
    throw Error("rank k = " + std::to_string(k) + " outside [1, " + std::to_string(max_rank) +
                "]");
  }
  Eigen::MatrixXd a(m.term_count(), m.doc_count());
  for (std::size_t i = 0; i < m.term_count(); ++i) {
    for (std::size_t j = 0; j < m.doc_count(); ++j) {
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          static_cast<double>(m.count(i, j));
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const auto& u = svd.matrixU();
  const auto& v = svd.matrixV();

  std::vector<double> sigma(k);
  std::vector<std::vector<double>> left(m.term_count(), std::vector<double>(k));
  std::vector<std::vector<double>> right(m.doc_count(), std::vector<double>(k));
  for (std::size_t r = 0; r < k; ++r) {
    const auto rr = static_cast<Eigen::Index>(r);
    sigma[r] = sv(rr);
    for (std::size_t i = 0; i < m.term_count(); ++i) {
      left[i][r] = u(static_cast<Eigen::Index>(i), rr);
    }
    for (std::size_t j = 0; j < m.doc_count(); ++j) {
      right[j][r] = v(static_cast<Eigen::Index>(j), rr);
    }
  }
  return SemanticSpace(m.terms(), m.docs(), std::move(sigma), std::move(left), std::move(right));
}

double reconstruction_error(const TermDocMatrix& m, const SemanticSpace& s) {
  const auto approx = s.reconstruct();
  double sum = 0.0;
  for (std::size_t i = 0; i < m.term_count(); ++i) {
    for (std::size_t j = 0; j < m.doc_count(); ++j) {
      const double d = static_cast<double>(m.count(i, j)) - approx[i][j];
      sum += d * d;
    }
  }
  return std::sqrt(sum);
}

Similarity similarity(const SemanticSpace& s, const std::string& t1, const std::string& t2) {
  const auto a = s.word_vector(t1);
  const auto b = s.word_vector(t2);
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t r = 0; r < a.size(); ++r) {
    ab += a[r] * b[r];
    aa += a[r] * a[r];
    bb += b[r] * b[r];
  }
  // Word vectors below this norm are numerical zeros of the factorization.
  constexpr double kZeroNorm = 1e-12;
  if (std::sqrt(aa) <= kZeroNorm || std::sqrt(bb) <= kZeroNorm) return {0.0, true};
  return {std::clamp(ab / std::sqrt(aa * bb), -1.0, 1.0), false};
}

namespace {

std::vector<std::size_t> vocab_indices(const std::vector<std::string>& tokens,
                                       const std::vector<std::string>& vocab) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < vocab.size(); ++i) index.emplace(vocab[i], i);
  std::vector<std::size_t> out;
  std::vector<std::string> missing;
  for (const auto& tok : tokens) {
    auto it = index.find(tok);
    if (it == index.end()) {
      if (std::find(missing.begin(), missing.end(), tok) == missing.end()) missing.push_back(tok);
    } else {
      out.push_back(it->second);
    }
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& w : missing) list += (list.empty() ? "" : ", ") + w;
    throw Error("out-of-vocabulary tokens: " + list);
  }
  return out;
}

}  // namespace

std::vector<long> bow_vector(const std::vector<std::string>& tokens,
                             const std::vector<std::string>& vocab) {
  std::vector<long> out(vocab.size(), 0);
  for (std::size_t i : vocab_indices(tokens, vocab)) ++out[i];
  return out;
}

std::vector<double> OrderRepresentation::dense() const {
  std::vector<double> out(dimension, 0.0);
  out[index] = 1.0;
  return out;
}

OrderRepresentation order_representation(const std::vector<std::string>& tokens,
                                         const std::vector<std::string>& vocab,
                                         std::size_t budget) {
  if (tokens.empty()) throw Error("order representation needs at least one token");
  const auto idx = vocab_indices(tokens, vocab);
  OrderRepresentation rep;
  rep.vocab_size = vocab.size();
  rep.length = idx.size();
  rep.dimension = 1;
  for (std::size_t i : idx) {
    if (rep.dimension > budget / vocab.size()) {
      throw Error("order representation of " + std::to_string(idx.size()) + " tokens over " +
                  std::to_string(vocab.size()) + " words exceeds the " + std::to_string(budget) +
                  "-entry budget");
    }
    rep.dimension *= vocab.size();
    // Kronecker index, first token most significant.
    rep.index = rep.index * vocab.size() + i;
  }
  return rep;
}

}  // namespace ctxprob
