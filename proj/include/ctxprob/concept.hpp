#pragma once

// Typicality-rating tables: exemplars x contexts of nonnegative ratings, and the
// concept states they induce under each context.

#include <string>
#include <string_view>
#include <vector>

#include "ctxprob/hilbert.hpp"

namespace ctxprob {

/// Normalized typicality of each exemplar under one context.
struct ContextDistribution {
  std::string context;
  std::vector<std::string> exemplars;
  std::vector<double> probabilities;

  /// Throws Error for an unknown exemplar.
  double probability(const std::string& exemplar) const;
  bool contains(const std::string& exemplar) const;
};

class RatingTable {
 public:
  /// Validates shape, nonnegativity, label uniqueness, and that every context
  /// column carries some positive mass.
  RatingTable(std::vector<std::string> exemplars, std::vector<std::string> contexts,
              std::vector<std::vector<double>> ratings);

  /// Delimiter-separated text. Row 1 is a corner cell followed by the context
  /// labels; each further row is an exemplar label followed by its ratings.
  /// The delimiter is a tab when the header contains one, a comma otherwise.
  /// Blank lines and lines starting with '#' are skipped.
  static RatingTable parse(std::string_view text);
  static RatingTable load(const std::string& path);

  const std::vector<std::string>& exemplars() const noexcept { return exemplars_; }
  const std::vector<std::string>& contexts() const noexcept { return contexts_; }
  std::size_t exemplar_count() const noexcept { return exemplars_.size(); }
  std::size_t context_count() const noexcept { return contexts_.size(); }

  double rating(std::size_t exemplar, std::size_t context) const {
    return ratings_[exemplar][context];
  }
  double rating(const std::string& exemplar, const std::string& context) const;

  /// Resolves a context by exact label, then by unique case-insensitive
  /// substring ("chewing a bone"). Throws Error listing the available contexts
  /// when nothing (or more than one label) matches.
  std::size_t context_index(std::string_view context) const;
  std::size_t exemplar_index(std::string_view exemplar) const;

 private:
  std::vector<std::string> exemplars_;
  std::vector<std::string> contexts_;
  std::vector<std::vector<double>> ratings_;
};

/// rating(x, c) / sum_y rating(y, c)
ContextDistribution context_distribution(const RatingTable& t, std::string_view context);

/// Real amplitudes sqrt(probability(x)).
StateVector context_state(const RatingTable& t, std::string_view context);

/// Born-compatible state of an already-normalized distribution.
StateVector distribution_state(const ContextDistribution& d);

double typicality(const RatingTable& t, std::string_view context, const std::string& exemplar);

/// Descending typicality; ties by exemplar label.
std::vector<std::string> rank_exemplars(const RatingTable& t, std::string_view context);

}  // namespace ctxprob
