#include "ctxprob/concept.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "ctxprob/error.hpp"
#include "text_util.hpp"

namespace ctxprob {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string join_quoted(const std::vector<std::string>& labels) {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i != 0) out += ", ";
    out += "\"" + labels[i] + "\"";
  }
  return out;
}

}  // namespace

double ContextDistribution::probability(const std::string& exemplar) const {
  auto it = std::find(exemplars.begin(), exemplars.end(), exemplar);
  if (it == exemplars.end()) {
    throw Error("unknown exemplar \"" + exemplar + "\" in context \"" + context + "\"");
  }
  return probabilities[static_cast<std::size_t>(it - exemplars.begin())];
}

bool ContextDistribution::contains(const std::string& exemplar) const {
  return std::find(exemplars.begin(), exemplars.end(), exemplar) != exemplars.end();
}

RatingTable::RatingTable(std::vector<std::string> exemplars, std::vector<std::string> contexts,
                         std::vector<std::vector<double>> ratings)
    : exemplars_(std::move(exemplars)),
      contexts_(std::move(contexts)),
      ratings_(std::move(ratings)) {
  if (exemplars_.empty()) throw Error("rating table has no exemplars");
  if (contexts_.empty()) throw Error("rating table has no contexts");
  if (ratings_.size() != exemplars_.size()) throw Error("rating rows do not match exemplars");

  std::unordered_set<std::string> seen;
  for (const auto& x : exemplars_) {
    if (x.empty()) throw Error("empty exemplar label");
    if (!seen.insert(x).second) throw Error("duplicate exemplar label \"" + x + "\"");
  }
  seen.clear();
  for (const auto& c : contexts_) {
    if (c.empty()) throw Error("empty context label");
    if (!seen.insert(c).second) throw Error("duplicate context label \"" + c + "\"");
  }
  for (std::size_t i = 0; i < ratings_.size(); ++i) {
    if (ratings_[i].size() != contexts_.size()) {
      throw Error("exemplar \"" + exemplars_[i] + "\" has " + std::to_string(ratings_[i].size()) +
                  " ratings, expected " + std::to_string(contexts_.size()));
    }
    for (std::size_t j = 0; j < contexts_.size(); ++j) {
      const double r = ratings_[i][j];
      if (!std::isfinite(r) || r < 0.0) {
        throw Error("negative or non-finite rating at exemplar \"" + exemplars_[i] +
                    "\", context \"" + contexts_[j] + "\"");
      }
    }
  }
  for (std::size_t j = 0; j < contexts_.size(); ++j) {
    bool positive = false;
    for (const auto& row : ratings_) positive = positive || row[j] > 0.0;
    if (!positive) throw Error("context column has no mass: \"" + contexts_[j] + "\"");
  }
}

RatingTable RatingTable::parse(std::string_view text) {
  std::vector<std::string> contexts;
  std::vector<std::string> exemplars;
  std::vector<std::vector<double>> ratings;
  std::unordered_set<std::string> seen;
  char delim = '\t';
  bool have_header = false;

  std::size_t line_no = 0;
  for (std::string_view line : detail::split_lines(text)) {
    ++line_no;
    if (detail::trim(line).empty() || detail::trim(line).front() == '#') continue;
    if (!have_header) {
      delim = line.find('\t') != std::string_view::npos ? '\t' : ',';
      auto cells = detail::split(line, delim);
      if (cells.size() < 2) throw ParseError("header needs at least one context label", line_no);
      for (std::size_t j = 1; j < cells.size(); ++j) {
        auto label = std::string(detail::trim(cells[j]));
        if (label.empty()) throw ParseError("empty context label", line_no, j + 1);
        contexts.push_back(std::move(label));
      }
      have_header = true;
      continue;
    }
    auto cells = detail::split(line, delim);
    if (cells.size() != contexts.size() + 1) {
      throw ParseError("expected " + std::to_string(contexts.size() + 1) + " cells, found " +
                           std::to_string(cells.size()),
                       line_no);
    }
    auto label = std::string(detail::trim(cells[0]));
    if (label.empty()) throw ParseError("empty exemplar label", line_no, 1);
    if (!seen.insert(label).second) {
      throw ParseError("duplicate exemplar label \"" + label + "\"", line_no, 1);
    }
    std::vector<double> row;
    for (std::size_t j = 1; j < cells.size(); ++j) {
      auto value = detail::parse_double(detail::trim(cells[j]));
      if (!value) {
        throw ParseError("cannot parse rating \"" + std::string(detail::trim(cells[j])) + "\"",
                         line_no, j + 1);
      }
      if (!std::isfinite(*value) || *value < 0.0) {
        throw ParseError("negative rating " + std::string(detail::trim(cells[j])) +
                             " for exemplar \"" + label + "\", context \"" + contexts[j - 1] + "\"",
                         line_no, j + 1);
      }
      row.push_back(*value);
    }
    exemplars.push_back(std::move(label));
    ratings.push_back(std::move(row));
  }
  if (!have_header) throw ParseError("empty rating table");
  if (exemplars.empty()) throw ParseError("rating table has no exemplar rows");
  return RatingTable(std::move(exemplars), std::move(contexts), std::move(ratings));
}

RatingTable RatingTable::load(const std::string& path) {
  try {
    return parse(detail::read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

double RatingTable::rating(const std::string& exemplar, const std::string& context) const {
  return ratings_[exemplar_index(exemplar)][context_index(context)];
}

std::size_t RatingTable::context_index(std::string_view context) const {
  for (std::size_t j = 0; j < contexts_.size(); ++j) {
    if (contexts_[j] == context) return j;
  }
  const std::string needle = lower(context);
  std::vector<std::size_t> hits;
  if (!needle.empty()) {
    for (std::size_t j = 0; j < contexts_.size(); ++j) {
      if (lower(contexts_[j]).find(needle) != std::string::npos) hits.push_back(j);
    }
  }
  if (hits.size() == 1) return hits.front();
  const std::string reason = hits.empty() ? "unknown context" : "ambiguous context";
  throw Error(reason + " \"" + std::string(context) + "\"; available contexts: " +
              join_quoted(contexts_));
}

std::size_t RatingTable::exemplar_index(std::string_view exemplar) const {
  for (std::size_t i = 0; i < exemplars_.size(); ++i) {
    if (exemplars_[i] == exemplar) return i;
  }
  throw Error("unknown exemplar \"" + std::string(exemplar) + "\"");
}

ContextDistribution context_distribution(const RatingTable& t, std::string_view context) {
  const std::size_t j = t.context_index(context);
  ContextDistribution d;
  d.context = t.contexts()[j];
  d.exemplars = t.exemplars();
  d.probabilities.resize(t.exemplar_count());
  double total = 0.0;
  for (std::size_t i = 0; i < t.exemplar_count(); ++i) total += t.rating(i, j);
  for (std::size_t i = 0; i < t.exemplar_count(); ++i) d.probabilities[i] = t.rating(i, j) / total;
  return d;
}

StateVector distribution_state(const ContextDistribution& d) {
  std::vector<Complex> amplitudes;
  amplitudes.reserve(d.probabilities.size());
  for (double p : d.probabilities) amplitudes.emplace_back(std::sqrt(p), 0.0);
  return StateVector::normalize(Basis(d.exemplars), std::move(amplitudes));
}

StateVector context_state(const RatingTable& t, std::string_view context) {
  return distribution_state(context_distribution(t, context));
}

double typicality(const RatingTable& t, std::string_view context, const std::string& exemplar) {
  const std::size_t j = t.context_index(context);
  const std::size_t i = t.exemplar_index(exemplar);
  double total = 0.0;
  for (std::size_t k = 0; k < t.exemplar_count(); ++k) total += t.rating(k, j);
  return t.rating(i, j) / total;
}

std::vector<std::string> rank_exemplars(const RatingTable& t, std::string_view context) {
  const ContextDistribution d = context_distribution(t, context);
  std::vector<std::size_t> order(d.exemplars.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (d.probabilities[a] != d.probabilities[b]) return d.probabilities[a] > d.probabilities[b];
    return d.exemplars[a] < d.exemplars[b];
  });
  std::vector<std::string> out;
  out.reserve(order.size());
  for (std::size_t i : order) out.push_back(d.exemplars[i]);
  return out;
}

}  // namespace ctxprob
