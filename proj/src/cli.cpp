#include "ctxprob/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "ctxprob/bell.hpp"
#include "ctxprob/concept.hpp"
#include "ctxprob/entangler.hpp"
#include "ctxprob/error.hpp"
#include "ctxprob/kolmogorov.hpp"
#include "ctxprob/scenario_io.hpp"
#include "ctxprob/semantic_space.hpp"
#include "text_util.hpp"

#ifndef CTXPROB_VERSION
#define CTXPROB_VERSION "dev"
#endif

namespace ctxprob::cli {

namespace {

using nlohmann::ordered_json;

enum class Format { Record, Tsv };

struct Common {
  std::string format = "record";
  double tolerance = kDefaultTolerance;
  bool timing = false;

  Format fmt() const { return format == "tsv" ? Format::Tsv : Format::Record; }
};

// FNV-1a over the command echo and the bytes of every input file.
class Digest {
 public:
  void add(std::string_view bytes) {
    for (unsigned char c : bytes) {
      hash_ ^= c;
      hash_ *= 0x100000001b3ULL;
    }
    // Field separator so ("ab","c") and ("a","bc") differ.
    hash_ ^= 0xff;
    hash_ *= 0x100000001b3ULL;
  }
  std::string hex() const {
    std::ostringstream s;
    s << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << hash_;
    return s.str();
  }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

std::string num(double v) { return ordered_json(v).dump(); }

ordered_json matrix_json(const Matrix2& m) {
  return ordered_json::array({ordered_json::array({m[0][0], m[0][1]}),
                              ordered_json::array({m[1][0], m[1][1]})});
}

ordered_json table_json(const CorrelationTable& t) {
  ordered_json j;
  j["rows"] = {t.row_contexts[0], t.row_contexts[1]};
  j["cols"] = {t.col_contexts[0], t.col_contexts[1]};
  j["joint"] = matrix_json(t.joint);
  if (t.singles) {
    j["singles"] = {{"rows", {t.singles->rows[0], t.singles->rows[1]}},
                    {"cols", {t.singles->cols[0], t.singles->cols[1]}}};
  } else {
    j["singles"] = nullptr;
  }
  return j;
}

ordered_json realizability_json(const RealizabilityResult& r) {
  ordered_json j;
  j["feasible"] = r.feasible;
  if (r.feasible) {
    ordered_json weights = ordered_json::array();
    const auto& strategies = enumerate_strategies();
    for (std::size_t k = 0; k < strategies.size(); ++k) {
      if (r.weights[k] <= 0.0) continue;
      weights.push_back({{"strategy", strategies[k].to_string()}, {"weight", r.weights[k]}});
    }
    j["weights"] = weights;
    j["witness"] = nullptr;
  } else {
    j["weights"] = nullptr;
    const Witness& w = *r.witness;
    j["witness"] = {{"form", w.description},
                    {"value", w.value},
                    {"bound", w.bound},
                    {"bell_form", w.is_bell_form}};
  }
  return j;
}

struct Emitter {
  std::ostream& out;
  const Common& common;
  std::string command;
  Digest digest;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  std::string read_input(const std::string& path) {
    std::string bytes = detail::read_file(path);
    digest.add(bytes);
    return bytes;
  }

  void record(ordered_json results) {
    ordered_json report;
    report["schema"] = kReportSchema;
    report["version"] = CTXPROB_VERSION;
    report["command"] = command;
    report["inputs_digest"] = digest.hex();
    report["results"] = std::move(results);
    if (common.timing) report["timing"] = {{"elapsed_ms", elapsed_ms()}};
    out << report.dump(2) << '\n';
  }

  // Tab-separated plot data with a commented header.
  void tsv(const std::vector<std::string>& columns, const std::vector<std::vector<std::string>>& rows) {
    out << "# " << kReportSchema << " ctxprob " << CTXPROB_VERSION << " | " << command << " | "
        << digest.hex() << '\n';
    if (common.timing) out << "# elapsed_ms " << num(elapsed_ms()) << '\n';
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "\t" : "") << columns[i];
    out << '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "\t" : "") << row[i];
      out << '\n';
    }
  }

  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

std::vector<double> parse_range(const std::string& spec) {
  auto parts = detail::split(spec, ':');
  if (parts.size() != 3) throw Error("malformed range \"" + spec + "\"; expected start:stop:step");
  std::array<double, 3> v{};
  for (std::size_t i = 0; i < 3; ++i) {
    auto value = detail::parse_double(detail::trim(parts[i]));
    if (!value || !std::isfinite(*value)) throw Error("malformed range \"" + spec + "\"");
    v[i] = *value;
  }
  const auto [start, stop, step] = v;
  if (start < 0.0 || start > 1.0 || stop < 0.0 || stop > 1.0) {
    throw Error("range \"" + spec + "\" exceeds [0, 1]");
  }
  if (stop < start) throw Error("range \"" + spec + "\" has stop < start");
  if (!(step > 0.0)) throw Error("range \"" + spec + "\" needs a positive step");
  const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) grid[i] = std::min(stop, start + static_cast<double>(i) * step);
  return grid;
}

int cmd_ratings(Emitter& em, const std::string& table_path, const std::string& context) {
  const RatingTable table = [&] {
    try {
      return RatingTable::parse(em.read_input(table_path));
    } catch (const ParseError& e) {
      throw ParseError(table_path + ": " + e.what());
    }
  }();
  const ContextDistribution d = context_distribution(table, context);
  const auto ranking = rank_exemplars(table, context);

  if (em.common.fmt() == Format::Tsv) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t r = 0; r < ranking.size(); ++r) {
      const std::size_t i = table.exemplar_index(ranking[r]);
      rows.push_back({std::to_string(r + 1), ranking[r], num(table.rating(i, table.context_index(d.context))),
                      num(d.probabilities[i])});
    }
    em.tsv({"rank", "exemplar", "rating", "typicality"}, rows);
    return 0;
  }
  ordered_json dist = ordered_json::object();
  for (std::size_t i = 0; i < d.exemplars.size(); ++i) dist[d.exemplars[i]] = d.probabilities[i];
  em.record({{"context", d.context}, {"distribution", dist}, {"ranking", ranking}});
  return 0;
}

CorrelationTable scenario_table(Emitter& em, const std::string& path, std::optional<double> lambda,
                                ordered_json& source) {
  if (lambda && !path.empty()) throw Error("give either --scenario or --lambda, not both");
  if (lambda) {
    source = {{"case_c_probability", *lambda}};
    return pet_food_table({*lambda});
  }
  if (path.empty()) throw Error("one of --scenario or --lambda is required");
  Scenario s = [&] {
    try {
      return parse_scenario(em.read_input(path));
    } catch (const ParseError& e) {
      throw ParseError(path + ": " + e.what());
    }
  }();
  source = {{"scenario", path}};
  if (s.case_c_probability) source["case_c_probability"] = *s.case_c_probability;
  return s.table;
}

int cmd_bell(Emitter& em, const std::string& path, std::optional<double> lambda, double product_tol) {
  ordered_json source;
  const CorrelationTable t = scenario_table(em, path, lambda, source);
  const double value = bell_value(t);
  const BellForm best = best_bell_form(t);
  const bool violated = is_violated(value, em.common.tolerance);
  const Band band = classify(t, em.common.tolerance);

  ordered_json product = nullptr;
  if (t.singles) {
    const auto r = product_equality_check(*t.singles, t.joint, product_tol);
    ordered_json flags = ordered_json::object();
    for (std::size_t a = 0; a < 2; ++a) {
      for (std::size_t b = 0; b < 2; ++b) {
        flags[t.row_contexts[a] + "," + t.col_contexts[b]] = r.holds[a][b];
      }
    }
    product = {{"tolerance", product_tol}, {"holds", flags}, {"all_hold", r.all_hold}};
  }

  if (em.common.fmt() == Format::Tsv) {
    em.tsv({"bell_value", "all_forms_value", "violated", "band"},
           {{num(value), num(best.value), violated ? "true" : "false", std::string(band_name(band))}});
    return 0;
  }
  em.record({{"source", source},
             {"table", table_json(t)},
             {"bell_value", value},
             {"all_forms_value", best.value},
             {"best_form", best.to_string(t)},
             {"violated", violated},
             {"product_equalities", product},
             {"classification", band_name(band)},
             {"kolmogorovian", is_kolmogorovian(t, em.common.tolerance)}});
  return 0;
}

int cmd_sweep(Emitter& em, const std::string& range) {
  const auto grid = parse_range(range);
  const auto rows = sweep_case_c(grid);
  if (em.common.fmt() == Format::Tsv) {
    std::vector<std::vector<std::string>> cells;
    for (const auto& r : rows) {
      cells.push_back({num(r.lambda), num(r.bell_value), r.violated ? "1" : "0"});
    }
    em.tsv({"lambda", "bell_value", "violated"}, cells);
    return 0;
  }
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    arr.push_back({{"lambda", r.lambda}, {"bell_value", r.bell_value}, {"violated", r.violated}});
  }
  em.record({{"range", range}, {"rows", arr}});
  return 0;
}

struct GuppyArgs {
  std::string pet_table, pet_context, fish_table, fish_context, relation, exemplar;
};

ContextDistribution load_distribution(Emitter& em, const std::string& path, const std::string& context) {
  const RatingTable t = [&] {
    try {
      return RatingTable::parse(em.read_input(path));
    } catch (const ParseError& e) {
      throw ParseError(path + ": " + e.what());
    }
  }();
  return context_distribution(t, context.empty() ? t.contexts().front() : context);
}

int cmd_guppy(Emitter& em, const GuppyArgs& g) {
  const ContextDistribution pa = load_distribution(em, g.pet_table, g.pet_context);
  const ContextDistribution pb = load_distribution(em, g.fish_table, g.fish_context);
  const CompatibilityRelation relation = [&] {
    try {
      return CompatibilityRelation::parse(em.read_input(g.relation));
    } catch (const ParseError& e) {
      throw ParseError(g.relation + ": " + e.what());
    }
  }();
  const EntangledState s = combine(pa, pb, relation);
  const double gap = guppy_gap(s, pa, pb, g.exemplar);
  const double combined_a = marginal(s, Side::A).probability(g.exemplar);
  const double combined_b = marginal(s, Side::B).probability(g.exemplar);

  if (em.common.fmt() == Format::Tsv) {
    em.tsv({"exemplar", "first_concept", "second_concept", "combined", "gap"},
           {{g.exemplar, num(pa.probability(g.exemplar)), num(pb.probability(g.exemplar)),
             num(combined_a), num(gap)}});
    return 0;
  }
  em.record({{"exemplar", g.exemplar},
             {"first_concept", {{"context", pa.context}, {"typicality", pa.probability(g.exemplar)}}},
             {"second_concept", {{"context", pb.context}, {"typicality", pb.probability(g.exemplar)}}},
             {"combined_marginal", {{"first", combined_a}, {"second", combined_b}}},
             {"guppy_gap", gap},
             {"guppy_effect", gap > em.common.tolerance}});
  return 0;
}

struct SemArgs {
  std::string corpus;
  std::size_t k = 0;
  std::vector<std::string> pairs;
  std::vector<std::string> compare;
  std::string mode = "both";
  bool no_lowercase = false;
};

int cmd_semspace(Emitter& em, const SemArgs& a) {
  const bool lowercase = !a.no_lowercase;
  const auto corpus = parse_corpus(em.read_input(a.corpus), lowercase);
  const TermDocMatrix m = build_matrix(corpus);
  const SemanticSpace space = svd_truncate(m, a.k);

  ordered_json sims = ordered_json::array();
  std::vector<std::vector<std::string>> sim_rows;
  for (const auto& pair : a.pairs) {
    auto parts = detail::split(pair, ',');
    if (parts.size() != 2) throw Error("malformed --pair \"" + pair + "\"; expected word1,word2");
    auto norm = [&](std::string_view w) {
      auto toks = tokenize(w, lowercase);
      if (toks.size() != 1) throw Error("malformed --pair \"" + pair + "\"");
      return toks.front();
    };
    const std::string t1 = norm(parts[0]), t2 = norm(parts[1]);
    const Similarity s = similarity(space, t1, t2);
    sims.push_back({{"term1", t1}, {"term2", t2}, {"similarity", s.value}, {"degenerate", s.degenerate}});
    sim_rows.push_back({t1, t2, num(s.value), s.degenerate ? "1" : "0"});
  }

  ordered_json comparison = nullptr;
  if (!a.compare.empty()) {
    if (a.compare.size() != 2) throw Error("--compare takes exactly two sentences");
    const auto s1 = tokenize(a.compare[0], lowercase);
    const auto s2 = tokenize(a.compare[1], lowercase);
    comparison = {{"sentences", a.compare}};
    if (a.mode == "bow" || a.mode == "both") {
      const bool same = bow_vector(s1, m.terms()) == bow_vector(s2, m.terms());
      comparison["bow"] = {{"equal", same}, {"verdict", same ? "indistinguishable" : "distinguishable"}};
    }
    if (a.mode == "order" || a.mode == "both") {
      const auto r1 = order_representation(s1, m.terms());
      const auto r2 = order_representation(s2, m.terms());
      const bool same = r1 == r2;
      comparison["order"] = {{"equal", same},
                             {"dimension", r1.dimension},
                             {"verdict", same ? "indistinguishable" : "distinguishable"}};
    }
  }

  if (em.common.fmt() == Format::Tsv) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t r = 0; r < space.rank(); ++r) {
      rows.push_back({"singular_value", std::to_string(r + 1), num(space.singular_values()[r]), ""});
    }
    for (auto& row : sim_rows) rows.push_back({"similarity", row[0] + "," + row[1], row[2], row[3]});
    if (!comparison.is_null()) {
      for (const char* key : {"bow", "order"}) {
        if (comparison.contains(key)) {
          rows.push_back({"compare", key, comparison[key]["verdict"].get<std::string>(), ""});
        }
      }
    }
    em.tsv({"kind", "key", "value", "flag"}, rows);
    return 0;
  }
  em.record({{"documents", m.doc_count()},
             {"terms", m.term_count()},
             {"k", a.k},
             {"singular_values", space.singular_values()},
             {"reconstruction_error", reconstruction_error(m, space)},
             {"similarities", sims},
             {"comparison", comparison}});
  return 0;
}

int cmd_kolmo(Emitter& em, const std::string& path, std::optional<double> lambda) {
  ordered_json source;
  const CorrelationTable t = scenario_table(em, path, lambda, source);
  const RealizabilityResult r = realizable(t);
  const Band band = classify(t, em.common.tolerance);
  if (em.common.fmt() == Format::Tsv) {
    em.tsv({"feasible", "all_forms_value", "band", "witness_value"},
           {{r.feasible ? "true" : "false", num(bell_value_all_forms(t)), std::string(band_name(band)),
             r.feasible ? "" : num(r.witness->value)}});
    return 0;
  }
  em.record({{"source", source},
             {"table", table_json(t)},
             {"realizability", realizability_json(r)},
             {"all_forms_value", bell_value_all_forms(t)},
             {"classification", band_name(band)}});
  return 0;
}

void add_common(CLI::App* sub, Common& common) {
  sub->add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"record", "tsv"}))
      ->capture_default_str();
  sub->add_option("--tolerance", common.tolerance, "Numeric slack for violation and band checks")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_flag("--timing", common.timing, "Include elapsed time in the report");
}

std::string echo(const std::vector<std::string>& args) {
  std::string out;
  for (const auto& a : args) {
    if (!out.empty()) out += ' ';
    const bool quote = a.empty() || a.find_first_of(" \t\"'") != std::string::npos;
    out += quote ? "\"" + a + "\"" : a;
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Contextual probability toolkit: concept states, Bell tests, realizability"};
  app.name("ctxprob");
  app.require_subcommand(1);
  app.set_version_flag("--version", CTXPROB_VERSION);

  Common common;

  std::string table_path, context;
  auto* ratings = app.add_subcommand("ratings", "Typicality distribution and ranking under a context");
  ratings->add_option("table", table_path, "Rating table (tab-separated)")->required();
  ratings->add_option("-c,--context", context, "Context label or unique substring")->required();
  add_common(ratings, common);

  std::string scenario_path;
  std::optional<double> lambda;
  double product_tol = 1e-9;
  auto* bell = app.add_subcommand("bell", "Bell functional, product equalities and classification");
  bell->add_option("-s,--scenario", scenario_path, "Scenario file (JSON)");
  bell->add_option("-l,--lambda", lambda, "Pet/food case-C probability in [0, 1]");
  bell->add_option("--product-tol", product_tol, "Tolerance for the product equalities")
      ->capture_default_str();
  add_common(bell, common);

  std::string range;
  auto* sweep = app.add_subcommand("sweep", "Bell value over a grid of case-C probabilities");
  sweep->add_option("-r,--range", range, "start:stop:step within [0, 1]")->required();
  add_common(sweep, common);

  GuppyArgs guppy_args;
  auto* guppy = app.add_subcommand("guppy", "Typicality of an exemplar in a concept combination");
  guppy->add_option("--first", guppy_args.pet_table, "Rating table of the first concept")->required();
  guppy->add_option("--first-context", guppy_args.pet_context, "Context column (default: first)");
  guppy->add_option("--second", guppy_args.fish_table, "Rating table of the second concept")->required();
  guppy->add_option("--second-context", guppy_args.fish_context, "Context column (default: first)");
  guppy->add_option("--relation", guppy_args.relation, "Compatibility relation file")->required();
  guppy->add_option("-x,--exemplar", guppy_args.exemplar, "Exemplar to inspect")->required();
  add_common(guppy, common);

  SemArgs sem_args;
  auto* sem = app.add_subcommand("semspace", "Latent semantic space and word-order demonstration");
  sem->add_option("corpus", sem_args.corpus, "Corpus, one document per line")->required();
  sem->add_option("-k,--rank", sem_args.k, "Truncation rank")->required();
  sem->add_option("--pair", sem_args.pairs, "Word pair word1,word2 (repeatable)");
  sem->add_option("--compare", sem_args.compare, "Two sentences to compare")->expected(2);
  sem->add_option("--mode", sem_args.mode, "Comparison representation")
      ->check(CLI::IsMember({"bow", "order", "both"}))
      ->capture_default_str();
  sem->add_flag("--no-lowercase", sem_args.no_lowercase, "Keep token case");
  add_common(sem, common);

  auto* kolmo = app.add_subcommand("kolmo", "Classical realizability of a correlation table");
  kolmo->add_option("-s,--scenario", scenario_path, "Scenario file (JSON)");
  kolmo->add_option("-l,--lambda", lambda, "Pet/food case-C probability in [0, 1]");
  add_common(kolmo, common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  Emitter em{out, common, echo(args), {}};
  em.digest.add(em.command);
  try {
    if (*ratings) return cmd_ratings(em, table_path, context);
    if (*bell) return cmd_bell(em, scenario_path, lambda, product_tol);
    if (*sweep) return cmd_sweep(em, range);
    if (*guppy) return cmd_guppy(em, guppy_args);
    if (*sem) return cmd_semspace(em, sem_args);
    if (*kolmo) return cmd_kolmo(em, scenario_path, lambda);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace ctxprob::cli
