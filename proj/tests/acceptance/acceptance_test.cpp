// Acceptance suite: one PASS/FAIL line per criterion. Usage:
//   acceptance_test <work-dir>
// The work directory receives the synthetic corpus and CLI outputs.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "semfield/classifiers.hpp"
#include "semfield/eval.hpp"
#include "semfield/features.hpp"
#include "semfield/lexicon.hpp"
#include "semfield/textproc.hpp"

namespace fs = std::filesystem;
using namespace semfield;
using Vec = std::vector<double>;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const Outcome& o) {
  std::cout << (o.pass ? "PASS" : "FAIL") << " [" << id << "] " << name << ": " << o.detail << std::endl;
  if (!o.pass) ++failures;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v, int precision = 4) {
  std::ostringstream ss;
  ss.precision(precision);
  ss << v;
  return ss.str();
}

FieldDocumentMatrix labeled(const std::vector<oracle::LabeledPoint>& pts) {
  std::vector<std::string> fields;
  for (std::size_t k = 0; k < pts.front().x.size(); ++k) fields.push_back("f" + std::to_string(k));
  FieldDocumentMatrix m(fields);
  for (std::size_t j = 0; j < pts.size(); ++j) m.append({{pts[j].label, "d" + std::to_string(j), ""}, pts[j].x});
  return m;
}

// Random labelled point sets: up to 5 categories, 10 dimensions and 20
// points per category. Half of the sets have category-specific centres
// resembling field frequencies, the rest are uniform on [0, 1].
struct PointSet {
  std::vector<oracle::LabeledPoint> points;
  std::size_t dims = 0;
  std::vector<Vec> centres;
};

PointSet random_points(std::mt19937_64& rng, bool quantized = false) {
  std::uniform_int_distribution<int> n_cat(1, 5), n_dims(1, 10), per_cat(1, 20), grid(0, 8);
  std::uniform_real_distribution<double> unit(0.0, 1.0), centre(0.0, 0.3);
  PointSet s;
  s.dims = static_cast<std::size_t>(n_dims(rng));
  const bool clustered = unit(rng) < 0.5;
  const int cats = n_cat(rng);
  for (int c = 0; c < cats; ++c) {
    Vec mu(s.dims);
    for (auto& m : mu) m = centre(rng);
    s.centres.push_back(mu);
    std::normal_distribution<double> noise(0.0, 0.03);
    const int n = per_cat(rng);
    for (int i = 0; i < n; ++i) {
      Vec x(s.dims);
      for (std::size_t k = 0; k < s.dims; ++k) {
        if (quantized) x[k] = grid(rng) * 0.125;
        else x[k] = clustered ? std::max(0.0, mu[k] + noise(rng)) : unit(rng);
      }
      s.points.push_back({x, "author" + std::to_string(c)});
    }
  }
  std::shuffle(s.points.begin(), s.points.end(), rng);
  return s;
}

Vec random_query(std::mt19937_64& rng, const PointSet& s, bool quantized = false) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> grid(0, 8);
  std::uniform_int_distribution<std::size_t> pick(0, s.centres.size() - 1);
  std::normal_distribution<double> noise(0.0, 0.05);
  Vec q(s.dims);
  const bool near_centre = unit(rng) < 0.5;
  const Vec& mu = s.centres[pick(rng)];
  for (std::size_t k = 0; k < s.dims; ++k) {
    if (quantized) q[k] = grid(rng) * 0.125;
    else q[k] = near_centre ? std::max(0.0, mu[k] + noise(rng)) : unit(rng);
  }
  return q;
}

// ---------------------------------------------------------------------------
// 1. Featurizer against exact rational field frequencies
// ---------------------------------------------------------------------------

Outcome featurizer_oracle() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(101);
  const std::vector<std::string> syllables = {"ka", "lo", "mi", "ne", "su", "ta", "ri", "vo"};
  double worst = 0.0;
  int cases = 0, degenerate = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<int> n_fields(1, 10), n_lexemes(1, 30), fields_per(1, 3), n_tokens(0, 50);
    std::uniform_int_distribution<std::size_t> syl(0, syllables.size() - 1);
    const auto word = [&] { return syllables[syl(rng)] + syllables[syl(rng)] + syllables[syl(rng)]; };

    std::vector<std::string> fields;
    const int nf = n_fields(rng);
    for (int k = 0; k < nf; ++k) fields.push_back("field" + std::to_string(k));
    std::set<std::string> lexeme_set;
    const int nl = n_lexemes(rng);
    while (static_cast<int>(lexeme_set.size()) < nl) lexeme_set.insert(word());
    const std::vector<std::string> lexemes(lexeme_set.begin(), lexeme_set.end());

    std::vector<std::pair<std::string, std::string>> records;
    std::string table;
    std::uniform_int_distribution<std::size_t> field_pick(0, fields.size() - 1);
    for (const auto& w : lexemes) {
      const int m = std::min(fields_per(rng), nf);
      std::set<std::size_t> chosen;
      while (static_cast<int>(chosen.size()) < m) chosen.insert(field_pick(rng));
      for (auto k : chosen) {
        records.emplace_back(fields[k], w);
        table += fields[k] + "\t" + w + "\n";
      }
    }
    std::istringstream in(table);
    const Lexicon lexicon = parse_lexicon(in, fields);

    // Documents mix lexicon words, unknown words, punctuation and case.
    std::vector<std::string> tokens;
    std::string text;
    std::uniform_int_distribution<std::size_t> lex_pick(0, lexemes.size() - 1);
    std::bernoulli_distribution known(0.6), upper(0.2);
    const int nt = n_tokens(rng);
    for (int i = 0; i < nt; ++i) {
      std::string w = known(rng) ? lexemes[lex_pick(rng)] : word() + "x";
      tokens.push_back(w);
      if (upper(rng)) std::transform(w.begin(), w.end(), w.begin(), [](char c) { return static_cast<char>(c - 32); });
      text += w + (i % 7 == 6 ? ". " : " ");
    }

    const FieldVector v = field_frequency_vector(frequency_table(tokenize(text)), lexicon);
    const auto exact = oracle::field_frequencies(records, fields, tokens);
    if (v.degenerate) ++degenerate;
    if (v.degenerate != tokens.empty() || v.values.size() != exact.size()) return {false, "shape mismatch"};
    for (std::size_t k = 0; k < exact.size(); ++k) {
      const oracle::Rational diff = exact[k] - oracle::Rational(v.values[k]);
      worst = std::max(worst, std::fabs(static_cast<double>(diff)));
    }
    ++cases;
  }
  const double t = seconds_since(t0);
  const bool ok = worst <= 1e-12 && t < 5.0;
  return {ok, std::to_string(cases) + " cases (" + std::to_string(degenerate) + " empty), max |error| " +
                  fmt(worst) + " (tol 1e-12), " + fmt(t, 3) + " s (limit 5 s)"};
}

// ---------------------------------------------------------------------------
// 2. NB against linear-space extended-precision density products
// ---------------------------------------------------------------------------

Outcome nb_oracle() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(202);
  const double floors[] = {1e-9, 1e-6, 1e-4, 1e-2};
  int compared = 0, tied = 0, disagree = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = random_points(rng);
    const double floor = floors[trial % 4];
    const bool uniform = trial % 3 == 0;
    const NbModel model = fit_nb(labeled(s.points), {floor, uniform ? PriorMode::uniform : PriorMode::empirical});
    const oracle::NaiveBayes brute(s.points, floor, uniform);
    for (int q = 0; q < 100; ++q) {
      const Vec query = random_query(rng, s);
      const auto [label, is_tied] = brute.classify(query);
      if (is_tied) {
        ++tied;
        continue;
      }
      ++compared;
      if (model.classify(query) != label) ++disagree;
    }
  }
  const double t = seconds_since(t0);
  return {disagree == 0 && t < 10.0,
          std::to_string(compared) + " non-tied queries over 100 models, " + std::to_string(disagree) +
              " disagreements, " + std::to_string(tied) + " near-ties skipped, " + fmt(t, 3) + " s (limit 10 s)"};
}

// ---------------------------------------------------------------------------
// 3. kNN against a full-sort vote
// ---------------------------------------------------------------------------

Outcome knn_oracle() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(303);
  int compared = 0, disagree = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const bool quantized = trial % 2 == 0;  // exact distance ties exercise the tie rules
    const auto s = random_points(rng, quantized);
    std::uniform_int_distribution<std::size_t> pick_k(1, std::min<std::size_t>(s.points.size(), 9));
    const std::size_t k = pick_k(rng);
    const KnnModel model = fit_knn(labeled(s.points), k);
    for (int q = 0; q < 20; ++q) {
      const Vec query = random_query(rng, s, quantized);
      ++compared;
      if (model.classify(query) != oracle::knn(s.points, k, query)) ++disagree;
    }
  }
  const double t = seconds_since(t0);
  return {disagree == 0 && t < 5.0, std::to_string(compared) + " queries over 100 models, " +
                                        std::to_string(disagree) + " disagreements, " + fmt(t, 3) + " s (limit 5 s)"};
}

// ---------------------------------------------------------------------------
// 4. Metrics
// ---------------------------------------------------------------------------

Outcome metrics() {
  std::vector<std::string> problems;
  {
    const std::map<std::string, std::string> truths = {{"d1", "A"}, {"d2", "A"}, {"d3", "B"}};
    const std::vector<Prediction> perfect = {{"d1", "A"}, {"d2", "A"}, {"d3", "B"}};
    for (const auto& m : precision_recall(confusion(perfect, truths)))
      if (m.precision != 1.0 || m.recall != 1.0) problems.push_back("perfect fixture");

    const std::vector<Prediction> preds = {{"d1", "A"}, {"d2", "B"}, {"d3", "B"}};
    const auto counts = confusion(preds, truths);
    const auto& a = counts.rows.at(0);
    const auto& b = counts.rows.at(1);
    if (a.tp != 1 || a.predicted != 1 || a.actual != 2 || b.tp != 1 || b.predicted != 2 || b.actual != 1)
      problems.push_back("confusion counts");
    const auto m = precision_recall(counts);
    if (m[0].precision != 1.0 || m[0].recall != 0.5 || m[1].precision != 0.5 || m[1].recall != 1.0)
      problems.push_back("precision/recall values");
    const auto macro = macro_average(m);
    if (macro.precision != 0.75 || macro.recall != 0.75) problems.push_back("macro average");

    const std::vector<Prediction> never = {{"d1", "A"}, {"d2", "A"}, {"d3", "A"}};
    const auto n = precision_recall(confusion(never, truths));
    if (n[1].precision != 0.0 || !n[1].precision_undefined) problems.push_back("never-predicted category");

    const std::vector<std::pair<double, double>> ones = {{1, 1}, {1, 1}, {1, 1}}, single = {{0.3, 0.7}};
    if (macro_average(std::span(ones)).precision != 1.0 || macro_average(std::span(single)).recall != 0.7)
      problems.push_back("macro fixtures");
  }

  std::mt19937_64 rng(404);
  int sets = 0;
  for (int trial = 0; trial < 500; ++trial, ++sets) {
    std::uniform_int_distribution<int> n_docs(1, 80), n_cat(1, 8);
    const int cats = n_cat(rng);
    std::uniform_int_distribution<int> cat(0, cats - 1);
    std::map<std::string, std::string> truths;
    std::vector<Prediction> preds;
    const int n = n_docs(rng);
    for (int d = 0; d < n; ++d) {
      const std::string key = "doc" + std::to_string(d);
      truths[key] = "c" + std::to_string(cat(rng));
      preds.push_back({key, "c" + std::to_string(cat(rng))});
    }
    const auto counts = confusion(preds, truths);
    std::size_t tp = 0, predicted = 0, actual = 0;
    for (const auto& r : counts.rows) tp += r.tp, predicted += r.predicted, actual += r.actual;
    if (!(tp <= predicted && predicted == actual)) problems.push_back("count identity, set " + std::to_string(trial));
    const auto m = precision_recall(counts);
    const auto macro = macro_average(m);
    bool in_range = macro.precision >= 0 && macro.precision <= 1 && macro.recall >= 0 && macro.recall <= 1;
    for (const auto& c : m) in_range = in_range && c.precision >= 0 && c.precision <= 1 && c.recall >= 0 && c.recall <= 1;
    if (!in_range) problems.push_back("range, set " + std::to_string(trial));
  }
  if (problems.empty()) return {true, "eval fixtures exact; " + std::to_string(sets) + " random prediction sets satisfy the count identity and [0,1] ranges"};
  return {false, std::to_string(problems.size()) + " problems, first: " + problems.front()};
}

// ---------------------------------------------------------------------------
// 5. Invariances
// ---------------------------------------------------------------------------

// Top-two log-posterior gap, used to set aside queries whose decision is
// within rounding of a tie.
double nb_margin(const NbModel& m, const Vec& q) {
  auto lp = m.log_posterior(q);
  std::sort(lp.begin(), lp.end(), std::greater<>());
  if (lp.size() < 2) return INFINITY;
  return (lp[0] - lp[1]) / std::max(1.0, std::fabs(lp[0]));
}

Outcome invariances() {
  std::mt19937_64 rng(505);
  std::vector<std::string> failed;
  int nb_checked = 0, nb_near_tie = 0, nb_dyadic = 0;

  // NB, per-feature translation of training data and query.
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = random_points(rng);
    std::uniform_real_distribution<double> shift(-5.0, 5.0);
    Vec c(s.dims);
    for (auto& v : c) v = shift(rng);
    auto moved = s.points;
    for (auto& p : moved)
      for (std::size_t k = 0; k < s.dims; ++k) p.x[k] += c[k];
    const NbModel a = fit_nb(labeled(s.points), {1e-4}), b = fit_nb(labeled(moved), {1e-4});
    Vec q = random_query(rng, s), q2 = q;
    for (std::size_t k = 0; k < s.dims; ++k) q2[k] += c[k];
    if (nb_margin(a, q) < 1e-9) {
      ++nb_near_tie;
      continue;
    }
    ++nb_checked;
    if (a.classify(q) != b.classify(q2)) failed.push_back("NB translation, instance " + std::to_string(trial));
  }
  // Dyadic data with power-of-two category sizes: the translation is exact
  // in floating point, so every prediction must agree, ties included.
  for (int trial = 0; trial < 100; ++trial) {
    std::uniform_int_distribution<int> n_cat(1, 5), n_dims(1, 10), size_pow(0, 4), grid(0, 256), step(-512, 512);
    const auto dims = static_cast<std::size_t>(n_dims(rng));
    std::vector<oracle::LabeledPoint> pts;
    const int cats = n_cat(rng);
    for (int cat = 0; cat < cats; ++cat)
      for (int i = 0; i < (1 << size_pow(rng)); ++i) {
        Vec x(dims);
        for (auto& v : x) v = grid(rng) / 256.0;
        pts.push_back({x, "author" + std::to_string(cat)});
      }
    Vec c(dims), q(dims);
    for (auto& v : c) v = step(rng) / 256.0;
    for (auto& v : q) v = grid(rng) / 256.0;
    auto moved = pts;
    for (auto& p : moved)
      for (std::size_t k = 0; k < dims; ++k) p.x[k] += c[k];
    Vec q2 = q;
    for (std::size_t k = 0; k < dims; ++k) q2[k] += c[k];
    const NbModel a = fit_nb(labeled(pts), {1e-6}), b = fit_nb(labeled(moved), {1e-6});
    ++nb_dyadic;
    if (a.classify(q) != b.classify(q2)) failed.push_back("NB dyadic translation, instance " + std::to_string(trial));
  }

  // kNN, uniform positive scaling: arbitrary factors on continuous data and
  // powers of two on quantized data (exact, so distance ties survive).
  int knn_checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const bool quantized = trial >= 100;
    const auto s = random_points(rng, quantized);
    std::uniform_real_distribution<double> log_scale(std::log(0.01), std::log(100.0));
    std::uniform_int_distribution<int> exponent(-10, 10);
    const double scale = quantized ? std::ldexp(1.0, exponent(rng)) : std::exp(log_scale(rng));
    auto scaled = s.points;
    for (auto& p : scaled)
      for (auto& v : p.x) v *= scale;
    std::uniform_int_distribution<std::size_t> pick_k(1, std::min<std::size_t>(s.points.size(), 7));
    const std::size_t k = pick_k(rng);
    const KnnModel a = fit_knn(labeled(s.points), k), b = fit_knn(labeled(scaled), k);
    Vec q = random_query(rng, s, quantized), q2 = q;
    for (auto& v : q2) v *= scale;
    ++knn_checked;
    if (a.classify(q) != b.classify(q2)) failed.push_back("kNN scaling, instance " + std::to_string(trial));
  }

  // Macro averages under a relabelling of the categories.
  int macro_checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::string> names;
    std::uniform_int_distribution<int> n_cat(2, 8), n_docs(5, 80);
    const int cats = n_cat(rng);
    for (int c = 0; c < cats; ++c) names.push_back("author" + std::to_string(c));
    auto renamed = names;
    std::shuffle(renamed.begin(), renamed.end(), rng);
    std::uniform_int_distribution<int> cat(0, cats - 1);
    std::map<std::string, std::string> t1, t2;
    std::vector<Prediction> p1, p2;
    const int n = n_docs(rng);
    for (int d = 0; d < n; ++d) {
      const std::string key = "doc" + std::to_string(d);
      const int truth = cat(rng), guess = cat(rng);
      t1[key] = names[truth], t2[key] = renamed[truth];
      p1.push_back({key, names[guess]});
      p2.push_back({key, renamed[guess]});
    }
    const auto a = macro_average(precision_recall(confusion(p1, t1)));
    const auto b = macro_average(precision_recall(confusion(p2, t2)));
    ++macro_checked;
    if (a.precision != b.precision || a.recall != b.recall)
      failed.push_back("macro permutation, instance " + std::to_string(trial));
  }

  const std::string counts = "NB translation " + std::to_string(nb_checked) + " continuous (" +
                             std::to_string(nb_near_tie) + " near-ties set aside) + " + std::to_string(nb_dyadic) +
                             " exact-dyadic; kNN scaling " + std::to_string(knn_checked) + "; macro permutation " +
                             std::to_string(macro_checked);
  if (nb_checked < 90) failed.push_back("too few non-tied NB instances");
  if (failed.empty()) return {true, counts + "; all agree exactly"};
  return {false, counts + "; " + std::to_string(failed.size()) + " failures, first: " + failed.front()};
}

// ---------------------------------------------------------------------------
// 6-8. Synthetic corpus through the CLI
// ---------------------------------------------------------------------------

constexpr int kAuthors = 5;
constexpr int kDocsPerAuthor = 40;
constexpr int kFields = 10;
constexpr int kWordsPerField = 6;
constexpr int kDocLength = 600;
constexpr double kBase = 0.04, kElevated = 0.13, kSigma = 0.01;

std::string synthetic_word(const std::string& prefix, int a, int b) {
  return prefix + static_cast<char>('a' + a) + static_cast<char>('a' + b);
}

struct Synthetic {
  double separation_ratio = 0.0;  // min between-author mean gap / max within-author sd, per field
};

// Author i favours fields 2i and 2i+1. Per document, field proportions are
// drawn around the author's means, converted to token counts, padded with
// filler words outside the lexicon and shuffled into a token stream.
Synthetic write_synthetic_corpus(const fs::path& dir) {
  fs::remove_all(dir);
  fs::create_directories(dir / "corpus");
  {
    std::ofstream lex(dir / "lexicon.tsv");
    for (int k = 0; k < kFields; ++k)
      for (int w = 0; w < kWordsPerField; ++w) lex << "field" << k << '\t' << synthetic_word("lex", k, w) << '\n';
  }
  std::mt19937_64 rng(606);
  std::normal_distribution<double> noise(0.0, kSigma);
  std::uniform_int_distribution<int> word_pick(0, kWordsPerField - 1), filler_pick(0, 25);
  std::vector<std::vector<std::vector<double>>> realised(kAuthors, std::vector<std::vector<double>>(kFields));
  for (int a = 0; a < kAuthors; ++a) {
    const std::string author = "author" + std::string(1, static_cast<char>('A' + a));
    fs::create_directories(dir / "corpus" / author);
    for (int d = 0; d < kDocsPerAuthor; ++d) {
      std::vector<std::string> stream;
      for (int k = 0; k < kFields; ++k) {
        const double mean = (k / 2 == a) ? kElevated : kBase;
        const double p = std::max(0.0, mean + noise(rng));
        const int n = static_cast<int>(std::lround(p * kDocLength));
        realised[a][k].push_back(static_cast<double>(n) / kDocLength);
        for (int i = 0; i < n; ++i) stream.push_back(synthetic_word("lex", k, word_pick(rng)));
      }
      while (static_cast<int>(stream.size()) < kDocLength) stream.push_back(synthetic_word("fill", filler_pick(rng), 0));
      std::shuffle(stream.begin(), stream.end(), rng);
      std::ofstream out(dir / "corpus" / author / ("doc" + std::to_string(100 + d) + ".txt"));
      for (std::size_t i = 0; i < stream.size(); ++i) out << stream[i] << ((i + 1) % 12 == 0 ? ".\n" : " ");
    }
  }
  // Mean separation between authors versus within-author spread, using the
  // realised proportions.
  double min_gap = INFINITY, max_sd = 0.0;
  for (int k = 0; k < kFields; ++k) {
    std::vector<double> means;
    for (int a = 0; a < kAuthors; ++a) {
      const auto& xs = realised[a][k];
      double m = 0, v = 0;
      for (double x : xs) m += x;
      m /= static_cast<double>(xs.size());
      for (double x : xs) v += (x - m) * (x - m);
      max_sd = std::max(max_sd, std::sqrt(v / static_cast<double>(xs.size())));
      means.push_back(m);
    }
    // The author that favours field k against every other author.
    for (int a = 0; a < kAuthors; ++a)
      if (a != k / 2) min_gap = std::min(min_gap, means[static_cast<std::size_t>(k / 2)] - means[static_cast<std::size_t>(a)]);
  }
  return {min_gap / max_sd};
}

void write_config(const fs::path& dir, const fs::path& out) {
  const nlohmann::json cfg = {
      {"corpus", (dir / "corpus").string()},
      {"lexicon", (dir / "lexicon.tsv").string()},
      {"out", out.string()},
      {"split", {{"train_fraction", 0.7}, {"seed", 20240611}}},
      {"runs",
       {{{"name", "nb"}, {"classifier", "nb"}},
        {{"name", "knn5"}, {"classifier", "knn"}, {"k", 5}},
        {{"name", "nb-train-eq-test"}, {"classifier", "nb"}, {"train_equals_test", true}},
        {{"name", "knn1-train-eq-test"}, {"classifier", "knn"}, {"k", 1}, {"train_equals_test", true}}}}};
  std::ofstream(dir / "experiment.json") << cfg.dump(2) << '\n';
}

int run_cli(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string("\"") + SEMFIELD_CLI + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  return std::system(cmd.c_str());
}

nlohmann::json read_json(const fs::path& p) {
  std::ifstream in(p);
  return nlohmann::json::parse(in);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct PipelineRun {
  bool ok = false;
  std::string error;
  double seconds = 0.0;
  double separation = 0.0;
  std::map<std::string, MacroAverage> macro;
};

PipelineRun run_pipeline(const fs::path& work, const fs::path& out) {
  PipelineRun r;
  const auto t0 = Clock::now();
  const fs::path data = work / "synthetic";
  r.separation = write_synthetic_corpus(data).separation_ratio;
  fs::remove_all(out);
  write_config(data, out);
  const fs::path log = work / (out.filename().string() + ".log");
  if (run_cli("experiment --config \"" + (data / "experiment.json").string() + "\"", log) != 0) {
    r.error = "CLI failed, see " + log.string();
    return r;
  }
  for (const char* name : {"nb", "knn5", "nb-train-eq-test", "knn1-train-eq-test"}) {
    const auto j = read_json(out / (std::string(name) + ".report.json"));
    r.macro[name] = {j.at("macro").at("precision").get<double>(), j.at("macro").at("recall").get<double>()};
  }
  r.seconds = seconds_since(t0);
  r.ok = true;
  return r;
}

Outcome end_to_end(const PipelineRun& r) {
  if (!r.ok) return {false, r.error};
  const auto& nb = r.macro.at("nb");
  const auto& knn = r.macro.at("knn5");
  const auto& self = r.macro.at("nb-train-eq-test");
  const bool ok = r.separation >= 3.0 && nb.precision >= 0.90 && nb.recall >= 0.90 && knn.precision >= 0.85 &&
                  knn.recall >= 0.85 && self.precision >= nb.precision && r.seconds < 30.0;
  return {ok, "separation " + fmt(r.separation, 3) + "x sd; NB P/R " + fmt(nb.precision) + "/" + fmt(nb.recall) +
                  " (>= 0.90); kNN k=5 P/R " + fmt(knn.precision) + "/" + fmt(knn.recall) +
                  " (>= 0.85); train=test NB P " + fmt(self.precision) + " >= held-out " + fmt(nb.precision) + "; " +
                  fmt(r.seconds, 3) + " s (limit 30 s)"};
}

Outcome determinism(const fs::path& first, const PipelineRun& again, const fs::path& second) {
  if (!again.ok) return {false, again.error};
  std::vector<std::string> compared, differing;
  for (const auto& entry : fs::directory_iterator(first)) {
    const auto name = entry.path().filename().string();
    if (name.rfind("matrix.", 0) != 0 && name.find(".report.") == std::string::npos) continue;
    compared.push_back(name);
    if (!fs::exists(second / name) || slurp(entry.path()) != slurp(second / name)) differing.push_back(name);
  }
  if (compared.size() < 10) return {false, "expected matrix and report files, found " + std::to_string(compared.size())};
  if (!differing.empty()) return {false, differing.front() + " differs between runs"};
  return {true, std::to_string(compared.size()) + " matrix/report files byte-identical across two runs"};
}

Outcome self_neighbor(const PipelineRun& r, const fs::path& out) {
  if (!r.ok) return {false, r.error};
  std::vector<std::string> problems;
  // The synthetic corpus must not contain duplicate vectors.
  const auto matrix = read_json(out / "matrix.json");
  std::set<std::vector<double>> distinct;
  for (const auto& d : matrix.at("documents")) distinct.insert(d.at("values").get<std::vector<double>>());
  if (distinct.size() != matrix.at("documents").size()) problems.push_back("synthetic corpus has duplicate vectors");
  const auto& cli = r.macro.at("knn1-train-eq-test");
  if (cli.precision != 1.0 || cli.recall != 1.0) problems.push_back("CLI run gave " + fmt(cli.precision, 17));

  // Random corpora through the library, duplicates removed.
  std::mt19937_64 rng(808);
  int corpora = 0;
  for (int trial = 0; trial < 100; ++trial) {
    auto s = random_points(rng, trial % 2 == 0);
    std::set<Vec> seen;
    std::vector<oracle::LabeledPoint> unique;
    for (auto& p : s.points)
      if (seen.insert(p.x).second) unique.push_back(p);
    const auto m = labeled(unique);
    std::vector<std::string> labels;
    for (const auto& c : m.columns()) labels.push_back(c.document.author);
    SplitSpec spec;
    spec.mode = SplitMode::train_equals_test;
    const auto split = split_corpus(labels, spec);
    const KnnModel model = fit_knn(m.select_columns(split.train), 1);
    std::map<std::string, std::string> truths;
    std::vector<Prediction> preds;
    for (auto j : split.test) {
      const auto& col = m.column(j);
      truths[col.document.title] = col.document.author;
      preds.push_back({col.document.title, model.classify(col.values)});
    }
    const auto macro = macro_average(precision_recall(confusion(preds, truths)));
    ++corpora;
    if (macro.precision != 1.0 || macro.recall != 1.0) problems.push_back("random corpus " + std::to_string(trial));
  }
  if (problems.empty())
    return {true, "synthetic corpus via CLI and " + std::to_string(corpora) + " random corpora: macro P = R = 1 exactly"};
  return {false, std::to_string(problems.size()) + " problems, first: " + problems.front()};
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path work =
      fs::absolute(argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "semfield_acceptance");
  fs::create_directories(work);

  const auto guarded = [](int id, const std::string& name, auto&& fn) {
    try {
      report(id, name, fn());
    } catch (const std::exception& e) {
      report(id, name, {false, std::string("exception: ") + e.what()});
    }
  };

  guarded(1, "featurizer oracle", featurizer_oracle);
  guarded(2, "NB oracle", nb_oracle);
  guarded(3, "kNN oracle", knn_oracle);
  guarded(4, "metric correctness", metrics);
  guarded(5, "invariance suite", invariances);

  PipelineRun first, second;
  try {
    first = run_pipeline(work, work / "run1");
    second = run_pipeline(work, work / "run2");
  } catch (const std::exception& e) {
    first.error = second.error = std::string("exception: ") + e.what();
  }
  guarded(6, "synthetic end-to-end", [&] { return end_to_end(first); });
  guarded(7, "determinism", [&] { return determinism(work / "run1", second, work / "run2"); });
  guarded(8, "self-neighbor", [&] { return self_neighbor(first, work / "run1"); });

  std::cout << (failures == 0 ? "all 8 criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
