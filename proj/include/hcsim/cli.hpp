#pragma once

#include "hcsim/attribution.hpp"
#include "hcsim/diagnostics.hpp"
#include "hcsim/io.hpp"
#include "hcsim/similarity.hpp"
#include "hcsim/simulate.hpp"
#include "hcsim/text_ingest.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace hcsim::cli {

namespace fs = std::filesystem;
using nlohmann::json;

/// Everything that determines a run; written into every report.
struct RunConfig {
  std::string command;
  std::size_t vocab_size = 1500;
  std::string vocab_file;
  double alpha = kDefaultAlpha;
  std::string variant = "dagger";
  std::string rule = "min-rank";
  std::string ngrams = "1";
  std::string stoplist;
  std::size_t folds = 10;
  std::uint64_t seed = 1;
  std::string out;
  std::map<std::string, std::string> extra;  // subcommand-specific settings

  json to_json() const {
    json j = {{"command", command}, {"vocab_size", vocab_size}, {"vocab_file", vocab_file},
              {"alpha", alpha},     {"variant", variant},       {"rule", rule},
              {"ngrams", ngrams},   {"stoplist", stoplist},     {"folds", folds},
              {"seed", seed},       {"out", out}};
    for (const auto& [k, v] : extra) j[k] = v;
    return j;
  }

  HCVariant hc_variant() const { return parse_variant(variant); }
  DecisionRule decision_rule() const { return parse_rule(rule); }

  TokenizerConfig tokenizer() const {
    TokenizerConfig cfg;
    cfg.ngram_orders.clear();
    std::stringstream ss(ngrams);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      std::size_t pos = 0;
      int order = 0;
      try {
        order = std::stoi(item, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != item.size() || order < 1) throw std::invalid_argument("--ngrams: bad order '" + item + "'");
      cfg.ngram_orders.insert(order);
    }
    if (!stoplist.empty()) {
      std::unordered_set<std::string> stop;
      std::istringstream in(io::read_file(stoplist));
      std::string line;
      while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) stop.insert(line);
      }
      cfg.stop_list = std::move(stop);
    }
    cfg.validate();
    return cfg;
  }
};

namespace detail {

inline void require_path(const std::string& p, const char* flag) {
  if (!p.empty() && !fs::exists(p)) throw std::runtime_error(std::string(flag) + ": path not found: '" + p + "'");
}

inline Vocabulary make_vocabulary(const RunConfig& cfg, const std::vector<FrequencyTable>& tables, std::ostream& err) {
  VocabularyResult vr = cfg.vocab_file.empty() ? build_vocabulary(tables, cfg.vocab_size)
                                               : load_vocabulary_file(cfg.vocab_file, cfg.vocab_size);
  if (vr.warning) err << "warning: " << *vr.warning << "\n";
  if (vr.vocab.empty()) throw std::runtime_error("vocabulary is empty");
  return vr.vocab;
}

inline std::string fmt(double v) { return io::format_double(v); }

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

/// Collects output files and writes them only once everything succeeded.
class PendingWrites {
public:
  void add(fs::path p, std::string content) { files_.emplace_back(std::move(p), std::move(content)); }
  void commit() {
    for (const auto& [p, c] : files_) io::write_file_atomic(p, c);
  }

private:
  std::vector<std::pair<fs::path, std::string>> files_;
};

inline void add_vocab_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--vocab-size", cfg.vocab_size, "Number of most frequent terms in the vocabulary")
      ->check(CLI::PositiveNumber);
  sub->add_option("--vocab-file", cfg.vocab_file, "Vocabulary list, one term per line (first --vocab-size used)")
      ->check(CLI::ExistingFile);
  sub->add_option("--ngrams", cfg.ngrams, "Comma-separated n-gram orders");
  sub->add_option("--stoplist", cfg.stoplist, "Terms to drop before counting, one per line")->check(CLI::ExistingFile);
}

inline void add_hc_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--alpha", cfg.alpha, "HC search fraction")->check(CLI::Range(0.0, 1.0));
  sub->add_option("--variant", cfg.variant, "HC variant")->check(CLI::IsMember({"star", "dagger"}));
}

// ---- ingest -----------------------------------------------------------------

inline int cmd_ingest(RunConfig& cfg, const std::vector<std::string>& inputs, bool project, std::ostream& out,
                      std::ostream& err) {
  const auto tok = cfg.tokenizer();
  std::vector<std::pair<fs::path, FrequencyTable>> tables;  // relative output path, table
  for (const auto& in : inputs) {
    const fs::path p(in);
    bool corpus_root = false;
    if (fs::is_directory(p)) {
      for (const auto& e : fs::directory_iterator(p)) corpus_root = corpus_root || e.is_directory();
    }
    if (corpus_root) {
      for (const auto& c : io::load_corpora(p, tok)) {
        for (const auto& d : c.documents()) tables.emplace_back(fs::path(c.author()) / (io::doc_stem(d.id) + ".csv"), d.table);
      }
    } else {
      for (auto& d : io::load_documents(p, tok)) tables.emplace_back(io::doc_stem(d.id) + ".csv", std::move(d.table));
    }
  }
  if (tables.empty()) throw std::runtime_error("ingest: no documents found");

  PendingWrites writes;
  const fs::path root(cfg.out);
  if (project) {
    std::vector<FrequencyTable> all;
    for (const auto& [_, t] : tables) all.push_back(t);
    const auto vocab = make_vocabulary(cfg, all, err);
    std::string vtxt;
    for (const auto& t : vocab) vtxt += t + "\n";
    writes.add(root / "vocabulary.txt", vtxt);
    for (auto& [_, t] : tables) t = project_table(t, vocab);
  }
  std::set<fs::path> seen;
  for (const auto& [rel, t] : tables) {
    if (!seen.insert(rel).second) throw std::runtime_error("ingest: two inputs map to '" + rel.string() + "'");
    writes.add(root / rel, io::table_to_csv(t));
  }
  writes.add(root / "run_config.json", dump(cfg.to_json()));
  writes.commit();
  out << "wrote " << tables.size() << " frequency tables to " << root.string() << "\n";
  return 0;
}

// ---- compare ----------------------------------------------------------------

inline int cmd_compare(RunConfig& cfg, const std::string& a, const std::string& b, std::ostream& out,
                       std::ostream& err) {
  const auto tok = cfg.tokenizer();
  const auto t1 = io::load_table(a, tok);
  const auto t2 = io::load_table(b, tok);
  const auto vocab = make_vocabulary(cfg, {t1, t2}, err);

  const auto hc = hc_sim(t1, t2, vocab, cfg.alpha, cfg.hc_variant());
  for (const auto& s : hc.skipped) err << "warning: skipped term '" << s << "' (degenerate null probability)\n";
  const double cosv = cosine_index(t1, t2, vocab).value;
  const double dv0 = power_divergence(t1, t2, vocab, kLambdaG2).value;
  const double dv23 = power_divergence(t1, t2, vocab, kLambdaCressieRead).value;
  const double dv1 = power_divergence(t1, t2, vocab, kLambdaPearson).value;

  std::string csv = "statistic,value\n";
  csv += "hc," + fmt(hc.value) + "\n";
  csv += "hc_threshold," + fmt(hc.hc->threshold) + "\n";
  csv += "hc_i_star," + std::to_string(hc.hc->i_star) + "\n";
  csv += "hc_n_tested," + std::to_string(hc.hc->n_tested) + "\n";
  csv += "delta_size," + std::to_string(hc.delta->size()) + "\n";
  csv += "cosine," + fmt(cosv) + "\n";
  csv += "dv_0," + fmt(dv0) + "\n";
  csv += "dv_2/3," + fmt(dv23) + "\n";
  csv += "dv_1," + fmt(dv1) + "\n";

  if (!cfg.out.empty()) {
    PendingWrites writes;
    const fs::path root(cfg.out);
    writes.add(root / "indices.csv", csv);
    writes.add(root / "delta.csv", io::delta_to_csv(*hc.delta));
    writes.add(root / "pvalues.csv", io::pvalues_to_csv(hc.pvalues));
    writes.add(root / "run_config.json", dump(cfg.to_json()));
    writes.commit();
  }
  out << csv;
  return 0;
}

// ---- attribute --------------------------------------------------------------

inline json report_to_json(const AttributionReport& rep, const RunConfig& cfg, std::size_t vocab_size) {
  json cands = json::array();
  for (const auto& c : rep.candidates) {
    json jc = {{"author", c.author}, {"hc", c.hc}, {"m", c.m}, {"self_excluded", c.self_excluded},
               {"delta_size", c.delta.size()}};
    jc["rank"] = c.rank ? json(*c.rank) : json(nullptr);
    jc["rhat"] = c.rhat ? json(*c.rhat) : json(nullptr);
    cands.push_back(std::move(jc));
  }
  return {{"doc", rep.doc_id},
          {"candidates", std::move(cands)},
          {"chosen", rep.chosen},
          {"rule", std::string(to_string(rep.rule))},
          {"alpha", rep.alpha},
          {"variant", std::string(to_string(rep.variant))},
          {"vocabulary_digest", rep.vocab_digest},
          {"vocabulary_size", vocab_size},
          {"config", cfg.to_json()}};
}

inline int cmd_attribute(RunConfig& cfg, const std::string& corpora_dir, const std::string& disputed,
                         const std::vector<std::string>& only, std::ostream& out, std::ostream& err) {
  const auto tok = cfg.tokenizer();
  // A disputed directory living inside the corpus root is not a candidate.
  std::vector<std::string> exclude;
  const auto disputed_abs = fs::weakly_canonical(disputed);
  if (fs::is_directory(disputed) && disputed_abs.parent_path() == fs::weakly_canonical(corpora_dir)) {
    exclude.push_back(disputed_abs.filename().string());
  }
  auto corpora = io::load_corpora(corpora_dir, tok, exclude);
  if (!only.empty()) {
    std::erase_if(corpora, [&](const Corpus& c) { return std::find(only.begin(), only.end(), c.author()) == only.end(); });
  }
  if (corpora.size() < 2) throw std::runtime_error("attribute: need at least 2 candidate authors");
  const auto docs = io::load_documents(disputed, tok);
  if (docs.empty()) throw std::runtime_error("attribute: no disputed documents in '" + disputed + "'");

  std::vector<FrequencyTable> all;
  for (const auto& c : corpora) {
    for (const auto& d : c.documents()) all.push_back(d.table);
  }
  for (const auto& d : docs) all.push_back(d.table);
  const auto vocab = make_vocabulary(cfg, all, err);

  std::vector<AttributionReport> reports;
  for (const auto& d : docs) reports.push_back(attribute(d, corpora, cfg.decision_rule(), vocab, cfg.alpha, cfg.hc_variant()));

  PendingWrites writes;
  const fs::path root(cfg.out);
  std::string summary = "doc,chosen";
  for (const auto& c : corpora) summary += ",hc_" + c.author() + ",rhat_" + c.author();
  summary += "\n";
  std::set<std::string> names;
  for (const auto& rep : reports) {
    const auto name = io::doc_stem(rep.doc_id);
    if (!names.insert(name).second) throw std::runtime_error("attribute: duplicate disputed document name '" + name + "'");
    writes.add(root / (name + ".json"), dump(report_to_json(rep, cfg, vocab.size())));
    summary += rep.doc_id + "," + rep.chosen;
    for (const auto& c : rep.candidates) summary += "," + fmt(c.hc) + "," + (c.rhat ? fmt(*c.rhat) : std::string());
    summary += "\n";
  }
  writes.add(root / "attribution.csv", summary);
  writes.add(root / "run_config.json", dump(cfg.to_json()));
  writes.commit();
  out << summary;
  return 0;
}

// ---- eval-cv ----------------------------------------------------------------

struct FoldMetrics {
  std::size_t n_test = 0;
  double accuracy = 0.0;
  double macro_f1 = 0.0;
};

/// Accuracy and macro-averaged F1 over the union of true and predicted labels.
inline FoldMetrics classification_metrics(const std::vector<std::pair<std::string, std::string>>& truth_pred) {
  FoldMetrics m;
  m.n_test = truth_pred.size();
  if (truth_pred.empty()) return m;
  std::map<std::string, std::array<std::size_t, 3>> tally;  // tp, fp, fn
  std::size_t correct = 0;
  for (const auto& [t, p] : truth_pred) {
    if (t == p) {
      ++correct;
      ++tally[t][0];
    } else {
      ++tally[p][1];
      ++tally[t][2];
    }
  }
  m.accuracy = static_cast<double>(correct) / static_cast<double>(truth_pred.size());
  double f1_sum = 0.0;
  for (const auto& [label, c] : tally) {
    const double denom = static_cast<double>(2 * c[0] + c[1] + c[2]);
    f1_sum += denom > 0 ? 2.0 * static_cast<double>(c[0]) / denom : 0.0;
  }
  m.macro_f1 = f1_sum / static_cast<double>(tally.size());
  return m;
}

/// Fold of each document: a seeded shuffle of the sorted ids, dealt round-robin.
inline std::map<std::string, std::size_t> assign_folds(std::vector<std::string> ids, std::size_t k, std::uint64_t seed) {
  std::sort(ids.begin(), ids.end());
  Rng rng(seed);
  for (std::size_t i = ids.size(); i > 1; --i) std::swap(ids[i - 1], ids[rng.below(i)]);
  std::map<std::string, std::size_t> fold;
  for (std::size_t i = 0; i < ids.size(); ++i) fold[ids[i]] = i % k;
  return fold;
}

inline IndexFn baseline_index(const std::string& stat) {
  if (stat == "cosine") return [](const auto& a, const auto& b, const auto& v) { return cosine_index(a, b, v).value; };
  double lambda;
  if (stat == "dv0") lambda = kLambdaG2;
  else if (stat == "dv23") lambda = kLambdaCressieRead;
  else if (stat == "dv1") lambda = kLambdaPearson;
  else throw std::invalid_argument("unknown statistic '" + stat + "'");
  return [lambda](const auto& a, const auto& b, const auto& v) { return power_divergence(a, b, v, lambda).value; };
}

inline int cmd_eval_cv(RunConfig& cfg, const std::string& corpora_dir, const std::string& stat, std::ostream& out,
                       std::ostream& err) {
  const auto tok = cfg.tokenizer();
  const auto corpora = io::load_corpora(corpora_dir, tok);
  if (corpora.size() < 2) throw std::runtime_error("eval-cv: need at least 2 authors");
  std::vector<std::pair<const Document*, std::string>> docs;
  std::vector<std::string> ids;
  for (const auto& c : corpora) {
    for (const auto& d : c.documents()) {
      docs.emplace_back(&d, c.author());
      ids.push_back(d.id);
    }
  }
  if (cfg.folds < 2 || cfg.folds > docs.size()) {
    throw std::runtime_error("eval-cv: --folds must lie in [2, " + std::to_string(docs.size()) + "]");
  }
  const auto fold_of = assign_folds(ids, cfg.folds, cfg.seed);

  std::string table = "fold,n_test,accuracy,macro_f1\n";
  std::string preds = "doc,true_author,predicted_author,fold\n";
  std::vector<std::pair<std::string, std::string>> pooled;
  double acc_sum = 0.0, f1_sum = 0.0;
  for (std::size_t f = 0; f < cfg.folds; ++f) {
    std::vector<Corpus> train;
    for (const auto& c : corpora) {
      std::vector<Document> kept;
      for (const auto& d : c.documents()) {
        if (fold_of.at(d.id) != f) kept.push_back(d);
      }
      if (!kept.empty()) train.emplace_back(c.author(), std::move(kept));
    }
    if (train.size() < 2) throw std::runtime_error("eval-cv: fold " + std::to_string(f) + " leaves fewer than 2 training authors");
    if (stat == "hc" && cfg.decision_rule() == DecisionRule::min_rank) {
      for (const auto& c : train) {
        if (c.size() < 2) {
          throw std::runtime_error("eval-cv: author " + c.author() + " has fewer than 2 training documents in fold " +
                                   std::to_string(f) + "; min-rank needs 2 (try --rule min-hc)");
        }
      }
    }
    std::vector<FrequencyTable> train_tables;
    for (const auto& c : train) {
      for (const auto& d : c.documents()) train_tables.push_back(d.table);
    }
    const auto vocab = make_vocabulary(cfg, train_tables, err);
    std::vector<const Corpus*> cands;
    for (const auto& c : train) cands.push_back(&c);

    std::vector<std::pair<std::string, std::string>> truth_pred;
    for (const auto& [doc, author] : docs) {
      if (fold_of.at(doc->id) != f) continue;
      std::string predicted = stat == "hc"
                                  ? attribute(*doc, cands, cfg.decision_rule(), vocab, cfg.alpha, cfg.hc_variant()).chosen
                                  : attribute_by_index(*doc, cands, vocab, baseline_index(stat));
      preds += doc->id + "," + author + "," + predicted + "," + std::to_string(f + 1) + "\n";
      truth_pred.emplace_back(author, predicted);
    }
    const auto m = classification_metrics(truth_pred);
    table += std::to_string(f + 1) + "," + std::to_string(m.n_test) + "," + fmt(m.accuracy) + "," + fmt(m.macro_f1) + "\n";
    acc_sum += m.accuracy;
    f1_sum += m.macro_f1;
    pooled.insert(pooled.end(), truth_pred.begin(), truth_pred.end());
  }
  const auto k = static_cast<double>(cfg.folds);
  table += "mean," + std::to_string(docs.size()) + "," + fmt(acc_sum / k) + "," + fmt(f1_sum / k) + "\n";
  const auto pm = classification_metrics(pooled);
  table += "pooled," + std::to_string(pm.n_test) + "," + fmt(pm.accuracy) + "," + fmt(pm.macro_f1) + "\n";

  if (!cfg.out.empty()) {
    PendingWrites writes;
    const fs::path root(cfg.out);
    writes.add(root / "eval_cv.csv", table);
    writes.add(root / "predictions.csv", preds);
    writes.add(root / "run_config.json", dump(cfg.to_json()));
    writes.commit();
  }
  out << table;
  return 0;
}

// ---- diagnose ---------------------------------------------------------------

inline std::string profile_rows(const RankProfile& p, const std::string& group) {
  std::string s;
  for (std::size_t r = 0; r < p.depth; ++r) {
    if (p.n_pairs[r] == 0) continue;
    s += std::to_string(r + 1) + "," + fmt(p.avg_cv[r]) + "," + std::to_string(p.n_pairs[r]) + "," + group + "\n";
  }
  return s;
}

inline std::string threshold_row(const RankProfile& p, const std::string& group) {
  return group + "," + std::to_string(p.pair_count) + "," + fmt(p.mean_threshold_rank) + "," +
         fmt(p.threshold_rank_q025) + "," + fmt(p.threshold_rank_q975) + "," + fmt(p.avg_cv_below) + "," +
         fmt(p.avg_cv_above) + "\n";
}

/// Every (document, corpus) pair whose reference corpus keeps >= 2 documents
/// after self-exclusion; sampled without replacement down to `max_pairs`.
inline std::vector<ProfilePair> sample_pairs(const std::vector<Corpus>& corpora, std::size_t max_pairs, std::uint64_t seed) {
  std::vector<ProfilePair> all;
  for (const auto& owner : corpora) {
    for (const auto& d : owner.documents()) {
      for (const auto& c : corpora) {
        const bool concordant = &c == &owner;
        if (c.size() - (concordant ? 1 : 0) < 2) continue;
        all.push_back({&d, &c, concordant});
      }
    }
  }
  if (all.size() <= max_pairs) return all;
  Rng rng(seed);
  for (std::size_t i = 0; i < max_pairs; ++i) std::swap(all[i], all[i + rng.below(all.size() - i)]);
  all.resize(max_pairs);
  return all;
}

inline int cmd_diagnose(RunConfig& cfg, const std::string& corpora_dir, std::size_t max_pairs, std::size_t depth,
                        std::ostream& out, std::ostream& err) {
  const auto tok = cfg.tokenizer();
  const auto corpora = io::load_corpora(corpora_dir, tok);
  std::vector<FrequencyTable> all;
  for (const auto& c : corpora) {
    for (const auto& d : c.documents()) all.push_back(d.table);
  }
  const auto vocab = make_vocabulary(cfg, all, err);
  const auto pairs = sample_pairs(corpora, max_pairs, cfg.seed);
  if (pairs.empty()) throw std::runtime_error("diagnose: no document-corpus pairs (each author needs >= 2 documents)");
  const auto prof = averaged_profiles(pairs, vocab, cfg.alpha, cfg.hc_variant(), depth);

  PendingWrites writes;
  const fs::path root(cfg.out);
  std::string csv = "rank,avg_cv,n_pairs,group\n" + profile_rows(prof.overall, "all") +
                    profile_rows(prof.concordant, "concordant") + profile_rows(prof.discordant, "discordant");
  std::string thr = "group,n_pairs,mean_threshold_rank,threshold_rank_q025,threshold_rank_q975,avg_cv_below,avg_cv_above\n" +
                    threshold_row(prof.overall, "all") + threshold_row(prof.concordant, "concordant") +
                    threshold_row(prof.discordant, "discordant");
  writes.add(root / "profile.csv", csv);
  writes.add(root / "profile_thresholds.csv", thr);
  for (const auto& c : corpora) {
    if (c.size() < 2) continue;
    const auto cv = corpus_cv(c, vocab);
    for (const auto& w : cv.warnings) err << "warning: " << w << "\n";
    std::string s = "term,mu,sigma2,cv\n";
    for (const auto& r : cv.records) s += r.term + "," + fmt(r.mu) + "," + fmt(r.sigma2) + "," + fmt(r.cv) + "\n";
    writes.add(root / ("cv_" + c.author() + ".csv"), s);
  }
  writes.add(root / "run_config.json", dump(cfg.to_json()));
  writes.commit();
  out << thr;
  return 0;
}

// ---- simulate ---------------------------------------------------------------

inline int cmd_simulate(RunConfig& cfg, const RareWeakConfig& sim, std::ostream& out) {
  const auto s = simulate_rare_weak(sim);
  PendingWrites writes;
  const fs::path root(cfg.out);
  for (const auto* c : {&s.a, &s.b}) {
    for (const auto& d : c->documents()) writes.add(root / c->author() / (io::doc_stem(d.id) + ".txt"), io::table_to_text(d.table));
  }
  std::string pert;
  for (const auto& t : s.perturbed) pert += t + "\n";
  writes.add(root / "perturbed_terms.txt", pert);
  writes.add(root / "run_config.json", dump(cfg.to_json()));
  writes.commit();
  out << "wrote " << s.a.size() + s.b.size() << " documents (" << s.perturbed.size() << " perturbed terms) to "
      << root.string() << "\n";
  return 0;
}

}  // namespace detail

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Returns the process exit status.
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"HC similarity of word-frequency tables and authorship attribution", "hcsim"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* ingest = app.add_subcommand("ingest", "Tokenize documents into frequency-table CSVs");
  std::vector<std::string> ingest_inputs;
  ingest->add_option("inputs", ingest_inputs, "Corpus root, document directory or files")->required()->check(CLI::ExistingPath);
  detail::add_vocab_options(ingest, cfg);
  ingest->add_option("--out", cfg.out, "Output directory")->required();

  auto* compare = app.add_subcommand("compare", "HC, cosine and power-divergence indices for two documents");
  std::string cmp_a, cmp_b;
  compare->add_option("a", cmp_a, "First document (.txt or .csv table)")->required()->check(CLI::ExistingFile);
  compare->add_option("b", cmp_b, "Second document (.txt or .csv table)")->required()->check(CLI::ExistingFile);
  detail::add_vocab_options(compare, cfg);
  detail::add_hc_options(compare, cfg);
  compare->add_option("--out", cfg.out, "Directory for indices.csv, delta.csv, pvalues.csv");

  auto* attribute_cmd = app.add_subcommand("attribute", "Attribute disputed documents to candidate authors");
  std::string corpora_dir, disputed;
  std::vector<std::string> only;
  attribute_cmd->add_option("--corpora", corpora_dir, "Root with one sub-directory per author")->required()->check(CLI::ExistingDirectory);
  attribute_cmd->add_option("--disputed", disputed, "Disputed document or directory")->required()->check(CLI::ExistingPath);
  attribute_cmd->add_option("--candidates", only, "Restrict to these author ids");
  detail::add_vocab_options(attribute_cmd, cfg);
  detail::add_hc_options(attribute_cmd, cfg);
  attribute_cmd->add_option("--rule", cfg.rule, "Decision rule")->check(CLI::IsMember({"min-rank", "min-hc"}));
  attribute_cmd->add_option("--out", cfg.out, "Report directory")->required();

  auto* evalcv = app.add_subcommand("eval-cv", "k-fold cross-validated attribution accuracy");
  std::string stat = "hc";
  evalcv->add_option("--corpora", corpora_dir, "Root with one sub-directory per author")->required()->check(CLI::ExistingDirectory);
  evalcv->add_option("--folds", cfg.folds, "Number of folds");
  evalcv->add_option("--seed", cfg.seed, "Fold shuffle seed");
  evalcv->add_option("--stat", stat, "Similarity statistic")->check(CLI::IsMember({"hc", "cosine", "dv0", "dv23", "dv1"}));
  detail::add_vocab_options(evalcv, cfg);
  detail::add_hc_options(evalcv, cfg);
  evalcv->add_option("--rule", cfg.rule, "Decision rule (hc only)")->check(CLI::IsMember({"min-rank", "min-hc"}));
  evalcv->add_option("--out", cfg.out, "Output directory");

  auto* diagnose = app.add_subcommand("diagnose", "CV-by-P-value-rank profiles over document-corpus pairs");
  std::size_t max_pairs = 1000, depth = kDefaultProfileDepth;
  diagnose->add_option("--corpora", corpora_dir, "Root with one sub-directory per author")->required()->check(CLI::ExistingDirectory);
  diagnose->add_option("--pairs", max_pairs, "Maximum number of document-corpus pairs")->check(CLI::PositiveNumber);
  diagnose->add_option("--depth", depth, "Number of smallest P-values per pair")->check(CLI::PositiveNumber);
  diagnose->add_option("--seed", cfg.seed, "Pair sampling seed");
  detail::add_vocab_options(diagnose, cfg);
  detail::add_hc_options(diagnose, cfg);
  diagnose->add_option("--out", cfg.out, "Output directory")->required();

  auto* simulate = app.add_subcommand("simulate", "Write two synthetic rare/weak author corpora");
  RareWeakConfig sim;
  simulate->add_option("--vocab-size", sim.vocab_size, "Vocabulary size")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 24));
  simulate->add_option("--docs", sim.docs_per_author, "Documents per author")->check(CLI::PositiveNumber);
  simulate->add_option("--doc-length", sim.doc_length, "Words per document")->check(CLI::PositiveNumber);
  simulate->add_option("--epsilon", sim.epsilon, "Fraction of perturbed terms");
  simulate->add_option("--shift", sim.shift, "Multiplicative perturbation");
  simulate->add_option("--zipf", sim.zipf_exponent, "Zipf exponent of the base law");
  simulate->add_option("--seed", sim.seed, "Random seed");
  simulate->add_option("--out", cfg.out, "Output corpus root")->required();

  std::vector<const char*> argv{"hcsim"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code;
  }

  try {
    detail::require_path(cfg.vocab_file, "--vocab-file");
    detail::require_path(cfg.stoplist, "--stoplist");
    if (*ingest) {
      cfg.command = "ingest";
      const bool project = ingest->count("--vocab-size") > 0 || !cfg.vocab_file.empty();
      return detail::cmd_ingest(cfg, ingest_inputs, project, out, err);
    }
    if (*compare) {
      cfg.command = "compare";
      return detail::cmd_compare(cfg, cmp_a, cmp_b, out, err);
    }
    if (*attribute_cmd) {
      cfg.command = "attribute";
      cfg.extra = {{"corpora", corpora_dir}, {"disputed", disputed}};
      return detail::cmd_attribute(cfg, corpora_dir, disputed, only, out, err);
    }
    if (*evalcv) {
      cfg.command = "eval-cv";
      cfg.extra = {{"corpora", corpora_dir}, {"stat", stat}};
      return detail::cmd_eval_cv(cfg, corpora_dir, stat, out, err);
    }
    if (*diagnose) {
      cfg.command = "diagnose";
      cfg.extra = {{"corpora", corpora_dir}, {"pairs", std::to_string(max_pairs)}, {"depth", std::to_string(depth)}};
      return detail::cmd_diagnose(cfg, corpora_dir, max_pairs, depth, out, err);
    }
    if (*simulate) {
      cfg.command = "simulate";
      cfg.seed = sim.seed;
      cfg.vocab_size = sim.vocab_size;
      cfg.extra = {{"docs", std::to_string(sim.docs_per_author)},
                   {"doc_length", std::to_string(sim.doc_length)},
                   {"epsilon", io::format_double(sim.epsilon)},
                   {"shift", io::format_double(sim.shift)},
                   {"zipf", io::format_double(sim.zipf_exponent)}};
      return detail::cmd_simulate(cfg, sim, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace hcsim::cli
