// prefrec — command-line front end for preference recovery from
// multi-valued choice data.
//
// Subcommands: validate, enumerate, score, recover, axioms, separate,
// metrics, simulate, graph, report.  Tables are emitted as CSV, summaries
// as JSON, graphs as DOT.  Identical flags + inputs produce byte-identical
// artifacts.

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "prefrec/dataset.hpp"
#include "prefrec/enumerate.hpp"
#include "prefrec/graphviz.hpp"
#include "prefrec/metrics.hpp"
#include "prefrec/models.hpp"
#include "prefrec/relation.hpp"
#include "prefrec/revealed.hpp"
#include "prefrec/separation.hpp"
#include "prefrec/simulation.hpp"

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Shared options and small helpers
// ---------------------------------------------------------------------------

struct GlobalOpts {
  std::string input;
  bool forced = false;
  std::vector<std::string> model_names{"rc", "uc", "dc"};
  int threshold = 10;
  std::uint64_t seed = 0;
  std::string out;
  int jobs = 0;  // 0 = auto (hardware concurrency)
};

int resolve_jobs(const GlobalOpts& g) {
  if (g.jobs > 0) return g.jobs;
  unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

// Requested models in the fixed rc < uc < dc order, duplicates dropped, so
// tie-breaking and output order never depend on how the flag was spelled.
std::vector<prefrec::ModelKind> parse_models(const std::vector<std::string>& names) {
  if (names.empty()) throw std::runtime_error("--models: at least one model required");
  bool want[3] = {false, false, false};
  for (const std::string& s : names)
    want[static_cast<int>(prefrec::model_from_string(s))] = true;
  std::vector<prefrec::ModelKind> out;
  for (prefrec::ModelKind k : prefrec::kAllModels)
    if (want[static_cast<int>(k)]) out.push_back(k);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

prefrec::ParsedData load_input(const GlobalOpts& g) {
  if (g.input.empty()) throw std::runtime_error("--input is required for this command");
  prefrec::ParsedData pd = prefrec::parse_csv(read_file(g.input), g.forced);
  if (pd.subjects.empty()) throw std::runtime_error("input '" + g.input + "' contains no subjects");
  return pd;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

// Single-artifact commands: --out names a file, stdout otherwise.
void emit_single(const GlobalOpts& g, const std::string& text) {
  if (g.out.empty())
    std::cout << text;
  else
    write_file(g.out, text);
}

// Multi-artifact commands: --out names a directory; without it the artifacts
// are concatenated on stdout in a fixed order.
struct Emitter {
  std::filesystem::path dir;
  bool to_stdout = false;
  bool first = true;

  explicit Emitter(const GlobalOpts& g) {
    if (g.out.empty()) {
      to_stdout = true;
    } else {
      dir = g.out;
      std::filesystem::create_directories(dir);
    }
  }

  void put(const std::string& name, const std::string& text) {
    if (to_stdout) {
      if (!first) std::cout << '\n';
      std::cout << "# " << name << '\n' << text;
      first = false;
    } else {
      std::filesystem::path p = dir / name;
      if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
      write_file(p, text);
    }
  }
};

std::string dumps(const json& j) { return j.dump(2) + "\n"; }

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2.0;
}

std::string sanitize_filename(const std::string& s) {
  std::string out;
  for (char c : s) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
              (c >= '0' && c <= '9') || c == '-' || c == '_' || c == '.';
    out += ok ? c : '_';
  }
  if (out.empty()) out = "subject";
  return out;
}

// ---------------------------------------------------------------------------
// Scoring engine shared by score / recover / separate / metrics / report
// ---------------------------------------------------------------------------

struct ModelCell {
  int score = 0;
  std::size_t n_optimal = 0;
  std::vector<prefrec::Relation> kept;  // leading optimal relations
};

struct SubjectScore {
  prefrec::ModelKind best{};
  int best_score = 0;
  bool tie_with_rc = false;
  std::map<prefrec::ModelKind, ModelCell> cells;
  std::optional<prefrec::Relation> best_relation;  // first optimum of `best`
};

struct ScoreRun {
  std::vector<prefrec::ModelKind> kinds;
  std::vector<SubjectScore> subjects;  // aligned with ParsedData::subjects
};

std::vector<prefrec::Menu> union_menus(const prefrec::ParsedData& pd) {
  std::array<bool, 256> seen{};
  std::vector<prefrec::Mask> masks;
  for (const prefrec::Dataset& d : pd.subjects)
    for (const prefrec::Observation& o : d.observations)
      if (!seen[o.menu.members]) {
        seen[o.menu.members] = true;
        masks.push_back(o.menu.members);
      }
  std::sort(masks.begin(), masks.end());
  std::vector<prefrec::Menu> menus;
  menus.reserve(masks.size());
  for (prefrec::Mask m : masks) menus.push_back(prefrec::make_menu(m));
  return menus;
}

// Scores every subject against every requested model.  `collect` gathers
// optimal-relation counts; `keep_cap` limits how many optimal relations are
// retained per (subject, model).  The first optimum of the best model is
// always kept when collecting.  Subjects are distributed over `jobs`
// threads; results land in a per-subject slot, so output order is fixed.
ScoreRun run_scoring(const prefrec::ParsedData& pd,
                     const std::vector<prefrec::ModelKind>& kinds, int jobs,
                     bool collect, std::size_t keep_cap) {
  const int n = static_cast<int>(pd.labels.size());
  if (n > 6)
    throw std::runtime_error(
        "scoring enumerates all admissible preference relations and supports "
        "at most 6 alternatives; input has " + std::to_string(n));
  ScoreRun run;
  run.kinds = kinds;
  std::vector<prefrec::Menu> menus = union_menus(pd);
  std::vector<std::unique_ptr<prefrec::PredictionTable>> tables;
  for (prefrec::ModelKind k : kinds)
    tables.push_back(std::make_unique<prefrec::PredictionTable>(
        k, prefrec::enumerate_admissible(k, n), menus));
  std::vector<const prefrec::PredictionTable*> table_ptrs;
  for (const auto& t : tables) table_ptrs.push_back(t.get());

  run.subjects.resize(pd.subjects.size());
  auto score_one = [&](std::size_t i) {
    prefrec::BestModelResult res =
        prefrec::best_model(pd.subjects[i], kinds, &table_ptrs, collect);
    SubjectScore s;
    s.best = res.best;
    s.best_score = res.score;
    s.tie_with_rc = res.tie_with_rc;
    for (prefrec::ModelKind k : kinds) {
      prefrec::ScoreResult& sr = res.by_model.at(k);
      ModelCell cell;
      cell.score = sr.score;
      cell.n_optimal = sr.optimal.size();
      if (collect && k == res.best && !sr.optimal.empty())
        s.best_relation = sr.optimal.front();
      if (keep_cap > 0 && !sr.optimal.empty()) {
        std::size_t keep = std::min(keep_cap, sr.optimal.size());
        cell.kept.assign(sr.optimal.begin(),
                         sr.optimal.begin() + static_cast<std::ptrdiff_t>(keep));
      }
      s.cells.emplace(k, std::move(cell));
    }
    run.subjects[i] = std::move(s);
  };

  int n_threads = std::max(1, jobs);
  n_threads = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(n_threads), pd.subjects.size()));
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < pd.subjects.size(); ++i) score_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n_threads));
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t)
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = next.fetch_add(1); i < pd.subjects.size();
               i = next.fetch_add(1))
            score_one(i);
        } catch (...) {
          errors[static_cast<std::size_t>(t)] = std::current_exception();
        }
      });
    for (std::thread& th : pool) th.join();
    for (const std::exception_ptr& e : errors)
      if (e) std::rethrow_exception(e);
  }
  return run;
}

// ---------------------------------------------------------------------------
// Artifact builders
// ---------------------------------------------------------------------------

json validate_json(const prefrec::ParsedData& pd, bool forced) {
  json subjects = json::array();
  for (const prefrec::Dataset& d : pd.subjects) {
    int deferrals = 0, choose_all = 0;
    for (const prefrec::Observation& o : d.observations) {
      if (o.choice == 0) ++deferrals;
      if (o.choice == o.menu.members) ++choose_all;
    }
    subjects.push_back({{"subject", d.subject},
                        {"observations", d.observations.size()},
                        {"deferrals", deferrals},
                        {"choose_everything", choose_all}});
  }
  return json{{"status", "ok"},
              {"forced", forced},
              {"n_alternatives", pd.labels.size()},
              {"labels", pd.labels},
              {"n_subjects", pd.subjects.size()},
              {"subjects", subjects}};
}

// One row per subject and scored model; tie_with_rc marks a non-rational
// model whose score equals the subject's rational-choice score.
std::string scores_csv(const prefrec::ParsedData& pd, const ScoreRun& run) {
  std::ostringstream os;
  os << "subject,model,score,n_optimal_relations,tie_with_rc\n";
  const bool has_rc =
      std::find(run.kinds.begin(), run.kinds.end(),
                prefrec::ModelKind::RationalChoice) != run.kinds.end();
  for (std::size_t i = 0; i < pd.subjects.size(); ++i) {
    const SubjectScore& s = run.subjects[i];
    for (prefrec::ModelKind k : run.kinds) {
      const ModelCell& cell = s.cells.at(k);
      bool tie = has_rc && k != prefrec::ModelKind::RationalChoice &&
                 cell.score ==
                     s.cells.at(prefrec::ModelKind::RationalChoice).score;
      os << pd.subjects[i].subject << ',' << prefrec::to_string(k) << ','
         << cell.score << ',' << cell.n_optimal << ',' << (tie ? 1 : 0)
         << '\n';
    }
  }
  return os.str();
}

json score_summary_json(const ScoreRun& run, int threshold) {
  json models = json::object();
  for (prefrec::ModelKind k : run.kinds) {
    std::vector<double> scores, n_opt;
    int zero = 0, le = 0;
    for (const SubjectScore& s : run.subjects) {
      const ModelCell& c = s.cells.at(k);
      scores.push_back(c.score);
      n_opt.push_back(static_cast<double>(c.n_optimal));
      if (c.score == 0) ++zero;
      if (c.score <= threshold) ++le;
    }
    models[prefrec::to_string(k)] = {
        {"n_score_0", zero},
        {"n_score_le_threshold", le},
        {"mean_score", mean_of(scores)},
        {"median_score", median_of(scores)},
        {"mean_n_optimal", mean_of(n_opt)},
        {"median_n_optimal", median_of(n_opt)}};
  }
  std::vector<double> best_scores;
  json best_counts = json::object();
  for (prefrec::ModelKind k : run.kinds) best_counts[prefrec::to_string(k)] = 0;
  for (const SubjectScore& s : run.subjects) {
    best_scores.push_back(s.best_score);
    best_counts[prefrec::to_string(s.best)] =
        best_counts[prefrec::to_string(s.best)].get<int>() + 1;
  }
  return json{{"n_subjects", run.subjects.size()},
              {"threshold", threshold},
              {"models", models},
              {"best", {{"counts_by_model", best_counts},
                        {"mean_score", mean_of(best_scores)},
                        {"median_score", median_of(best_scores)}}}};
}

json recover_json(const prefrec::ParsedData& pd, const ScoreRun& run,
                  std::size_t cap) {
  json subjects = json::array();
  for (std::size_t i = 0; i < pd.subjects.size(); ++i) {
    const SubjectScore& s = run.subjects[i];
    json models = json::array();
    for (prefrec::ModelKind k : run.kinds) {
      const ModelCell& c = s.cells.at(k);
      json rels = json::array();
      for (const prefrec::Relation& r : c.kept)
        rels.push_back(prefrec::emit_relation_text(r, pd.labels));
      models.push_back({{"model", prefrec::to_string(k)},
                        {"score", c.score},
                        {"n_optimal_relations", c.n_optimal},
                        {"relations", rels},
                        {"relations_truncated", cap > 0 && c.n_optimal > cap}});
    }
    subjects.push_back({{"subject", pd.subjects[i].subject},
                        {"best_model", prefrec::to_string(s.best)},
                        {"best_score", s.best_score},
                        {"models", models}});
  }
  json kinds = json::array();
  for (prefrec::ModelKind k : run.kinds) kinds.push_back(prefrec::to_string(k));
  return json{{"models", kinds}, {"subjects", subjects}};
}

std::string axioms_csv(const prefrec::ParsedData& pd, std::size_t max_witnesses) {
  std::ostringstream os;
  os << "subject,axiom,holds,n_witnesses,truncated\n";
  for (const prefrec::Dataset& d : pd.subjects) {
    prefrec::RevealedRelations rr = prefrec::compute_revealed(d);
    for (prefrec::Axiom a : prefrec::kAllAxioms) {
      prefrec::AxiomReport rep = prefrec::check_axiom(d, a, rr, max_witnesses);
      os << d.subject << ',' << prefrec::to_string(a) << ','
         << (rep.holds ? 1 : 0) << ',' << rep.witnesses.size() << ','
         << (rep.truncated ? 1 : 0) << '\n';
    }
  }
  return os.str();
}

json rationalization_entry(const prefrec::RationalizationResult& res,
                           const std::vector<std::string>& labels) {
  if (res.relation) {
    return json{{"ok", true},
                {"relation", prefrec::emit_relation_text(*res.relation, labels)}};
  }
  json failed = json::array();
  for (const prefrec::AxiomReport& rep : res.failed)
    failed.push_back({{"axiom", prefrec::to_string(rep.axiom)},
                      {"n_witnesses", rep.witnesses.size()},
                      {"truncated", rep.truncated}});
  return json{{"ok", false}, {"failed", failed}};
}

json rationalization_json(const prefrec::ParsedData& pd) {
  json subjects = json::array();
  for (const prefrec::Dataset& d : pd.subjects) {
    subjects.push_back(
        {{"subject", d.subject},
         {"undominated", rationalization_entry(prefrec::rationalize_undominated(d), pd.labels)},
         {"dominant", rationalization_entry(prefrec::rationalize_dominant(d), pd.labels)},
         {"richter", rationalization_entry(prefrec::richter_rationalize(d), pd.labels)},
         {"houtman_maks", prefrec::houtman_maks_active(d)}});
  }
  return json{{"subjects", subjects}};
}

// Per-subject separation under the subject's best model: the dominant-choice
// criterion reads indifference/indecisiveness straight off the data; the
// undominated-choice interpretation needs a recovered relation; a
// rational-choice optimum classifies pairs from the weak order itself.
struct SeparationRow {
  std::string view;
  prefrec::PairClassification pc;
};

struct SubjectSeparation {
  prefrec::ModelKind model{};
  std::vector<SeparationRow> rows;
  int n_indifferent = 0;  // primary view only
  int n_indecisive = 0;
  std::optional<prefrec::EliazOkSeparation> eo;  // undominated-choice extras
};

SubjectSeparation separate_subject(const prefrec::Dataset& d,
                                   const SubjectScore& s) {
  SubjectSeparation out;
  out.model = s.best;
  auto add = [&](const std::string& view,
                 const std::vector<prefrec::PairClassification>& pcs,
                 bool primary) {
    for (const prefrec::PairClassification& pc : pcs) {
      out.rows.push_back({view, pc});
      if (primary) {
        if (pc.status == prefrec::PairStatus::Indifferent) ++out.n_indifferent;
        if (pc.status == prefrec::PairStatus::Indecisive) ++out.n_indecisive;
      }
    }
  };
  switch (s.best) {
    case prefrec::ModelKind::DominantChoice:
      add("dominant", prefrec::separate_dominant(d), true);
      break;
    case prefrec::ModelKind::UndominatedChoice: {
      if (!s.best_relation)
        throw std::runtime_error("separate: missing recovered relation");
      prefrec::EliazOkSeparation eo =
          prefrec::separate_eliaz_ok(d, *s.best_relation);
      add("consistent", eo.pairs, true);
      add("raw", eo.raw_pairs, false);
      out.eo = std::move(eo);
      break;
    }
    case prefrec::ModelKind::RationalChoice: {
      if (!s.best_relation)
        throw std::runtime_error("separate: missing recovered relation");
      add("relation", prefrec::classify_from_relation(*s.best_relation), true);
      break;
    }
  }
  return out;
}

std::string separation_csv(const prefrec::ParsedData& pd,
                           const std::vector<SubjectSeparation>& seps) {
  std::ostringstream os;
  os << "subject,model,view,x,y,status,criterion\n";
  for (std::size_t i = 0; i < pd.subjects.size(); ++i) {
    for (const SeparationRow& row : seps[i].rows)
      os << pd.subjects[i].subject << ',' << prefrec::to_string(seps[i].model)
         << ',' << row.view << ',' << pd.labels[static_cast<std::size_t>(row.pc.x)]
         << ',' << pd.labels[static_cast<std::size_t>(row.pc.y)] << ','
         << prefrec::to_string(row.pc.status) << ','
         << prefrec::to_string(row.pc.criterion) << '\n';
  }
  return os.str();
}

json separation_summary_json(const prefrec::ParsedData& pd,
                             const std::vector<SubjectSeparation>& seps) {
  int with_indiff = 0, with_indec = 0;
  json per_subject = json::array();
  for (std::size_t i = 0; i < pd.subjects.size(); ++i) {
    const SubjectSeparation& s = seps[i];
    if (s.n_indifferent > 0) ++with_indiff;
    if (s.n_indecisive > 0) ++with_indec;
    json row{{"subject", pd.subjects[i].subject},
             {"model", prefrec::to_string(s.model)},
             {"n_indifferent", s.n_indifferent},
             {"n_indecisive", s.n_indecisive}};
    if (s.eo) {
      row["n_unexplained"] = s.eo->unexplained.size();
      row["induced_preorder"] = s.eo->induced_preorder;
      row["regular"] = s.eo->regular;
      row["separating"] = s.eo->separating();
    }
    per_subject.push_back(std::move(row));
  }
  return json{{"n_subjects", pd.subjects.size()},
              {"n_subjects_with_indifference", with_indiff},
              {"n_subjects_with_indecisiveness", with_indec},
              {"per_subject", per_subject}};
}

struct MetricsCutoffs {
  double first_item = 0.0;
  double position = 0.0;
  int randomization = 0;
  bool model_requirement = true;
};

std::string metrics_csv(const prefrec::ParsedData& pd, const ScoreRun& run,
                        const MetricsCutoffs& cut, int threshold) {
  std::ostringstream os;
  os << "subject,n_observations,n_deferrals,n_choose_everything,"
        "avg_choice_proportion,avg_choice_proportion_active,"
        "first_item_only_frequency,avg_chosen_position,"
        "avg_chosen_position_pooled,best_model,best_score,classified,"
        "first_item_flag,position_flag,randomization_flag\n";
  for (std::size_t i = 0; i < pd.subjects.size(); ++i) {
    const prefrec::Dataset& d = pd.subjects[i];
    prefrec::SubjectMetrics m = prefrec::compute_subject_metrics(d);
    const SubjectScore& s = run.subjects[i];
    bool classified = s.best_score <= threshold;
    bool screened = !cut.model_requirement || !classified;
    prefrec::SatisficingFlags sf = prefrec::satisficing_screen(
        d, {cut.first_item, cut.position});
    bool rand_flag = prefrec::randomization_screen(d, cut.randomization);
    os << d.subject << ',' << d.observations.size() << ',' << m.deferral_count
       << ',' << m.choose_everything_count << ','
       << fmt(m.avg_choice_proportion) << ','
       << fmt(m.avg_choice_proportion_active) << ','
       << fmt(m.first_item_only_frequency) << ','
       << fmt(m.avg_chosen_position) << ','
       << fmt(m.avg_chosen_position_pooled) << ','
       << prefrec::to_string(s.best) << ',' << s.best_score << ','
       << (classified ? 1 : 0) << ','
       << ((screened && sf.first_item_flag) ? 1 : 0) << ','
       << ((screened && sf.position_flag) ? 1 : 0) << ','
       << ((screened && rand_flag) ? 1 : 0) << '\n';
  }
  return os.str();
}

json metrics_summary_json(const prefrec::ParsedData& pd, const ScoreRun& run,
                          const MetricsCutoffs& cut, int threshold) {
  std::vector<double> prop, prop_active, first_freq, pos;
  int total_defer = 0, total_choose_all = 0;
  int n_first = 0, n_pos = 0, n_sat = 0, n_rand = 0, n_overlap = 0;
  for (std::size_t i = 0; i < pd.subjects.size(); ++i) {
    const prefrec::Dataset& d = pd.subjects[i];
    prefrec::SubjectMetrics m = prefrec::compute_subject_metrics(d);
    prop.push_back(m.avg_choice_proportion);
    prop_active.push_back(m.avg_choice_proportion_active);
    first_freq.push_back(m.first_item_only_frequency);
    pos.push_back(m.avg_chosen_position);
    total_defer += m.deferral_count;
    total_choose_all += m.choose_everything_count;
    bool classified = run.subjects[i].best_score <= threshold;
    bool screened = !cut.model_requirement || !classified;
    if (!screened) continue;
    prefrec::SatisficingFlags sf =
        prefrec::satisficing_screen(d, {cut.first_item, cut.position});
    bool rand_flag = prefrec::randomization_screen(d, cut.randomization);
    n_first += sf.first_item_flag;
    n_pos += sf.position_flag;
    bool sat = sf.first_item_flag && sf.position_flag;
    n_sat += sat;
    n_rand += rand_flag;
    n_overlap += sat && rand_flag;
  }
  prefrec::MenuCollection mc;
  mc.n = static_cast<std::uint8_t>(pd.labels.size());
  mc.menus = union_menus(pd);
  json adjusted = json::object();
  for (const auto& [size, freq] :
       prefrec::adjusted_choice_size_frequencies(pd.subjects, mc))
    adjusted[std::to_string(size)] = freq;
  return json{
      {"n_subjects", pd.subjects.size()},
      {"cutoffs",
       {{"first_item", cut.first_item},
        {"position", cut.position},
        {"randomization", cut.randomization},
        {"model_requirement", cut.model_requirement},
        {"threshold", threshold}}},
      {"means",
       {{"avg_choice_proportion", mean_of(prop)},
        {"avg_choice_proportion_active", mean_of(prop_active)},
        {"first_item_only_frequency", mean_of(first_freq)},
        {"avg_chosen_position", mean_of(pos)}}},
      {"totals",
       {{"deferrals", total_defer}, {"choose_everything", total_choose_all}}},
      {"adjusted_choice_size_frequencies", adjusted},
      {"screens",
       {{"n_first_item_flagged", n_first},
        {"n_position_flagged", n_pos},
        {"n_satisficing_flagged", n_sat},
        {"n_randomization_flagged", n_rand},
        {"n_overlap", n_overlap}}}};
}

// ---------------------------------------------------------------------------
// Simulation plumbing shared by `simulate` and `report --simulate`
// ---------------------------------------------------------------------------

struct SimOpts {
  int n = 6;
  std::vector<int> sizes{2, 3, 4};
  int subjects = 1;
  std::string deferral = "uniform-subsets";
};

prefrec::DeferralDesign deferral_from_string(const std::string& s) {
  if (s == "uniform-subsets") return prefrec::DeferralDesign::UniformSubsets;
  if (s == "extra-option") return prefrec::DeferralDesign::ExtraOption;
  throw std::runtime_error("unknown deferral design '" + s +
                           "' (expected uniform-subsets or extra-option)");
}

prefrec::ParsedData run_simulation(const GlobalOpts& g, const SimOpts& so,
                                   json* meta) {
  prefrec::SimConfig cfg;
  cfg.mc = prefrec::generate_menu_collection(so.n, so.sizes);
  cfg.n_subjects = so.subjects;
  cfg.forced = g.forced;
  cfg.seed = g.seed;
  cfg.deferral = deferral_from_string(so.deferral);
  prefrec::ParsedData pd;
  pd.subjects = prefrec::simulate_uniform(cfg);
  pd.labels = prefrec::default_labels(so.n);
  if (meta)
    *meta = json{{"generator", prefrec::generator_id()},
                 {"seed", g.seed},
                 {"config",
                  {{"n_alternatives", so.n},
                   {"menu_sizes", so.sizes},
                   {"n_menus", cfg.mc.menus.size()},
                   {"n_subjects", so.subjects},
                   {"forced", g.forced},
                   {"deferral_design", so.deferral}}}};
  return pd;
}

// ---------------------------------------------------------------------------
// Subcommand bodies
// ---------------------------------------------------------------------------

void cmd_validate(const GlobalOpts& g) {
  prefrec::ParsedData pd = load_input(g);
  emit_single(g, dumps(validate_json(pd, g.forced)));
}

void cmd_enumerate(const GlobalOpts& g, int n) {
  json classes = json::object();
  std::map<prefrec::RelationClass, std::size_t> count;
  for (prefrec::RelationClass c :
       {prefrec::RelationClass::LinearOrder, prefrec::RelationClass::WeakOrder,
        prefrec::RelationClass::StrictPartialOrder,
        prefrec::RelationClass::Preorder,
        prefrec::RelationClass::IncompletePreorder}) {
    count[c] = prefrec::enumerate_relations(c, n).size();
    classes[prefrec::to_string(c)] = count[c];
  }
  std::size_t uc = 0;
  for (const prefrec::Relation& r : prefrec::enumerate_relations(
           prefrec::RelationClass::StrictPartialOrder, n))
    uc += prefrec::has_incomparable_pair(r);
  json models = {
      {"rc",
       {{"class", "weak-order"},
        {"admissible", count[prefrec::RelationClass::WeakOrder]}}},
      {"uc",
       {{"class", "strict-partial-order"},
        {"admissible", uc},
        {"note", "strict partial orders with at least one unranked pair; the "
                 "full class also counts the linear orders"}}},
      {"dc",
       {{"class", "incomplete-preorder"},
        {"admissible", count[prefrec::RelationClass::IncompletePreorder]},
        {"note", "preorders with at least one unranked pair; the full class "
                 "also counts the weak orders"}}}};
  emit_single(g, dumps(json{{"n", n}, {"classes", classes}, {"models", models}}));
}

void cmd_score(const GlobalOpts& g) {
  prefrec::ParsedData pd = load_input(g);
  ScoreRun run = run_scoring(pd, parse_models(g.model_names), resolve_jobs(g),
                             /*collect=*/true, /*keep_cap=*/1);
  Emitter em(g);
  em.put("scores.csv", scores_csv(pd, run));
  em.put("score_summary.json", dumps(score_summary_json(run, g.threshold)));
}

void cmd_recover(const GlobalOpts& g, std::size_t max_relations) {
  prefrec::ParsedData pd = load_input(g);
  std::size_t cap = max_relations == 0 ? std::numeric_limits<std::size_t>::max()
                                       : max_relations;
  ScoreRun run = run_scoring(pd, parse_models(g.model_names), resolve_jobs(g),
                             /*collect=*/true, cap);
  emit_single(g, dumps(recover_json(pd, run, max_relations)));
}

void cmd_axioms(const GlobalOpts& g, std::size_t max_witnesses) {
  prefrec::ParsedData pd = load_input(g);
  Emitter em(g);
  em.put("axioms.csv", axioms_csv(pd, max_witnesses));
  em.put("rationalization.json", dumps(rationalization_json(pd)));
}

void cmd_separate(const GlobalOpts& g) {
  prefrec::ParsedData pd = load_input(g);
  ScoreRun run = run_scoring(pd, parse_models(g.model_names), resolve_jobs(g),
                             /*collect=*/true, /*keep_cap=*/1);
  std::vector<SubjectSeparation> seps;
  for (std::size_t i = 0; i < pd.subjects.size(); ++i)
    seps.push_back(separate_subject(pd.subjects[i], run.subjects[i]));
  Emitter em(g);
  em.put("separation.csv", separation_csv(pd, seps));
  em.put("separation_summary.json", dumps(separation_summary_json(pd, seps)));
}

MetricsCutoffs resolve_cutoffs(const GlobalOpts& g, double first_item,
                               double position, int randomization,
                               bool no_requirement) {
  MetricsCutoffs cut;
  cut.first_item = first_item >= 0 ? first_item : (g.forced ? 0.28 : 0.29);
  cut.position = position;
  cut.randomization = randomization >= 0 ? randomization : (g.forced ? 14 : 11);
  cut.model_requirement = !no_requirement;
  return cut;
}

void cmd_metrics(const GlobalOpts& g, const MetricsCutoffs& cut) {
  prefrec::ParsedData pd = load_input(g);
  ScoreRun run = run_scoring(pd, parse_models(g.model_names), resolve_jobs(g),
                             /*collect=*/false, /*keep_cap=*/0);
  Emitter em(g);
  em.put("metrics.csv", metrics_csv(pd, run, cut, g.threshold));
  em.put("metrics_summary.json",
         dumps(metrics_summary_json(pd, run, cut, g.threshold)));
}

void cmd_simulate(const GlobalOpts& g, const SimOpts& so) {
  json meta;
  prefrec::ParsedData pd = run_simulation(g, so, &meta);
  Emitter em(g);
  em.put("simulated.csv", prefrec::write_csv(pd));
  em.put("simulated_meta.json", dumps(meta));
}

void cmd_graph(const GlobalOpts& g, const std::string& title) {
  if (g.input.empty()) throw std::runtime_error("--input is required for this command");
  prefrec::ParsedRelation pr = prefrec::parse_relation_text(read_file(g.input));
  if (!prefrec::in_class(pr.weak, prefrec::RelationClass::Preorder))
    throw std::runtime_error(
        "graph: relation must be a preorder or a strict partial order "
        "(transitive); the input is not");
  prefrec::DotOptions opt;
  opt.title = title;
  emit_single(g, prefrec::to_dot(pr.weak, pr.labels, opt));
}

void cmd_report(const GlobalOpts& g, const SimOpts& so, int simulate_n,
                const MetricsCutoffs& cut, std::size_t max_witnesses) {
  if (g.out.empty())
    throw std::runtime_error("report: --out DIRECTORY is required");
  Emitter em(g);
  prefrec::ParsedData pd;
  if (simulate_n > 0) {
    if (!g.input.empty())
      throw std::runtime_error("report: give either --input or --simulate, not both");
    SimOpts sim = so;
    sim.subjects = simulate_n;
    json meta;
    pd = run_simulation(g, sim, &meta);
    em.put("simulated.csv", prefrec::write_csv(pd));
    em.put("simulated_meta.json", dumps(meta));
  } else {
    pd = load_input(g);
  }
  em.put("validate.json", dumps(validate_json(pd, g.forced)));

  ScoreRun run = run_scoring(pd, parse_models(g.model_names), resolve_jobs(g),
                             /*collect=*/true, /*keep_cap=*/1);
  em.put("scores.csv", scores_csv(pd, run));
  em.put("score_summary.json", dumps(score_summary_json(run, g.threshold)));

  em.put("axioms.csv", axioms_csv(pd, max_witnesses));
  em.put("rationalization.json", dumps(rationalization_json(pd)));

  std::vector<SubjectSeparation> seps;
  for (std::size_t i = 0; i < pd.subjects.size(); ++i)
    seps.push_back(separate_subject(pd.subjects[i], run.subjects[i]));
  em.put("separation.csv", separation_csv(pd, seps));
  em.put("separation_summary.json", dumps(separation_summary_json(pd, seps)));

  em.put("metrics.csv", metrics_csv(pd, run, cut, g.threshold));
  em.put("metrics_summary.json",
         dumps(metrics_summary_json(pd, run, cut, g.threshold)));

  std::map<std::string, int> used;
  for (std::size_t i = 0; i < pd.subjects.size(); ++i) {
    const SubjectScore& s = run.subjects[i];
    if (!s.best_relation) continue;
    std::string base = sanitize_filename(pd.subjects[i].subject);
    int& n_used = used[base];
    std::string name = n_used == 0 ? base : base + "_" + std::to_string(n_used);
    ++n_used;
    prefrec::DotOptions opt;
    opt.title = pd.subjects[i].subject + " (" + prefrec::to_string(s.best) + ")";
    em.put("graphs/" + name + ".dot",
           prefrec::to_dot(*s.best_relation, pd.labels, opt));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"preference recovery from multi-valued choice data"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--input", g.input, "Input file (dataset CSV; relation text for `graph`)");
  app.add_flag("--forced", g.forced, "Treat the dataset as forced-choice (blank choices become errors)");
  app.add_option("--models", g.model_names,
                 "Models to fit: any of rc,uc,dc (comma separated)")
      ->delimiter(',');
  app.add_option("--threshold", g.threshold,
                 "Classification threshold on the distance score")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--seed", g.seed, "Simulation seed")->capture_default_str();
  app.add_option("--out", g.out,
                 "Output file (single-artifact commands) or directory "
                 "(multi-artifact commands); stdout/cwd if omitted");
  app.add_option("--jobs", g.jobs,
                 "Worker threads for per-subject scoring (0 = all cores)")
      ->envname("PREFREC_JOBS");

  auto* validate = app.add_subcommand("validate", "Parse a dataset and report per-subject summaries");
  validate->fallthrough();
  validate->callback([&] { cmd_validate(g); });

  auto* enumerate = app.add_subcommand("enumerate", "Count preference relations by class and model");
  enumerate->fallthrough();
  int enum_n = 6;
  enumerate->add_option("--n", enum_n, "Universe size")
      ->check(CLI::Range(1, 6))
      ->capture_default_str();
  enumerate->callback([&] { cmd_enumerate(g, enum_n); });

  auto* score = app.add_subcommand("score", "Distance scores and best-model classification per subject");
  score->fallthrough();
  score->callback([&] { cmd_score(g); });

  auto* recover = app.add_subcommand("recover", "Optimal preference relations per subject and model");
  recover->fallthrough();
  std::size_t max_relations = 64;
  recover->add_option("--max-relations", max_relations,
                      "Relations listed per subject and model (0 = no limit)")
      ->capture_default_str();
  recover->callback([&] { cmd_recover(g, max_relations); });

  auto* axioms = app.add_subcommand("axioms", "Axiom checks and rationalizability per subject");
  axioms->fallthrough();
  std::size_t max_witnesses = 100;
  axioms->add_option("--max-witnesses", max_witnesses,
                     "Violation witnesses collected per axiom (0 = no limit)")
      ->capture_default_str();
  axioms->callback([&] { cmd_axioms(g, max_witnesses); });

  auto* separate = app.add_subcommand("separate", "Indifference vs indecisiveness per pair under the best model");
  separate->fallthrough();
  separate->callback([&] { cmd_separate(g); });

  auto* metrics = app.add_subcommand("metrics", "Descriptive statistics and behavioral screens");
  metrics->fallthrough();
  double first_item_cutoff = -1.0, position_cutoff = 1.84;
  int randomization_cutoff = -1;
  bool no_requirement = false;
  metrics->add_option("--first-item-cutoff", first_item_cutoff,
                      "First-item frequency cutoff (default 0.28 forced / 0.29 otherwise)");
  metrics->add_option("--position-cutoff", position_cutoff,
                      "Average chosen-position cutoff")
      ->capture_default_str();
  metrics->add_option("--randomization-cutoff", randomization_cutoff,
                      "Choose-everything count cutoff (default 14 forced / 11 otherwise)");
  metrics->add_flag("--no-model-requirement", no_requirement,
                    "Screen all subjects, not just those no model classifies");
  metrics->callback([&] {
    cmd_metrics(g, resolve_cutoffs(g, first_item_cutoff, position_cutoff,
                                   randomization_cutoff, no_requirement));
  });

  auto* simulate = app.add_subcommand("simulate", "Generate uniform-random subjects");
  simulate->fallthrough();
  SimOpts so;
  simulate->add_option("--subjects", so.subjects, "Number of subjects")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  simulate->add_option("--n", so.n, "Universe size")
      ->check(CLI::Range(1, 8))
      ->capture_default_str();
  simulate->add_option("--sizes", so.sizes, "Menu sizes (comma separated)")
      ->delimiter(',')
      ->capture_default_str();
  simulate->add_option("--deferral", so.deferral,
                       "Deferral design: uniform-subsets or extra-option")
      ->capture_default_str();
  simulate->callback([&] { cmd_simulate(g, so); });

  auto* graph = app.add_subcommand("graph", "Render a relation (text form) as a DOT digraph");
  graph->fallthrough();
  std::string title;
  graph->add_option("--title", title, "Graph label");
  graph->callback([&] { cmd_graph(g, title); });

  auto* report = app.add_subcommand("report", "Full pipeline: validate, score, axioms, separate, metrics, graphs");
  report->fallthrough();
  int simulate_n = 0;
  double r_first_item = -1.0, r_position = 1.84;
  int r_randomization = -1;
  bool r_no_requirement = false;
  SimOpts rso;
  report->add_option("--simulate", simulate_n,
                     "Generate this many uniform-random subjects instead of reading --input");
  report->add_option("--n", rso.n, "Universe size for --simulate")
      ->check(CLI::Range(1, 8))
      ->capture_default_str();
  report->add_option("--sizes", rso.sizes, "Menu sizes for --simulate")
      ->delimiter(',')
      ->capture_default_str();
  report->add_option("--deferral", rso.deferral,
                     "Deferral design for --simulate")
      ->capture_default_str();
  report->add_option("--first-item-cutoff", r_first_item,
                     "First-item frequency cutoff (default 0.28 forced / 0.29 otherwise)");
  report->add_option("--position-cutoff", r_position,
                     "Average chosen-position cutoff")
      ->capture_default_str();
  report->add_option("--randomization-cutoff", r_randomization,
                     "Choose-everything count cutoff (default 14 forced / 11 otherwise)");
  report->add_flag("--no-model-requirement", r_no_requirement,
                   "Screen all subjects, not just those no model classifies");
  std::size_t r_max_witnesses = 100;
  report->add_option("--max-witnesses", r_max_witnesses,
                     "Violation witnesses collected per axiom (0 = no limit)")
      ->capture_default_str();
  report->callback([&] {
    cmd_report(g, rso, simulate_n,
               resolve_cutoffs(g, r_first_item, r_position, r_randomization,
                               r_no_requirement),
               r_max_witnesses);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
