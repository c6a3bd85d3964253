#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "prefrec/dataset.hpp"
#include "prefrec/enumerate.hpp"
#include "prefrec/relation.hpp"

namespace prefrec {

enum class ModelKind { RationalChoice, UndominatedChoice, DominantChoice };

constexpr ModelKind kAllModels[] = {ModelKind::RationalChoice,
                                    ModelKind::UndominatedChoice,
                                    ModelKind::DominantChoice};

inline std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::RationalChoice: return "rc";
    case ModelKind::UndominatedChoice: return "uc";
    case ModelKind::DominantChoice: return "dc";
  }
  return "?";
}

inline ModelKind model_from_string(const std::string& s) {
  if (s == "rc") return ModelKind::RationalChoice;
  if (s == "uc") return ModelKind::UndominatedChoice;
  if (s == "dc") return ModelKind::DominantChoice;
  throw std::invalid_argument("unknown model '" + s + "' (expected rc, uc, dc)");
}

// Admissible preference relations per model. Rational choice ranges over
// complete preorders; undominated choice over strict partial orders with at
// least one unranked pair; dominant choice over incomplete preorders.
inline bool admissible_relation(ModelKind k, const Relation& r) {
  switch (k) {
    case ModelKind::RationalChoice:
      return in_class(r, RelationClass::WeakOrder);
    case ModelKind::UndominatedChoice:
      return in_class(r, RelationClass::StrictPartialOrder) &&
             has_incomparable_pair(r);
    case ModelKind::DominantChoice:
      return in_class(r, RelationClass::IncompletePreorder);
  }
  return false;
}

inline std::vector<Relation> enumerate_admissible(ModelKind k, int n) {
  switch (k) {
    case ModelKind::RationalChoice:
      return enumerate_relations(RelationClass::WeakOrder, n);
    case ModelKind::UndominatedChoice: {
      std::vector<Relation> out;
      for (const Relation& r :
           enumerate_relations(RelationClass::StrictPartialOrder, n))
        if (has_incomparable_pair(r)) out.push_back(r);
      return out;
    }
    case ModelKind::DominantChoice:
      return enumerate_relations(RelationClass::IncompletePreorder, n);
  }
  return {};
}

// Predicted choice from a menu. Rational and dominant choice pick the
// greatest elements of a weak relation (dominant choice may come up empty);
// undominated choice picks the maximal elements of a strict relation and is
// never empty.
inline Mask predict(ModelKind k, const Relation& r, Mask menu) {
  if (k == ModelKind::UndominatedChoice) return maximal_elements(r, menu);
  return greatest_elements(r, menu);
}

// Observations the instance fails to reproduce; set equality per menu, one
// unit each.
inline int instance_distance(ModelKind k, const Relation& r, const Dataset& d) {
  int miss = 0;
  for (const Observation& o : d.observations)
    if (predict(k, r, o.menu.members) != o.choice) ++miss;
  return miss;
}

// Menu-major table of predicted choices: pred[menu_index * n_relations + t]
// for relation index t. Lets a per-subject score pass run as a straight
// byte-compare sweep.
struct PredictionTable {
  ModelKind kind;
  std::vector<Relation> relations;  // canonical order
  std::vector<Menu> menus;
  std::vector<Mask> pred;
  std::array<int, 256> menu_index;  // members mask -> index, -1 if absent

  PredictionTable(ModelKind k, std::vector<Relation> rels,
                  const std::vector<Menu>& ms)
      : kind(k), relations(std::move(rels)), menus(ms) {
    menu_index.fill(-1);
    pred.resize(menus.size() * relations.size());
    for (size_t mi = 0; mi < menus.size(); ++mi) {
      menu_index[menus[mi].members] = static_cast<int>(mi);
      Mask* out = pred.data() + mi * relations.size();
      const Mask menu = menus[mi].members;
      for (size_t t = 0; t < relations.size(); ++t)
        out[t] = predict(kind, relations[t], menu);
    }
  }

  // Mismatch counts over the table's relations for one subject.
  // counts[t] = number of the subject's observations relation t reproduces.
  // Returns the observation count.
  int match_counts(const Dataset& d, std::vector<std::uint8_t>* counts) const {
    counts->assign(relations.size(), 0);
    std::uint8_t* cnt = counts->data();
    const size_t nrel = relations.size();
    int n_obs = 0;
    for (const Observation& o : d.observations) {
      int mi = menu_index[o.menu.members];
      if (mi < 0)
        throw std::invalid_argument("prediction table does not cover menu");
      const Mask* p = pred.data() + size_t(mi) * nrel;
      const Mask s = o.choice;
      for (size_t t = 0; t < nrel; ++t) cnt[t] += (p[t] == s);
      ++n_obs;
    }
    return n_obs;
  }
};

struct ScoreResult {
  ModelKind kind;
  int score = 0;
  std::vector<Relation> optimal;  // all minimizers, canonical order
};

namespace detail {

inline void check_scorable(const Dataset& d, size_t n_admissible) {
  if (d.observations.empty())
    throw std::invalid_argument("distance score of an empty dataset");
  if (d.n < 1 || d.n > kMaxAlternatives)
    throw std::invalid_argument("dataset universe size out of range");
  if (n_admissible == 0)
    throw std::invalid_argument(
        "model admits no preference relation on this universe");
}

inline std::vector<Menu> dataset_menus(const Dataset& d) {
  std::vector<Menu> menus;
  for (const Observation& o : d.observations) menus.push_back(o.menu);
  return menus;
}

}  // namespace detail

// Minimal number of observations any admissible relation fails to reproduce,
// with every minimizer. `table` must cover the dataset's menus.
inline ScoreResult distance_score(const Dataset& d, const PredictionTable& table,
                                  bool collect_optimal = true) {
  detail::check_scorable(d, table.relations.size());
  std::vector<std::uint8_t> counts;
  int n_obs = table.match_counts(d, &counts);
  std::uint8_t best = *std::max_element(counts.begin(), counts.end());
  ScoreResult res;
  res.kind = table.kind;
  res.score = n_obs - int(best);
  if (collect_optimal)
    for (size_t t = 0; t < counts.size(); ++t)
      if (counts[t] == best) res.optimal.push_back(table.relations[t]);
  return res;
}

inline ScoreResult distance_score(const Dataset& d, ModelKind k,
                                  bool collect_optimal = true) {
  detail::check_scorable(d, 1);  // validate the dataset before enumerating
  PredictionTable table(k, enumerate_admissible(k, d.n),
                        detail::dataset_menus(d));
  return distance_score(d, table, collect_optimal);
}

struct BestModelResult {
  ModelKind best;
  int score = 0;
  bool tie = false;          // another model reached the same score
  bool tie_with_rc = false;  // rational choice was among the tied minimizers
  std::vector<ModelKind> tied;  // all minimizers, in the order considered
  std::map<ModelKind, ScoreResult> by_model;
};

// Scores every requested model and picks the minimum. Ties go to rational
// choice when it is involved, otherwise to the first model in `kinds`.
inline BestModelResult best_model(const Dataset& d,
                                  const std::vector<ModelKind>& kinds,
                                  const std::vector<const PredictionTable*>* tables = nullptr,
                                  bool collect_optimal = true) {
  if (kinds.empty()) throw std::invalid_argument("best_model: no models given");
  if (tables && tables->size() != kinds.size())
    throw std::invalid_argument("best_model: one table per model required");
  BestModelResult out;
  int best_score = -1;
  for (size_t i = 0; i < kinds.size(); ++i) {
    ScoreResult r = tables ? distance_score(d, *(*tables)[i], collect_optimal)
                           : distance_score(d, kinds[i], collect_optimal);
    if (best_score < 0 || r.score < best_score) best_score = r.score;
    out.by_model.emplace(kinds[i], std::move(r));
  }
  out.score = best_score;
  for (ModelKind k : kinds)
    if (out.by_model.at(k).score == best_score) out.tied.push_back(k);
  out.tie = out.tied.size() > 1;
  bool rc_tied = std::find(out.tied.begin(), out.tied.end(),
                           ModelKind::RationalChoice) != out.tied.end();
  out.tie_with_rc = out.tie && rc_tied;
  out.best = rc_tied ? ModelKind::RationalChoice : out.tied.front();
  return out;
}

// Houtman-Maks style index on active choices: fewest non-deferral
// observations whose removal leaves the rest consistent with rational
// choice. Identical to the rational-choice distance score of the active
// sub-dataset, because every retained observation must be matched exactly.
// An all-deferral dataset needs no removals.
inline int houtman_maks_active(const Dataset& d) {
  Dataset active = active_subdataset(d);
  if (active.observations.empty()) return 0;
  return distance_score(active, ModelKind::RationalChoice, false).score;
}

// Model predictions over a whole menu collection as a dataset. The forced
// flag reflects that only dominant choice can defer.
inline Dataset generate_dataset(ModelKind k, const Relation& r,
                                const MenuCollection& mc,
                                const std::string& subject = "sim") {
  if (r.n != mc.n)
    throw std::invalid_argument("generate_dataset: universe size mismatch");
  if (!admissible_relation(k, r))
    throw std::invalid_argument(
        "generate_dataset: relation not admissible for model " + to_string(k));
  Dataset d;
  d.subject = subject;
  d.forced = k != ModelKind::DominantChoice;
  d.n = mc.n;
  for (const Menu& m : mc.menus)
    d.observations.push_back({m, predict(k, r, m.members)});
  return d;
}

}  // namespace prefrec
