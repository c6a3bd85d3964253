#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "prefrec/dataset.hpp"
#include "prefrec/models.hpp"
#include "prefrec/relation.hpp"

namespace prefrec {

struct RevealedRelations {
  Relation weak;             // x chosen from a menu containing y
  Relation strict;           // x chosen, y present but rejected
  Relation weak_hat;         // transitive closure of weak
  Relation strict_star;      // strict, with no weak revelation back
  Relation strict_star_hat;  // transitive closure of strict_star
};

inline RevealedRelations compute_revealed(const Dataset& d) {
  RevealedRelations rr;
  const auto n = d.n;
  rr.weak.n = rr.strict.n = rr.strict_star.n = n;
  for (const Observation& o : d.observations) {
    for (int x = 0; x < n; ++x) {
      if (!((o.choice >> x) & 1u)) continue;
      rr.weak.row[x] = static_cast<Mask>(rr.weak.row[x] | o.menu.members);
      rr.strict.row[x] = static_cast<Mask>(
          rr.strict.row[x] | (o.menu.members & ~o.choice));
    }
  }
  rr.weak_hat = transitive_closure(rr.weak);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (rr.strict.contains(x, y) && !rr.weak.contains(y, x))
        rr.strict_star.set(x, y);
  rr.strict_star_hat = transitive_closure(rr.strict_star);
  return rr;
}

enum class Axiom {
  BehaviouralDecisiveness,
  GeneralizedCongruence,
  UpwardConsistency,
  Congruence,
  Expansion,
  Desirability,
  PropertyAlpha,
};

constexpr Axiom kAllAxioms[] = {
    Axiom::BehaviouralDecisiveness, Axiom::GeneralizedCongruence,
    Axiom::UpwardConsistency,       Axiom::Congruence,
    Axiom::Expansion,               Axiom::Desirability,
    Axiom::PropertyAlpha};

inline std::string to_string(Axiom a) {
  switch (a) {
    case Axiom::BehaviouralDecisiveness: return "behavioural-decisiveness";
    case Axiom::GeneralizedCongruence: return "generalized-congruence";
    case Axiom::UpwardConsistency: return "upward-consistency";
    case Axiom::Congruence: return "congruence";
    case Axiom::Expansion: return "expansion";
    case Axiom::Desirability: return "desirability";
    case Axiom::PropertyAlpha: return "property-alpha";
  }
  return "?";
}

// A violation instance: the observation indices and alternatives involved.
struct AxiomWitness {
  std::vector<int> observations;
  std::vector<int> alternatives;
};

struct AxiomReport {
  Axiom axiom;
  bool holds = true;
  std::vector<AxiomWitness> witnesses;
  bool truncated = false;  // collection stopped at the witness cap
};

// max_witnesses = 0 lifts the cap.
inline AxiomReport check_axiom(const Dataset& d, Axiom axiom,
                               const RevealedRelations& rr,
                               std::size_t max_witnesses = 100) {
  AxiomReport rep;
  rep.axiom = axiom;
  auto add = [&](AxiomWitness w) {
    rep.holds = false;
    if (max_witnesses == 0 || rep.witnesses.size() < max_witnesses) {
      rep.witnesses.push_back(std::move(w));
      return true;
    }
    rep.truncated = true;
    return false;
  };
  const int n = d.n;
  const auto& obs = d.observations;
  switch (axiom) {
    case Axiom::BehaviouralDecisiveness:
      for (size_t i = 0; i < obs.size(); ++i)
        if (obs[i].choice == 0)
          if (!add({{int(i)}, {}})) return rep;
      break;
    case Axiom::GeneralizedCongruence:
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (rr.strict_star_hat.contains(x, y) && rr.weak.contains(y, x))
            if (!add({{}, {x, y}})) return rep;
      break;
    case Axiom::UpwardConsistency:
      for (size_t i = 0; i < obs.size(); ++i)
        for (int x = 0; x < n; ++x) {
          if (!((obs[i].menu.members >> x) & 1u)) continue;
          if ((obs[i].choice >> x) & 1u) continue;
          bool dominated = false;
          for (int y = 0; y < n; ++y)
            if (((obs[i].menu.members >> y) & 1u) &&
                rr.strict_star_hat.contains(y, x))
              dominated = true;
          if (!dominated)
            if (!add({{int(i)}, {x}})) return rep;
        }
      break;
    case Axiom::Congruence:
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (rr.weak_hat.contains(x, y) && rr.strict.contains(y, x))
            if (!add({{}, {x, y}})) return rep;
      break;
    case Axiom::Expansion:
      for (size_t i = 0; i < obs.size(); ++i)
        for (int x = 0; x < n; ++x) {
          if (!((obs[i].menu.members >> x) & 1u)) continue;
          if ((obs[i].choice >> x) & 1u) continue;
          // x must weakly dominate every menu element, itself included.
          if ((obs[i].menu.members & ~rr.weak_hat.row[x]) == 0)
            if (!add({{int(i)}, {x}})) return rep;
        }
      break;
    case Axiom::Desirability:
      for (size_t i = 0; i < obs.size(); ++i)
        if (obs[i].menu.size() == 1 && obs[i].choice != obs[i].menu.members)
          if (!add({{int(i)},
                    {int(std::countr_zero(unsigned(obs[i].menu.members)))}}))
            return rep;
      break;
    case Axiom::PropertyAlpha:
      for (size_t i = 0; i < obs.size(); ++i)
        for (size_t j = 0; j < obs.size(); ++j) {
          if (i == j) continue;
          if (obs[j].menu.members & ~obs[i].menu.members) continue;
          Mask broken = static_cast<Mask>(obs[i].choice & obs[j].menu.members &
                                          ~obs[j].choice);
          for (int x = 0; x < n; ++x)
            if ((broken >> x) & 1u)
              if (!add({{int(i), int(j)}, {x}})) return rep;
        }
      break;
  }
  return rep;
}

inline AxiomReport check_axiom(const Dataset& d, Axiom axiom,
                               std::size_t max_witnesses = 100) {
  return check_axiom(d, axiom, compute_revealed(d), max_witnesses);
}

struct RationalizationResult {
  std::optional<Relation> relation;
  std::vector<AxiomReport> failed;  // empty exactly when relation is set
};

namespace detail {

inline bool gather_failures(const Dataset& d, const RevealedRelations& rr,
                            std::initializer_list<Axiom> axioms,
                            std::vector<AxiomReport>* failed) {
  for (Axiom a : axioms) {
    AxiomReport rep = check_axiom(d, a, rr);
    if (!rep.holds) failed->push_back(std::move(rep));
  }
  return failed->empty();
}

}  // namespace detail

// Undominated-choice rationalization: under behavioural decisiveness,
// generalized congruence and upward consistency the indirect strict revealed
// relation reproduces every observation as its menu-maximal elements.
inline RationalizationResult rationalize_undominated(const Dataset& d) {
  RevealedRelations rr = compute_revealed(d);
  RationalizationResult out;
  if (!detail::gather_failures(d, rr,
                               {Axiom::BehaviouralDecisiveness,
                                Axiom::GeneralizedCongruence,
                                Axiom::UpwardConsistency},
                               &out.failed))
    return out;
  const Relation& r = rr.strict_star_hat;
  if (!in_class(r, RelationClass::StrictPartialOrder))
    throw std::logic_error(
        "rationalize_undominated: revealed relation is not a strict partial "
        "order despite the axioms holding");
  for (const Observation& o : d.observations)
    if (maximal_elements(r, o.menu.members) != o.choice)
      throw std::logic_error(
          "rationalize_undominated: verification against an observation "
          "failed despite the axioms holding");
  out.relation = r;
  return out;
}

// Dominant-choice rationalization: under congruence, desirability and
// expansion the reflexive closure of the indirect weak revealed relation
// reproduces every observation as its greatest elements.
inline RationalizationResult rationalize_dominant(const Dataset& d) {
  RevealedRelations rr = compute_revealed(d);
  RationalizationResult out;
  if (!detail::gather_failures(
          d, rr, {Axiom::Congruence, Axiom::Expansion, Axiom::Desirability},
          &out.failed))
    return out;
  Relation r = rr.weak_hat;
  for (int i = 0; i < d.n; ++i) r.set(i, i);
  if (!in_class(r, RelationClass::Preorder))
    throw std::logic_error(
        "rationalize_dominant: closure construction is not a preorder");
  for (const Observation& o : d.observations)
    if (greatest_elements(r, o.menu.members) != o.choice)
      throw std::logic_error(
          "rationalize_dominant: verification against an observation failed "
          "despite the axioms holding");
  out.relation = r;
  return out;
}

// Classical full-rationality recovery: under behavioural decisiveness and
// congruence, extend the indirect weak revealed preorder to a complete one
// by layering its indifference classes; unranked classes are ordered by
// smallest member index. The extension keeps every revealed strict pair
// strict, which makes it rationalize the data.
inline RationalizationResult richter_rationalize(const Dataset& d) {
  RevealedRelations rr = compute_revealed(d);
  RationalizationResult out;
  if (!detail::gather_failures(
          d, rr, {Axiom::BehaviouralDecisiveness, Axiom::Congruence},
          &out.failed))
    return out;
  const int n = d.n;
  Relation p = rr.weak_hat;
  for (int i = 0; i < n; ++i) p.set(i, i);

  // Indifference classes of p.
  std::vector<int> cls(n, -1);
  int n_cls = 0;
  for (int i = 0; i < n; ++i) {
    if (cls[i] >= 0) continue;
    cls[i] = n_cls;
    for (int j = i + 1; j < n; ++j)
      if (p.contains(i, j) && p.contains(j, i)) cls[j] = n_cls;
    ++n_cls;
  }
  // Strict order between classes.
  std::vector<std::vector<bool>> above(n_cls, std::vector<bool>(n_cls, false));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (p.contains(i, j) && !p.contains(j, i)) above[cls[i]][cls[j]] = true;
  // Layer classes top-down; among sources pick the smallest member index.
  std::vector<int> min_member(n_cls, n);
  for (int i = n - 1; i >= 0; --i) min_member[cls[i]] = i;
  std::vector<int> rank(n_cls, -1);
  std::vector<bool> placed(n_cls, false);
  for (int next = 0; next < n_cls; ++next) {
    int pick = -1;
    for (int c = 0; c < n_cls; ++c) {
      if (placed[c]) continue;
      bool source = true;
      for (int other = 0; other < n_cls; ++other)
        if (!placed[other] && other != c && above[other][c]) source = false;
      if (!source) continue;
      if (pick < 0 || min_member[c] < min_member[pick]) pick = c;
    }
    if (pick < 0)
      throw std::logic_error("richter_rationalize: cycle among strict classes");
    placed[pick] = true;
    rank[pick] = next;
  }
  Relation w;
  w.n = static_cast<std::uint8_t>(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (rank[cls[i]] <= rank[cls[j]]) w.set(i, j);
  if (!in_class(w, RelationClass::WeakOrder))
    throw std::logic_error("richter_rationalize: extension is not a weak order");
  for (const Observation& o : d.observations)
    if (greatest_elements(w, o.menu.members) != o.choice)
      throw std::logic_error(
          "richter_rationalize: verification against an observation failed "
          "despite the axioms holding");
  out.relation = w;
  return out;
}

}  // namespace prefrec
