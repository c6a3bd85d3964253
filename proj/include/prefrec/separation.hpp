#pragma once

// Behavioural separation of revealed indifference from revealed
// indecisiveness.  Two data-side criteria are implemented: the dominant-choice
// criterion (indifferent iff always chosen or rejected together, indecisive
// iff neither is ever chosen in the other's presence) and the Eliaz-Ok
// criterion (indifference upgrades for unranked pairs of a recovered strict
// partial order, indecisiveness from choice reversals).  A third,
// relation-side classifier reads the same statuses off the parts of a
// recovered relation.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "prefrec/dataset.hpp"
#include "prefrec/models.hpp"
#include "prefrec/relation.hpp"

namespace prefrec {

enum class PairStatus : std::uint8_t {
  StrictPreferred,
  StrictDispreferred,
  Indifferent,
  Indecisive,
  Unobserved,
  Unclassified,
};

enum class SeparationCriterion : std::uint8_t {
  DominantChoice,
  EliazOk,
  FromRelation,
};

inline const char* to_string(PairStatus s) {
  switch (s) {
    case PairStatus::StrictPreferred: return "strict-preferred";
    case PairStatus::StrictDispreferred: return "strict-dispreferred";
    case PairStatus::Indifferent: return "indifferent";
    case PairStatus::Indecisive: return "indecisive";
    case PairStatus::Unobserved: return "unobserved";
    case PairStatus::Unclassified: return "unclassified";
  }
  return "?";
}

inline const char* to_string(SeparationCriterion c) {
  switch (c) {
    case SeparationCriterion::DominantChoice: return "dominant-choice";
    case SeparationCriterion::EliazOk: return "eliaz-ok";
    case SeparationCriterion::FromRelation: return "from-relation";
  }
  return "?";
}

// Status of (y, x) given the status of (x, y).
inline PairStatus mirror(PairStatus s) {
  switch (s) {
    case PairStatus::StrictPreferred: return PairStatus::StrictDispreferred;
    case PairStatus::StrictDispreferred: return PairStatus::StrictPreferred;
    default: return s;
  }
}

// One unordered pair x < y, read from x's side: StrictPreferred means x is
// preferred to y.
struct PairClassification {
  int x = 0;
  int y = 0;
  PairStatus status = PairStatus::Unobserved;
  SeparationCriterion criterion = SeparationCriterion::DominantChoice;
};

inline Relation with_diagonal(Relation r) {
  for (int i = 0; i < r.n; ++i) r.set(i, i);
  return r;
}

// Dominant-choice criterion, applied directly to the data.  For each pair the
// co-occurrence pattern decides: never co-feasible -> Unobserved; always
// chosen or rejected together with at least one joint choice -> Indifferent;
// neither ever chosen in the other's presence -> Indecisive; one side never
// chosen while the other is chosen at least once -> strict preference; any
// other (inconsistent) pattern -> Unclassified.
inline std::vector<PairClassification> separate_dominant(const Dataset& d) {
  std::vector<PairClassification> out;
  for (int x = 0; x < d.n; ++x)
    for (int y = x + 1; y < d.n; ++y) {
      int co = 0, joint_choice = 0, joint_reject = 0, chose_x = 0, chose_y = 0;
      for (const Observation& o : d.observations) {
        if (!has_bit(o.menu.members, x) || !has_bit(o.menu.members, y)) continue;
        ++co;
        bool cx = has_bit(o.choice, x), cy = has_bit(o.choice, y);
        joint_choice += (cx && cy);
        joint_reject += (!cx && !cy);
        chose_x += cx;
        chose_y += cy;
      }
      PairStatus s;
      if (co == 0)
        s = PairStatus::Unobserved;
      else if (joint_choice >= 1 && joint_choice + joint_reject == co)
        s = PairStatus::Indifferent;
      else if (chose_x == 0 && chose_y == 0)
        s = PairStatus::Indecisive;
      else if (chose_y == 0)
        s = PairStatus::StrictPreferred;
      else if (chose_x == 0)
        s = PairStatus::StrictDispreferred;
      else
        s = PairStatus::Unclassified;
      out.push_back({x, y, s, SeparationCriterion::DominantChoice});
    }
  return out;
}

// Reads the classification off the parts of a reflexive relation: asymmetric
// part -> strict preference, off-diagonal symmetric part -> Indifferent,
// incomparable part -> Indecisive.
inline std::vector<PairClassification> classify_from_relation(
    const Relation& r) {
  for (int i = 0; i < r.n; ++i)
    if (!r.contains(i, i))
      throw std::invalid_argument(
          "classify_from_relation: relation must be reflexive");
  RelationParts p = parts(r);
  std::vector<PairClassification> out;
  for (int x = 0; x < r.n; ++x)
    for (int y = x + 1; y < r.n; ++y) {
      PairStatus s;
      if (p.strict.contains(x, y))
        s = PairStatus::StrictPreferred;
      else if (p.strict.contains(y, x))
        s = PairStatus::StrictDispreferred;
      else if (p.indifference.contains(x, y))
        s = PairStatus::Indifferent;
      else
        s = PairStatus::Indecisive;
      out.push_back({x, y, s, SeparationCriterion::FromRelation});
    }
  return out;
}

// Eliaz-Ok separation relative to a recovered strict partial order.  The
// together/reversal patterns are read off the sub-dataset the relation
// explains; observations it fails to reproduce are listed as unexplained and
// excluded from that evidence.  Unranked pairs whose consistent evidence
// settles nothing are classified against the recovered relation itself
// (criterion tag FromRelation).  `raw_pairs` reports the same criteria
// evaluated over every observation, noisy or not, as a separate record.
struct EliazOkSeparation {
  std::vector<PairClassification> pairs;      // final classification
  std::vector<PairClassification> raw_pairs;  // criteria over all observations
  std::vector<int> unexplained;  // observation indices the relation misses
  Relation induced;              // strict part + diagonal + indifferences
  bool induced_preorder = false;
  bool regular = false;

  // The interpretation separates indifference from indecisiveness only when
  // the induced weak relation is a regular preorder.
  bool separating() const { return induced_preorder && regular; }
};

inline EliazOkSeparation separate_eliaz_ok(const Dataset& d,
                                           const Relation& recovered) {
  if (recovered.n != d.n)
    throw std::invalid_argument(
        "separate_eliaz_ok: relation and dataset sizes differ");
  if (!in_class(recovered, RelationClass::StrictPartialOrder))
    throw std::invalid_argument(
        "separate_eliaz_ok: recovered relation must be a strict partial "
        "order");

  EliazOkSeparation out;
  std::vector<Observation> consistent;
  for (size_t i = 0; i < d.observations.size(); ++i) {
    const Observation& o = d.observations[i];
    if (maximal_elements(recovered, o.menu.members) == o.choice)
      consistent.push_back(o);
    else
      out.unexplained.push_back(static_cast<int>(i));
  }

  // Together/reversal patterns for an unranked pair over an observation set.
  // A reversal needs its two roles in distinct menus; an observation
  // witnessing x over y never also witnesses y chosen, so distinctness is
  // implied.
  auto patterns = [](const std::vector<Observation>& obs, int x, int y) {
    int co = 0, joint_choice = 0, together = 0;
    bool x_over_y = false, y_with_x = false;
    bool y_over_x = false, x_with_y = false;
    for (const Observation& o : obs) {
      if (!has_bit(o.menu.members, x) || !has_bit(o.menu.members, y)) continue;
      ++co;
      bool cx = has_bit(o.choice, x), cy = has_bit(o.choice, y);
      joint_choice += (cx && cy);
      together += (cx == cy);
      x_over_y |= (cx && !cy);
      y_with_x |= cy;
      y_over_x |= (cy && !cx);
      x_with_y |= cx;
    }
    bool indifferent = co > 0 && joint_choice >= 1 && together == co;
    bool reversal = (x_over_y && y_with_x) || (y_over_x && x_with_y);
    PairStatus s = indifferent ? PairStatus::Indifferent
                 : reversal    ? PairStatus::Indecisive
                 : co > 0      ? PairStatus::Unclassified
                               : PairStatus::Unobserved;
    return s;
  };
  Relation induced = with_diagonal(recovered);
  for (int x = 0; x < d.n; ++x)
    for (int y = x + 1; y < d.n; ++y) {
      if (recovered.contains(x, y)) {
        PairStatus s = PairStatus::StrictPreferred;
        out.pairs.push_back({x, y, s, SeparationCriterion::EliazOk});
        out.raw_pairs.push_back({x, y, s, SeparationCriterion::EliazOk});
        continue;
      }
      if (recovered.contains(y, x)) {
        PairStatus s = PairStatus::StrictDispreferred;
        out.pairs.push_back({x, y, s, SeparationCriterion::EliazOk});
        out.raw_pairs.push_back({x, y, s, SeparationCriterion::EliazOk});
        continue;
      }
      PairStatus raw = patterns(d.observations, x, y);
      out.raw_pairs.push_back({x, y, raw, SeparationCriterion::EliazOk});
      PairStatus s = patterns(consistent, x, y);
      SeparationCriterion tag = SeparationCriterion::EliazOk;
      if (s == PairStatus::Indifferent) {
        induced.set(x, y);
        induced.set(y, x);
      } else if (s == PairStatus::Unclassified ||
                 (s == PairStatus::Unobserved && raw != PairStatus::Unobserved)) {
        // Consistent evidence settles nothing although the pair was seen:
        // fall back to the relation, which leaves unranked pairs indecisive.
        s = PairStatus::Indecisive;
        tag = SeparationCriterion::FromRelation;
      }
      out.pairs.push_back({x, y, s, tag});
    }

  out.induced = induced;
  out.induced_preorder = in_class(induced, RelationClass::Preorder);
  out.regular = out.induced_preorder && is_regular(induced);
  return out;
}

}  // namespace prefrec
