#pragma once

// Descriptive statistics per subject plus the two behavioural screens: the
// satisficing screen (first-listed-item frequency and average chosen
// position against simulation-calibrated cutoffs) and the
// choose-everything-randomization screen.

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "prefrec/dataset.hpp"

namespace prefrec {

struct ChoiceProportions {
  std::vector<double> per_observation;  // |choice| / |menu|, deferral = 0
  double average_with_deferrals = 0.0;
  double average_active = 0.0;  // deferrals excluded; 0 when no active obs
};

inline ChoiceProportions choice_proportions(const Dataset& d) {
  ChoiceProportions out;
  double sum = 0.0, active_sum = 0.0;
  int active = 0;
  for (const Observation& o : d.observations) {
    double p = static_cast<double>(popcount(o.choice)) /
               static_cast<double>(popcount(o.menu.members));
    out.per_observation.push_back(p);
    sum += p;
    if (o.choice != 0) {
      active_sum += p;
      ++active;
    }
  }
  if (!out.per_observation.empty())
    out.average_with_deferrals = sum / static_cast<double>(out.per_observation.size());
  if (active > 0) out.average_active = active_sum / active;
  return out;
}

// Frequency of each choice size s adjusted for feasibility: the denominator
// counts only menus large enough to produce a size-s choice (every menu can
// produce a deferral or a singleton), times the number of subjects.  The
// size-0 row appears only when some dataset permits deferrals.
inline std::map<int, double> adjusted_choice_size_frequencies(
    const std::vector<Dataset>& datasets, const MenuCollection& mc) {
  if (datasets.empty())
    throw std::invalid_argument("adjusted frequencies: no datasets");
  std::map<int, int> counts;
  bool any_non_forced = false;
  int max_menu = 0;
  for (const Menu& m : mc.menus) max_menu = std::max(max_menu, popcount(m.members));
  for (const Dataset& d : datasets) {
    if (d.n != mc.n || d.observations.size() != mc.menus.size())
      throw std::invalid_argument(
          "adjusted frequencies: dataset does not match the menu collection");
    for (const Observation& o : d.observations) {
      bool known = false;
      for (const Menu& m : mc.menus) known |= m.members == o.menu.members;
      if (!known)
        throw std::invalid_argument(
            "adjusted frequencies: observation menu outside the collection");
      ++counts[popcount(o.choice)];
    }
    any_non_forced |= !d.forced;
  }
  std::map<int, double> out;
  double n_subjects = static_cast<double>(datasets.size());
  for (int s = any_non_forced ? 0 : 1; s <= max_menu; ++s) {
    int feasible = 0;
    for (const Menu& m : mc.menus) feasible += popcount(m.members) >= std::max(s, 1);
    int c = counts.count(s) ? counts[s] : 0;
    out[s] = static_cast<double>(c) / (n_subjects * feasible);
  }
  return out;
}

struct SubjectMetrics {
  double avg_choice_proportion = 0.0;         // deferrals count as 0
  double avg_choice_proportion_active = 0.0;  // deferrals dropped
  int deferral_count = 0;
  int choose_everything_count = 0;
  // Fraction of active observations whose choice is exactly the first listed
  // item of the menu.
  double first_item_only_frequency = 0.0;
  // Mean over active observations of the per-observation mean 1-based list
  // position of the chosen items.  The pooled variant averages over all
  // chosen items directly, which weights large choices more heavily.
  double avg_chosen_position = 0.0;
  double avg_chosen_position_pooled = 0.0;
  std::map<int, double> adjusted_choice_size_freqs;
};

inline SubjectMetrics compute_subject_metrics(const Dataset& d) {
  SubjectMetrics m;
  ChoiceProportions cp = choice_proportions(d);
  m.avg_choice_proportion = cp.average_with_deferrals;
  m.avg_choice_proportion_active = cp.average_active;

  int active = 0, first_only = 0, items = 0;
  double position_sum = 0.0, per_obs_mean_sum = 0.0;
  for (const Observation& o : d.observations) {
    if (o.choice == 0) {
      ++m.deferral_count;
      continue;
    }
    ++active;
    if (o.choice == o.menu.members) ++m.choose_everything_count;
    if (o.choice == bit(o.menu.order[0])) ++first_only;
    int sz = popcount(o.menu.members);
    double obs_sum = 0.0;
    int obs_items = 0;
    for (int pos = 0; pos < sz; ++pos)
      if (has_bit(o.choice, o.menu.order[pos])) {
        obs_sum += pos + 1;
        ++obs_items;
      }
    position_sum += obs_sum;
    items += obs_items;
    per_obs_mean_sum += obs_sum / obs_items;
  }
  if (active > 0) {
    m.first_item_only_frequency = static_cast<double>(first_only) / active;
    m.avg_chosen_position = per_obs_mean_sum / active;
    m.avg_chosen_position_pooled = position_sum / items;
  }

  MenuCollection mc;
  mc.n = d.n;
  for (const Observation& o : d.observations) mc.menus.push_back(o.menu);
  m.adjusted_choice_size_freqs = adjusted_choice_size_frequencies({d}, mc);
  return m;
}

struct SatisficingCutoffs {
  double first_item_frequency = 0.28;
  double position = 1.84;
};

struct SatisficingFlags {
  bool first_item_flag = false;
  bool position_flag = false;
};

// Flags fire on strict comparisons: frequency above the cutoff, position
// below it.  A subject with no active choices gives the screen nothing to
// work with and is never flagged.
inline SatisficingFlags satisficing_screen(const Dataset& d,
                                           const SatisficingCutoffs& cutoffs) {
  SubjectMetrics m = compute_subject_metrics(d);
  SatisficingFlags f;
  if (m.deferral_count == static_cast<int>(d.observations.size())) return f;
  f.first_item_flag = m.first_item_only_frequency > cutoffs.first_item_frequency;
  f.position_flag = m.avg_chosen_position < cutoffs.position;
  return f;
}

inline bool randomization_screen(const Dataset& d, int cutoff) {
  int count = 0;
  for (const Observation& o : d.observations) count += o.choice == o.menu.members;
  return count > cutoff;
}

}  // namespace prefrec
