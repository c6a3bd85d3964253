#include "prefrec/simulation.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>

using namespace prefrec;

namespace {

bool same_observations(const Dataset& a, const Dataset& b) {
  if (a.observations.size() != b.observations.size()) return false;
  for (size_t i = 0; i < a.observations.size(); ++i) {
    if (a.observations[i].menu.members != b.observations[i].menu.members ||
        a.observations[i].choice != b.observations[i].choice)
      return false;
  }
  return true;
}

}  // namespace

TEST(Simulate, BinaryForcedMenuIsUniformOverThreeOutcomes) {
  SimConfig cfg;
  cfg.mc = generate_menu_collection(2, {2});
  cfg.n_subjects = 30000;
  cfg.forced = true;
  cfg.seed = 42;
  std::map<Mask, int> counts;
  for (const Dataset& d : simulate_uniform(cfg)) {
    ASSERT_EQ(d.observations.size(), 1u);
    ASSERT_NE(d.observations[0].choice, 0);
    ++counts[d.observations[0].choice];
  }
  ASSERT_EQ(counts.size(), 3u);
  double expected = 30000.0 / 3.0;
  double sigma = std::sqrt(30000.0 * (1.0 / 3.0) * (2.0 / 3.0));
  for (auto [mask, c] : counts)
    EXPECT_NEAR(static_cast<double>(c), expected, 3.0 * sigma) << int(mask);
}

TEST(Simulate, BinaryNonForcedMenuIncludesDeferralAtOneQuarter) {
  SimConfig cfg;
  cfg.mc = generate_menu_collection(2, {2});
  cfg.n_subjects = 40000;
  cfg.forced = false;
  cfg.seed = 7;
  std::map<Mask, int> counts;
  for (const Dataset& d : simulate_uniform(cfg)) ++counts[d.observations[0].choice];
  ASSERT_EQ(counts.size(), 4u);
  EXPECT_TRUE(counts.count(0));
  double expected = 40000.0 / 4.0;
  double sigma = std::sqrt(40000.0 * 0.25 * 0.75);
  for (auto [mask, c] : counts)
    EXPECT_NEAR(static_cast<double>(c), expected, 3.0 * sigma) << int(mask);
}

TEST(Simulate, TripleMenuUniformOverSevenForcedOutcomes) {
  SimConfig cfg;
  cfg.mc = generate_menu_collection(3, {3});
  cfg.n_subjects = 35000;
  cfg.forced = true;
  cfg.seed = 99;
  std::map<Mask, int> counts;
  for (const Dataset& d : simulate_uniform(cfg)) ++counts[d.observations[0].choice];
  ASSERT_EQ(counts.size(), 7u);
  double expected = 35000.0 / 7.0;
  double sigma = std::sqrt(35000.0 * (1.0 / 7.0) * (6.0 / 7.0));
  for (auto [mask, c] : counts)
    EXPECT_NEAR(static_cast<double>(c), expected, 3.0 * sigma) << int(mask);
}

TEST(Simulate, OutcomesStayInsideTheirMenus) {
  SimConfig cfg;
  cfg.mc = generate_menu_collection(5, {2, 3, 4});
  cfg.n_subjects = 200;
  cfg.forced = false;
  cfg.seed = 3;
  for (const Dataset& d : simulate_uniform(cfg)) {
    EXPECT_FALSE(d.forced);
    for (const Observation& o : d.observations)
      EXPECT_EQ(o.choice & ~o.menu.members, 0);
  }
}

TEST(Simulate, SameSeedReproducesBitForBit) {
  SimConfig cfg;
  cfg.mc = generate_menu_collection(4, {2, 3, 4});
  cfg.n_subjects = 50;
  cfg.forced = true;
  cfg.seed = 1234;
  std::vector<Dataset> a = simulate_uniform(cfg);
  std::vector<Dataset> b = simulate_uniform(cfg);
  ASSERT_EQ(a.size(), b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].subject, b[i].subject);
    EXPECT_TRUE(same_observations(a[i], b[i]));
  }
  cfg.seed = 1235;
  std::vector<Dataset> c = simulate_uniform(cfg);
  bool any_diff = false;
  for (size_t i = 0; i < a.size(); ++i) any_diff |= !same_observations(a[i], c[i]);
  EXPECT_TRUE(any_diff);
}

TEST(Simulate, SubjectStreamsDependOnlyOnSeedAndIndex) {
  SimConfig cfg;
  cfg.mc = generate_menu_collection(4, {2, 3});
  cfg.forced = false;
  cfg.seed = 88;
  cfg.n_subjects = 10;
  std::vector<Dataset> long_run = simulate_uniform(cfg);
  cfg.n_subjects = 4;
  std::vector<Dataset> short_run = simulate_uniform(cfg);
  for (int i = 0; i < 4; ++i)
    EXPECT_TRUE(same_observations(long_run[i], short_run[i])) << i;
  // Direct per-subject generation matches its slot in the batch.
  cfg.n_subjects = 10;
  EXPECT_TRUE(same_observations(simulate_subject(cfg, 7), long_run[7]));
  EXPECT_EQ(long_run[7].subject, "sim8");
}

TEST(Simulate, RejectsBadConfigs) {
  SimConfig cfg;
  cfg.mc = generate_menu_collection(2, {2});
  cfg.n_subjects = 0;
  EXPECT_THROW(simulate_uniform(cfg), std::invalid_argument);
  cfg.n_subjects = 1;
  cfg.mc.menus.clear();
  EXPECT_THROW(simulate_uniform(cfg), std::invalid_argument);
}

TEST(Cutoff, NearestRankAndMinimum) {
  std::vector<int> one_to_hundred;
  for (int i = 1; i <= 100; ++i) one_to_hundred.push_back(i);
  CutoffResult r = cutoff(one_to_hundred, 2.5);
  EXPECT_DOUBLE_EQ(r.value, 3.0);
  EXPECT_DOUBLE_EQ(r.minimum, 1.0);
  EXPECT_DOUBLE_EQ(cutoff(one_to_hundred, 97.5).value, 98.0);
  EXPECT_DOUBLE_EQ(cutoff(one_to_hundred, 50.0).value, 50.0);

  std::vector<int> constant(17, 9);
  EXPECT_DOUBLE_EQ(cutoff(constant, 2.5).value, 9.0);
  EXPECT_DOUBLE_EQ(cutoff(constant, 99.9).value, 9.0);

  // Order of the input must not matter.
  std::vector<int> shuffled = {5, 1, 4, 2, 3};
  EXPECT_DOUBLE_EQ(cutoff(shuffled, 40.0).value, 2.0);
  EXPECT_DOUBLE_EQ(cutoff(shuffled, 41.0).value, 3.0);
  EXPECT_DOUBLE_EQ(cutoff(shuffled, 2.5).value, 1.0);
}

TEST(Cutoff, RejectsEmptyAndOutOfRange) {
  std::vector<int> empty;
  EXPECT_THROW(cutoff(empty, 2.5), std::invalid_argument);
  std::vector<int> xs = {1, 2};
  EXPECT_THROW(cutoff(xs, 0.0), std::invalid_argument);
  EXPECT_THROW(cutoff(xs, 100.0), std::invalid_argument);
  EXPECT_THROW(cutoff(xs, -3.0), std::invalid_argument);
}

TEST(Simulate, EverySmallMenuOutcomeEventuallyAppears) {
  SimConfig cfg;
  cfg.mc = generate_menu_collection(3, {2, 3});
  cfg.n_subjects = 500;
  cfg.forced = false;
  cfg.seed = 5;
  std::map<Mask, std::map<Mask, int>> seen;
  for (const Dataset& d : simulate_uniform(cfg))
    for (const Observation& o : d.observations) ++seen[o.menu.members][o.choice];
  for (const Menu& m : cfg.mc.menus) {
    size_t want = 1u << m.size();
    EXPECT_EQ(seen[m.members].size(), want);
  }
}

TEST(Simulate, ExtraOptionDefersLikeAnAdditionalAlternative) {
  // With deferral as an extra option on a binary menu the subject defers with
  // probability 1/3 and otherwise splits the three nonempty subsets evenly,
  // so each nonempty outcome carries probability 2/9.
  SimConfig cfg;
  cfg.mc = generate_menu_collection(2, {2});
  cfg.n_subjects = 45000;
  cfg.forced = false;
  cfg.seed = 77;
  cfg.deferral = DeferralDesign::ExtraOption;
  std::map<Mask, int> counts;
  for (const Dataset& d : simulate_uniform(cfg)) ++counts[d.observations[0].choice];
  ASSERT_EQ(counts.size(), 4u);
  auto near = [&](Mask mask, double p) {
    double sigma = std::sqrt(45000.0 * p * (1.0 - p));
    EXPECT_NEAR(static_cast<double>(counts[mask]), 45000.0 * p, 3.0 * sigma)
        << int(mask);
  };
  near(0, 1.0 / 3.0);
  near(0b01, 2.0 / 9.0);
  near(0b10, 2.0 / 9.0);
  near(0b11, 2.0 / 9.0);
}

TEST(Simulate, ExtraOptionDefersMoreOftenOnLargerMenus) {
  // Deferral probability 1/(m+1) is pinned per menu size: 1/3, 1/4, 1/5.
  SimConfig cfg;
  cfg.mc = generate_menu_collection(6, {2, 3, 4});
  cfg.n_subjects = 4000;
  cfg.forced = false;
  cfg.seed = 11;
  cfg.deferral = DeferralDesign::ExtraOption;
  std::map<int, std::pair<int, int>> defer_by_size;  // size -> (deferrals, obs)
  for (const Dataset& d : simulate_uniform(cfg))
    for (const Observation& o : d.observations) {
      auto& [def, tot] = defer_by_size[o.menu.size()];
      def += o.choice == 0;
      ++tot;
    }
  for (auto [sz, dt] : defer_by_size) {
    double p = 1.0 / (sz + 1);
    double n = static_cast<double>(dt.second);
    EXPECT_NEAR(static_cast<double>(dt.first) / n, p, 3.0 * std::sqrt(p * (1 - p) / n))
        << sz;
  }
}

TEST(Simulate, ForcedOutputIgnoresDeferralDesign) {
  SimConfig a;
  a.mc = generate_menu_collection(4, {2, 3});
  a.n_subjects = 50;
  a.forced = true;
  a.seed = 9;
  SimConfig b = a;
  b.deferral = DeferralDesign::ExtraOption;
  std::vector<Dataset> da = simulate_uniform(a), db = simulate_uniform(b);
  for (size_t i = 0; i < da.size(); ++i) EXPECT_TRUE(same_observations(da[i], db[i]));
}

TEST(Simulate, DeferralDesignsDivergeWithoutForcing) {
  SimConfig a;
  a.mc = generate_menu_collection(4, {2, 3});
  a.n_subjects = 50;
  a.forced = false;
  a.seed = 9;
  SimConfig b = a;
  b.deferral = DeferralDesign::ExtraOption;
  std::vector<Dataset> da = simulate_uniform(a), db = simulate_uniform(b);
  bool any_diff = false;
  for (size_t i = 0; i < da.size(); ++i) any_diff |= !same_observations(da[i], db[i]);
  EXPECT_TRUE(any_diff);
  EXPECT_EQ(to_string(DeferralDesign::UniformSubsets), "uniform-subsets");
  EXPECT_EQ(to_string(DeferralDesign::ExtraOption), "extra-option");
}
