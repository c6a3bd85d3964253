#include "prefrec/models.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace prefrec;

namespace {

// Admissible sets recomputed by brute force over all bit matrices, with
// definitional property loops. Independent of classify() and the extension
// enumerators used by the library.
std::vector<Relation> oracle_admissible(ModelKind kind, int n) {
  std::vector<Relation> out;
  const int cells = n * n;
  for (std::uint64_t bits = 0; bits < (1ull << cells); ++bits) {
    auto rel = [&](int i, int j) { return bool((bits >> (i * n + j)) & 1ull); };
    bool reflexive = true, irreflexive = true, transitive = true;
    bool complete = true, asymmetric = true;
    for (int i = 0; i < n; ++i) {
      if (rel(i, i)) irreflexive = false;
      if (!rel(i, i)) reflexive = false;
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (rel(i, j) && rel(j, i)) asymmetric = false;
        if (i != j && !rel(i, j) && !rel(j, i)) complete = false;
        for (int k = 0; k < n; ++k)
          if (rel(i, j) && rel(j, k) && !rel(i, k)) transitive = false;
      }
    bool keep = false;
    switch (kind) {
      case ModelKind::RationalChoice:
        keep = reflexive && transitive && complete;
        break;
      case ModelKind::UndominatedChoice:
        keep = irreflexive && asymmetric && transitive && !complete;
        break;
      case ModelKind::DominantChoice:
        keep = reflexive && transitive && !complete;
        break;
    }
    if (!keep) continue;
    Relation r;
    r.n = static_cast<std::uint8_t>(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (rel(i, j)) r.set(i, j);
    out.push_back(r);
  }
  return out;
}

Mask oracle_predict(ModelKind kind, const Relation& r, Mask menu) {
  Mask out = 0;
  for (int x = 0; x < r.n; ++x) {
    if (!((menu >> x) & 1u)) continue;
    bool in = true;
    for (int y = 0; y < r.n; ++y) {
      if (!((menu >> y) & 1u)) continue;
      if (kind == ModelKind::UndominatedChoice) {
        if (r.contains(y, x)) in = false;  // strictly dominated
      } else {
        if (!r.contains(x, y)) in = false;  // not weakly best
      }
    }
    if (in) out = static_cast<Mask>(out | bit(x));
  }
  return out;
}

struct OracleScore {
  int score;
  std::set<std::uint64_t> optimal_keys;
};

OracleScore oracle_score(const Dataset& d, ModelKind kind,
                         const std::vector<Relation>& admissible) {
  OracleScore res{int(d.observations.size()) + 1, {}};
  for (const Relation& r : admissible) {
    int miss = 0;
    for (const Observation& o : d.observations)
      if (oracle_predict(kind, r, o.menu.members) != o.choice) ++miss;
    if (miss < res.score) {
      res.score = miss;
      res.optimal_keys.clear();
    }
    if (miss == res.score) res.optimal_keys.insert(r.key());
  }
  return res;
}

Dataset random_dataset(std::mt19937& rng, const MenuCollection& mc,
                       bool forced) {
  Dataset d;
  d.subject = "r";
  d.forced = forced;
  d.n = mc.n;
  for (const Menu& m : mc.menus) {
    int outcomes = (1 << m.size()) - (forced ? 1 : 0);
    int pick = int(rng() % unsigned(outcomes)) + (forced ? 1 : 0);
    Mask choice = 0;
    int t = 0;
    for (int i = 0; i < mc.n; ++i)
      if ((m.members >> i) & 1u) {
        if ((pick >> t) & 1) choice = static_cast<Mask>(choice | bit(i));
        ++t;
      }
    d.observations.push_back({m, choice});
  }
  return d;
}

Relation weak_order_chain(std::initializer_list<std::initializer_list<int>> tiers,
                          int n) {
  // Earlier tier strictly better; members of one tier indifferent.
  Relation r = identity_relation(n);
  std::vector<int> rank(n, -1);
  int level = 0;
  for (auto tier : tiers) {
    for (int i : tier) rank[i] = level;
    ++level;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (rank[i] <= rank[j]) r.set(i, j);
  return r;
}

}  // namespace

TEST(Predict, RationalChoiceGreatestElements) {
  // 0 ~ 1 above 2.
  Relation r = weak_order_chain({{0, 1}, {2}}, 3);
  ASSERT_TRUE(admissible_relation(ModelKind::RationalChoice, r));
  EXPECT_EQ(predict(ModelKind::RationalChoice, r, Mask(0b111)), 0b011);
  EXPECT_EQ(predict(ModelKind::RationalChoice, r, Mask(0b101)), 0b001);
  EXPECT_EQ(predict(ModelKind::RationalChoice, r, Mask(0b110)), 0b010);
}

TEST(Predict, DominantChoiceDefersWithoutAGreatestElement) {
  Relation r = identity_relation(2);  // 0 and 1 unranked
  ASSERT_TRUE(admissible_relation(ModelKind::DominantChoice, r));
  EXPECT_EQ(predict(ModelKind::DominantChoice, r, Mask(0b11)), 0);
  EXPECT_EQ(predict(ModelKind::DominantChoice, r, Mask(0b01)), 0b01);
}

TEST(Predict, UndominatedChoiceKeepsUndominated) {
  Relation s;  // strict: 0 > 2, 1 unranked
  s.n = 3;
  s.set(0, 2);
  ASSERT_TRUE(admissible_relation(ModelKind::UndominatedChoice, s));
  EXPECT_EQ(predict(ModelKind::UndominatedChoice, s, Mask(0b111)), 0b011);
  EXPECT_EQ(predict(ModelKind::UndominatedChoice, s, Mask(0b110)), 0b110);
}

TEST(Predict, NeverEmptyExceptDominantChoice) {
  std::mt19937 rng(2024);
  for (int n = 2; n <= 4; ++n)
    for (ModelKind k : {ModelKind::RationalChoice, ModelKind::UndominatedChoice})
      for (const Relation& r : oracle_admissible(k, n))
        for (Mask menu = 1; menu < (1u << n); ++menu)
          ASSERT_NE(predict(k, r, menu), 0);
}

TEST(Predict, SatisfiesContractionConsistency) {
  // x chosen from A stays chosen in any submenu containing it.
  for (int n = 2; n <= 4; ++n)
    for (ModelKind k : kAllModels)
      for (const Relation& r : oracle_admissible(k, n))
        for (Mask menu = 1; menu < (1u << n); ++menu) {
          Mask c = predict(k, r, menu);
          for (Mask sub = menu; sub; sub = (sub - 1) & menu) {
            Mask expected = c & sub;
            Mask got = predict(k, r, sub);
            // Contraction gives one inclusion only.
            ASSERT_EQ(expected & ~got, 0);
          }
        }
}

TEST(DistanceScore, MatchesBruteForceOracleOnRandomData) {
  std::mt19937 rng(90210);
  for (int n : {3, 4}) {
    MenuCollection mc = generate_menu_collection(n, {2, 3});
    for (ModelKind k : kAllModels) {
      std::vector<Relation> admissible = oracle_admissible(k, n);
      for (int iter = 0; iter < 60; ++iter) {
        bool forced = (iter % 2 == 0) && k != ModelKind::DominantChoice;
        Dataset d = random_dataset(rng, mc, forced);
        OracleScore expected = oracle_score(d, k, admissible);
        ScoreResult got = distance_score(d, k);
        ASSERT_EQ(got.score, expected.score)
            << to_string(k) << " n=" << n << " iter=" << iter;
        ASSERT_EQ(got.optimal.size(), expected.optimal_keys.size());
        std::uint64_t prev = 0;
        bool first = true;
        for (const Relation& r : got.optimal) {
          ASSERT_TRUE(expected.optimal_keys.count(r.key()));
          if (!first) {
            ASSERT_LT(prev, r.key());
          }
          prev = r.key();
          first = false;
        }
      }
    }
  }
}

TEST(DistanceScore, PerfectRecoveryOfGeneratingRelation) {
  // Over the binary-complete domain every admissible relation is identified
  // exactly: score 0 and a singleton optimal set.
  for (int n = 2; n <= 4; ++n) {
    MenuCollection mc = generate_menu_collection(n, [&] {
      std::vector<int> sizes;
      for (int s = 2; s <= n; ++s) sizes.push_back(s);
      return sizes;
    }());
    for (ModelKind k : kAllModels) {
      std::vector<Relation> admissible = enumerate_admissible(k, n);
      if (admissible.empty()) continue;
      PredictionTable table(k, admissible, mc.menus);
      for (const Relation& r : admissible) {
        Dataset d = generate_dataset(k, r, mc);
        ScoreResult res = distance_score(d, table);
        ASSERT_EQ(res.score, 0);
        ASSERT_EQ(res.optimal.size(), 1u);
        ASSERT_EQ(res.optimal[0], r);
      }
    }
  }
}

TEST(DistanceScore, RemovingAnObservationNeverRaisesTheScore) {
  std::mt19937 rng(777);
  MenuCollection mc = generate_menu_collection(4, {2, 3});
  for (int iter = 0; iter < 40; ++iter) {
    Dataset d = random_dataset(rng, mc, false);
    for (ModelKind k : kAllModels) {
      int full = distance_score(d, k, false).score;
      for (size_t drop = 0; drop < d.observations.size(); drop += 3) {
        Dataset smaller = d;
        smaller.observations.erase(smaller.observations.begin() + drop);
        ASSERT_LE(distance_score(smaller, k, false).score, full);
      }
    }
  }
}

TEST(DistanceScore, Errors) {
  Dataset empty;
  empty.n = 3;
  EXPECT_THROW(distance_score(empty, ModelKind::RationalChoice),
               std::invalid_argument);
  // No admissible dominant-choice relation on a single alternative.
  Dataset one;
  one.subject = "s";
  one.n = 1;
  one.observations.push_back({make_menu(0b1), 0b1});
  EXPECT_THROW(distance_score(one, ModelKind::DominantChoice),
               std::invalid_argument);
  EXPECT_EQ(distance_score(one, ModelKind::RationalChoice).score, 0);
  // Table must cover the dataset's menus.
  MenuCollection mc = generate_menu_collection(3, {2});
  PredictionTable table(ModelKind::RationalChoice,
                        enumerate_admissible(ModelKind::RationalChoice, 3),
                        mc.menus);
  Dataset d;
  d.subject = "s";
  d.n = 3;
  d.observations.push_back({make_menu(0b111), 0b001});
  EXPECT_THROW(distance_score(d, table), std::invalid_argument);
}

TEST(BestModel, TiesInvolvingRationalChoiceGoToIt) {
  // Both observations deferred: dominant choice fits perfectly, the other
  // two models each miss twice.
  Dataset d;
  d.subject = "s";
  d.n = 3;
  d.observations.push_back({make_menu(0b011), 0});
  d.observations.push_back({make_menu(0b101), 0});
  BestModelResult all = best_model(d, {ModelKind::RationalChoice,
                                       ModelKind::UndominatedChoice,
                                       ModelKind::DominantChoice});
  EXPECT_EQ(all.best, ModelKind::DominantChoice);
  EXPECT_EQ(all.score, 0);
  EXPECT_FALSE(all.tie);

  // Without dominant choice the remaining models tie; rational choice wins
  // even when listed second.
  BestModelResult two = best_model(d, {ModelKind::UndominatedChoice,
                                       ModelKind::RationalChoice});
  EXPECT_EQ(two.score, 2);
  EXPECT_TRUE(two.tie);
  EXPECT_TRUE(two.tie_with_rc);
  EXPECT_EQ(two.best, ModelKind::RationalChoice);
  EXPECT_EQ(two.tied.size(), 2u);
}

TEST(BestModel, OtherTiesFollowListedOrder) {
  // Total indifference data: rational and undominated choice both fit.
  Dataset d;
  d.subject = "s";
  d.n = 3;
  for (Mask m : {Mask(0b011), Mask(0b101), Mask(0b110), Mask(0b111)})
    d.observations.push_back({make_menu(m), m});
  BestModelResult res = best_model(d, {ModelKind::UndominatedChoice,
                                       ModelKind::DominantChoice});
  // The empty strict order reproduces it; choosing whole menus everywhere
  // would need a complete preorder, which dominant choice excludes.
  EXPECT_EQ(res.score, 0);
  EXPECT_EQ(res.best, ModelKind::UndominatedChoice);
  EXPECT_FALSE(res.tie);

  // A genuine non-rational tie, broken by listed order.
  Dataset d2;
  d2.subject = "s";
  d2.n = 3;
  d2.observations.push_back({make_menu(0b011), 0});  // deferral
  d2.observations.push_back({make_menu(0b101), 0b001});
  BestModelResult r2 = best_model(d2, {ModelKind::UndominatedChoice,
                                       ModelKind::DominantChoice});
  // dc fits exactly (0 > 2, 1 unranked); uc misses the deferral only.
  EXPECT_EQ(r2.by_model.at(ModelKind::DominantChoice).score, 0);
  EXPECT_EQ(r2.by_model.at(ModelKind::UndominatedChoice).score, 1);
  EXPECT_EQ(r2.best, ModelKind::DominantChoice);

  EXPECT_THROW(best_model(d2, {}), std::invalid_argument);
}

TEST(HoutmanMaks, CountsMinimalRemovals) {
  // Menu {0,1} picks 0, menu {0,1,2} picks 1: one removal reconciles.
  Dataset d;
  d.subject = "s";
  d.n = 3;
  d.observations.push_back({make_menu(0b011), 0b001});
  d.observations.push_back({make_menu(0b111), 0b010});
  EXPECT_EQ(houtman_maks_active(d), 1);

  // Deferrals are ignored.
  Dataset with_defer = d;
  with_defer.observations.push_back({make_menu(0b101), 0});
  EXPECT_EQ(houtman_maks_active(with_defer), 1);

  // Consistent data needs no removals.
  Dataset ok;
  ok.subject = "s";
  ok.n = 3;
  ok.observations.push_back({make_menu(0b011), 0b001});
  ok.observations.push_back({make_menu(0b111), 0b001});
  EXPECT_EQ(houtman_maks_active(ok), 0);

  // An all-deferral dataset has nothing to remove.
  Dataset defer;
  defer.subject = "s";
  defer.n = 3;
  defer.observations.push_back({make_menu(0b011), 0});
  EXPECT_EQ(houtman_maks_active(defer), 0);
}

TEST(HoutmanMaks, AgreesWithActiveRationalChoiceScore) {
  std::mt19937 rng(13);
  MenuCollection mc = generate_menu_collection(4, {2, 3, 4});
  for (int iter = 0; iter < 30; ++iter) {
    Dataset d = random_dataset(rng, mc, false);
    Dataset active = active_subdataset(d);
    if (active.observations.empty()) continue;
    EXPECT_EQ(houtman_maks_active(d),
              distance_score(active, ModelKind::RationalChoice, false).score);
  }
}

TEST(GenerateDataset, ValidatesAdmissibility) {
  MenuCollection mc = generate_menu_collection(3, {2, 3});
  Relation linear;  // 0 > 1 > 2, complete: not undominated-choice admissible
  linear.n = 3;
  linear.set(0, 1);
  linear.set(0, 2);
  linear.set(1, 2);
  EXPECT_THROW(generate_dataset(ModelKind::UndominatedChoice, linear, mc),
               std::invalid_argument);
  Relation wrong_n = identity_relation(4);
  EXPECT_THROW(generate_dataset(ModelKind::DominantChoice, wrong_n, mc),
               std::invalid_argument);
  Relation diag3 = identity_relation(3);
  Dataset d = generate_dataset(ModelKind::DominantChoice, diag3, mc, "x");
  EXPECT_EQ(d.subject, "x");
  EXPECT_FALSE(d.forced);
  EXPECT_EQ(d.observations.size(), mc.menus.size());
  for (const Observation& o : d.observations) EXPECT_EQ(o.choice, 0);
}
