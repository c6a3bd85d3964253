#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "prefrec/relation.hpp"

namespace prefrec {

namespace detail {

// Grow every preorder on {0..m-1} by element m. A child stays transitive iff
//   S  (successors of m among old elements) is closed under old reachability,
//   C  (predecessors of m) is closed under reverse reachability, and
//   S subset of row[i] for every i in C.
inline void extend_preorders(const std::vector<Relation>& level, int m,
                             std::vector<Relation>* out) {
  const Mask old_all = static_cast<Mask>((1u << m) - 1u);
  std::vector<Mask> valid_s, valid_c, common_c;
  for (const Relation& p : level) {
    valid_s.clear();
    valid_c.clear();
    common_c.clear();
    for (unsigned s = 0; s <= old_all; ++s) {
      bool ok = true;
      for (int i = 0; i < m && ok; ++i)
        if ((s >> i) & 1u)
          if (p.row[i] & ~s) ok = false;
      if (ok) valid_s.push_back(static_cast<Mask>(s));
    }
    for (unsigned c = 0; c <= old_all; ++c) {
      bool ok = true;
      Mask common = old_all;
      for (int i = 0; i < m && ok; ++i) {
        if (p.row[i] & c) {
          if (!((c >> i) & 1u)) ok = false;
        }
        if ((c >> i) & 1u) common = static_cast<Mask>(common & p.row[i]);
      }
      if (ok) {
        valid_c.push_back(static_cast<Mask>(c));
        common_c.push_back(common);
      }
    }
    for (size_t ci = 0; ci < valid_c.size(); ++ci) {
      const Mask c = valid_c[ci], common = common_c[ci];
      for (Mask s : valid_s) {
        if (s & ~common) continue;
        Relation child = p;
        child.n = static_cast<std::uint8_t>(m + 1);
        child.row[m] = static_cast<Mask>(s | bit(m));
        for (int i = 0; i < m; ++i)
          if ((c >> i) & 1u) child.row[i] = static_cast<Mask>(child.row[i] | bit(m));
        out->push_back(child);
      }
    }
  }
}

// Same growth for strict partial orders: rows are irreflexive and S and C
// must not intersect (asymmetry of m against old elements).
inline void extend_strict_partial(const std::vector<Relation>& level, int m,
                                  std::vector<Relation>* out) {
  const Mask old_all = static_cast<Mask>((1u << m) - 1u);
  std::vector<Mask> valid_s, valid_c, common_c;
  for (const Relation& p : level) {
    valid_s.clear();
    valid_c.clear();
    common_c.clear();
    for (unsigned s = 0; s <= old_all; ++s) {
      bool ok = true;
      for (int i = 0; i < m && ok; ++i)
        if ((s >> i) & 1u)
          if (p.row[i] & ~s) ok = false;
      if (ok) valid_s.push_back(static_cast<Mask>(s));
    }
    for (unsigned c = 0; c <= old_all; ++c) {
      bool ok = true;
      Mask common = old_all;
      for (int i = 0; i < m && ok; ++i) {
        if (p.row[i] & c) {
          if (!((c >> i) & 1u)) ok = false;
        }
        if ((c >> i) & 1u) common = static_cast<Mask>(common & p.row[i]);
      }
      if (ok) {
        valid_c.push_back(static_cast<Mask>(c));
        common_c.push_back(common);
      }
    }
    for (size_t ci = 0; ci < valid_c.size(); ++ci) {
      const Mask c = valid_c[ci], common = common_c[ci];
      for (Mask s : valid_s) {
        if (s & ~common) continue;
        if (s & c) continue;
        Relation child = p;
        child.n = static_cast<std::uint8_t>(m + 1);
        child.row[m] = s;
        for (int i = 0; i < m; ++i)
          if ((c >> i) & 1u) child.row[i] = static_cast<Mask>(child.row[i] | bit(m));
        out->push_back(child);
      }
    }
  }
}

inline std::vector<Relation> build_by_extension(int n, bool strict) {
  std::vector<Relation> level;
  Relation base;
  base.n = 1;
  if (!strict) base.set(0, 0);
  level.push_back(base);
  for (int m = 1; m < n; ++m) {
    std::vector<Relation> next;
    if (strict)
      extend_strict_partial(level, m, &next);
    else
      extend_preorders(level, m, &next);
    level = std::move(next);
  }
  return level;
}

inline std::vector<Relation> build_weak_orders(int n) {
  // A weak order is a ranking function onto an initial segment {0..k-1};
  // lower rank is better. Enumerate all rank vectors and keep the surjective
  // ones.
  std::vector<Relation> out;
  std::vector<int> rank(n, 0);
  while (true) {
    int mx = 0;
    for (int v : rank) mx = std::max(mx, v);
    bool surjective = true;
    for (int v = 0; v < mx; ++v) {
      bool seen = false;
      for (int u : rank)
        if (u == v) { seen = true; break; }
      if (!seen) { surjective = false; break; }
    }
    if (surjective) {
      Relation r;
      r.n = static_cast<std::uint8_t>(n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (rank[i] <= rank[j]) r.set(i, j);
      out.push_back(r);
    }
    int i = n - 1;
    while (i >= 0 && rank[i] == n - 1) rank[i--] = 0;
    if (i < 0) break;
    ++rank[i];
  }
  return out;
}

inline std::vector<Relation> build_linear_orders(int n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Relation> out;
  do {
    // perm[t] = element in position t; earlier position wins.
    Relation r;
    r.n = static_cast<std::uint8_t>(n);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) r.set(perm[a], perm[b]);
    out.push_back(r);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace detail

// All relations of the class on {0..n-1}, sorted by canonical key.
inline std::vector<Relation> enumerate_relations(RelationClass c, int n) {
  if (n < 1 || n > kMaxAlternatives)
    throw std::invalid_argument("enumerate_relations: n must be 1.." +
                                std::to_string(kMaxAlternatives));
  std::vector<Relation> out;
  switch (c) {
    case RelationClass::WeakOrder:
      out = detail::build_weak_orders(n);
      break;
    case RelationClass::StrictPartialOrder:
      out = detail::build_by_extension(n, true);
      break;
    case RelationClass::Preorder:
      out = detail::build_by_extension(n, false);
      break;
    case RelationClass::IncompletePreorder: {
      std::vector<Relation> all = detail::build_by_extension(n, false);
      for (const Relation& r : all)
        if (has_incomparable_pair(r)) out.push_back(r);
      break;
    }
    case RelationClass::LinearOrder:
      out = detail::build_linear_orders(n);
      break;
  }
  std::sort(out.begin(), out.end(), key_less);
  return out;
}

inline std::uint64_t count_relations(RelationClass c, int n) {
  return enumerate_relations(c, n).size();
}

}  // namespace prefrec
