#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace prefrec {

// Hard cap on universe size. Everything downstream (masks, enumeration,
// scoring tables) relies on alternatives fitting into one byte.
constexpr int kMaxAlternatives = 7;

// Subset of alternatives; bit i = alternative i.
using Mask = std::uint8_t;

inline int popcount(Mask m) { return std::popcount(static_cast<unsigned>(m)); }

inline Mask bit(int i) { return static_cast<Mask>(1u << i); }
inline bool has_bit(Mask m, int i) { return (m & bit(i)) != 0; }

// Binary relation on {0,...,n-1} stored as successor masks.
// row[i] bit j set means i R j.
struct Relation {
  std::uint8_t n = 0;
  std::array<Mask, kMaxAlternatives> row{};

  bool contains(int i, int j) const { return (row[i] >> j) & 1u; }
  void set(int i, int j) { row[i] = static_cast<Mask>(row[i] | (1u << j)); }
  void unset(int i, int j) { row[i] = static_cast<Mask>(row[i] & ~(1u << j)); }

  Mask universe() const { return static_cast<Mask>((1u << n) - 1u); }

  // Row-major bit string packed into an integer, pair (0,0) most significant.
  // Ascending key order is the canonical enumeration order.
  std::uint64_t key() const {
    std::uint64_t k = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) k = (k << 1) | ((row[i] >> j) & 1u);
    return k;
  }

  friend bool operator==(const Relation&, const Relation&) = default;
};

inline bool key_less(const Relation& a, const Relation& b) {
  return a.key() < b.key();
}

inline Relation identity_relation(int n) {
  Relation r;
  r.n = static_cast<std::uint8_t>(n);
  for (int i = 0; i < n; ++i) r.set(i, i);
  return r;
}

// Warshall closure; paths of length >= 1 only, no reflexive padding.
inline Relation transitive_closure(const Relation& r) {
  Relation c = r;
  for (int k = 0; k < c.n; ++k)
    for (int i = 0; i < c.n; ++i)
      if (c.contains(i, k)) c.row[i] = static_cast<Mask>(c.row[i] | c.row[k]);
  return c;
}

// x > y iff x R y and not y R x.
inline Relation asymmetric_part(const Relation& r) {
  Relation s;
  s.n = r.n;
  for (int i = 0; i < r.n; ++i)
    for (int j = 0; j < r.n; ++j)
      if (r.contains(i, j) && !r.contains(j, i)) s.set(i, j);
  return s;
}

// x ~ y iff both directions hold, x != y.
inline Relation symmetric_part(const Relation& r) {
  Relation s;
  s.n = r.n;
  for (int i = 0; i < r.n; ++i)
    for (int j = 0; j < r.n; ++j)
      if (i != j && r.contains(i, j) && r.contains(j, i)) s.set(i, j);
  return s;
}

// Neither direction holds, x != y.
inline Relation incomparable_part(const Relation& r) {
  Relation s;
  s.n = r.n;
  for (int i = 0; i < r.n; ++i)
    for (int j = 0; j < r.n; ++j)
      if (i != j && !r.contains(i, j) && !r.contains(j, i)) s.set(i, j);
  return s;
}

struct RelationParts {
  Relation strict;        // asymmetric part
  Relation indifference;  // symmetric part, diagonal excluded
  Relation incomparable;  // unranked pairs, diagonal excluded
};

inline RelationParts parts(const Relation& r) {
  return {asymmetric_part(r), symmetric_part(r), incomparable_part(r)};
}

struct RelationProperties {
  bool reflexive = false;
  bool irreflexive = false;
  bool transitive = false;
  bool complete = false;      // every pair x != y ranked in some direction
  bool asymmetric = false;    // implies irreflexive
  bool antisymmetric = false;
  bool acyclic = false;       // the asymmetric part has no directed cycle
};

inline RelationProperties classify(const Relation& r) {
  RelationProperties p;
  p.reflexive = p.irreflexive = p.transitive = true;
  p.complete = p.asymmetric = p.antisymmetric = true;
  for (int i = 0; i < r.n; ++i) {
    if (r.contains(i, i))
      p.irreflexive = false;
    else
      p.reflexive = false;
    for (int j = 0; j < r.n; ++j) {
      if (r.contains(i, j)) {
        if ((r.row[j] & ~r.row[i]) != 0) p.transitive = false;
        if (r.contains(j, i)) {
          p.asymmetric = false;
          if (i != j) p.antisymmetric = false;
        }
      } else if (i != j && !r.contains(j, i)) {
        p.complete = false;
      }
    }
  }
  Relation sc = transitive_closure(asymmetric_part(r));
  p.acyclic = true;
  for (int i = 0; i < r.n; ++i)
    if (sc.contains(i, i)) p.acyclic = false;
  return p;
}

enum class RelationClass {
  WeakOrder,            // complete preorder
  StrictPartialOrder,   // irreflexive, asymmetric, transitive
  Preorder,             // reflexive, transitive
  IncompletePreorder,   // preorder with at least one unranked pair
  LinearOrder,          // strict total order
};

inline bool has_incomparable_pair(const Relation& r) {
  for (int i = 0; i < r.n; ++i)
    for (int j = i + 1; j < r.n; ++j)
      if (!r.contains(i, j) && !r.contains(j, i)) return true;
  return false;
}

inline bool in_class(const Relation& r, RelationClass c) {
  RelationProperties p = classify(r);
  switch (c) {
    case RelationClass::WeakOrder:
      return p.reflexive && p.transitive && p.complete;
    case RelationClass::StrictPartialOrder:
      return p.irreflexive && p.asymmetric && p.transitive;
    case RelationClass::Preorder:
      return p.reflexive && p.transitive;
    case RelationClass::IncompletePreorder:
      return p.reflexive && p.transitive && !p.complete;
    case RelationClass::LinearOrder:
      return p.irreflexive && p.asymmetric && p.transitive && p.complete;
  }
  return false;
}

inline std::string to_string(RelationClass c) {
  switch (c) {
    case RelationClass::WeakOrder: return "weak-order";
    case RelationClass::StrictPartialOrder: return "strict-partial-order";
    case RelationClass::Preorder: return "preorder";
    case RelationClass::IncompletePreorder: return "incomplete-preorder";
    case RelationClass::LinearOrder: return "linear-order";
  }
  return "?";
}

// Elements of `menu` weakly above everything in `menu`. Expects a reflexive r.
inline Mask greatest_elements(const Relation& r, Mask menu) {
  Mask g = 0;
  for (int x = 0; x < r.n; ++x)
    if ((menu >> x) & 1u)
      if ((menu & ~r.row[x]) == 0) g = static_cast<Mask>(g | bit(x));
  return g;
}

// Elements of `menu` not strictly dominated within `menu`. `strict` is the
// strict relation itself (not a weak one).
inline Mask maximal_elements(const Relation& strict, Mask menu) {
  Mask out = 0;
  for (int x = 0; x < strict.n; ++x) {
    if (!((menu >> x) & 1u)) continue;
    Mask dominators = 0;
    for (int y = 0; y < strict.n; ++y)
      if (strict.contains(y, x)) dominators = static_cast<Mask>(dominators | bit(y));
    if ((dominators & menu) == 0) out = static_cast<Mask>(out | bit(x));
  }
  return out;
}

// A preorder separates indifference from indecision when every unranked pair
// (x,y) has a witness z that is unranked against one of them and strictly
// ranked against the other.
inline bool is_regular(const Relation& r) {
  if (!in_class(r, RelationClass::Preorder))
    throw std::invalid_argument("is_regular: relation is not a preorder");
  RelationParts pr = parts(r);
  std::array<Mask, kMaxAlternatives> scol{};
  for (int j = 0; j < r.n; ++j)
    for (int i = 0; i < r.n; ++i)
      if (pr.strict.contains(i, j)) scol[j] = static_cast<Mask>(scol[j] | bit(i));
  for (int i = 0; i < r.n; ++i) {
    for (int j = i + 1; j < r.n; ++j) {
      if (!pr.incomparable.contains(i, j)) continue;
      Mask rel_i = static_cast<Mask>(pr.strict.row[i] | scol[i]);
      Mask rel_j = static_cast<Mask>(pr.strict.row[j] | scol[j]);
      Mask witnesses = static_cast<Mask>((pr.incomparable.row[i] & rel_j) |
                                         (pr.incomparable.row[j] & rel_i));
      if (witnesses == 0) return false;
    }
  }
  return true;
}

inline std::vector<std::string> default_labels(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(std::string(1, char('A' + i)));
  return out;
}

// Text form: optional "alternatives:" header, then one line per ranked pair,
// "X>Y" for the strict part and "X~Y" (once, lower label first) for
// indifference. Reflexive pairs are implied and incomparability is silence.
inline std::string emit_relation_text(const Relation& r,
                                      const std::vector<std::string>& labels) {
  RelationProperties p = classify(r);
  if (!p.reflexive && !p.irreflexive)
    throw std::invalid_argument(
        "emit_relation_text: relation is neither reflexive nor irreflexive");
  if (p.irreflexive && !p.asymmetric)
    throw std::invalid_argument(
        "emit_relation_text: irreflexive relation has mutual pairs");
  if (static_cast<int>(labels.size()) < r.n)
    throw std::invalid_argument("emit_relation_text: not enough labels");
  Relation strict = p.irreflexive ? r : asymmetric_part(r);
  Relation indiff = p.irreflexive ? Relation{r.n, {}} : symmetric_part(r);
  std::ostringstream os;
  os << "alternatives:";
  for (int i = 0; i < r.n; ++i) os << ' ' << labels[i];
  os << '\n';
  for (int i = 0; i < r.n; ++i)
    for (int j = 0; j < r.n; ++j)
      if (strict.contains(i, j)) os << labels[i] << '>' << labels[j] << '\n';
  for (int i = 0; i < r.n; ++i)
    for (int j = i + 1; j < r.n; ++j)
      if (indiff.contains(i, j)) os << labels[i] << '~' << labels[j] << '\n';
  return os.str();
}

inline std::string emit_relation_text(const Relation& r) {
  return emit_relation_text(r, default_labels(r.n));
}

struct ParsedRelation {
  // Weak form: reflexive; ">" lines become one-directional pairs and "~"
  // lines mutual ones. strict/indifference parts recover the input exactly.
  Relation weak;
  std::vector<std::string> labels;
};

namespace detail {
inline std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}
}  // namespace detail

inline ParsedRelation parse_relation_text(const std::string& text) {
  std::vector<std::string> labels;
  struct Pair { int x, y; char op; };
  std::vector<Pair> pairs;
  auto label_index = [&](const std::string& tok, int line_no) -> int {
    if (!labels.empty()) {
      for (size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == tok) return static_cast<int>(i);
      throw std::invalid_argument("relation text line " + std::to_string(line_no) +
                                  ": unknown label '" + tok + "'");
    }
    if (tok.size() != 1 || tok[0] < 'A' || tok[0] > 'A' + kMaxAlternatives - 1)
      throw std::invalid_argument("relation text line " + std::to_string(line_no) +
                                  ": label '" + tok +
                                  "' needs an alternatives: header");
    return tok[0] - 'A';
  };

  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  int max_idx = -1;
  bool have_header = false;
  while (std::getline(is, line)) {
    ++line_no;
    line = detail::trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("alternatives:", 0) == 0) {
      if (have_header)
        throw std::invalid_argument("relation text: duplicate alternatives header");
      have_header = true;
      std::istringstream hs(line.substr(13));
      std::string tok;
      while (hs >> tok) labels.push_back(tok);
      if (labels.empty() || labels.size() > kMaxAlternatives)
        throw std::invalid_argument(
            "relation text: alternatives header must list 1.." +
            std::to_string(kMaxAlternatives) + " labels");
      for (size_t i = 0; i < labels.size(); ++i)
        for (size_t j = i + 1; j < labels.size(); ++j)
          if (labels[i] == labels[j])
            throw std::invalid_argument("relation text: duplicate label '" +
                                        labels[i] + "'");
      continue;
    }
    size_t pos = line.find_first_of(">~");
    if (pos == std::string::npos)
      throw std::invalid_argument("relation text line " + std::to_string(line_no) +
                                  ": expected 'X>Y' or 'X~Y'");
    char op = line[pos];
    std::string lhs = detail::trim(line.substr(0, pos));
    std::string rhs = detail::trim(line.substr(pos + 1));
    if (lhs.empty() || rhs.empty() ||
        rhs.find_first_of(">~") != std::string::npos)
      throw std::invalid_argument("relation text line " + std::to_string(line_no) +
                                  ": expected 'X>Y' or 'X~Y'");
    int x = label_index(lhs, line_no);
    int y = label_index(rhs, line_no);
    if (x == y)
      throw std::invalid_argument("relation text line " + std::to_string(line_no) +
                                  ": pair relates a label to itself");
    pairs.push_back({x, y, op});
    max_idx = std::max({max_idx, x, y});
  }
  int n = have_header ? static_cast<int>(labels.size()) : max_idx + 1;
  if (n <= 0)
    throw std::invalid_argument("relation text: no alternatives");
  ParsedRelation out;
  out.labels = have_header ? labels : default_labels(n);
  out.weak = identity_relation(n);
  Relation strict_seen{static_cast<std::uint8_t>(n), {}};
  Relation indiff_seen{static_cast<std::uint8_t>(n), {}};
  for (const auto& p : pairs) {
    if (p.op == '>') {
      strict_seen.set(p.x, p.y);
    } else {
      indiff_seen.set(p.x, p.y);
      indiff_seen.set(p.y, p.x);
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (strict_seen.contains(i, j) && strict_seen.contains(j, i))
        throw std::invalid_argument("relation text: both directions strict for " +
                                    out.labels[i] + "," + out.labels[j]);
      if (strict_seen.contains(i, j) && indiff_seen.contains(i, j))
        throw std::invalid_argument("relation text: pair " + out.labels[i] + "," +
                                    out.labels[j] + " both strict and indifferent");
    }
  for (int i = 0; i < n; ++i)
    out.weak.row[i] = static_cast<Mask>(out.weak.row[i] | strict_seen.row[i] |
                                        indiff_seen.row[i]);
  return out;
}

}  // namespace prefrec
