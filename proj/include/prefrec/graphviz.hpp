#pragma once

// DOT rendering of preference relations in the Hasse-diagram style used for
// recovered orderings: arrows run from preferred to dominated indifference
// classes and carry only the transitive REDUCTION of the strict part, while
// indifference classes appear as rounded clusters ("loops") enclosing their
// members.  Arrows between classes are drawn through each class's
// lowest-labelled member.  Emission order is fully deterministic (classes by
// smallest member, members ascending, edges by source then target), so equal
// relations yield byte-identical DOT.  A small parser reads the emitted
// subset of DOT back, letting tests confirm that the drawn edges regenerate
// the strict part's transitive closure exactly.

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "prefrec/relation.hpp"

namespace prefrec {

// Strict-part quotient of a preorder or strict partial order: indifference
// classes plus the transitive reduction of the between-class strict order.
struct QuotientGraph {
  std::vector<std::vector<int>> classes;   // ascending members, ordered by front()
  std::vector<std::pair<int, int>> edges;  // (class index, class index), reduced
};

inline QuotientGraph quotient_graph(const Relation& r) {
  bool preorder = in_class(r, RelationClass::Preorder);
  if (!preorder && !in_class(r, RelationClass::StrictPartialOrder))
    throw std::invalid_argument(
        "quotient_graph: relation is neither a preorder nor a strict partial order");
  QuotientGraph q;
  std::vector<int> cls(static_cast<size_t>(r.n), -1);
  for (int i = 0; i < r.n; ++i) {
    if (cls[static_cast<size_t>(i)] >= 0) continue;
    int id = static_cast<int>(q.classes.size());
    std::vector<int> members{i};
    cls[static_cast<size_t>(i)] = id;
    if (preorder)
      for (int j = i + 1; j < r.n; ++j)
        if (r.contains(i, j) && r.contains(j, i)) {
          members.push_back(j);
          cls[static_cast<size_t>(j)] = id;
        }
    q.classes.push_back(std::move(members));
  }
  int k = static_cast<int>(q.classes.size());
  // Between-class strict order via representatives (well defined: members of a
  // class relate identically to everything outside it).
  auto above = [&](int a, int b) {
    int x = q.classes[static_cast<size_t>(a)].front();
    int y = q.classes[static_cast<size_t>(b)].front();
    return a != b && r.contains(x, y) && !r.contains(y, x);
  };
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      if (!above(a, b)) continue;
      bool redundant = false;
      for (int c = 0; c < k && !redundant; ++c)
        redundant = above(a, c) && above(c, b);
      if (!redundant) q.edges.emplace_back(a, b);
    }
  return q;
}

struct DotOptions {
  std::string title;  // rendered as a top graph label when nonempty
};

namespace detail {
inline bool plain_dot_id(const std::string& s) {
  if (s.empty() || (std::isdigit(static_cast<unsigned char>(s[0])) != 0))
    return false;
  for (char c : s)
    if (std::isalnum(static_cast<unsigned char>(c)) == 0 && c != '_') return false;
  return true;
}

inline std::string dot_id(const std::string& s) {
  if (plain_dot_id(s)) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}
}  // namespace detail

inline std::string to_dot(const Relation& r, const std::vector<std::string>& labels,
                          const DotOptions& opt = {}) {
  if (static_cast<int>(labels.size()) < r.n)
    throw std::invalid_argument("to_dot: not enough labels");
  QuotientGraph q = quotient_graph(r);
  std::ostringstream os;
  os << "digraph preferences {\n";
  if (!opt.title.empty()) {
    os << "  label=" << detail::dot_id(opt.title) << ";\n";
    os << "  labelloc=\"t\";\n";
  }
  os << "  node [shape=circle];\n";
  int cluster = 0;
  for (const std::vector<int>& cl : q.classes) {
    if (cl.size() == 1) {
      os << "  " << detail::dot_id(labels[static_cast<size_t>(cl[0])]) << ";\n";
    } else {
      os << "  subgraph cluster_" << cluster++ << " { style=rounded;";
      for (int m : cl) os << ' ' << detail::dot_id(labels[static_cast<size_t>(m)]) << ';';
      os << " }\n";
    }
  }
  for (auto [a, b] : q.edges)
    os << "  "
       << detail::dot_id(labels[static_cast<size_t>(q.classes[static_cast<size_t>(a)].front())])
       << " -> "
       << detail::dot_id(labels[static_cast<size_t>(q.classes[static_cast<size_t>(b)].front())])
       << ";\n";
  os << "}\n";
  return os.str();
}

inline std::string to_dot(const Relation& r, const DotOptions& opt = {}) {
  return to_dot(r, default_labels(r.n), opt);
}

// Structure read back from the emitted DOT subset.  Node indices follow the
// lexicographic order of labels, so graphs emitted with the default letter
// labels parse back onto the original alternative indices.
struct ParsedDot {
  std::vector<std::string> labels;         // sorted lexicographically
  std::vector<std::vector<int>> loops;     // multi-member clusters
  std::vector<std::pair<int, int>> edges;  // class-representative arrows

  int n() const { return static_cast<int>(labels.size()); }

  // Expand class-level arrows to members and close transitively; equals the
  // strict part of the relation the DOT was emitted from.
  Relation strict_closure() const {
    std::vector<int> cls(labels.size());
    for (size_t i = 0; i < labels.size(); ++i) cls[i] = static_cast<int>(i);
    for (const std::vector<int>& loop : loops)
      for (int m : loop) cls[static_cast<size_t>(m)] = loop.front();
    Relation s{static_cast<std::uint8_t>(n()), {}};
    for (auto [a, b] : edges)
      for (int x = 0; x < s.n; ++x)
        for (int y = 0; y < s.n; ++y)
          if (cls[static_cast<size_t>(x)] == cls[static_cast<size_t>(a)] &&
              cls[static_cast<size_t>(y)] == cls[static_cast<size_t>(b)])
            s.set(x, y);
    return transitive_closure(s);
  }

  // Reflexive completion: identity, mutual pairs inside each loop, and the
  // strict closure; equals the preorder the DOT was emitted from.
  Relation weak() const {
    Relation w = strict_closure();
    for (int i = 0; i < w.n; ++i) w.set(i, i);
    for (const std::vector<int>& loop : loops)
      for (int a : loop)
        for (int b : loop) w.set(a, b);
    return w;
  }
};

namespace detail {
// Tokens: identifiers / quoted strings / punctuation. Skips whitespace.
inline std::vector<std::string> dot_tokens(const std::string& text) {
  std::vector<std::string> toks;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) != 0) {
      ++i;
    } else if (c == '"') {
      std::string s = "\"";
      for (++i; i < text.size() && text[i] != '"'; ++i) {
        if (text[i] == '\\' && i + 1 < text.size()) ++i;
        s += text[i];
      }
      if (i >= text.size()) throw std::invalid_argument("dot: unterminated string");
      ++i;  // closing quote
      toks.push_back(s);
    } else if (std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_') {
      std::string s;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) != 0 ||
              text[i] == '_'))
        s += text[i++];
      toks.push_back(s);
    } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      toks.push_back("->");
      i += 2;
    } else {
      toks.push_back(std::string(1, c));
      ++i;
    }
  }
  return toks;
}
}  // namespace detail

inline ParsedDot parse_dot(const std::string& text) {
  std::vector<std::string> toks = detail::dot_tokens(text);
  ParsedDot out;
  auto node_index = [&](const std::string& tok) {
    std::string name = tok[0] == '"' ? tok.substr(1) : tok;
    for (size_t i = 0; i < out.labels.size(); ++i)
      if (out.labels[i] == name) return static_cast<int>(i);
    out.labels.push_back(name);
    return static_cast<int>(out.labels.size() - 1);
  };
  auto is_name = [](const std::string& t) {
    return !t.empty() && (t[0] == '"' || std::isalnum(static_cast<unsigned char>(t[0])) != 0 ||
                          t[0] == '_');
  };
  size_t i = 0;
  auto expect = [&](const std::string& t) {
    if (i >= toks.size() || toks[i] != t)
      throw std::invalid_argument("dot: expected '" + t + "'");
    ++i;
  };
  expect("digraph");
  if (i < toks.size() && toks[i] != "{") ++i;  // optional graph name
  expect("{");
  int depth = 1;
  while (i < toks.size() && depth > 0) {
    const std::string& t = toks[i];
    if (t == "}") {
      --depth;
      ++i;
    } else if (t == "subgraph") {
      ++i;
      if (i < toks.size() && toks[i] != "{") ++i;  // cluster name
      expect("{");
      std::vector<int> members;
      while (i < toks.size() && toks[i] != "}") {
        if (is_name(toks[i]) && (i + 1 >= toks.size() || toks[i + 1] != "=")) {
          members.push_back(node_index(toks[i]));
          ++i;
        } else if (is_name(toks[i])) {
          i += 3;  // attribute: name = value
        } else {
          ++i;  // separators
        }
      }
      expect("}");
      if (members.size() > 1) out.loops.push_back(std::move(members));
    } else if (is_name(t)) {
      if (i + 1 < toks.size() && toks[i + 1] == "=") {
        i += 3;  // graph attribute
      } else if (t == "node" || t == "edge" || t == "graph") {
        ++i;  // attribute list follows: [ ... ]
        while (i < toks.size() && toks[i] != "]") ++i;
        if (i < toks.size()) ++i;
      } else {
        int a = node_index(t);
        ++i;
        if (i < toks.size() && toks[i] == "->") {
          ++i;
          if (i >= toks.size() || !is_name(toks[i]))
            throw std::invalid_argument("dot: dangling edge");
          out.edges.emplace_back(a, node_index(toks[i]));
          ++i;
        }
      }
    } else {
      ++i;  // separators: ; ,
    }
  }
  if (depth != 0) throw std::invalid_argument("dot: unbalanced braces");
  // Canonicalize: indices follow sorted label order, loop members ascending.
  std::vector<int> order(out.labels.size());
  for (size_t j = 0; j < order.size(); ++j) order[j] = static_cast<int>(j);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return out.labels[static_cast<size_t>(a)] < out.labels[static_cast<size_t>(b)];
  });
  std::vector<int> rank(order.size());
  for (size_t j = 0; j < order.size(); ++j)
    rank[static_cast<size_t>(order[j])] = static_cast<int>(j);
  std::vector<std::string> sorted;
  sorted.reserve(out.labels.size());
  for (int o : order) sorted.push_back(std::move(out.labels[static_cast<size_t>(o)]));
  out.labels = std::move(sorted);
  for (std::vector<int>& loop : out.loops) {
    for (int& m : loop) m = rank[static_cast<size_t>(m)];
    std::sort(loop.begin(), loop.end());
  }
  for (auto& [a, b] : out.edges) {
    a = rank[static_cast<size_t>(a)];
    b = rank[static_cast<size_t>(b)];
  }
  return out;
}

}  // namespace prefrec
