#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "prefrec/relation.hpp"

namespace prefrec {

// A menu with its on-screen list order. order[t] = alternative shown at
// position t+1; only the first size() entries are meaningful.
struct Menu {
  Mask members = 0;
  std::array<std::uint8_t, kMaxAlternatives> order{};

  int size() const { return popcount(members); }
  friend bool operator==(const Menu&, const Menu&) = default;
};

inline Menu make_menu(Mask members) {
  Menu m;
  m.members = members;
  int t = 0;
  for (int i = 0; i < kMaxAlternatives; ++i)
    if ((members >> i) & 1u) m.order[t++] = static_cast<std::uint8_t>(i);
  return m;
}

// choice == 0 is a deferral.
struct Observation {
  Menu menu;
  Mask choice = 0;
  friend bool operator==(const Observation&, const Observation&) = default;
};

struct Dataset {
  std::string subject;
  bool forced = false;
  std::uint8_t n = 0;  // universe size
  std::vector<Observation> observations;
  friend bool operator==(const Dataset&, const Dataset&) = default;
};

struct MenuCollection {
  std::uint8_t n = 0;
  std::vector<Menu> menus;
};

// All menus of the given sizes over {0..n-1}, sizes in ascending order and
// menus of one size in lexicographic member order.
inline MenuCollection generate_menu_collection(int n, std::vector<int> sizes) {
  if (n < 1 || n > kMaxAlternatives)
    throw std::invalid_argument("generate_menu_collection: n must be 1.." +
                                std::to_string(kMaxAlternatives));
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  for (int s : sizes)
    if (s < 1 || s > n)
      throw std::invalid_argument("generate_menu_collection: size " +
                                  std::to_string(s) + " out of range");
  MenuCollection mc;
  mc.n = static_cast<std::uint8_t>(n);
  std::vector<int> pick;
  auto rec = [&](auto&& self, int next, int remaining) -> void {
    if (remaining == 0) {
      Mask m = 0;
      for (int i : pick) m = static_cast<Mask>(m | bit(i));
      mc.menus.push_back(make_menu(m));
      return;
    }
    for (int i = next; i <= n - remaining; ++i) {
      pick.push_back(i);
      self(self, i + 1, remaining - 1);
      pick.pop_back();
    }
  };
  for (int s : sizes) rec(rec, 0, s);
  return mc;
}

enum class Symmetry { None, WeakOnly, Strong };

struct SymmetryReport {
  Symmetry level = Symmetry::None;
  // appearances[i] = total menu count; by_size[i][s] = menus of size s.
  std::array<int, kMaxAlternatives> appearances{};
  std::array<std::array<int, kMaxAlternatives + 1>, kMaxAlternatives> by_size{};
};

// Strong symmetry: every alternative appears in the same number of menus of
// each size. Weak symmetry: same total number of menus only.
inline SymmetryReport check_symmetry(const MenuCollection& mc) {
  SymmetryReport rep;
  for (const Menu& m : mc.menus) {
    int s = m.size();
    for (int i = 0; i < mc.n; ++i)
      if ((m.members >> i) & 1u) {
        rep.appearances[i] += 1;
        rep.by_size[i][s] += 1;
      }
  }
  bool weak = true, strong = true;
  for (int i = 1; i < mc.n; ++i) {
    if (rep.appearances[i] != rep.appearances[0]) weak = false;
    if (rep.by_size[i] != rep.by_size[0]) strong = false;
  }
  rep.level = strong ? Symmetry::Strong : (weak ? Symmetry::WeakOnly : Symmetry::None);
  return rep;
}

inline std::string to_string(Symmetry s) {
  switch (s) {
    case Symmetry::None: return "none";
    case Symmetry::WeakOnly: return "weak";
    case Symmetry::Strong: return "strong";
  }
  return "?";
}

// Non-deferral observations only; the result is a forced dataset.
inline Dataset active_subdataset(const Dataset& d) {
  Dataset out;
  out.subject = d.subject;
  out.forced = true;
  out.n = d.n;
  for (const Observation& o : d.observations)
    if (o.choice != 0) out.observations.push_back(o);
  return out;
}

inline bool always_defers(const Dataset& d) {
  for (const Observation& o : d.observations)
    if (o.choice != 0) return false;
  return !d.observations.empty();
}

inline bool always_chooses_everything(const Dataset& d) {
  for (const Observation& o : d.observations)
    if (o.choice != o.menu.members) return false;
  return !d.observations.empty();
}

struct ParsedData {
  std::vector<Dataset> subjects;
  std::vector<std::string> labels;  // index -> label, sorted
};

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

[[noreturn]] inline void csv_fail(int row, const std::string& what) {
  throw std::invalid_argument("csv row " + std::to_string(row) + ": " + what);
}

}  // namespace detail

// Schema: subject,menu,choice[,order]. Menu and order are semicolon-joined
// labels, choice may additionally be blank (deferral). The order column,
// when present and non-blank, is a permutation of the menu giving on-screen
// positions; otherwise the menu listing order is used. In forced mode blank
// choices are errors. Menus must be pairwise distinct within a subject.
inline ParsedData parse_csv(std::istream& in, bool forced) {
  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument("csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  bool has_order_col;
  if (line == "subject,menu,choice")
    has_order_col = false;
  else if (line == "subject,menu,choice,order")
    has_order_col = true;
  else
    throw std::invalid_argument(
        "csv: header must be subject,menu,choice[,order]");

  struct RawRow {
    int row_no;
    std::string subject;
    std::vector<std::string> menu, choice, order;
  };
  std::vector<RawRow> rows;
  std::map<std::string, int> label_set;
  int row_no = 1;
  while (std::getline(in, line)) {
    ++row_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields = detail::split(line, ',');
    if (fields.size() != (has_order_col ? 4u : 3u))
      detail::csv_fail(row_no, "expected " +
                                   std::to_string(has_order_col ? 4 : 3) +
                                   " fields, got " +
                                   std::to_string(fields.size()));
    RawRow r;
    r.row_no = row_no;
    r.subject = fields[0];
    if (r.subject.empty()) detail::csv_fail(row_no, "blank subject");
    r.menu = detail::split(fields[1], ';');
    if (!fields[2].empty()) r.choice = detail::split(fields[2], ';');
    if (has_order_col && !fields[3].empty())
      r.order = detail::split(fields[3], ';');
    for (const std::string& t : r.menu) {
      if (t.empty()) detail::csv_fail(row_no, "blank menu item");
      label_set.emplace(t, 0);
    }
    rows.push_back(std::move(r));
  }

  if (static_cast<int>(label_set.size()) > kMaxAlternatives)
    throw std::invalid_argument(
        "csv: " + std::to_string(label_set.size()) +
        " distinct alternatives; at most " +
        std::to_string(kMaxAlternatives) + " supported");
  ParsedData out;
  int idx = 0;
  for (auto& [label, i] : label_set) {
    i = idx++;
    out.labels.push_back(label);
  }

  std::map<std::string, size_t> subject_index;
  for (const RawRow& r : rows) {
    auto to_index = [&](const std::string& t) -> int {
      auto it = label_set.find(t);
      if (it == label_set.end())
        detail::csv_fail(r.row_no, "unknown alternative '" + t + "'");
      return it->second;
    };
    Menu menu;
    for (const std::string& t : r.menu) {
      Mask b = bit(to_index(t));
      if (menu.members & b)
        detail::csv_fail(r.row_no, "duplicate menu item '" + t + "'");
      menu.members = static_cast<Mask>(menu.members | b);
    }
    // Display order: explicit order column, else menu listing order.
    const std::vector<std::string>& ord = r.order.empty() ? r.menu : r.order;
    if (ord.size() != r.menu.size())
      detail::csv_fail(r.row_no, "order is not a permutation of menu");
    Mask seen = 0;
    for (size_t t = 0; t < ord.size(); ++t) {
      int i = to_index(ord[t]);
      Mask b = bit(i);
      if (!(menu.members & b) || (seen & b))
        detail::csv_fail(r.row_no, "order is not a permutation of menu");
      seen = static_cast<Mask>(seen | b);
      menu.order[t] = static_cast<std::uint8_t>(i);
    }
    Mask choice = 0;
    for (const std::string& t : r.choice) {
      if (t.empty()) detail::csv_fail(r.row_no, "blank choice item");
      Mask b = bit(to_index(t));
      if (choice & b) detail::csv_fail(r.row_no, "duplicate choice item '" + t + "'");
      if (!(menu.members & b))
        detail::csv_fail(r.row_no, "choice item '" + t + "' not in menu");
      choice = static_cast<Mask>(choice | b);
    }
    if (forced && choice == 0)
      detail::csv_fail(r.row_no, "deferral in forced-choice data");

    auto [it, added] =
        subject_index.emplace(r.subject, out.subjects.size());
    if (added) {
      Dataset d;
      d.subject = r.subject;
      d.forced = forced;
      out.subjects.push_back(std::move(d));
    }
    Dataset& d = out.subjects[it->second];
    for (const Observation& o : d.observations)
      if (o.menu.members == menu.members)
        detail::csv_fail(r.row_no, "duplicate menu for subject " + r.subject);
    d.observations.push_back({menu, choice});
  }
  for (Dataset& d : out.subjects)
    d.n = static_cast<std::uint8_t>(out.labels.size());
  return out;
}

inline ParsedData parse_csv(const std::string& text, bool forced) {
  std::istringstream is(text);
  return parse_csv(is, forced);
}

// Canonical emission: menu field in ascending label-index order, order column
// with the display permutation, choice in ascending order, blank for
// deferral. parse_csv(write_csv(x)) reproduces x field for field.
inline std::string write_csv(const ParsedData& data) {
  std::ostringstream os;
  os << "subject,menu,choice,order\n";
  for (const Dataset& d : data.subjects) {
    for (const Observation& o : d.observations) {
      os << d.subject << ',';
      bool first = true;
      for (int i = 0; i < kMaxAlternatives; ++i)
        if ((o.menu.members >> i) & 1u) {
          if (!first) os << ';';
          os << data.labels[i];
          first = false;
        }
      os << ',';
      first = true;
      for (int i = 0; i < kMaxAlternatives; ++i)
        if ((o.choice >> i) & 1u) {
          if (!first) os << ';';
          os << data.labels[i];
          first = false;
        }
      os << ',';
      for (int t = 0; t < o.menu.size(); ++t) {
        if (t) os << ';';
        os << data.labels[o.menu.order[t]];
      }
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace prefrec
