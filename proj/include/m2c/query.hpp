#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "m2c/expr_template.hpp"
#include "m2c/subtokens.hpp"

namespace m2c {

class EmptyIndex : public std::runtime_error {
 public:
  EmptyIndex() : std::runtime_error("method-name index is empty") {}
};

class MissingName : public std::runtime_error {
 public:
  MissingName() : std::runtime_error("query has no confirmed method name") {}
};

// Method names seen in training, indexed by subtoken for fuzzy lookup.
struct NameIndex {
  std::set<std::string> names;
  std::map<std::string, std::set<std::string>> subtoken_map;
  std::map<std::string, long> frequency;

  static NameIndex build(const std::map<std::string, long>& name_counts) {
    NameIndex idx;
    for (const auto& [name, count] : name_counts) {
      idx.names.insert(name);
      idx.frequency[name] = count;
      for (const auto& sub : split_subtokens(name)) idx.subtoken_map[sub].insert(name);
    }
    return idx;
  }
};

struct Suggestion {
  std::string name;
  double score = 0.0;
  long frequency = 0;
};

// Ordered subtoken units of a free-text query.
inline std::vector<std::string> query_units(const std::string& text) {
  std::vector<std::string> units;
  for (const auto& word : split(text, ' '))
    for (const auto& s : split_subtokens(word)) units.push_back(s);
  return units;
}

namespace detail {

// Developers write "bit map" where the identifier has one hump "Bitmap".
// Against a given name, adjacent query units merge when their concatenation
// is one of the name's subtokens; exact units are preferred over merges so a
// name's own expansion always maps onto itself.
inline std::set<std::string> align_units(const std::vector<std::string>& units,
                                         const std::set<std::string>& name_subs) {
  std::set<std::string> out;
  std::size_t i = 0;
  while (i < units.size()) {
    if (name_subs.count(units[i])) {
      out.insert(units[i]);
      ++i;
      continue;
    }
    std::size_t best_end = 0;
    std::string merged;
    std::string acc = units[i];
    for (std::size_t j = i + 1; j < units.size() && acc.size() < 64; ++j) {
      acc += units[j];
      if (name_subs.count(acc)) {
        best_end = j;
        merged = acc;
      }
    }
    if (best_end > 0) {
      out.insert(merged);
      i = best_end + 1;
    } else {
      out.insert(units[i]);
      ++i;
    }
  }
  return out;
}

}  // namespace detail

// Jaccard similarity over subtoken sets, with adjacent query words merged
// against each candidate's own subtokens; ties break on higher training
// frequency, then name order. Names sharing no subtoken are excluded.
inline std::vector<Suggestion> suggest(const NameIndex& index, const std::string& text,
                                       int k) {
  if (index.names.empty()) throw EmptyIndex();
  if (k < 1) return {};

  std::vector<std::string> units = query_units(text);
  std::set<std::string> candidates;
  for (std::size_t i = 0; i < units.size(); ++i) {
    std::string acc;
    for (std::size_t j = i; j < units.size() && acc.size() < 64; ++j) {
      acc += units[j];
      auto it = index.subtoken_map.find(acc);
      if (it != index.subtoken_map.end())
        candidates.insert(it->second.begin(), it->second.end());
    }
  }

  std::vector<Suggestion> scored;
  for (const auto& name : candidates) {
    std::vector<std::string> subs = split_subtokens(name);
    std::set<std::string> name_subs(subs.begin(), subs.end());
    std::set<std::string> query = detail::align_units(units, name_subs);
    std::size_t inter = 0;
    for (const auto& s : name_subs) inter += query.count(s);
    std::size_t uni = query.size() + name_subs.size() - inter;
    if (inter == 0 || uni == 0) continue;
    Suggestion s;
    s.name = name;
    s.score = static_cast<double>(inter) / static_cast<double>(uni);
    s.frequency = index.frequency.count(name) ? index.frequency.at(name) : 0;
    scored.push_back(std::move(s));
  }
  std::sort(scored.begin(), scored.end(), [](const Suggestion& a, const Suggestion& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.frequency != b.frequency) return a.frequency > b.frequency;
    return a.name < b.name;
  });
  if (static_cast<int>(scored.size()) > k) scored.resize(k);
  return scored;
}

// The two query forms: compact carries just the confirmed name; detailed
// appends the wanted variable types and suggested words. Context tokens, when
// given, surround the invocation token; the entry `#name` marks its position
// (appended at the end otherwise).
struct DeveloperQuery {
  std::string name_text;
  std::optional<std::string> chosen_name;
  std::vector<std::string> variables;
  std::vector<std::string> words;
  std::vector<std::string> context;

  static constexpr const char* kNameSlot = "#name";
};

inline std::string query_invocation_token(const DeveloperQuery& q) {
  if (!q.chosen_name) throw MissingName();
  std::string tok = *q.chosen_name + "#iden";
  for (const auto& v : q.variables) tok += "#var:" + canonical_escape(v);
  for (const auto& w : q.words) tok += "#word:" + canonical_escape(w);
  return tok;
}

inline std::vector<std::string> encode_query(const DeveloperQuery& q) {
  std::string invocation = query_invocation_token(q);
  std::vector<std::string> out;
  bool placed = false;
  for (const auto& tok : q.context) {
    if (tok == DeveloperQuery::kNameSlot && !placed) {
      out.push_back(invocation);
      placed = true;
    } else {
      out.push_back(tok);
    }
  }
  if (!placed) out.push_back(invocation);
  return out;
}

struct Placeholder {
  enum class Kind { Var, Lit, Call };
  int position = 0;  // byte offset of the marker in `display`
  Kind kind = Kind::Var;
  std::string type;  // full FQN or primitive; empty for Call
};

struct RenderedResult {
  bool renderable = false;
  std::string display;
  std::vector<Placeholder> placeholders;
  std::string raw_target;
  double score = 0.0;
};

namespace detail {

// Display shortening: drop package segments up to the last uppercase-initial
// one (java.lang.System.out -> System.out). Cosmetic only.
inline std::string shorten_fqn(const std::string& fqn) {
  std::vector<std::string> segs = split(fqn, '.');
  for (std::size_t i = segs.size(); i > 0; --i) {
    if (!segs[i - 1].empty() && segs[i - 1][0] >= 'A' && segs[i - 1][0] <= 'Z')
      return join(std::vector<std::string>(segs.begin() + i - 1, segs.end()), ".");
  }
  return segs.back();
}

}  // namespace detail

/// Renders a decoded target token as a fillable expression: `«var:T»`,
/// `«lit:T»` and `«call»` placeholders, infix operators spaced out, FQNs
/// shortened. Non-template tokens (e.g. OOV copies) come back raw with
/// renderable=false.
inline RenderedResult render(const std::string& target_token) {
  RenderedResult out;
  out.raw_target = target_token;
  auto parsed = ExprTemplate::parse(target_token);
  if (!parsed) {
    out.display = target_token;
    return out;
  }
  const ExprTemplate& t = *parsed;
  out.renderable = true;

  std::string d;
  auto add_placeholder = [&](Placeholder::Kind kind, const std::string& type,
                             const std::string& marker) {
    Placeholder p;
    p.position = static_cast<int>(d.size());
    p.kind = kind;
    p.type = type;
    out.placeholders.push_back(p);
    d += marker;
  };

  switch (t.recv_kind) {
    case ExprTemplate::RecvKind::Var:
      add_placeholder(Placeholder::Kind::Var, t.recv_type,
                      "«var:" + detail::shorten_fqn(t.recv_type) + "»");
      d += ".";
      break;
    case ExprTemplate::RecvKind::Static:
      d += detail::shorten_fqn(t.recv_type) + ".";
      break;
    case ExprTemplate::RecvKind::FieldChain: {
      d += detail::shorten_fqn(t.recv_type);
      for (const auto& f : t.recv_fields) d += "." + f;
      d += ".";
      break;
    }
    case ExprTemplate::RecvKind::This:
      d += "this.";
      break;
    case ExprTemplate::RecvKind::None:
      break;
  }
  d += t.method + "(";
  for (std::size_t i = 0; i < t.slots.size(); ++i) {
    if (i > 0) {
      const std::string& sep = t.seps[i - 1];
      d += sep == "," ? ", " : " " + sep + " ";
    }
    const auto& s = t.slots[i];
    switch (s.kind) {
      case ExprTemplate::SlotKind::Var:
        add_placeholder(Placeholder::Kind::Var, s.type,
                        "«var:" + detail::shorten_fqn(s.type) + "»");
        break;
      case ExprTemplate::SlotKind::Lit:
        add_placeholder(Placeholder::Kind::Lit, s.type,
                        "«lit:" + detail::shorten_fqn(s.type) + "»");
        break;
      case ExprTemplate::SlotKind::MCall:
        add_placeholder(Placeholder::Kind::Call, "", "«call»");
        break;
      case ExprTemplate::SlotKind::Const:
        d += detail::shorten_fqn(s.type) + "." + s.member;
        break;
    }
  }
  d += ")";
  out.display = std::move(d);
  return out;
}

}  // namespace m2c
