#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "m2c/expr_template.hpp"
#include "m2c/extractor.hpp"
#include "m2c/typedb.hpp"

namespace m2c {

// Token kinds shared by the source (incomplete) and target (complete)
// languages; aligned pairs match kinds index-wise.
enum class PairKind { MethodName, PartialType, Slot, Structural };

struct PairTok {
  PairKind kind;
  std::string text;
};

struct ParallelPair {
  std::vector<PairTok> source;
  std::vector<PairTok> target;
  std::string library = "other";
  std::string origin;
};

inline PairKind classify_source_token(const std::string& text) {
  if (text.find("#iden") != std::string::npos) return PairKind::MethodName;
  if (text == "#var" || text == "#lit") return PairKind::Slot;
  if (is_identifier(text) && !java_keywords().count(text)) return PairKind::PartialType;
  return PairKind::Structural;
}

inline std::vector<std::string> primitive_names() {
  return {"boolean", "byte", "char", "double", "float", "int", "long", "short"};
}

inline bool is_primitive_name(const std::string& s) {
  const auto prims = primitive_names();
  return std::find(prims.begin(), prims.end(), s) != prims.end();
}

/// Compact source form of an invocation: `<name>#iden`.
inline std::string compact_invocation_token(const InvocationSite& site) {
  return site.method_name + "#iden";
}

namespace detail {

inline void collect_query_hints(const ArgShape& arg, std::vector<std::string>& vars,
                                std::vector<std::string>& words) {
  switch (arg.role) {
    case ArgShape::Role::Variable:
      vars.push_back(arg.type_hint);
      break;
    case ArgShape::Role::Compound:
      for (const auto& p : arg.parts) collect_query_hints(p, vars, words);
      for (const auto& op : arg.operator_parts) words.push_back(op);
      break;
    default:
      break;
  }
}

}  // namespace detail

/// Detailed source form: `<name>#iden#var:<type>...#word:<w>...`, variable
/// types and operator words drawn from the call site's own arguments.
inline std::string detailed_invocation_token(const InvocationSite& site) {
  std::vector<std::string> vars, words;
  for (const auto& a : site.args) detail::collect_query_hints(a, vars, words);
  std::string tok = compact_invocation_token(site);
  for (const auto& v : vars) tok += "#var:" + canonical_escape(v);
  for (const auto& w : words) tok += "#word:" + canonical_escape(w);
  return tok;
}

// Element-level encoder: resolves simple names against imports + type
// database and assembles aligned pairs for each invocation in a statement.
class Encoder {
 public:
  explicit Encoder(const TypeDatabase& db) : db_(db) {}

  struct SitePairs {
    std::vector<ParallelPair> pairs;  // compact, plus detailed when distinct
    std::string drop_reason;          // non-empty when pairs is empty
  };

  // Primitive names pass through; everything else goes through imports + db.
  std::optional<std::string> resolve_type(const std::string& simple,
                                          const std::vector<std::string>& imports) const {
    if (is_primitive_name(simple)) return simple;
    return db_.resolve(simple, imports);
  }

  std::optional<std::string> variable_type(const std::string& name,
                                           const FileAnalysis& fa) const {
    auto it = fa.var_types.find(name);
    if (it == fa.var_types.end()) return std::nullopt;
    return resolve_type(it->second, fa.imports);
  }

  struct TemplateResult {
    ExprTemplate tmpl;
    std::string declaring_fqn;  // may be empty
  };

  std::optional<TemplateResult> build_template(const InvocationSite& site,
                                               const FileAnalysis& fa,
                                               std::string* reason) const {
    TemplateResult out;
    ExprTemplate& t = out.tmpl;
    t.method = site.method_name;
    const int arity = static_cast<int>(site.args.size());
    std::string receiver_simple;  // simple name for method-owner lookup
    std::string receiver_fqn;

    switch (site.receiver.kind) {
      case Receiver::Kind::Variable: {
        const std::string& name = site.receiver.name;
        std::optional<std::string> fqn =
            name.empty() ? std::nullopt : variable_type(name, fa);
        if (!fqn) {
          // A uniquely owned method name pins the receiver type.
          const auto* owners = db_.method_owners("any", site.method_name, arity);
          if (owners && owners->size() == 1) fqn = owners->front();
        }
        if (!fqn) return drop(reason, "receiver-type-unknown");
        t.recv_kind = ExprTemplate::RecvKind::Var;
        t.recv_type = *fqn;
        receiver_fqn = *fqn;
        auto it = fa.var_types.find(name);
        if (it != fa.var_types.end()) receiver_simple = it->second;
        break;
      }
      case Receiver::Kind::StaticType: {
        auto fqn = resolve_type(site.receiver.name, fa.imports);
        if (!fqn) return drop(reason, "receiver-type-unresolved");
        t.recv_kind = ExprTemplate::RecvKind::Static;
        t.recv_type = *fqn;
        receiver_fqn = *fqn;
        receiver_simple = site.receiver.name;
        break;
      }
      case Receiver::Kind::FieldChain: {
        const auto& chain = site.receiver.chain;
        if (chain.front() == "this") return drop(reason, "this-rooted-chain");
        bool type_rooted = detail::upper_initial(chain.front()) &&
                           !fa.var_types.count(chain.front());
        if (type_rooted) {
          auto root = resolve_type(chain.front(), fa.imports);
          if (!root) return drop(reason, "receiver-type-unresolved");
          t.recv_kind = ExprTemplate::RecvKind::FieldChain;
          t.recv_type = *root;
          t.recv_fields.assign(chain.begin() + 1, chain.end());
          // Fold field types to find the invoked type; fall back to the root.
          std::string cur = *root;
          bool folded = true;
          for (std::size_t i = 1; i < chain.size(); ++i) {
            auto ft = db_.field_type(cur, chain[i]);
            if (!ft) {
              folded = false;
              break;
            }
            cur = *ft;
          }
          receiver_fqn = folded ? cur : *root;
          if (folded) receiver_simple = simple_of(cur);
        } else {
          auto cur = variable_type(chain.front(), fa);
          if (!cur) return drop(reason, "receiver-type-unknown");
          for (std::size_t i = 1; i < chain.size(); ++i) {
            auto ft = db_.field_type(*cur, chain[i]);
            if (!ft) return drop(reason, "field-unresolved");
            cur = ft;
          }
          t.recv_kind = ExprTemplate::RecvKind::Var;
          t.recv_type = *cur;
          receiver_fqn = *cur;
          receiver_simple = simple_of(*cur);
        }
        break;
      }
      case Receiver::Kind::This:
        t.recv_kind = ExprTemplate::RecvKind::This;
        break;
      case Receiver::Kind::None:
        t.recv_kind = ExprTemplate::RecvKind::None;
        break;
    }

    for (std::size_t i = 0; i < site.args.size(); ++i) {
      if (i > 0) t.seps.push_back(",");
      if (!append_slots(site.args[i], fa, t)) return drop(reason, "arg-unresolved");
    }

    // Declaring type: explicit METHOD record first, then the receiver type,
    // then a unique "any" owner.
    if (!receiver_simple.empty()) {
      const auto* owners = db_.method_owners(receiver_simple, site.method_name, arity);
      if (owners && owners->size() == 1) out.declaring_fqn = owners->front();
    }
    if (out.declaring_fqn.empty()) out.declaring_fqn = receiver_fqn;
    if (out.declaring_fqn.empty()) {
      const auto* owners = db_.method_owners("any", site.method_name, arity);
      if (owners && owners->size() == 1) out.declaring_fqn = owners->front();
    }
    return out;
  }

  // All pairs for one invocation site, context drawn from its statement.
  SitePairs encode_site(const FileAnalysis& fa, const InvocationSite& site,
                        const std::string& origin) const {
    SitePairs out;
    std::string reason;
    auto built = build_template(site, fa, &reason);
    if (!built) {
      out.drop_reason = reason;
      return out;
    }

    // Top-level invocation extents within the statement.
    std::vector<const InvocationSite*> in_stmt;
    for (const auto& s : fa.sites)
      if (s.name_index >= site.stmt_begin && s.name_index <= site.stmt_end)
        in_stmt.push_back(&s);
    std::vector<const InvocationSite*> top;
    for (const auto* s : in_stmt) {
      bool nested = false;
      for (const auto* o : in_stmt)
        if (o != s && o->extent_begin <= s->extent_begin && s->extent_end <= o->extent_end)
          nested = true;
      if (!nested) top.push_back(s);
    }

    std::vector<PairTok> src, tgt;
    int invocation_index = -1;  // position of the method-name token

    for (int tix = site.stmt_begin; tix <= site.stmt_end; ++tix) {
      const InvocationSite* extent = nullptr;
      for (const auto* s : top)
        if (s->extent_begin == tix) extent = s;
      if (extent) {
        // Receiver variables surface as context slots of their own.
        if (extent->receiver.kind == Receiver::Kind::Variable &&
            !extent->receiver.name.empty()) {
          auto fqn = variable_type(extent->receiver.name, fa);
          if (!fqn) {
            out.drop_reason = "context-var-unresolved";
            return out;
          }
          src.push_back({PairKind::Slot, "#var"});
          tgt.push_back({PairKind::Slot, "#var:" + *fqn});
        }
        bool holds_target = extent->extent_begin <= site.name_index &&
                            site.name_index <= extent->extent_end;
        if (holds_target) {
          invocation_index = static_cast<int>(src.size());
          src.push_back({PairKind::MethodName, ""});  // filled per variant
          tgt.push_back({PairKind::MethodName, built->tmpl.serialize()});
        }
        tix = extent->extent_end;
        continue;
      }
      if (!encode_context_token(fa, tix, src, tgt, &out.drop_reason)) return out;
    }

    if (invocation_index < 0) {
      out.drop_reason = "site-outside-statement";
      return out;
    }

    ParallelPair pair;
    pair.source = src;
    pair.target = tgt;
    pair.library = built->declaring_fqn.empty() ? "other"
                                                : db_.library_of(built->declaring_fqn);
    pair.origin = origin;
    pair.source[invocation_index].text = compact_invocation_token(site);
    out.pairs.push_back(pair);

    std::string detailed = detailed_invocation_token(site);
    if (detailed != pair.source[invocation_index].text) {
      pair.source[invocation_index].text = detailed;
      out.pairs.push_back(std::move(pair));
    }
    return out;
  }

 private:
  static std::optional<Encoder::TemplateResult> drop(std::string* reason, const char* why) {
    if (reason) *reason = why;
    return std::nullopt;
  }

  static std::string simple_of(const std::string& fqn) {
    auto pos = fqn.rfind('.');
    return pos == std::string::npos ? fqn : fqn.substr(pos + 1);
  }

  bool append_slots(const ArgShape& arg, const FileAnalysis& fa, ExprTemplate& t) const {
    using Role = ArgShape::Role;
    switch (arg.role) {
      case Role::Variable: {
        if (arg.type_hint == "unknown") return false;
        auto fqn = resolve_type(arg.type_hint, fa.imports);
        if (!fqn) return false;
        t.slots.push_back({ExprTemplate::SlotKind::Var, *fqn, ""});
        return true;
      }
      case Role::Literal:
        t.slots.push_back({ExprTemplate::SlotKind::Lit, arg.type_hint, ""});
        return true;
      case Role::NestedCall:
        t.slots.push_back({ExprTemplate::SlotKind::MCall, "", ""});
        return true;
      case Role::ConstantRef: {
        auto fqn = resolve_type(arg.name, fa.imports);
        if (!fqn) return false;
        t.slots.push_back({ExprTemplate::SlotKind::Const, *fqn, arg.const_member});
        return true;
      }
      case Role::Compound: {
        for (std::size_t i = 0; i < arg.parts.size(); ++i) {
          if (i > 0) t.seps.push_back(arg.operator_parts[i - 1]);
          if (!append_slots(arg.parts[i], fa, t)) return false;
        }
        return true;
      }
    }
    return false;
  }

  bool encode_context_token(const FileAnalysis& fa, int tix, std::vector<PairTok>& src,
                            std::vector<PairTok>& tgt, std::string* reason) const {
    const LexToken& t = fa.tokens[tix];
    switch (t.kind) {
      case LexKind::Separator:
      case LexKind::Comment:
        return true;
      case LexKind::Operator: {
        std::string esc = canonical_escape(t.text);
        src.push_back({PairKind::Structural, esc});
        tgt.push_back({PairKind::Structural, esc});
        return true;
      }
      case LexKind::Keyword: {
        if (t.text == "true" || t.text == "false") {
          src.push_back({PairKind::Slot, "#lit"});
          tgt.push_back({PairKind::Slot, "#lit:boolean"});
        } else if (t.text == "null") {
          src.push_back({PairKind::Slot, "#lit"});
          tgt.push_back({PairKind::Slot, "#lit:null"});
        } else {
          src.push_back({PairKind::Structural, t.text});
          tgt.push_back({PairKind::Structural, t.text});
        }
        return true;
      }
      case LexKind::NumberLit:
      case LexKind::StringLit:
      case LexKind::CharLit: {
        ArgShape lit = detail::ArgClassifier{fa.tokens}.literal(t);
        src.push_back({PairKind::Slot, "#lit"});
        tgt.push_back({PairKind::Slot, "#lit:" + lit.type_hint});
        return true;
      }
      case LexKind::Identifier: {
        if (is_declaration_head(fa, tix)) {
          auto fqn = resolve_type(t.text, fa.imports);
          if (!fqn) {
            *reason = "context-type-unresolved";
            return false;
          }
          src.push_back({PairKind::PartialType, t.text});
          tgt.push_back({PairKind::PartialType, *fqn});
          return true;
        }
        if (fa.var_types.count(t.text)) {
          auto fqn = variable_type(t.text, fa);
          if (!fqn) {
            *reason = "context-var-unresolved";
            return false;
          }
          src.push_back({PairKind::Slot, "#var"});
          tgt.push_back({PairKind::Slot, "#var:" + *fqn});
          return true;
        }
        if (detail::upper_initial(t.text)) {
          auto fqn = resolve_type(t.text, fa.imports);
          if (fqn) {
            src.push_back({PairKind::PartialType, t.text});
            tgt.push_back({PairKind::PartialType, *fqn});
            return true;
          }
        }
        *reason = "context-identifier-unresolved";
        return false;
      }
    }
    return true;
  }

  // `Type name` with a declarator-looking token after the name.
  bool is_declaration_head(const FileAnalysis& fa, int tix) const {
    const auto& toks = fa.tokens;
    const int n = static_cast<int>(toks.size());
    int j = tix + 1;
    if (j < n && toks[j].kind == LexKind::Operator && toks[j].text == "<") {
      int depth = 0;
      while (j < n) {
        if (toks[j].kind == LexKind::Operator) {
          for (char c : toks[j].text) {
            if (c == '<') ++depth;
            if (c == '>') --depth;
          }
        }
        ++j;
        if (depth <= 0) break;
      }
    }
    while (j + 1 < n && detail::is_sep(toks[j], "[") && detail::is_sep(toks[j + 1], "]"))
      j += 2;
    if (j >= n || toks[j].kind != LexKind::Identifier) return false;
    int k = j + 1;
    if (k >= n) return false;
    const LexToken& after = toks[k];
    return (after.kind == LexKind::Operator && (after.text == "=" || after.text == ":")) ||
           detail::is_sep(after, ";") || detail::is_sep(after, ",") ||
           detail::is_sep(after, ")");
  }

  const TypeDatabase& db_;
};

}  // namespace m2c
