#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "m2c/lexer.hpp"

namespace m2c {

struct Receiver {
  enum class Kind { Variable, StaticType, FieldChain, This, None };
  Kind kind = Kind::None;
  std::string name;                // Variable
  std::vector<std::string> chain;  // FieldChain: [root, field, field...]
};

struct ArgShape {
  enum class Role { Variable, Literal, NestedCall, ConstantRef, Compound };
  Role role = Role::Variable;
  std::string type_hint = "unknown";          // simple type name or literal type
  std::string name;                           // variable name / constant owner simple name
  std::string const_member;                   // ConstantRef member
  std::vector<std::string> operator_parts;    // Compound: joining infix operators
  std::vector<ArgShape> parts;                // Compound: sub-args, in order
};

struct InvocationSite {
  std::string method_name;
  Receiver receiver;
  std::vector<ArgShape> args;
  int name_index = -1;    // into the analysis token list
  int extent_begin = -1;  // receiver chain start
  int extent_end = -1;    // closing paren, inclusive
  int stmt_begin = -1;    // enclosing statement span, inclusive
  int stmt_end = -1;
  std::string file;
  int line = 0;

  std::vector<LexToken> enclosing_context;  // statement tokens, comments stripped
};

// Per-file extraction product: structural token list (comments removed),
// imports, heuristically declared variable types, and invocation sites.
struct FileAnalysis {
  std::vector<LexToken> tokens;
  std::vector<std::string> imports;            // dotted names; wildcards keep ".*"
  std::map<std::string, std::string> var_types;  // variable -> simple type text
  std::vector<InvocationSite> sites;
};

namespace detail {

inline bool tok_is(const LexToken& t, const char* text) { return t.text == text; }

inline bool is_sep(const LexToken& t, const char* text) {
  return t.kind == LexKind::Separator && t.text == text;
}

inline bool all_caps(const std::string& s) {
  bool letter = false;
  for (char c : s) {
    if (c >= 'a' && c <= 'z') return false;
    if (c >= 'A' && c <= 'Z') letter = true;
  }
  return letter;
}

inline bool upper_initial(const std::string& s) {
  return !s.empty() && s[0] >= 'A' && s[0] <= 'Z';
}

// Matching close paren index for the open paren at `open`, or -1.
inline int match_paren(const std::vector<LexToken>& toks, int open) {
  int depth = 0;
  for (int i = open; i < static_cast<int>(toks.size()); ++i) {
    if (toks[i].kind != LexKind::Separator) continue;
    if (toks[i].text == "(" || toks[i].text == "[" || toks[i].text == "{") ++depth;
    if (toks[i].text == ")" || toks[i].text == "]" || toks[i].text == "}") {
      --depth;
      if (depth == 0) return i;
    }
  }
  return -1;
}

inline std::vector<std::string> scan_imports(const std::vector<LexToken>& toks) {
  std::vector<std::string> imports;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (toks[i].kind != LexKind::Keyword || toks[i].text != "import") continue;
    std::size_t j = i + 1;
    bool is_static = false;
    if (j < toks.size() && toks[j].kind == LexKind::Keyword && toks[j].text == "static") {
      is_static = true;
      ++j;
    }
    std::string dotted;
    bool wildcard = false;
    while (j < toks.size() && !is_sep(toks[j], ";")) {
      if (toks[j].kind == LexKind::Identifier) {
        if (!dotted.empty()) dotted += '.';
        dotted += toks[j].text;
      } else if (toks[j].kind == LexKind::Operator && toks[j].text == "*") {
        wildcard = true;
      }
      ++j;
    }
    if (dotted.empty()) continue;
    if (is_static) {
      // import static a.b.C.member -> usable as an import of a.b.C
      auto pos = dotted.rfind('.');
      if (pos != std::string::npos) dotted = dotted.substr(0, pos);
      imports.push_back(dotted);
    } else {
      imports.push_back(wildcard ? dotted + ".*" : dotted);
    }
    i = j;
  }
  return imports;
}

// Heuristic declaration scan: `Type name` followed by one of `= ; , ) :`.
// Catches locals, fields, parameters, catch clauses and for-each variables.
inline std::map<std::string, std::string> scan_declarations(const std::vector<LexToken>& toks) {
  std::map<std::string, std::string> vars;
  const int n = static_cast<int>(toks.size());
  for (int i = 0; i < n; ++i) {
    const LexToken& t = toks[i];
    bool type_head = (t.kind == LexKind::Identifier && upper_initial(t.text)) ||
                     (t.kind == LexKind::Keyword && is_primitive_type_keyword(t.text));
    if (!type_head) continue;

    // Dotted type prefix belongs to the rightmost segment: a.b.C x
    std::string simple = t.text;
    int j = i + 1;
    while (j + 1 < n && is_sep(toks[j], ".") && toks[j + 1].kind == LexKind::Identifier) {
      simple = toks[j + 1].text;
      j += 2;
    }
    // Skip generics.
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
    // Skip array brackets.
    while (j + 1 < n && is_sep(toks[j], "[") && is_sep(toks[j + 1], "]")) j += 2;

    if (j >= n || toks[j].kind != LexKind::Identifier) continue;
    const std::string& name = toks[j].text;
    int k = j + 1;
    while (k + 1 < n && is_sep(toks[k], "[") && is_sep(toks[k + 1], "]")) k += 2;
    if (k >= n) continue;
    const LexToken& after = toks[k];
    bool decl = (after.kind == LexKind::Operator && after.text == "=") ||
                is_sep(after, ";") || is_sep(after, ",") || is_sep(after, ")") ||
                (after.kind == LexKind::Operator && after.text == ":");
    if (decl) vars[name] = simple;
  }
  return vars;
}

struct ArgClassifier {
  const std::vector<LexToken>& toks;

  // Classify the argument chunk toks[b..e] (inclusive).
  ArgShape classify(int b, int e, const std::map<std::string, std::string>& vars) const {
    ArgShape unknown;
    unknown.role = ArgShape::Role::Variable;
    unknown.type_hint = "unknown";
    if (b > e) return unknown;

    // A fully parenthesized chunk classifies as its body.
    if (is_sep(toks[b], "(") && match_paren(toks, b) == e && e > b + 1)
      return classify(b + 1, e - 1, vars);

    // Top-level infix operators make the argument compound. Unary prefixes
    // (start of chunk or right after another operator) do not count.
    std::vector<int> joiners;
    int depth = 0;
    for (int i = b; i <= e; ++i) {
      const LexToken& t = toks[i];
      if (t.kind == LexKind::Separator) {
        if (t.text == "(" || t.text == "[" || t.text == "{") ++depth;
        if (t.text == ")" || t.text == "]" || t.text == "}") --depth;
        continue;
      }
      if (depth != 0 || t.kind != LexKind::Operator) continue;
      if (t.text == "!" || t.text == "~") continue;
      bool unary = i == b || toks[i - 1].kind == LexKind::Operator ||
                   (toks[i - 1].kind == LexKind::Separator && toks[i - 1].text != ")" &&
                    toks[i - 1].text != "]");
      if (!unary) joiners.push_back(i);
    }
    if (!joiners.empty()) {
      ArgShape shape;
      shape.role = ArgShape::Role::Compound;
      int start = b;
      for (int j : joiners) {
        shape.parts.push_back(classify(start, j - 1, vars));
        shape.operator_parts.push_back(toks[j].text);
        start = j + 1;
      }
      shape.parts.push_back(classify(start, e, vars));
      shape.type_hint = shape.parts.front().type_hint;
      return shape;
    }

    // Leading unary minus/plus folded into a numeric literal.
    if (e == b + 1 && toks[b].kind == LexKind::Operator &&
        (toks[b].text == "-" || toks[b].text == "+") &&
        toks[b + 1].kind == LexKind::NumberLit) {
      return literal(toks[b + 1]);
    }

    if (b == e) {
      const LexToken& t = toks[b];
      if (t.kind == LexKind::Identifier) {
        ArgShape shape;
        shape.role = ArgShape::Role::Variable;
        shape.name = t.text;
        auto it = vars.find(t.text);
        shape.type_hint = it == vars.end() ? "unknown" : it->second;
        return shape;
      }
      if (t.kind == LexKind::NumberLit || t.kind == LexKind::StringLit ||
          t.kind == LexKind::CharLit)
        return literal(t);
      if (t.kind == LexKind::Keyword && (t.text == "true" || t.text == "false")) {
        ArgShape shape;
        shape.role = ArgShape::Role::Literal;
        shape.type_hint = "boolean";
        return shape;
      }
      if (t.kind == LexKind::Keyword && t.text == "null") {
        ArgShape shape;
        shape.role = ArgShape::Role::Literal;
        shape.type_hint = "null";
        return shape;
      }
      return unknown;
    }

    // Ident.CONST constant reference.
    if (e == b + 2 && toks[b].kind == LexKind::Identifier && is_sep(toks[b + 1], ".") &&
        toks[b + 2].kind == LexKind::Identifier && all_caps(toks[b + 2].text) &&
        upper_initial(toks[b].text)) {
      ArgShape shape;
      shape.role = ArgShape::Role::ConstantRef;
      shape.name = toks[b].text;
      shape.const_member = toks[b + 2].text;
      shape.type_hint = toks[b].text;
      return shape;
    }

    // A call (possibly with receiver chain) or a `new` construction spanning
    // the whole chunk maps to the local-method placeholder.
    if (toks[e].kind == LexKind::Separator && toks[e].text == ")") {
      int open = -1;
      for (int i = b; i < e; ++i) {
        if (is_sep(toks[i], "(")) {
          open = i;
          break;
        }
      }
      if (open > b && match_paren(toks, open) == e) {
        bool head_call = toks[open - 1].kind == LexKind::Identifier;
        bool head_new = toks[b].kind == LexKind::Keyword && toks[b].text == "new";
        if (head_call || head_new) {
          ArgShape shape;
          shape.role = ArgShape::Role::NestedCall;
          return shape;
        }
      }
    }
    return unknown;
  }

  ArgShape literal(const LexToken& t) const {
    ArgShape shape;
    shape.role = ArgShape::Role::Literal;
    switch (t.kind) {
      case LexKind::StringLit:
        shape.type_hint = "java.lang.String";
        break;
      case LexKind::CharLit:
        shape.type_hint = "char";
        break;
      case LexKind::NumberLit:
        shape.type_hint = number_type(t.text);
        break;
      default:
        shape.type_hint = "unknown";
    }
    return shape;
  }

  static std::string number_type(const std::string& text) {
    if (text.empty()) return "int";
    char last = text.back();
    if (last == 'l' || last == 'L') return "long";
    if (last == 'f' || last == 'F') return "float";
    if (last == 'd' || last == 'D') return "double";
    bool hex = text.size() > 1 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X');
    if (!hex && (text.find('.') != std::string::npos || text.find('e') != std::string::npos ||
                 text.find('E') != std::string::npos))
      return "double";
    return "int";
  }
};

}  // namespace detail

// Finds `ident ( ... )` call patterns, recovers receiver chains and argument
// shapes, and attaches the smallest `;`/`{`/`}`-delimited statement span.
// Declarations (`new Foo(`, `void foo(`, annotations) are filtered out.
inline std::vector<InvocationSite> extract_invocations(
    const std::vector<LexToken>& raw_tokens,
    const std::map<std::string, std::string>& var_types = {},
    const std::string& file = "") {
  using detail::is_sep;

  // Comments play no structural role.
  std::vector<LexToken> toks;
  toks.reserve(raw_tokens.size());
  for (const auto& t : raw_tokens)
    if (t.kind != LexKind::Comment) toks.push_back(t);

  const int n = static_cast<int>(toks.size());
  std::vector<InvocationSite> sites;
  detail::ArgClassifier classifier{toks};

  for (int i = 0; i < n - 1; ++i) {
    if (toks[i].kind != LexKind::Identifier || !is_sep(toks[i + 1], "(")) continue;

    if (i > 0) {
      const LexToken& prev = toks[i - 1];
      if (prev.kind == LexKind::Keyword && prev.text == "new") continue;  // constructor
      if (is_sep(prev, "@")) continue;                                    // annotation
      // Declaration heads: `Type name(`, `foo[] name(`, `List<X> name(`,
      // modifier keywords right before the name.
      static const std::set<std::string> modifiers = {
          "public", "private",      "protected", "static",  "final",
          "native", "synchronized", "abstract",  "default", "strictfp"};
      if (prev.kind == LexKind::Identifier) continue;
      if (is_sep(prev, "]")) continue;
      if (prev.kind == LexKind::Operator && prev.text == ">") continue;
      if (prev.kind == LexKind::Keyword &&
          (is_primitive_type_keyword(prev.text) || modifiers.count(prev.text)))
        continue;
    }

    int close = detail::match_paren(toks, i + 1);
    if (close < 0) continue;

    InvocationSite site;
    site.method_name = toks[i].text;
    site.name_index = i;
    site.file = file;
    site.line = toks[i].line;
    site.extent_begin = i;
    site.extent_end = close;

    // Receiver: walk the dotted chain leftwards.
    if (i >= 2 && is_sep(toks[i - 1], ".")) {
      std::vector<std::string> chain;
      int j = i - 1;
      bool truncated = false;
      while (j >= 1 && is_sep(toks[j], ".")) {
        const LexToken& left = toks[j - 1];
        if (left.kind == LexKind::Identifier) {
          chain.insert(chain.begin(), left.text);
          j -= 2;
        } else if (left.kind == LexKind::Keyword && left.text == "this" && j - 1 >= 0) {
          chain.insert(chain.begin(), "this");
          j -= 2;
          break;
        } else {
          truncated = true;  // `foo().bar(` or `arr[0].bar(`: unknowable root
          break;
        }
      }
      site.extent_begin = j + 1;
      if (truncated || chain.empty()) {
        site.receiver.kind = Receiver::Kind::Variable;
        site.receiver.name.clear();  // unresolvable
      } else if (chain.size() == 1) {
        if (chain[0] == "this") {
          site.receiver.kind = Receiver::Kind::This;
        } else if (var_types.count(chain[0])) {
          site.receiver.kind = Receiver::Kind::Variable;
          site.receiver.name = chain[0];
        } else if (detail::upper_initial(chain[0])) {
          site.receiver.kind = Receiver::Kind::StaticType;
          site.receiver.name = chain[0];
        } else {
          site.receiver.kind = Receiver::Kind::Variable;
          site.receiver.name = chain[0];
        }
      } else {
        site.receiver.kind = Receiver::Kind::FieldChain;
        site.receiver.chain = chain;
      }
    } else {
      site.receiver.kind = Receiver::Kind::None;
    }

    // Arguments: split the paren body at top-level commas.
    if (close > i + 2) {
      int depth = 0;
      int start = i + 2;
      for (int j = i + 2; j <= close; ++j) {
        const LexToken& t = toks[j];
        bool at_end = j == close;
        bool top_comma = depth == 0 && is_sep(t, ",");
        if (t.kind == LexKind::Separator) {
          if (t.text == "(" || t.text == "[" || t.text == "{") ++depth;
          if (t.text == ")" || t.text == "]" || t.text == "}") --depth;
        }
        if (top_comma || at_end) {
          site.args.push_back(classifier.classify(start, j - 1, var_types));
          start = j + 1;
        }
      }
    }

    // Statement span: nearest `;`/`{`/`}` outside the call extent.
    int sb = site.extent_begin;
    while (sb > 0) {
      const LexToken& t = toks[sb - 1];
      if (is_sep(t, ";") || is_sep(t, "{") || is_sep(t, "}")) break;
      --sb;
    }
    int se = site.extent_end;
    while (se + 1 < n) {
      const LexToken& t = toks[se + 1];
      if (is_sep(t, ";") || is_sep(t, "{") || is_sep(t, "}")) break;
      ++se;
    }
    site.stmt_begin = sb;
    site.stmt_end = se;
    site.enclosing_context.assign(toks.begin() + sb, toks.begin() + se + 1);

    sites.push_back(std::move(site));
  }
  return sites;
}

inline FileAnalysis analyze_source(const std::string& text, const std::string& file = "") {
  FileAnalysis fa;
  std::vector<LexToken> raw = lex(text);
  fa.tokens.reserve(raw.size());
  for (auto& t : raw)
    if (t.kind != LexKind::Comment) fa.tokens.push_back(std::move(t));
  fa.imports = detail::scan_imports(fa.tokens);
  fa.var_types = detail::scan_declarations(fa.tokens);
  fa.sites = extract_invocations(fa.tokens, fa.var_types, file);
  return fa;
}

}  // namespace m2c
