#pragma once

#include <optional>
#include <string>
#include <vector>

#include "m2c/text.hpp"

namespace m2c {

// Target-side invocation token: `recv.name(slot sep slot ...)` where recv is
// one of `#var:FQN`, `FQN`, `FQN.field...`, `#this`, `#none`; slots are
// `#var:T`, `#lit:T`, `#mcall` or `FQN.CONST`; separators are `,` or an
// infix operator wrapped as `~op~`. The whole token is whitespace-free.
struct ExprTemplate {
  enum class RecvKind { Var, Static, FieldChain, This, None };
  enum class SlotKind { Var, Lit, MCall, Const };

  struct Slot {
    SlotKind kind;
    std::string type;    // Var/Lit: type name; Const: owner FQN
    std::string member;  // Const: member name
  };

  RecvKind recv_kind = RecvKind::None;
  std::string recv_type;                 // Var/Static: FQN; FieldChain: root FQN
  std::vector<std::string> recv_fields;  // FieldChain: trailing field names
  std::string method;
  std::vector<Slot> slots;
  std::vector<std::string> seps;  // between slots: "," or verbatim operator text

  std::string receiver_string() const {
    switch (recv_kind) {
      case RecvKind::Var:
        return "#var:" + recv_type;
      case RecvKind::Static:
        return recv_type;
      case RecvKind::FieldChain: {
        std::string s = recv_type;
        for (const auto& f : recv_fields) s += "." + f;
        return s;
      }
      case RecvKind::This:
        return "#this";
      case RecvKind::None:
        return "#none";
    }
    return "#none";
  }

  std::string serialize() const {
    std::string out = receiver_string();
    out += "." + method + "(";
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (i > 0) {
        const std::string& sep = seps[i - 1];
        out += sep == "," ? sep : "~" + canonical_escape(sep) + "~";
      }
      const Slot& s = slots[i];
      switch (s.kind) {
        case SlotKind::Var:
          out += "#var:" + s.type;
          break;
        case SlotKind::Lit:
          out += "#lit:" + s.type;
          break;
        case SlotKind::MCall:
          out += "#mcall";
          break;
        case SlotKind::Const:
          out += s.type + "." + s.member;
          break;
      }
    }
    out += ")";
    return out;
  }

  static std::optional<ExprTemplate> parse(const std::string& token) {
    ExprTemplate t;
    std::size_t open = token.find('(');
    if (open == std::string::npos || token.empty() || token.back() != ')') return std::nullopt;

    std::string head = token.substr(0, open);
    std::size_t dot = head.rfind('.');
    if (dot == std::string::npos) return std::nullopt;
    t.method = head.substr(dot + 1);
    if (!is_identifier(t.method)) return std::nullopt;

    std::string recv = head.substr(0, dot);
    if (recv == "#this") {
      t.recv_kind = RecvKind::This;
    } else if (recv == "#none") {
      t.recv_kind = RecvKind::None;
    } else if (recv.starts_with("#var:")) {
      t.recv_kind = RecvKind::Var;
      t.recv_type = recv.substr(5);
      if (!is_fqn(t.recv_type)) return std::nullopt;
    } else {
      if (!is_fqn(recv)) return std::nullopt;
      // Type FQN runs up to the last uppercase-initial segment; what follows
      // is a field chain (java.lang.System.out).
      std::vector<std::string> segs = split(recv, '.');
      std::size_t type_end = segs.size();
      for (std::size_t i = segs.size(); i > 0; --i) {
        char c = segs[i - 1][0];
        if (c >= 'A' && c <= 'Z') {
          type_end = i;
          break;
        }
      }
      if (type_end == segs.size()) {
        t.recv_kind = RecvKind::Static;
        t.recv_type = recv;
      } else {
        t.recv_kind = RecvKind::FieldChain;
        t.recv_type = join(std::vector<std::string>(segs.begin(), segs.begin() + type_end), ".");
        t.recv_fields.assign(segs.begin() + type_end, segs.end());
      }
    }

    std::string body = token.substr(open + 1, token.size() - open - 2);
    if (body.empty()) return t;

    std::size_t i = 0;
    std::string item;
    auto flush_item = [&]() -> bool {
      Slot s;
      if (item.starts_with("#var:")) {
        s.kind = SlotKind::Var;
        s.type = item.substr(5);
        if (s.type.empty()) return false;
      } else if (item.starts_with("#lit:")) {
        s.kind = SlotKind::Lit;
        s.type = item.substr(5);
        if (s.type.empty()) return false;
      } else if (item == "#mcall") {
        s.kind = SlotKind::MCall;
      } else {
        std::size_t d = item.rfind('.');
        if (d == std::string::npos || !is_fqn(item)) return false;
        s.kind = SlotKind::Const;
        s.type = item.substr(0, d);
        s.member = item.substr(d + 1);
      }
      t.slots.push_back(std::move(s));
      item.clear();
      return true;
    };

    while (i < body.size()) {
      char c = body[i];
      if (c == ',') {
        if (!flush_item()) return std::nullopt;
        t.seps.push_back(",");
        ++i;
      } else if (c == '~') {
        if (!flush_item()) return std::nullopt;
        std::size_t end = body.find('~', i + 1);
        if (end == std::string::npos) return std::nullopt;
        t.seps.push_back(percent_unescape(body.substr(i + 1, end - i - 1)));
        i = end + 1;
      } else {
        item += c;
        ++i;
      }
    }
    if (!flush_item()) return std::nullopt;
    if (t.seps.size() + 1 != t.slots.size()) return std::nullopt;
    return t;
  }
};

}  // namespace m2c
