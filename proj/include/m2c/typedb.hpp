#pragma once

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "m2c/text.hpp"

namespace m2c {

// Declarative type knowledge: simple name -> FQN candidates (with library
// label), static field types, and method ownership by (receiver, name, arity).
// Loaded once from TSV, read-only afterwards.
class TypeDatabase {
 public:
  struct TypeEntry {
    std::string fqn;
    std::string library;
  };

  void add_type(const std::string& simple, const std::string& fqn, const std::string& library) {
    validate_fqn(fqn);
    auto& v = types_[simple];
    for (const auto& e : v)
      if (e.fqn == fqn) return;
    v.push_back({fqn, library});
    std::sort(v.begin(), v.end(),
              [](const TypeEntry& a, const TypeEntry& b) { return a.fqn < b.fqn; });
    library_[fqn] = library;
  }

  void add_field(const std::string& owner_fqn, const std::string& field,
                 const std::string& type_fqn) {
    validate_fqn(owner_fqn);
    validate_fqn(type_fqn);
    fields_[owner_fqn + "#" + field] = type_fqn;
  }

  void add_method(const std::string& owner_simple_or_any, const std::string& name, int arity,
                  const std::string& declaring_fqn) {
    validate_fqn(declaring_fqn);
    auto& v = methods_[method_key(owner_simple_or_any, name, arity)];
    if (std::find(v.begin(), v.end(), declaring_fqn) == v.end()) {
      v.push_back(declaring_fqn);
      std::sort(v.begin(), v.end());
    }
  }

  const std::vector<TypeEntry>* candidates(const std::string& simple) const {
    auto it = types_.find(simple);
    return it == types_.end() ? nullptr : &it->second;
  }

  std::optional<std::string> field_type(const std::string& owner_fqn,
                                        const std::string& field) const {
    auto it = fields_.find(owner_fqn + "#" + field);
    if (it == fields_.end()) return std::nullopt;
    return it->second;
  }

  const std::vector<std::string>* method_owners(const std::string& owner_simple_or_any,
                                                const std::string& name, int arity) const {
    auto it = methods_.find(method_key(owner_simple_or_any, name, arity));
    return it == methods_.end() ? nullptr : &it->second;
  }

  // Library label for a known FQN, else "other".
  std::string library_of(const std::string& fqn) const {
    auto it = library_.find(fqn);
    return it == library_.end() ? "other" : it->second;
  }

  bool known_fqn(const std::string& fqn) const { return library_.count(fqn) > 0; }

  std::size_t type_count() const { return types_.size(); }

  // Resolution order: exact import, wildcard import backed by the db, unique
  // db candidate, lexicographically smallest db candidate, unknown.
  std::optional<std::string> resolve(const std::string& simple_name,
                                     const std::vector<std::string>& imports) const {
    for (const auto& imp : imports) {
      if (imp.size() >= 2 && imp.ends_with(".*")) continue;
      auto pos = imp.rfind('.');
      std::string last = pos == std::string::npos ? imp : imp.substr(pos + 1);
      if (last == simple_name) return imp;
    }
    const std::vector<TypeEntry>* cands = candidates(simple_name);
    for (const auto& imp : imports) {
      if (!(imp.size() >= 2 && imp.ends_with(".*"))) continue;
      std::string full = imp.substr(0, imp.size() - 2) + "." + simple_name;
      if (cands)
        for (const auto& e : *cands)
          if (e.fqn == full) return full;
    }
    if (cands && !cands->empty()) return cands->front().fqn;  // sorted, smallest wins
    return std::nullopt;
  }

  static TypeDatabase load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open type database: " + path);
    return parse(in, path);
  }

  static TypeDatabase parse(std::istream& in, const std::string& origin = "<stream>") {
    TypeDatabase db;
    std::string linebuf;
    int lineno = 0;
    while (std::getline(in, linebuf)) {
      ++lineno;
      if (!linebuf.empty() && linebuf.back() == '\r') linebuf.pop_back();
      if (linebuf.empty() || linebuf[0] == '#') continue;
      std::vector<std::string> f = split(linebuf, '\t');
      auto fail = [&](const char* why) {
        throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                 ": bad type database record (" + why + ")");
      };
      if (f[0] == "TYPE") {
        if (f.size() != 4) fail("TYPE wants 4 fields");
        db.add_type(f[1], f[2], f[3]);
      } else if (f[0] == "FIELD") {
        if (f.size() != 4) fail("FIELD wants 4 fields");
        db.add_field(f[1], f[2], f[3]);
      } else if (f[0] == "METHOD") {
        if (f.size() != 5) fail("METHOD wants 5 fields");
        int arity = 0;
        try {
          arity = std::stoi(f[3]);
        } catch (const std::exception&) {
          fail("bad arity");
        }
        db.add_method(f[1], f[2], arity, f[4]);
      } else {
        fail("unknown record kind");
      }
    }
    return db;
  }

 private:
  static void validate_fqn(const std::string& fqn) {
    if (!is_fqn(fqn)) throw std::runtime_error("invalid FQN: " + fqn);
  }

  static std::string method_key(const std::string& owner, const std::string& name, int arity) {
    return owner + "#" + name + "#" + std::to_string(arity);
  }

  std::map<std::string, std::vector<TypeEntry>> types_;
  std::map<std::string, std::string> fields_;
  std::map<std::string, std::vector<std::string>> methods_;
  std::map<std::string, std::string> library_;
};

inline std::optional<std::string> resolve_fqn(const std::string& simple_name,
                                              const std::vector<std::string>& imports,
                                              const TypeDatabase& db) {
  return db.resolve(simple_name, imports);
}

}  // namespace m2c
