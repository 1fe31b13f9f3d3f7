#pragma once

#include <memory>
#include <string>
#include <vector>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "m2c/decoder.hpp"
#include "m2c/query.hpp"

namespace m2c {

// Stateless suggestion/translation facade over one immutable loaded model.
// The suggest-then-confirm flow of the interactive workbench maps to two
// independent requests, so concurrent handling needs no sessions or locks.
class Service {
 public:
  Service(TranslationModel model, int beam = 16)
      : model_(std::move(model)), index_(NameIndex::build(model_.name_counts)), beam_(beam) {}

  const TranslationModel& model() const { return model_; }

  nlohmann::json health() const {
    return {{"status", "ok"}, {"model_version", model_.format_version}};
  }

  nlohmann::json suggest_json(const std::string& text, int k) const {
    nlohmann::json arr = nlohmann::json::array();
    if (!index_.names.empty()) {
      for (const auto& s : suggest(index_, text, k))
        arr.push_back({{"name", s.name}, {"score", s.score}, {"frequency", s.frequency}});
    }
    return {{"suggestions", arr}};
  }

  nlohmann::json translate_json(const DeveloperQuery& q) const {
    std::vector<std::string> source = encode_query(q);
    std::string invocation = query_invocation_token(q);
    Translation tr = decode(model_, source, beam_);

    int pos = 0;
    for (std::size_t i = 0; i < source.size(); ++i)
      if (source[i] == invocation) {
        pos = static_cast<int>(i);
        break;
      }
    std::string aligned;
    for (const auto& seg : tr.segmentation) {
      if (pos < seg.src_begin || pos >= seg.src_begin + seg.src_len) continue;
      std::vector<std::string> toks = split(seg.target_phrase, ' ');
      if (static_cast<int>(toks.size()) == seg.src_len) aligned = toks[pos - seg.src_begin];
      break;
    }
    if (aligned.empty() && !tr.target.empty() && pos < static_cast<int>(tr.target.size()))
      aligned = tr.target[pos];

    RenderedResult r = render(aligned);
    r.score = tr.score;

    nlohmann::json placeholders = nlohmann::json::array();
    for (const auto& p : r.placeholders) {
      const char* kind = p.kind == Placeholder::Kind::Var   ? "var"
                         : p.kind == Placeholder::Kind::Lit ? "lit"
                                                            : "call";
      placeholders.push_back({{"kind", kind}, {"type", p.type}});
    }
    return {{"display", r.display},
            {"raw_target", r.raw_target},
            {"placeholders", placeholders},
            {"score", r.score},
            {"renderable", r.renderable}};
  }

  int beam() const { return beam_; }
  const NameIndex& index() const { return index_; }

 private:
  TranslationModel model_;
  NameIndex index_;
  int beam_;
};

namespace detail {

inline void set_cors(httplib::Response& res) {
  res.set_header("Access-Control-Allow-Origin", "*");
  res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
  res.set_header("Access-Control-Allow-Headers", "Content-Type");
}

inline void reply_json(httplib::Response& res, const nlohmann::json& body, int status = 200) {
  res.status = status;
  set_cors(res);
  res.set_content(body.dump(), "application/json");
}

inline void reply_error(httplib::Response& res, const std::string& message, int status = 400) {
  reply_json(res, nlohmann::json{{"error", message}}, status);
}

}  // namespace detail

inline void register_routes(httplib::Server& server, std::shared_ptr<Service> service) {
  using nlohmann::json;

  server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) {
    detail::set_cors(res);
    res.status = 204;
  });

  server.Get("/health", [service](const httplib::Request&, httplib::Response& res) {
    detail::reply_json(res, service->health());
  });

  server.Post("/suggest", [service](const httplib::Request& req, httplib::Response& res) {
    json body = json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.is_object() || !body.contains("text") ||
        !body["text"].is_string()) {
      detail::reply_error(res, "body must be a JSON object with a string \"text\"");
      return;
    }
    int k = 5;
    if (body.contains("k")) {
      if (!body["k"].is_number_integer() || body["k"].get<int>() < 1) {
        detail::reply_error(res, "\"k\" must be a positive integer");
        return;
      }
      k = body["k"].get<int>();
    }
    detail::reply_json(res, service->suggest_json(body["text"].get<std::string>(), k));
  });

  server.Post("/translate", [service](const httplib::Request& req, httplib::Response& res) {
    json body = json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.is_object() || !body.contains("chosen_name") ||
        !body["chosen_name"].is_string()) {
      detail::reply_error(res, "body must be a JSON object with a string \"chosen_name\"");
      return;
    }
    auto string_list = [&](const char* key, std::vector<std::string>& out) -> bool {
      if (!body.contains(key)) return true;
      if (!body[key].is_array()) return false;
      for (const auto& v : body[key]) {
        if (!v.is_string()) return false;
        out.push_back(v.get<std::string>());
      }
      return true;
    };
    DeveloperQuery q;
    q.chosen_name = body["chosen_name"].get<std::string>();
    if (!string_list("variables", q.variables) || !string_list("words", q.words) ||
        !string_list("context", q.context)) {
      detail::reply_error(res, "\"variables\", \"words\" and \"context\" must be string arrays");
      return;
    }
    detail::reply_json(res, service->translate_json(q));
  });
}

}  // namespace m2c
