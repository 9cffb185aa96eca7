#include "locus/cli/server.hpp"

namespace locus::cli {

namespace {

constexpr const char* kJson = "application/json";

void reply(httplib::Response& res, int status, const json& doc) {
  res.status = status;
  res.set_content(render(doc, Format::Json), kJson);
}

std::optional<json> body(const httplib::Request& req, httplib::Response& res) {
  json j = json::parse(req.body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    reply(res, 400, {{"error", "the body must be a JSON object"}});
    return std::nullopt;
  }
  return j;
}

void not_found(httplib::Response& res, const std::string& id) {
  reply(res, 404, {{"error", "session not found"}, {"id", id}});
}

}  // namespace

void install_routes(httplib::Server& srv, SessionStore& store) {
  srv.Post("/sessions", [&store](const httplib::Request& req, httplib::Response& res) {
    auto j = body(req, res);
    if (!j) return;
    try {
      if (!j->contains("net") || !(*j)["net"].is_string()) throw InputError("missing string field 'net'");
      auto [id, st] = store.create((*j)["net"].get<std::string>(), options_from_json(*j));
      reply(res, 201, st);
    } catch (const mll::ParseError& e) {
      reply(res, 400, {{"error", e.what()}, {"line", e.line}, {"column", e.column}});
    } catch (const std::invalid_argument& e) {
      reply(res, 400, {{"error", e.what()}});
    }
  });

  srv.Get(R"(/sessions/([A-Za-z0-9]+))", [&store](const httplib::Request& req, httplib::Response& res) {
    std::string id = req.matches[1];
    if (auto st = store.get(id)) {
      reply(res, 200, *st);
    } else {
      not_found(res, id);
    }
  });

  srv.Post(R"(/sessions/([A-Za-z0-9]+)/choice)", [&store](const httplib::Request& req, httplib::Response& res) {
    std::string id = req.matches[1];
    auto j = body(req, res);
    if (!j) return;
    try {
      auto st = store.choose(id, choice_from_json(*j));
      if (!st) return not_found(res, id);
      reply(res, 200, *st);
    } catch (const IllegalChoice& e) {
      json offered = json::array();
      for (const auto& c : e.offered) offered.push_back(to_json(c));
      reply(res, 409, {{"error", "illegal choice"}, {"offered", offered}});
    } catch (const mll::ParseError& e) {
      reply(res, 400, {{"error", e.what()}, {"line", e.line}, {"column", e.column}});
    } catch (const std::invalid_argument& e) {
      reply(res, 400, {{"error", e.what()}});
    }
  });

  for (const auto& name : commands()) {
    srv.Post("/" + name, [name](const httplib::Request& req, httplib::Response& res) {
      auto j = body(req, res);
      if (!j) return;
      auto r = run(name, *j);
      reply(res, r.code == InputFailure ? 400 : 200, r.doc);
    });
  }
}

}  // namespace locus::cli
