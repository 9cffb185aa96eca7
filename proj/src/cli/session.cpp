#include "locus/cli/session.hpp"

#include <algorithm>
#include <set>

namespace locus::cli {

namespace lu = locus::ludics;

json to_json(const Choice& c) { return {{"i", c.i}, {"J", lu::ramification_to_string(c.j)}}; }

Choice choice_from_json(const json& j) {
  if (!j.is_object() || !j.contains("i") || !j["i"].is_number_unsigned() || !j.contains("J") || !j["J"].is_string())
    throw InputError("a choice is {\"i\": <bias>, \"J\": \"{...}\"}");
  return {j["i"].get<unsigned>(), lu::parse_ramification(j["J"].get<std::string>())};
}

json options_to_json(const Session::Options& o) {
  json j{{"fuel", o.fuel}};
  if (o.alphabet) j["alphabet"] = lu::to_string(*o.alphabet);
  return j;
}

Session::Options options_from_json(const json& j) {
  Session::Options o;
  if (j.contains("alphabet") && !j["alphabet"].is_null()) {
    if (!j["alphabet"].is_string()) throw InputError("field 'alphabet' must be a string");
    o.alphabet = lu::parse_alphabet(j["alphabet"].get<std::string>());
  }
  if (j.contains("fuel") && !j["fuel"].is_null()) {
    if (!j["fuel"].is_number_unsigned()) throw InputError("field 'fuel' must be a non-negative integer");
    o.fuel = j["fuel"].get<std::size_t>();
  }
  return o;
}

Session::Session(lu::Net net, Options o) : net_(std::make_shared<const lu::Net>(std::move(net))), opts_(std::move(o)) {
  auto v = lu::validate_net(*net_);
  if (!v.ok) throw InputError("invalid net (" + v.condition + "): " + v.detail);
  advance(&net_->principal, lu::initial_env(*net_));
}

Session Session::replay(lu::Net net, Options o, const std::vector<Choice>& history) {
  Session s(std::move(net), std::move(o));
  for (const auto& c : history) s.choose(c);
  return s;
}

void Session::advance(const lu::PositiveDesign* code, lu::Env env) {
  lu::RunOptions ro;
  ro.fuel = opts_.fuel - std::min(opts_.fuel, steps_);
  last_ = lu::run_state(code, std::move(env), ro);
  steps_ += last_.steps;
  offered_.clear();
  if (last_.kind != lu::Outcome::Kind::Head) return;
  q_.push_back({true, last_.focus, last_.ram});
  for (std::size_t k = 0; k < last_.ram.size(); ++k) {
    const auto& c = last_.code->children[k];
    std::set<lu::Ramification> js;
    for (const auto& [j, p] : c.branches) js.insert(j);
    if (opts_.alphabet)
      for (const auto& j : opts_.alphabet->at(c.focus.size())) js.insert(j);
    for (const auto& j : js) offered_.push_back({last_.ram[k], j});
  }
}

void Session::choose(const Choice& c) {
  if (std::find(offered_.begin(), offered_.end(), c) == offered_.end()) throw IllegalChoice(offered_);
  std::size_t k = std::find(last_.ram.begin(), last_.ram.end(), c.i) - last_.ram.begin();
  const auto& child = last_.code->children[k];
  q_.push_back({false, child.focus, c.j});
  history_.push_back(c);
  static const lu::PositiveDesign omega;
  const lu::PositiveDesign* b = child.branch(c.j);
  lu::Env env = last_.env;
  advance(b ? b : &omega, std::move(env));
}

json Session::state() const {
  json q = json::array();
  for (const auto& a : q_) q.push_back(lu::to_string(a));
  lu::Chronicle ch{q_, lu::Chronicle::End::None};
  switch (last_.kind) {
    case lu::Outcome::Kind::Daimon:
      ch.end = lu::Chronicle::End::Daimon;
      break;
    case lu::Outcome::Kind::SyntacticOmega:
      ch.end = lu::Chronicle::End::Omega;
      break;
    case lu::Outcome::Kind::CreatedOmega:
      ch.end = lu::Chronicle::End::CreatedOmega;
      break;
    case lu::Outcome::Kind::Head:
      break;
  }
  json offered = json::array(), history = json::array(), partners = json::array();
  for (const auto& c : offered_) offered.push_back(to_json(c));
  for (const auto& c : history_) history.push_back(to_json(c));
  for (const auto& p : net_->partners) partners.push_back(lu::to_string(p));
  return {{"status", lu::to_string(last_.kind)},
          {"q", q},
          {"chronicle", lu::to_string(ch)},
          {"steps", steps_},
          {"offered", offered},
          {"history", history},
          {"principal", lu::to_string(net_->principal)},
          {"partners", partners},
          {"options", options_to_json(opts_)}};
}

// ---------------------------------------------------------------- store

SessionStore::SessionStore(const std::string& log_path) {
  load_log(log_path);
  log_ = std::make_unique<std::ofstream>(log_path, std::ios::app);
  if (!*log_) throw InputError("cannot open session log " + log_path);
}

void SessionStore::log(const json& record) {
  if (!log_) return;
  std::lock_guard lock(log_m_);
  *log_ << record.dump() << "\n" << std::flush;
}

std::pair<std::string, json> SessionStore::create(const std::string& net_text, Session::Options o) {
  json opts = options_to_json(o);
  auto e = std::make_shared<Entry>(net_text, Session(parse_net(net_text), std::move(o)));
  std::string id;
  {
    std::lock_guard lock(m_);
    id = "s" + std::to_string(next_++);
    sessions_[id] = e;
  }
  log({{"op", "create"}, {"id", id}, {"net", net_text}, {"options", opts}});
  json st = e->session.state();
  st["id"] = id;
  return {id, st};
}

std::shared_ptr<SessionStore::Entry> SessionStore::find(const std::string& id) const {
  std::lock_guard lock(m_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

std::optional<json> SessionStore::get(const std::string& id) const {
  auto e = find(id);
  if (!e) return std::nullopt;
  std::lock_guard lock(e->m);
  json st = e->session.state();
  st["id"] = id;
  return st;
}

std::optional<json> SessionStore::choose(const std::string& id, const Choice& c) {
  auto e = find(id);
  if (!e) return std::nullopt;
  std::lock_guard lock(e->m);
  e->session.choose(c);
  log({{"op", "choice"}, {"id", id}, {"choice", to_json(c)}});
  json st = e->session.state();
  st["id"] = id;
  return st;
}

void SessionStore::load_log(const std::string& path) {
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json r = json::parse(line, nullptr, false);
    if (r.is_discarded() || !r.contains("op") || !r.contains("id")) throw InputError("corrupt session log line: " + line);
    std::string id = r["id"].get<std::string>();
    if (r["op"] == "create") {
      auto net = r["net"].get<std::string>();
      auto e = std::make_shared<Entry>(net, Session(parse_net(net), options_from_json(r["options"])));
      std::lock_guard lock(m_);
      sessions_[id] = e;
      if (id.size() > 1) next_ = std::max<std::uint64_t>(next_, std::stoull(id.substr(1)) + 1);
    } else if (r["op"] == "choice") {
      auto e = find(id);
      if (!e) throw InputError("session log refers to unknown session " + id);
      e->session.choose(choice_from_json(r["choice"]));
    }
  }
}

}  // namespace locus::cli
