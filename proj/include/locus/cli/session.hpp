#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "locus/cli/commands.hpp"
#include "locus/ludics/engine.hpp"

namespace locus::cli {

// A rule (S) choice: bias i of the pending positive action and the ramification J played at ξi.
struct Choice {
  unsigned i = 0;
  ludics::Ramification j;
  friend bool operator==(const Choice&, const Choice&) = default;
  friend auto operator<=>(const Choice&, const Choice&) = default;
};

struct IllegalChoice : std::invalid_argument {
  explicit IllegalChoice(std::vector<Choice> offered)
      : std::invalid_argument("illegal choice"), offered(std::move(offered)) {}
  std::vector<Choice> offered;
};

json to_json(const Choice& c);
Choice choice_from_json(const json& j);

// Step-by-step strong normalization of one net: (R) runs automatically, the caller supplies (S).
class Session {
 public:
  struct Options {
    // Ramifications offered besides the stored ones.
    std::optional<ludics::Alphabet> alphabet;
    std::size_t fuel = 100000;
  };

  Session(ludics::Net net, Options o);
  static Session replay(ludics::Net net, Options o, const std::vector<Choice>& history);

  // Empty unless the machine stopped on a head.
  const std::vector<Choice>& offered() const { return offered_; }
  void choose(const Choice& c);

  const std::vector<Choice>& history() const { return history_; }
  const std::vector<ludics::Action>& q() const { return q_; }
  ludics::Outcome::Kind status() const { return last_.kind; }
  json state() const;

 private:
  void advance(const ludics::PositiveDesign* code, ludics::Env env);

  std::shared_ptr<const ludics::Net> net_;
  Options opts_;
  ludics::Outcome last_;
  std::size_t steps_ = 0;
  std::vector<ludics::Action> q_;
  std::vector<Choice> history_;
  std::vector<Choice> offered_;
};

// In-memory sessions with an optional append-only log (one JSON object per line).
class SessionStore {
 public:
  SessionStore() = default;
  explicit SessionStore(const std::string& log_path);

  // Returns the new id and the initial state.
  std::pair<std::string, json> create(const std::string& net_text, Session::Options o);
  std::optional<json> get(const std::string& id) const;
  // nullopt when the session does not exist; throws IllegalChoice.
  std::optional<json> choose(const std::string& id, const Choice& c);

  // Rebuilds sessions from a log written by an earlier store.
  void load_log(const std::string& path);

 private:
  struct Entry {
    Entry(std::string n, Session s) : net_text(std::move(n)), session(std::move(s)) {}
    std::mutex m;
    std::string net_text;
    Session session;
  };
  std::shared_ptr<Entry> find(const std::string& id) const;
  void log(const json& record);

  mutable std::mutex m_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::uint64_t next_ = 1;
  std::mutex log_m_;
  std::unique_ptr<std::ofstream> log_;
};

json options_to_json(const Session::Options& o);
Session::Options options_from_json(const json& j);

}  // namespace locus::cli
