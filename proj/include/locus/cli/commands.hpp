#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "locus/ludics/engine.hpp"

namespace locus::cli {

using json = nlohmann::json;

// Exit codes shared by the CLI and the service.
enum Code { Accepted = 0, Rejected = 1, InputFailure = 2 };

struct Result {
  int code = Accepted;
  json doc;
};

// A bad request; parse errors carry a position instead.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class Format { Json, Text };
Format parse_format(std::string_view s);
// JSON is the canonical form; the text form is rendered from it.
std::string render(const json& doc, Format f);

// Behaviours are generators⊥⊥, or generators⊥ when dual is set.
// Every command takes a request object and never throws: input problems come back as code 2
// with {error, line?, column?}. Requests use the field names documented next to each command.
//
//   check          {criterion: dr|mix|cp|aj|parse-weak|parse-strong, input}
//   sequentialize  {input, mix?}
//   cut-normalize  {input, trace?}
//   design         {op: infer-base|check|compare|named, input?, base?, order?, name?, address?,
//                   ramification?, alphabet?, depth?}
//   normalize      {input, strong?, depth?, alphabet?, fuel?, trace?}
//   orthogonal     {input}
//   behaviour      {op: biorth|incarnation|directory|with|plus|delocate, alphabet, depth?, cap?,
//                   generators, other?, dual?, design?, tag?, modulus?, members?}
//   lambda         {op: to-term|to-slice|run, input, base?, bind?, strong?, fuel?}
//   gen            {kind: structure|proof|design|slices|net|term, seed?, count?, depth?, alphabet?}
Result run(const std::string& command, const json& request);
const std::vector<std::string>& commands();

// Designs in a file: consecutive S-expressions (or dai/omega), '#' comments to end of line.
std::vector<ludics::Design> parse_designs(std::string_view text);
// The first design is the principal, the rest are partners; bases are inferred.
ludics::Net parse_net(std::string_view text);

// Default universe cap, read from LOCUS_UNIVERSE_CAP.
std::size_t default_universe_cap();

}  // namespace locus::cli
