#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "locus/cli/server.hpp"

using namespace locus::cli;

namespace {

std::string slurp(std::istream& in) {
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") return slurp(std::cin);
  std::ifstream f(path);
  if (!f) throw InputError("cannot read " + path);
  return slurp(f);
}

void set_if(json& r, const char* key, const std::string& v) {
  if (!v.empty()) r[key] = v;
}

template <class T>
void set_if(json& r, const char* key, const std::optional<T>& v) {
  if (v) r[key] = *v;
}

// Parses "i {J}" lines for explore.
std::optional<Choice> parse_choice_line(const std::string& line) {
  auto p = line.find_first_not_of(" \t\r");
  if (p == std::string::npos || line[p] == '#') return std::nullopt;
  std::istringstream in(line.substr(p));
  unsigned i = 0;
  if (!(in >> i)) throw InputError("a choice line is '<bias> {J}'");
  std::string rest;
  std::getline(in, rest);
  return Choice{i, locus::ludics::parse_ramification(rest.substr(rest.find_first_not_of(" \t")))};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"locus: proof nets, designs, behaviours and the λ-bridge"};
  app.require_subcommand(1);
  std::string format = "json", input;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("-i,--input", input, "Read the input from a file instead of stdin");

  json req = json::object();
  std::string command;
  auto sub = [&](const std::string& name, const std::string& help) {
    auto* s = app.add_subcommand(name, help);
    s->callback([&command, name] { command = name; });
    return s;
  };

  std::string criterion;
  auto* check = sub("check", "Run a correctness criterion on a proof structure");
  check->add_option("criterion", criterion)->required()->check(
      CLI::IsMember({"dr", "mix", "cp", "aj", "parse-weak", "parse-strong"}));

  bool mix = false, trace = false, strong = false, members = false, cuts = false, dual = false;
  auto* seq = sub("sequentialize", "Build a sequent derivation");
  seq->add_flag("--mix", mix);
  auto* cut = sub("cut-normalize", "Eliminate cuts");
  cut->add_flag("--trace", trace);

  std::string op, base, order, name, address, to, ram, alphabet, design, polarity, kind;
  std::optional<std::size_t> depth, fuel, cap, tag, modulus, seed, count, budget, partners;
  auto* des = sub("design", "Typing, orders and named designs");
  des->add_option("op", op)->required()->check(CLI::IsMember({"infer-base", "check", "compare", "named"}));
  des->add_option("--base", base);
  des->add_option("--order", order)->check(CLI::IsMember({"obs", "left", "right", "stable", "both"}));
  des->add_option("--name", name);
  des->add_option("--address", address);
  des->add_option("--to", to, "Target address of a fax");
  des->add_option("--ramification", ram);
  des->add_option("--alphabet", alphabet);
  des->add_option("--depth", depth);

  auto* norm = sub("normalize", "Normalize a net");
  norm->add_flag("--strong", strong);
  norm->add_option("--depth", depth);
  norm->add_option("--alphabet", alphabet);
  norm->add_option("--fuel", fuel);
  norm->add_flag("--trace", trace);

  sub("orthogonal", "Test a closed net for convergence");

  std::vector<std::string> generators, other;
  auto* beh = sub("behaviour", "Behaviours inside a finite universe");
  beh->add_option("op", op)->required()->check(
      CLI::IsMember({"biorth", "incarnation", "directory", "with", "plus", "delocate"}));
  beh->add_option("--alphabet", alphabet);
  beh->add_option("--depth", depth);
  beh->add_option("--cap", cap, "Enumeration cap (default from LOCUS_UNIVERSE_CAP)");
  beh->add_option("-g,--generator", generators);
  beh->add_option("--other", other, "Generators of the second behaviour");
  beh->add_option("--polarity", polarity);
  beh->add_option("--design", design, "Design for incarnation/delocate (default: the input)");
  beh->add_option("--tag", tag);
  beh->add_option("--modulus", modulus);
  beh->add_flag("--members", members);
  beh->add_flag("--dual", dual, "Use the orthogonal of the generated behaviour");

  std::vector<std::string> binds;
  auto* lam = sub("lambda", "Slices and affine terms");
  lam->add_option("op", op)->required()->check(CLI::IsMember({"to-term", "to-slice", "run"}));
  lam->add_option("--base", base);
  lam->add_option("--bind", binds, "name=negative-term");
  lam->add_flag("--strong", strong);
  lam->add_option("--fuel", fuel);

  auto* gen = sub("gen", "Seeded random corpora");
  gen->add_option("kind", kind)->required()->check(
      CLI::IsMember({"structure", "proof", "design", "slices", "net", "term"}));
  gen->add_option("--seed", seed);
  gen->add_option("--count", count);
  gen->add_option("--depth", depth);
  gen->add_option("--alphabet", alphabet);
  gen->add_option("--budget", budget);
  gen->add_flag("--cuts", cuts);
  gen->add_option("--partners", partners);

  int port = 8080;
  std::string host = "127.0.0.1", log;
  auto* srv = sub("serve", "Serve sessions and batch commands over HTTP");
  srv->add_option("--port", port);
  srv->add_option("--host", host);
  srv->add_option("--log", log, "Append-only session log, replayed at start");

  std::string net_file;
  auto* exp = sub("explore", "Step through strong normalization; choices '<i> {J}' come on stdin");
  exp->add_option("net", net_file)->required();
  exp->add_option("--alphabet", alphabet);
  exp->add_option("--fuel", fuel);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : InputFailure;
  }
  Format fmt = parse_format(format);

  try {
    if (command == "serve") {
      std::unique_ptr<SessionStore> store = log.empty() ? std::make_unique<SessionStore>()
                                                        : std::make_unique<SessionStore>(log);
      httplib::Server server;
      install_routes(server, *store);
      std::cerr << "listening on " << host << ":" << port << "\n";
      return server.listen(host, port) ? 0 : InputFailure;
    }
    if (command == "explore") {
      Session::Options o;
      if (!alphabet.empty()) o.alphabet = locus::ludics::parse_alphabet(alphabet);
      if (fuel) o.fuel = *fuel;
      Session s(parse_net(read_input(net_file)), o);
      std::cout << render(s.state(), fmt);
      std::string line;
      while (std::getline(std::cin, line)) {
        auto c = parse_choice_line(line);
        if (!c) continue;
        try {
          s.choose(*c);
          std::cout << render(s.state(), fmt);
        } catch (const IllegalChoice& e) {
          json offered = json::array();
          for (const auto& x : e.offered) offered.push_back(to_json(x));
          std::cout << render({{"error", "illegal choice"}, {"offered", offered}}, fmt);
        }
      }
      return Accepted;
    }

    if (command == "check") req["criterion"] = criterion;
    if (command == "sequentialize") req["mix"] = mix;
    if (command == "cut-normalize" || command == "normalize") req["trace"] = trace;
    if (command == "design" || command == "behaviour" || command == "lambda") req["op"] = op;
    if (command == "normalize" || command == "lambda") req["strong"] = strong;
    set_if(req, "base", base);
    set_if(req, "order", order);
    set_if(req, "name", name);
    set_if(req, "address", address);
    set_if(req, "to", to);
    set_if(req, "ramification", ram);
    set_if(req, "alphabet", alphabet);
    set_if(req, "polarity", polarity);
    set_if(req, "kind", kind);
    set_if(req, "depth", depth);
    set_if(req, "fuel", fuel);
    set_if(req, "cap", cap);
    set_if(req, "tag", tag);
    set_if(req, "modulus", modulus);
    set_if(req, "seed", seed);
    set_if(req, "count", count);
    set_if(req, "budget", budget);
    set_if(req, "partners", partners);
    if (cuts) req["cuts"] = true;
    if (members) req["members"] = true;
    if (dual) req["dual"] = true;
    if (!generators.empty()) req["generators"] = generators;
    if (!other.empty()) req["other"] = other;
    if (!binds.empty()) {
      json b = json::object();
      for (const auto& x : binds) {
        auto eq = x.find('=');
        if (eq == std::string::npos) throw InputError("--bind expects name=term");
        b[x.substr(0, eq)] = x.substr(eq + 1);
      }
      req["bind"] = b;
    }
    // Commands that read a document: stdin unless a file or --design is given.
    bool reads = command != "gen" && !(command == "design" && op == "named") &&
                 !(command == "behaviour" && (op == "biorth" || op == "directory" || op == "with" || op == "plus"));
    if (reads) req["input"] = !design.empty() ? design : read_input(input);

    Result r = run(command, req);
    (r.code == InputFailure ? std::cerr : std::cout) << render(r.doc, fmt);
    return r.code;
  } catch (const locus::mll::ParseError& e) {
    std::cerr << render({{"error", e.what()}, {"line", e.line}, {"column", e.column}}, fmt);
  } catch (const std::exception& e) {
    std::cerr << render({{"error", e.what()}}, fmt);
  }
  return InputFailure;
}
