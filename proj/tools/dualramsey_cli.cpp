// Command-line frontend over the C API. Results go to stdout (or --output), progress and errors to stderr.
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dualramsey/dualramsey.h"

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

enum Exit { kOk = 0, kNone = 1, kUsage = 2, kBudget = 3 };

struct Options {
  std::string format = "text";
  std::string output;
  // Instance parameters; unset ones stay out of the request.
  std::optional<int> b, n, k, m, l, d, ell, r, kappa, N;
  std::string roles;
  std::string shape;
  // Coloring source.
  std::string coloring_file, rule;
  std::optional<int> rule_parameter;
  std::optional<std::uint64_t> seed;
  // Budget.
  std::optional<std::uint64_t> max_candidates, max_colorings, max_domain;
  std::optional<double> max_seconds;
  std::optional<int> threads;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<std::int64_t> int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  for (const std::string& s : split(text, ',')) out.push_back(std::stoll(s));
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw CLI::ValidationError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void put(json& j, const char* key, const std::optional<int>& v) {
  if (v) j[key] = *v;
}

void add_instance_flags(CLI::App* app, Options& o) {
  app->add_option("--b", o.b, "branching b");
  app->add_option("--n", o.n, "tree depth n (or ground set size for MT)");
  app->add_option("--k", o.k, "k");
  app->add_option("--m", o.m, "m");
  app->add_option("--l", o.l, "l (semi-complete size)");
  app->add_option("--d", o.d, "d (vector dimension)");
  app->add_option("--ell", o.ell, "alphabet size");
  app->add_option("--r", o.r, "number of colors");
  app->add_option("--roles", o.roles, "comma-separated component roles: plain, up, point");
}

void add_coloring_flags(CLI::App* app, Options& o) {
  app->add_option("--coloring", o.coloring_file, "JSON file holding a coloring (or a certificate with one)");
  app->add_option("--rule", o.rule, "builtin rule: constant, projection, anchor, hash");
  app->add_option("--param", o.rule_parameter, "rule parameter (color or coordinate)");
  app->add_option("--seed", o.seed, "hash rule seed");
}

void add_budget_flags(CLI::App* app, Options& o) {
  app->add_option("--max-candidates", o.max_candidates, "witness candidates per search");
  app->add_option("--max-colorings", o.max_colorings, "colorings per size in universal verification");
  app->add_option("--max-domain", o.max_domain, "largest coloring domain");
  app->add_option("--max-seconds", o.max_seconds, "wall-clock limit");
  app->add_option("--threads", o.threads, "parallelism width");
}

json instance_json(const Options& o, const std::string& statement) {
  json j;
  j["statement"] = statement;
  put(j, "b", o.b);
  put(j, "n", o.n);
  put(j, "k", o.k);
  put(j, "m", o.m);
  put(j, "l", o.l);
  put(j, "d", o.d);
  put(j, "alphabet", o.ell);
  put(j, "r", o.r);
  if (!o.roles.empty()) j["roles"] = split(o.roles, ',');
  return j;
}

// Defaults come from DUALRAMSEY_BUDGET ("threads=4,max_seconds=60,..."); flags override them.
json budget_json(const Options& o) {
  json j = json::object();
  if (const char* env = std::getenv("DUALRAMSEY_BUDGET")) {
    for (const std::string& field : split(env, ',')) {
      const auto eq = field.find('=');
      if (eq == std::string::npos) throw CLI::ValidationError("DUALRAMSEY_BUDGET entries must look like key=value");
      const std::string key = field.substr(0, eq), value = field.substr(eq + 1);
      try {
        if (key == "max_seconds") j[key] = std::stod(value);
        else if (key == "threads") j[key] = std::stoi(value);
        else if (key == "max_candidates" || key == "max_colorings" || key == "max_domain") j[key] = std::stoull(value);
        else throw CLI::ValidationError("unknown DUALRAMSEY_BUDGET key '" + key + "'");
      } catch (const std::logic_error&) {
        throw CLI::ValidationError("bad DUALRAMSEY_BUDGET value for '" + key + "'");
      }
    }
  }
  if (o.max_candidates) j["max_candidates"] = *o.max_candidates;
  if (o.max_colorings) j["max_colorings"] = *o.max_colorings;
  if (o.max_domain) j["max_domain"] = *o.max_domain;
  if (o.max_seconds) j["max_seconds"] = *o.max_seconds;
  if (o.threads) j["threads"] = *o.threads;
  return j;
}

std::optional<json> coloring_json(const Options& o, int r) {
  if (!o.coloring_file.empty()) {
    json j = read_json_file(o.coloring_file);
    return j.contains("coloring") ? j.at("coloring") : j;
  }
  if (o.rule.empty()) return std::nullopt;
  json j;
  j["type"] = "rule";
  j["r"] = r;
  j["rule"] = o.rule;
  j["parameter"] = o.rule_parameter.value_or(0);
  j["seed"] = o.seed.value_or(0);
  return j;
}

void emit(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(o.output);
  if (!out) throw CLI::ValidationError("cannot write '" + o.output + "'");
  out << text << '\n';
}

int status_exit(dr_status s) {
  switch (s) {
    case DR_OK:
      return kOk;
    case DR_E_INVALID_ARGUMENT:
    case DR_E_OUT_OF_SHAPE:
    case DR_E_DOMAIN_MISMATCH:
    case DR_E_PARSE:
    case DR_E_MISSING_ORACLE:
      return kUsage;
    case DR_E_BUDGET_EXCEEDED:
    case DR_E_OVERFLOW:
      return kBudget;
    default:
      return kNone;
  }
}

class Session {
 public:
  Session() : ctx_(dr_context_new()) {
    if (!ctx_) throw std::bad_alloc();
  }
  ~Session() { dr_context_free(ctx_); }
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  // Runs one call; on failure prints the error and returns the exit code through *exit.
  std::optional<ordered_json> run(dr_status (*op)(dr_context*, const char*), const json& request, int* exit) {
    const dr_status s = op(ctx_, request.dump().c_str());
    if (s != DR_OK) {
      std::cerr << "error [" << dr_status_name(s) << "]: " << dr_last_error(ctx_) << '\n';
      *exit = status_exit(s);
      return std::nullopt;
    }
    *exit = kOk;
    return ordered_json::parse(dr_result(ctx_));
  }
  dr_context* get() { return ctx_; }

 private:
  dr_context* ctx_;
};

std::string raw(Session& s) { return dr_result(s.get()); }

std::string format_list(const json& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? " " : "") + (items[i].is_string() ? items[i].get<std::string>() : items[i].dump());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dual Ramsey toolkit: enumeration, checkers, constructions, bounds and exhaustive search"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--output,-o", o.output, "artifact file (defaults to stdout)");

  // enumerate
  auto* en = app.add_subcommand("enumerate", "stream subtrees, words, DS or U spaces");
  std::string en_kind;
  std::optional<std::uint64_t> max_items;
  en->add_option("--kind", en_kind, "what to enumerate")->required();
  en->add_option("--shape", o.shape, "tree shape b^<n");
  en->add_option("--N", o.N, "word length for block-words");
  en->add_option("--max-items", max_items, "enumeration cap");
  add_instance_flags(en, o);

  // check
  auto* ck = app.add_subcommand("check", "run a checker, or re-validate a certificate");
  std::string checker, certificate_file, domain_kind, word, L, mixed_file, groups;
  std::optional<int> block_index;
  ck->add_option("--certificate", certificate_file, "certificate to re-validate");
  ck->add_option("--checker", checker, "strongly_insensitive, L_insensitive, block_insensitive, c_good, branch_sensitive, smooth, simple");
  ck->add_option("--domain", domain_kind, "domain kind of the coloring");
  ck->add_option("--word", word, "comma-separated word entries");
  ck->add_option("--L", L, "letter pair, e.g. 0,1");
  ck->add_option("--mixed", mixed_file, "JSON file with a mixed variable word");
  ck->add_option("--groups", groups, "block groups, e.g. 0,1;2");
  ck->add_option("--block-index", block_index, "block of the insensitivity check");
  ck->add_option("--N", o.N, "word length");
  ck->add_option("--kappa", o.kappa, "kappa");
  add_instance_flags(ck, o);
  add_coloring_flags(ck, o);
  add_budget_flags(ck, o);

  // shelah
  auto* sh = app.add_subcommand("shelah", "constructive insensitivity (L-insensitive or strongly insensitive)");
  std::string mode = "L", schedule = "user", p_list, schedules_list;
  std::optional<int> fill, sh_threads;
  std::optional<std::uint64_t> max_evaluations;
  sh->add_option("--mode", mode, "L or strong")->check(CLI::IsMember({"L", "strong"}));
  sh->add_option("--schedule", schedule, "schedule source")->check(CLI::IsMember({"paper", "user"}));
  sh->add_option("--p", p_list, "interval lengths, e.g. 3,2");
  sh->add_option("--schedules", schedules_list, "one schedule per letter pair, e.g. 3,2;1");
  sh->add_option("--L", L, "letter pair, e.g. 0,1");
  sh->add_option("--N", o.N, "word length N")->required();
  sh->add_option("--kappa", o.kappa, "kappa")->required();
  sh->add_option("--fill", fill, "letter of the constant tail");
  sh->add_option("--threads", sh_threads, "staircase evaluation width");
  sh->add_option("--max-evaluations", max_evaluations, "evaluation budget per block");
  add_instance_flags(sh, o);
  add_coloring_flags(sh, o);

  // bounds
  auto* bd = app.add_subcommand("bounds", "f1, f2, schedules, pigeonhole counts and the bound ladder");
  std::string op, bk, bkappa, bi, bm, br, bJ, quantity, args, ladder_rule, oracle_file;
  std::optional<std::uint64_t> max_bits;
  bd->add_option("op", op, "f1, f2, schedule, pigeonhole, quantities, ladder")->required();
  bd->add_option("--k", bk, "k");
  bd->add_option("--kappa", bkappa, "kappa");
  bd->add_option("--i", bi, "i");
  bd->add_option("--m", bm, "m");
  bd->add_option("--r", br, "r");
  bd->add_option("--J", bJ, "|J|");
  bd->add_option("--quantity", quantity, "ladder quantity");
  bd->add_option("--args", args, "comma-separated ladder arguments");
  bd->add_option("--rule", ladder_rule, "force a ladder rule at the root");
  bd->add_option("--oracle", oracle_file, "JSON object mapping NAME(a,b,...) to values");
  bd->add_option("--max-bits", max_bits, "largest intermediate bit length");

  // search
  auto* se = app.add_subcommand("search", "first witness for one coloring");
  std::string statement;
  se->add_option("--statement", statement, "HJ, MHJ, TGR, PTGR, CT, MT, SUBSETS, PRODUCT_TGR, TREE_HJ")->required();
  se->add_option("--N", o.N, "word length for HJ/MHJ");
  add_instance_flags(se, o);
  add_coloring_flags(se, o);
  add_budget_flags(se, o);

  // verify
  auto* ve = app.add_subcommand("verify", "exact tiny Ramsey numbers by exhaustive verification");
  std::optional<int> n_min;
  int n_max = 0;
  bool no_reduce = false;
  std::string resume_file, cursor_file;
  ve->add_option("--statement", statement, "statement")->required();
  ve->add_option("--n-min", n_min, "smallest size tried");
  ve->add_option("--n-max", n_max, "largest size tried")->required();
  ve->add_flag("--no-reduce", no_reduce, "enumerate colorings without the color-permutation quotient");
  ve->add_option("--resume", resume_file, "cursor file to resume from (rewritten on a budget stop)");
  ve->add_option("--cursor-out", cursor_file, "where to write the cursor on a budget stop");
  add_instance_flags(ve, o);
  add_budget_flags(ve, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  int exit = kOk;
  try {
    Session session;
    const bool text = o.format == "text";

    if (en->parsed()) {
      json req = instance_json(o, "");
      req.erase("statement");
      req["kind"] = en_kind;
      if (!o.shape.empty()) req["shape"] = o.shape;
      put(req, "N", o.N);
      if (max_items) req["max_items"] = *max_items;
      auto res = session.run(dr_enumerate, req, &exit);
      if (!res) return exit;
      if (!text) emit(o, raw(session));
      else {
        std::string out;
        for (const auto& item : res->at("items")) out += (item.is_string() ? item.get<std::string>() : item.dump()) + "\n";
        out += std::to_string(res->at("count").get<std::size_t>()) + " item(s)";
        emit(o, out);
      }
      return kOk;
    }

    if (ck->parsed()) {
      json req;
      req["budget"] = budget_json(o);
      if (!certificate_file.empty()) {
        req["checker"] = "certificate";
        req["certificate"] = read_json_file(certificate_file);
      } else {
        if (checker.empty() || domain_kind.empty()) throw CLI::ValidationError("check needs --certificate, or --checker with --domain");
        req["checker"] = checker;
        json D;
        D["kind"] = domain_kind;
        D["branching"] = o.b.value_or(2);
        D["depth"] = o.n.value_or(1);
        D["alphabet"] = o.ell.value_or(o.k.value_or(2));
        D["length"] = o.N.value_or(1);
        D["kappa"] = o.kappa.value_or(0);
        D["k"] = domain_kind == "kappa_product" || domain_kind == "product" ? 1 : o.k.value_or(1);
        D["l"] = o.l.value_or(0);
        D["d"] = o.d.value_or(1);
        D["roles"] = split(o.roles, ',');
        std::vector<std::vector<int>> gs;
        for (const std::string& g : split(groups, ';')) {
          gs.emplace_back();
          for (auto x : int_list(g)) gs.back().push_back(static_cast<int>(x));
        }
        D["groups"] = gs;
        D["block"] = 1;
        req["domain"] = D;
        auto c = coloring_json(o, o.r.value_or(2));
        if (!c) throw CLI::ValidationError("check needs a coloring (--coloring or --rule)");
        req["coloring"] = *c;
        if (!word.empty()) req["word"] = split(word, ',');
        if (!L.empty()) req["L"] = int_list(L);
        if (!mixed_file.empty()) req["mixed"] = read_json_file(mixed_file);
        if (block_index) req["block_index"] = *block_index;
      }
      auto res = session.run(dr_check, req, &exit);
      if (!res) return exit;
      const bool holds = res->at("holds").get<bool>();
      if (!text) emit(o, raw(session));
      else {
        std::string out = res->at("checker").get<std::string>() + ": " + (holds ? "holds" : "fails");
        if (res->contains("detail")) out += " (" + res->at("detail").get<std::string>() + ")";
        if (res->contains("violation") && !res->at("violation").is_null()) out += "\nviolating pair: " + res->at("violation").dump();
        if (res->contains("certificate") && !res->at("certificate").is_null()) out += "\ncertificate: " + res->at("certificate").dump();
        emit(o, out);
      }
      return holds ? kOk : kNone;
    }

    if (sh->parsed()) {
      json req;
      req["mode"] = mode;
      req["schedule"] = schedule;
      if (!o.k) throw CLI::ValidationError("shelah needs --k (alphabet size)");
      if (!o.r) throw CLI::ValidationError("shelah needs --r");
      req["k"] = *o.k;
      req["kappa"] = *o.kappa;
      req["N"] = *o.N;
      req["r"] = *o.r;
      put(req, "m", o.m);
      if (schedule == "paper" && !o.m) throw CLI::ValidationError("--schedule paper needs --m");
      if (schedule == "user") {
        if (mode == "L") {
          if (p_list.empty()) throw CLI::ValidationError("--schedule user needs --p");
          req["p"] = int_list(p_list);
        } else {
          if (schedules_list.empty()) throw CLI::ValidationError("--schedule user needs --schedules");
          json all = json::array();
          for (const std::string& s : split(schedules_list, ';')) all.push_back(int_list(s));
          req["schedules"] = all;
        }
      }
      if (!L.empty()) req["L"] = int_list(L);
      if (fill) req["fill"] = *fill;
      if (sh_threads) req["threads"] = *sh_threads;
      if (max_evaluations) req["max_evaluations"] = *max_evaluations;
      if (auto c = coloring_json(o, *o.r)) req["coloring"] = *c;
      auto res = session.run(dr_shelah, req, &exit);
      if (!res) return exit;
      if (!text) emit(o, raw(session));
      else {
        std::string out = "word: " + format_list(res->at("word")) + "\nq: " + format_list(res->at("q"));
        for (const auto& s : res->at("transcript"))
          out += "\npair " + s.at("pair").dump() + " block " + s.at("step").dump() + ": s1=" + s.at("s1").dump() +
                 " s2=" + s.at("s2").dump() + " |J|=" + s.at("free_variables").dump();
        out += "\ninsensitive: " + std::string(res->at("insensitive").at("holds").get<bool>() ? "yes" : "no");
        out += "\ncompatible: " + std::string(res->at("compatible").get<bool>() ? "yes" : "no");
        emit(o, out);
      }
      return kOk;
    }

    if (bd->parsed()) {
      json req;
      req["op"] = op;
      auto str = [&](const char* key, const std::string& v) {
        if (!v.empty()) req[key] = v;
      };
      str("k", bk);
      str("kappa", bkappa);
      str("i", bi);
      str("m", bm);
      str("r", br);
      str("J", bJ);
      str("quantity", quantity);
      str("rule", ladder_rule);
      if (op == "ladder") req["args"] = split(args, ',');
      if (!oracle_file.empty()) {
        json oracle = read_json_file(oracle_file);
        for (auto& [key, value] : oracle.items())
          if (value.is_number()) value = value.dump();
        req["oracle"] = oracle;
      }
      if (max_bits) req["max_bits"] = *max_bits;
      auto res = session.run(dr_bounds, req, &exit);
      if (!res) return exit;
      if (!text) emit(o, raw(session));
      else if (res->contains("value")) emit(o, res->at("value").get<std::string>());
      else if (op == "schedule")
        emit(o, "n0: " + res->at("n0").get<std::string>() + "\nq: " + format_list(res->at("q")) + "\np: " + format_list(res->at("p")));
      else emit(o, res->dump(2));
      return kOk;
    }

    if (se->parsed()) {
      json inst = instance_json(o, statement);
      if ((statement == "HJ" || statement == "MHJ") && o.N) inst["n"] = *o.N;
      if (!inst.contains("n")) throw CLI::ValidationError("search needs the size (--N for HJ/MHJ, --n otherwise)");
      json req;
      req["instance"] = inst;
      req["budget"] = budget_json(o);
      if (auto c = coloring_json(o, o.r.value_or(2))) req["coloring"] = *c;
      auto res = session.run(dr_search, req, &exit);
      if (!res) return exit;
      const bool found = res->at("found").get<bool>();
      const ordered_json& cert = res->at("certificate");
      if (!o.output.empty() || !text) emit(o, cert.dump(2));
      if (text) {
        std::string msg = found ? "witness (candidate " + cert.at("witness").at("candidate_index").dump() + "): " +
                                      cert.at("witness").at("object").dump()
                                : "no witness: coloring refutes the statement";
        msg += "\ntranscript: " + cert.at("transcript").dump();
        (o.output.empty() ? std::cout : std::cerr) << msg << '\n';
      }
      return found ? kOk : kNone;
    }

    if (ve->parsed()) {
      json req;
      req["instance"] = instance_json(o, statement);
      req["n_max"] = n_max;
      if (n_min) req["n_min"] = *n_min;
      req["reduce_colors"] = !no_reduce;
      req["budget"] = budget_json(o);
      if (!resume_file.empty()) {
        std::ifstream probe(resume_file);
        if (probe) {
          json cur = read_json_file(resume_file);
          req["resume"] = cur.contains("cursor") ? cur.at("cursor") : cur;
        }
        if (cursor_file.empty()) cursor_file = resume_file;
      }
      dr_set_progress(
          session.get(),
          [](const char* progress, void*) {
            // At most one status line per second.
            static auto last = std::chrono::steady_clock::time_point{};
            const auto now = std::chrono::steady_clock::now();
            if (now - last < std::chrono::seconds(1)) return;
            last = now;
            std::cerr << "progress " << progress << '\n';
          },
          nullptr);
      auto res = session.run(dr_verify, req, &exit);
      if (!res) return exit;
      const ordered_json& cert = res->at("certificate");
      const std::string status = cert.at("status").get<std::string>();
      if (!o.output.empty() || !text) emit(o, cert.dump(2));
      if (status == "budget_exceeded" && !cursor_file.empty()) {
        std::ofstream out(cursor_file);
        out << cert.at("cursor").dump(2) << '\n';
      }
      if (text) {
        std::ostream& os = o.output.empty() ? std::cout : std::cerr;
        for (const auto& s : cert.at("sizes")) {
          os << "n=" << s.at("n") << " domain=" << s.at("domain_size") << " colorings=" << s.at("colorings") << ": ";
          if (s.at("holds").get<bool>()) os << "every coloring has a witness\n";
          else os << "refuted by coloring " << s.at("refutation").dump() << '\n';
        }
        if (status == "found") os << statement << " = " << cert.at("value") << '\n';
        else if (status == "none_in_range") os << statement << ": no value up to n=" << n_max << '\n';
        else
          os << "budget exceeded; last verified n=" << cert.at("last_verified").dump() << ", cursor " << cert.at("cursor").dump()
             << '\n';
      }
      if (status == "found") return kOk;
      return status == "budget_exceeded" ? kBudget : kNone;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNone;
  }
  return exit;
}
