#include <algorithm>

#include "dualramsey/search.hpp"

namespace dr {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr const char* kFormat = "dualramsey-certificate/1";
constexpr std::uint64_t kInlineTable = std::uint64_t{1} << 20;

// JSON access errors surface as parse errors of the core.
template <class F>
auto guarded(F body) -> decltype(body()) {
  try {
    return body();
  } catch (const json::exception& e) {
    fail(Errc::parse_error, std::string("malformed certificate: ") + e.what());
  }
}

std::vector<std::string> node_strings(const Tree& tree, const std::vector<NodeIndex>& nodes) {
  std::vector<std::string> out;
  for (NodeIndex s : nodes) out.push_back(tree.format(s));
  return out;
}

std::vector<NodeIndex> parse_nodes(const Tree& tree, const json& j) {
  std::vector<NodeIndex> out;
  for (const auto& text : j) out.push_back(tree.parse(text.get<std::string>()));
  std::sort(out.begin(), out.end());
  return out;
}

Subtree parse_subtree(const TreePtr& tree, const json& j) { return Subtree(tree, parse_nodes(*tree, j)); }

TreePtr instance_tree(const Instance& inst, int n) { return Tree::make(Shape{inst.b, n}); }

ordered_json transcript_json(const Transcript& t) {
  ordered_json j;
  j["checker"] = t.checker;
  j["holds"] = t.holds;
  j["evaluated"] = t.evaluated;
  return j;
}

ordered_json header(const char* kind, Statement s) {
  ordered_json j;
  j["format"] = kFormat;
  j["kind"] = kind;
  j["statement"] = statement_name(s);
  return j;
}

const char* status_name(RamseyStatus s) {
  switch (s) {
    case RamseyStatus::found:
      return "found";
    case RamseyStatus::none_in_range:
      return "none_in_range";
    case RamseyStatus::budget_exceeded:
      return "budget_exceeded";
  }
  return "unknown";
}

}  // namespace

const char* role_name(Role role) {
  switch (role) {
    case Role::plain:
      return "plain";
    case Role::up:
      return "up";
    case Role::point:
      return "point";
  }
  return "unknown";
}

Role parse_role(const std::string& text) {
  if (text == "plain") return Role::plain;
  if (text == "up") return Role::up;
  if (text == "point") return Role::point;
  fail(Errc::parse_error, "unknown role '" + text + "' (expected plain, up or point)");
}

ordered_json instance_to_json(const Instance& inst, int n) {
  ordered_json j;
  j["statement"] = statement_name(inst.statement);
  j["n"] = n;
  j["k"] = inst.k;
  j["m"] = inst.m;
  j["b"] = inst.b;
  j["alphabet"] = inst.alphabet;
  j["r"] = inst.r;
  j["l"] = inst.l;
  j["d"] = inst.d;
  j["roles"] = ordered_json::array();
  for (Role role : inst.roles) j["roles"].push_back(role_name(role));
  return j;
}

std::pair<Instance, int> instance_from_json(const json& j) {
  return guarded([&] {
    Instance inst;
    inst.statement = parse_statement(j.at("statement").get<std::string>());
    inst.k = j.at("k").get<int>();
    inst.m = j.at("m").get<int>();
    inst.b = j.at("b").get<int>();
    inst.alphabet = j.at("alphabet").get<int>();
    inst.r = j.at("r").get<int>();
    inst.l = j.at("l").get<int>();
    inst.d = j.at("d").get<int>();
    for (const auto& role : j.at("roles")) inst.roles.push_back(parse_role(role.get<std::string>()));
    return std::pair<Instance, int>{inst, j.at("n").get<int>()};
  });
}

ordered_json descriptor_to_json(const DomainDescriptor& D) {
  ordered_json j;
  j["kind"] = domain_kind_name(D.kind);
  j["branching"] = D.branching;
  j["depth"] = D.depth;
  j["alphabet"] = D.alphabet;
  j["length"] = D.length;
  j["kappa"] = D.kappa;
  j["k"] = D.k;
  j["l"] = D.l;
  j["d"] = D.d;
  j["roles"] = ordered_json::array();
  for (Role role : D.roles) j["roles"].push_back(role_name(role));
  j["groups"] = D.groups;
  j["block"] = D.block;
  return j;
}

DomainDescriptor descriptor_from_json(const json& j) {
  return guarded([&] {
    DomainDescriptor D;
    D.kind = parse_domain_kind(j.at("kind").get<std::string>());
    D.branching = j.at("branching").get<int>();
    D.depth = j.at("depth").get<int>();
    D.alphabet = j.at("alphabet").get<int>();
    D.length = j.at("length").get<int>();
    D.kappa = j.at("kappa").get<int>();
    D.k = j.at("k").get<int>();
    D.l = j.at("l").get<int>();
    D.d = j.at("d").get<int>();
    for (const auto& role : j.at("roles")) D.roles.push_back(parse_role(role.get<std::string>()));
    D.groups = j.at("groups").get<std::vector<std::vector<int>>>();
    D.block = j.at("block").get<int>();
    validate(D);
    return D;
  });
}

ordered_json coloring_to_json(const Coloring& c) {
  ordered_json j;
  j["r"] = c.colors();
  const auto count = Domain::count(c.descriptor());
  if (count && *count <= kInlineTable) {
    const Coloring table = c.materialized(kInlineTable);
    j["type"] = "table";
    j["values"] = table.table_values();
    return j;
  }
  if (!c.rule_spec()) fail(Errc::budget_exceeded, "coloring is neither a rule nor small enough to tabulate");
  j["type"] = "rule";
  j["rule"] = rule_kind_name(c.rule_spec()->kind);
  j["parameter"] = c.rule_spec()->parameter;
  j["seed"] = c.rule_spec()->seed;
  return j;
}

Coloring coloring_from_json(const json& j, const DomainDescriptor& D) {
  return guarded([&] {
    const int r = j.at("r").get<int>();
    const std::string type = j.at("type").get<std::string>();
    if (type == "table") return Coloring::table(Domain::make(D, kInlineTable), j.at("values").get<std::vector<int>>(), r);
    if (type == "rule") {
      Rule rule;
      rule.kind = parse_rule_kind(j.at("rule").get<std::string>());
      rule.parameter = j.at("parameter").get<int>();
      rule.seed = j.at("seed").get<std::uint64_t>();
      return Coloring::rule(D, rule, r);
    }
    fail(Errc::parse_error, "unknown coloring type '" + type + "'");
  });
}

ordered_json witness_object_to_json(const WitnessObject& w, const Instance& inst, int n) {
  ordered_json j;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, LinearWord>) {
          j["type"] = "linear_word";
          j["entries"] = format_linear(x);
        } else if constexpr (std::is_same_v<T, TreeWord>) {
          j["type"] = "tree_word";
          j["entries"] = format_word(x);
        } else if constexpr (std::is_same_v<T, VectorSubtree>) {
          j["type"] = "vector_subtree";
          j["parts"] = ordered_json::array();
          for (const Subtree& s : x.parts) j["parts"].push_back(format_subtree(s));
        } else if constexpr (std::is_same_v<T, DisjointFamily>) {
          j["type"] = "disjoint_family";
          j["blocks"] = x;
        } else if constexpr (std::is_same_v<T, USpace>) {
          j["type"] = "uspace";
          j["anchors"] = format_subtree(x.anchors);
          j["parts"] = ordered_json::array();
          for (const auto& part : x.parts) j["parts"].push_back(node_strings(*x.anchors.tree, part));
        } else if constexpr (std::is_same_v<T, VectorWord>) {
          j["type"] = "vector_word";
          j["components"] = ordered_json::array();
          for (const TreeWord& g : x) j["components"].push_back(format_word(g));
        } else {
          j["type"] = "mixed_word";
          j["words"] = ordered_json::array();
          for (const TreeWord& g : x.words) j["words"].push_back(format_word(g));
          const auto extended = Tree::make(Shape{inst.b, n + 1});
          j["branch_sets"] = ordered_json::array();
          for (const auto& X : x.branch_sets) j["branch_sets"].push_back(node_strings(*extended, X));
        }
      },
      w);
  return j;
}

WitnessObject witness_object_from_json(const json& j, const Instance& inst, int n) {
  return guarded([&]() -> WitnessObject {
    const std::string type = j.at("type").get<std::string>();
    if (type == "linear_word") return parse_linear(j.at("entries").get<std::vector<std::string>>());
    if (type == "disjoint_family") return j.at("blocks").get<DisjointFamily>();
    const TreePtr tree = instance_tree(inst, n);
    if (type == "tree_word") return parse_word(tree, j.at("entries").get<std::vector<std::string>>());
    if (type == "vector_subtree") {
      VectorSubtree V;
      for (const auto& part : j.at("parts")) V.parts.push_back(parse_subtree(tree, part));
      return V;
    }
    if (type == "uspace") {
      USpace U;
      U.anchors = parse_subtree(tree, j.at("anchors"));
      for (const auto& part : j.at("parts")) U.parts.push_back(parse_nodes(*tree, part));
      return U;
    }
    if (type == "vector_word") {
      VectorWord f;
      for (const auto& g : j.at("components")) f.push_back(parse_word(tree, g.get<std::vector<std::string>>()));
      return f;
    }
    if (type == "mixed_word") {
      MixedWord F;
      for (const auto& g : j.at("words")) F.words.push_back(parse_word(tree, g.get<std::vector<std::string>>()));
      const auto extended = Tree::make(Shape{inst.b, n + 1});
      for (const auto& X : j.at("branch_sets")) F.branch_sets.push_back(parse_nodes(*extended, X));
      return F;
    }
    fail(Errc::parse_error, "unknown witness type '" + type + "'");
  });
}

ordered_json witness_certificate(const Coloring& c, const Witness& w) {
  ordered_json j = header("witness", w.statement);
  j["parameters"] = instance_to_json(w.instance, w.n);
  j["domain"] = descriptor_to_json(c.descriptor());
  j["coloring"] = coloring_to_json(c);
  ordered_json witness;
  witness["candidate_index"] = w.candidate_index;
  witness["object"] = witness_object_to_json(w.object, w.instance, w.n);
  j["witness"] = witness;
  j["transcript"] = transcript_json(w.transcript);
  return j;
}

ordered_json refutation_certificate(const Coloring& c, const Instance& inst, int n, std::uint64_t candidates) {
  ordered_json j = header("refutation", inst.statement);
  j["parameters"] = instance_to_json(inst, n);
  j["domain"] = descriptor_to_json(c.descriptor());
  j["coloring"] = coloring_to_json(c);
  j["witness"] = nullptr;
  j["transcript"] = transcript_json(Transcript{"exhaustive_candidate_search", false, candidates});
  return j;
}

ordered_json ramsey_certificate(const Instance& inst, const RamseyResult& result, bool reduce_colors) {
  ordered_json j = header("ramsey", inst.statement);
  ordered_json params = instance_to_json(inst, 0);
  params.erase("n");
  j["parameters"] = params;
  j["reduce_colors"] = reduce_colors;
  j["status"] = status_name(result.status);
  j["value"] = result.value ? ordered_json(*result.value) : ordered_json(nullptr);
  j["last_verified"] = result.last_verified ? ordered_json(*result.last_verified) : ordered_json(nullptr);
  j["sizes"] = ordered_json::array();
  for (const SizeReport& s : result.sizes) {
    ordered_json e;
    e["n"] = s.n;
    e["domain"] = descriptor_to_json(instance_domain(inst, s.n));
    e["domain_size"] = s.domain_size;
    e["colorings"] = s.colorings;
    e["holds"] = s.holds;
    e["refutation"] = s.refutation ? ordered_json(*s.refutation) : ordered_json(nullptr);
    j["sizes"].push_back(e);
  }
  if (result.cursor) {
    ordered_json cur;
    cur["n"] = result.cursor->n;
    cur["next_unit"] = result.cursor->next_unit;
    j["cursor"] = cur;
  } else {
    j["cursor"] = nullptr;
  }
  return j;
}

CertificateCheck verify_certificate(const json& cert, const SearchBudget& budget) {
  return guarded([&]() -> CertificateCheck {
    if (cert.at("format").get<std::string>() != kFormat) return {false, "unknown certificate format"};
    const std::string kind = cert.at("kind").get<std::string>();
    if (kind == "ramsey") {
      json params = cert.at("parameters");
      params["n"] = 1;
      const Instance inst = instance_from_json(params).first;
      const auto& sizes = cert.at("sizes");
      if (sizes.empty()) return {false, "no completed sizes to re-verify"};
      RamseyOptions options;
      options.reduce_colors = cert.at("reduce_colors").get<bool>();
      options.budget = budget;
      const int lo = sizes.front().at("n").get<int>(), hi = sizes.back().at("n").get<int>();
      const RamseyResult rerun = ramsey_number(inst, lo, hi, options);
      ordered_json again = ramsey_certificate(inst, rerun, options.reduce_colors);
      ordered_json recorded = cert;
      // The re-run covers only the recorded sizes; a recorded budget stop past them cannot be replayed.
      for (auto* j : {&again, &recorded}) {
        j->erase("status");
        j->erase("cursor");
      }
      if (json(again) != json(recorded)) return {false, "re-running the exhaustive verification gives a different record"};
      return {true, "exhaustive verification reproduced for n = " + std::to_string(lo) + ".." + std::to_string(hi)};
    }
    const auto [inst, n] = instance_from_json(cert.at("parameters"));
    const DomainDescriptor D = descriptor_from_json(cert.at("domain"));
    if (!(D == instance_domain(inst, n))) return {false, "domain does not match the statement parameters"};
    const Coloring c = coloring_from_json(cert.at("coloring"), D);
    if (kind == "witness") {
      const WitnessObject object = witness_object_from_json(cert.at("witness").at("object"), inst, n);
      const Transcript t = validate_witness(c, inst, n, object);
      const auto& recorded = cert.at("transcript");
      if (t.checker != recorded.at("checker").get<std::string>()) return {false, "checker differs from the recorded one"};
      if (!t.holds) return {false, t.checker + " rejects the witness"};
      return {true, t.checker + " accepts the witness (" + std::to_string(t.evaluated) + " evaluations)"};
    }
    if (kind == "refutation") {
      const Prepared prepared = prepare(inst, n, budget);
      if (auto w = find_witness(c, prepared, budget))
        return {false, "candidate " + std::to_string(w->candidate_index) + " is a witness"};
      return {true, "no witness among " + std::to_string(prepared.candidates.size()) + " candidates"};
    }
    return {false, "unknown certificate kind '" + kind + "'"};
  });
}

}  // namespace dr
