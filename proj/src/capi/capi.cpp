#include "dualramsey/dualramsey.h"

#include <new>
#include <string>

#include "dualramsey/search.hpp"
#include "dualramsey/shelah.hpp"
#include "dualramsey/skew.hpp"

struct dr_context {
  std::string result;
  std::string error;
  dr_progress_fn progress = nullptr;
  void* progress_user = nullptr;
};

namespace {

using nlohmann::json;
using nlohmann::ordered_json;
using namespace dr;

// ---------------------------------------------------------------- request helpers

int get_int(const json& j, const char* key, int fallback) { return j.contains(key) ? j.at(key).get<int>() : fallback; }

int need_int(const json& j, const char* key) {
  if (!j.contains(key)) fail(Errc::invalid_argument, std::string("missing parameter '") + key + "'");
  return j.at(key).get<int>();
}

BigInt need_big(const json& j, const char* key) {
  if (!j.contains(key)) fail(Errc::invalid_argument, std::string("missing parameter '") + key + "'");
  const json& v = j.at(key);
  if (v.is_string()) return parse_bigint(v.get<std::string>());
  if (v.is_number_unsigned()) return BigInt(v.get<std::uint64_t>());
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return BigInt(v.get<std::int64_t>());
  fail(Errc::invalid_argument, std::string("parameter '") + key + "' must be a non-negative integer");
}

BigInt as_big(const json& v) {
  if (v.is_string()) return parse_bigint(v.get<std::string>());
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return BigInt(v.get<std::int64_t>());
  fail(Errc::invalid_argument, "bound arguments must be non-negative integers");
}

SearchBudget budget_from(const json& request) {
  SearchBudget b;
  if (!request.contains("budget")) return b;
  const json& j = request.at("budget");
  if (j.contains("max_candidates")) b.max_candidates = j.at("max_candidates").get<std::uint64_t>();
  if (j.contains("max_colorings")) b.max_colorings = j.at("max_colorings").get<std::uint64_t>();
  if (j.contains("max_domain")) b.max_domain = j.at("max_domain").get<std::uint64_t>();
  if (j.contains("max_seconds")) b.max_seconds = j.at("max_seconds").get<double>();
  if (j.contains("threads")) b.threads = j.at("threads").get<int>();
  if (b.max_candidates == 0 || b.max_colorings == 0 || b.max_domain == 0 || b.max_seconds < 0 || b.threads < 1)
    fail(Errc::invalid_argument, "budget fields must be positive");
  return b;
}

std::vector<Role> roles_from(const json& j) {
  std::vector<Role> roles;
  if (j.contains("roles"))
    for (const auto& r : j.at("roles")) roles.push_back(parse_role(r.get<std::string>()));
  return roles;
}

// Instance parameters may omit n (verify) or carry it (search).
Instance instance_from(const json& j) {
  Instance inst;
  inst.statement = parse_statement(j.at("statement").get<std::string>());
  inst.k = get_int(j, "k", inst.k);
  inst.m = get_int(j, "m", inst.m);
  inst.b = get_int(j, "b", inst.b);
  inst.alphabet = get_int(j, "alphabet", inst.alphabet);
  inst.r = get_int(j, "r", inst.r);
  inst.l = get_int(j, "l", inst.l);
  inst.d = get_int(j, "d", inst.d);
  inst.roles = roles_from(j);
  return inst;
}

ordered_json violation_json(const std::optional<Violation>& v) {
  if (!v) return nullptr;
  ordered_json j;
  j["first"] = v->first;
  j["second"] = v->second;
  j["first_color"] = v->first_color;
  j["second_color"] = v->second_color;
  return j;
}

ordered_json verdict_json(const Verdict& v) {
  ordered_json j;
  j["holds"] = v.holds;
  j["evaluated"] = v.evaluated;
  j["violation"] = violation_json(v.violation);
  return j;
}

ordered_json partition_json(const PartitionVerdict& v) {
  ordered_json j;
  j["holds"] = v.certificate.has_value();
  if (v.certificate) {
    j["certificate"] = {{"first", v.certificate->first}, {"second", v.certificate->second}};
  } else {
    j["certificate"] = nullptr;
  }
  j["rejected"] = v.rejected.size();
  return j;
}

std::vector<std::string> subtree_json(const Subtree& S) { return format_subtree(S); }

// ---------------------------------------------------------------- enumerate

ordered_json run_enumerate(const json& req) {
  const std::string kind = req.at("kind").get<std::string>();
  EnumerationBudget eb;
  if (req.contains("max_items")) eb.max_items = req.at("max_items").get<std::uint64_t>();
  ordered_json items = ordered_json::array();
  auto tree_of = [&] {
    if (req.contains("shape")) return Tree::make(parse_shape(req.at("shape").get<std::string>()));
    return Tree::make(Shape{need_int(req, "b"), need_int(req, "n")});
  };
  const int ell = get_int(req, "alphabet", 2);
  if (kind == "nodes") {
    auto tree = tree_of();
    for (NodeIndex s = 0; s < tree->size(); ++s) items.push_back(tree->format(s));
  } else if (kind == "skew" || kind == "complete-skew" || kind == "semi-complete") {
    SkewPredicate pred;
    if (kind == "complete-skew") pred = {SkewKind::complete, need_int(req, "k")};
    else if (kind == "semi-complete") pred = {SkewKind::semi_complete, need_int(req, "l")};
    for (const Subtree& S : enumerate_skew(tree_of(), pred, eb)) items.push_back(subtree_json(S));
  } else if (kind == "variable-words") {
    for (const TreeWord& f : variable_words(tree_of(), need_int(req, "k"), ell, eb)) items.push_back(format_word(f));
  } else if (kind == "skew-variable-words") {
    for (const TreeWord& f : skew_variable_words(tree_of(), need_int(req, "l"), ell, eb)) items.push_back(format_word(f));
  } else if (kind == "semi-pairs") {
    for (const SemiPair& p : all_semi_pairs(tree_of(), need_int(req, "l"), ell, eb))
      items.push_back(ordered_json{{"S", subtree_json(p.S)}, {"g", format_word(p.g)}});
  } else if (kind == "vector-words") {
    for (const VectorWord& f : vector_words(tree_of(), need_int(req, "d"), need_int(req, "k"), ell, eb)) {
      ordered_json comp = ordered_json::array();
      for (const TreeWord& g : f) comp.push_back(format_word(g));
      items.push_back(comp);
    }
  } else if (kind == "mixed-words") {
    auto tree = tree_of();
    auto extended = Tree::make(Shape{tree->branching(), tree->depth() + 1});
    for (const MixedWord& F : mixed_words(tree, roles_from(req), ell, need_int(req, "k"), eb)) {
      ordered_json j;
      j["words"] = ordered_json::array();
      for (const TreeWord& g : F.words) j["words"].push_back(format_word(g));
      j["branch_sets"] = ordered_json::array();
      for (const auto& X : F.branch_sets) {
        ordered_json xs = ordered_json::array();
        for (NodeIndex x : X) xs.push_back(extended->format(x));
        j["branch_sets"].push_back(xs);
      }
      items.push_back(j);
    }
  } else if (kind == "ct") {
    auto tree = tree_of();
    VectorSubtree carrier{std::vector<Subtree>(static_cast<std::size_t>(need_int(req, "d")), full_subtree(tree))};
    for (const VectorSubtree& V : enumerate_ct(carrier, need_int(req, "k"), eb)) {
      ordered_json parts = ordered_json::array();
      for (const Subtree& S : V.parts) parts.push_back(subtree_json(S));
      items.push_back(parts);
    }
  } else if (kind == "uspace") {
    auto tree = tree_of();
    for (const USpace& U : uspace_enumerate(finest_uspace(tree), need_int(req, "k"), eb)) {
      ordered_json parts = ordered_json::array();
      for (const auto& part : U.parts) {
        ordered_json xs = ordered_json::array();
        for (NodeIndex x : part) xs.push_back(tree->format(x));
        parts.push_back(xs);
      }
      items.push_back(ordered_json{{"anchors", subtree_json(U.anchors)}, {"parts", parts}});
    }
  } else if (kind == "ds") {
    for (const DisjointFamily& F : ds_enumerate(singletons_family(need_int(req, "n")), need_int(req, "k"), eb.max_items))
      items.push_back(F);
  } else if (kind == "block-words") {
    for (const LinearWord& w : block_words(need_int(req, "N"), need_int(req, "m"), get_int(req, "k", 2), eb.max_items))
      items.push_back(format_linear(w));
  } else {
    fail(Errc::invalid_argument, "unknown enumeration kind '" + kind +
                                     "' (nodes, skew, complete-skew, semi-complete, variable-words, skew-variable-words, "
                                     "semi-pairs, vector-words, mixed-words, ct, uspace, ds, block-words)");
  }
  ordered_json out;
  out["kind"] = kind;
  out["count"] = items.size();
  out["items"] = std::move(items);
  return out;
}

// ---------------------------------------------------------------- check

MixedWord mixed_from(const json& j, const DomainDescriptor& D) {
  auto tree = Tree::make(Shape{D.branching, D.depth});
  auto extended = Tree::make(Shape{D.branching, D.depth + 1});
  MixedWord F;
  for (const auto& g : j.at("words")) F.words.push_back(parse_word(tree, g.get<std::vector<std::string>>()));
  for (const auto& X : j.at("branch_sets")) {
    std::vector<NodeIndex> xs;
    for (const auto& s : X) xs.push_back(extended->parse(s.get<std::string>()));
    std::sort(xs.begin(), xs.end());
    F.branch_sets.push_back(xs);
  }
  return F;
}

ordered_json run_check(const json& req, const SearchBudget& budget) {
  const std::string checker = req.at("checker").get<std::string>();
  if (checker == "certificate") {
    CertificateCheck c = verify_certificate(req.at("certificate"), budget);
    ordered_json out;
    out["checker"] = checker;
    out["holds"] = c.valid;
    out["detail"] = c.detail;
    return out;
  }
  const DomainDescriptor D = descriptor_from_json(req.at("domain"));
  const Coloring c = coloring_from_json(req.at("coloring"), D);
  ordered_json out;
  if (checker == "strongly_insensitive") {
    out = verdict_json(check_strongly_insensitive(c, parse_linear(req.at("word").get<std::vector<std::string>>()), D.kappa));
  } else if (checker == "L_insensitive") {
    out = verdict_json(check_L_insensitive(c, parse_linear(req.at("word").get<std::vector<std::string>>()),
                                           req.at("L").get<std::vector<int>>(), D.kappa));
  } else if (checker == "block_insensitive") {
    out = verdict_json(check_block_insensitive(c, parse_linear(req.at("word").get<std::vector<std::string>>()), D.groups,
                                               need_int(req, "block_index")));
  } else if (checker == "c_good") {
    out = verdict_json(check_c_good(c, mixed_from(req.at("mixed"), D)));
  } else if (checker == "branch_sensitive") {
    out = verdict_json(check_branch_sensitive(c, mixed_from(req.at("mixed"), D)));
  } else if (checker == "smooth") {
    out = partition_json(check_smooth(c));
  } else if (checker == "simple") {
    auto tree = Tree::make(Shape{D.branching, D.depth});
    TreeWord f = req.contains("word") ? parse_word(tree, req.at("word").get<std::vector<std::string>>()) : full_variable_word(tree);
    out = partition_json(check_simple(c, f));
  } else {
    fail(Errc::invalid_argument, "unknown checker '" + checker +
                                     "' (certificate, strongly_insensitive, L_insensitive, block_insensitive, c_good, "
                                     "branch_sensitive, smooth, simple)");
  }
  ordered_json tagged;
  tagged["checker"] = checker;
  for (auto& [key, value] : out.items()) tagged[key] = value;
  return tagged;
}

// ---------------------------------------------------------------- shelah

std::vector<std::int64_t> to_lengths(const std::vector<BigInt>& p) {
  std::vector<std::int64_t> out;
  for (const BigInt& x : p) out.push_back(to_int64(x, "interval length"));
  return out;
}

ordered_json run_shelah(const json& req) {
  const std::string mode = req.at("mode").get<std::string>();
  DomainDescriptor D;
  D.kind = DomainKind::kappa_product;
  D.alphabet = need_int(req, "k");
  D.kappa = need_int(req, "kappa");
  D.length = need_int(req, "N");
  const int r = need_int(req, "r");
  validate(D);
  Coloring c = req.contains("coloring") ? coloring_from_json(req.at("coloring"), D) : Coloring::rule(D, Rule{}, r);
  if (c.colors() != r) fail(Errc::invalid_argument, "coloring has a different number of colors than r");
  ShelahOptions options;
  options.fill = get_int(req, "fill", 0);
  options.threads = get_int(req, "threads", 1);
  if (req.contains("max_evaluations")) options.max_evaluations = req.at("max_evaluations").get<std::uint64_t>();
  const std::string source = req.contains("schedule") ? req.at("schedule").get<std::string>() : "user";

  std::vector<std::vector<std::int64_t>> schedules;
  if (source == "paper") {
    // Schedules are built from the last pair backwards: each pair's sum is the next one's interval count.
    BigInt m = need_big(req, "m");
    const int pairs = mode == "L" ? 1 : D.alphabet - 1;
    schedules.resize(static_cast<std::size_t>(pairs));
    for (int j = pairs; j >= 1; --j) {
      Schedule s = shelah_schedule(D.alphabet, D.kappa, m, r);
      schedules[static_cast<std::size_t>(j - 1)] = to_lengths(s.p);
      m = s.n0;
    }
  } else if (source == "user") {
    if (mode == "L") schedules.push_back(req.at("p").get<std::vector<std::int64_t>>());
    else schedules = req.at("schedules").get<std::vector<std::vector<std::int64_t>>>();
  } else {
    fail(Errc::invalid_argument, "schedule source must be 'paper' or 'user'");
  }

  ShelahResult res;
  std::vector<int> L;
  if (mode == "L") {
    L = req.contains("L") ? req.at("L").get<std::vector<int>>() : std::vector<int>{0, 1};
    res = construct_L_insensitive(c, L, schedules.front(), options);
  } else if (mode == "strong") {
    res = construct_strongly_insensitive(c, schedules, options);
  } else {
    fail(Errc::invalid_argument, "mode must be 'L' or 'strong'");
  }
  ordered_json out;
  out["format"] = "dualramsey-certificate/1";
  out["kind"] = "shelah";
  out["mode"] = mode;
  out["parameters"] = {{"k", D.alphabet}, {"kappa", D.kappa}, {"N", D.length}, {"r", r}};
  if (mode == "L") out["L"] = L;
  out["domain"] = descriptor_to_json(D);
  out["coloring"] = coloring_to_json(c);
  out["fill"] = options.fill;
  out["schedules"] = schedules;
  out["word"] = format_linear(res.word);
  out["q"] = res.q;
  out["transcript"] = ordered_json::array();
  for (const ShelahStep& s : res.transcript) {
    ordered_json step;
    step["pair"] = s.pair;
    step["step"] = s.step;
    step["s1"] = s.s1;
    step["s2"] = s.s2;
    step["free_variables"] = s.free_variables;
    step["evaluations"] = s.evaluations;
    out["transcript"].push_back(step);
  }
  out["insensitive"] = res.insensitive ? verdict_json(*res.insensitive) : ordered_json(nullptr);
  out["compatible"] = res.compatible;
  return out;
}

// ---------------------------------------------------------------- bounds

ordered_json node_json(const BoundNodePtr& node) {
  ordered_json j;
  j["quantity"] = node->quantity;
  j["args"] = ordered_json::array();
  for (const BigInt& a : node->args) j["args"].push_back(to_decimal(a));
  j["value"] = to_decimal(node->value);
  j["rule"] = node->rule;
  j["children"] = ordered_json::array();
  for (const auto& child : node->children) j["children"].push_back(node_json(child));
  return j;
}

ordered_json run_bounds(const json& req) {
  const std::string op = req.at("op").get<std::string>();
  std::uint64_t max_bits = kDefaultMaxBits;
  if (req.contains("max_bits")) max_bits = req.at("max_bits").get<std::uint64_t>();
  ordered_json out;
  out["op"] = op;
  if (op == "f1") {
    out["value"] = to_decimal(f1(need_big(req, "k"), need_big(req, "kappa"), need_big(req, "i"), need_big(req, "m"),
                                 need_big(req, "r"), max_bits));
  } else if (op == "f2") {
    out["value"] = to_decimal(f2(need_big(req, "i"), need_big(req, "k"), need_big(req, "kappa"), need_big(req, "m"),
                                 need_big(req, "r"), max_bits));
  } else if (op == "schedule") {
    Schedule s = shelah_schedule(need_big(req, "k"), need_big(req, "kappa"), need_big(req, "m"), need_big(req, "r"), max_bits);
    out["n0"] = to_decimal(s.n0);
    out["q"] = ordered_json::array();
    for (const BigInt& x : s.q) out["q"].push_back(to_decimal(x));
    out["p"] = ordered_json::array();
    for (const BigInt& x : s.p) out["p"].push_back(to_decimal(x));
  } else if (op == "pigeonhole") {
    out["value"] = to_decimal(pigeonhole_count(need_big(req, "k"), need_big(req, "kappa"), need_big(req, "J"),
                                               need_big(req, "r"), max_bits));
  } else if (op == "quantities") {
    out["quantities"] = ordered_json::array();
    for (const std::string& q : bound_quantities())
      out["quantities"].push_back(ordered_json{{"quantity", q}, {"rules", bound_rules(q)}});
  } else if (op == "ladder") {
    BoundQuery query;
    query.quantity = req.at("quantity").get<std::string>();
    for (const auto& a : req.at("args")) query.args.push_back(as_big(a));
    if (req.contains("rule")) query.rule = req.at("rule").get<std::string>();
    Oracle oracle;
    if (req.contains("oracle"))
      for (auto& [key, value] : req.at("oracle").items()) oracle[key] = as_big(value);
    LadderOptions options;
    options.max_bits = max_bits;
    BoundResult res = bound_ladder(query, oracle, options);
    const BigInt replayed = replay(res.tree, options);
    out["value"] = to_decimal(res.value);
    out["nodes"] = res.nodes;
    out["replayed"] = to_decimal(replayed);
    out["replay_matches"] = replayed == res.value;
    out["tree"] = node_json(res.tree);
  } else {
    fail(Errc::invalid_argument, "unknown bounds operation '" + op + "' (f1, f2, schedule, pigeonhole, quantities, ladder)");
  }
  return out;
}

// ---------------------------------------------------------------- search and verify

ordered_json run_search(const json& req) {
  const json& params = req.at("instance");
  const Instance inst = instance_from(params);
  const int n = need_int(params, "n");
  const SearchBudget budget = budget_from(req);
  const DomainDescriptor D = instance_domain(inst, n);
  Coloring c = req.contains("coloring") ? coloring_from_json(req.at("coloring"), D) : Coloring::rule(D, Rule{}, inst.r);
  if (c.colors() != inst.r) fail(Errc::invalid_argument, "coloring has a different number of colors than r");
  const Prepared prepared = prepare(inst, n, budget);
  const auto w = find_witness(c, prepared, budget);
  ordered_json out;
  out["found"] = w.has_value();
  out["certificate"] = w ? witness_certificate(c, *w) : refutation_certificate(c, inst, n, prepared.candidates.size());
  return out;
}

ordered_json run_verify(const json& req, dr_context* ctx) {
  const Instance inst = instance_from(req.at("instance"));
  RamseyOptions options;
  options.budget = budget_from(req);
  if (req.contains("reduce_colors")) options.reduce_colors = req.at("reduce_colors").get<bool>();
  if (req.contains("resume") && !req.at("resume").is_null()) {
    const json& r = req.at("resume");
    options.resume = Cursor{r.at("n").get<int>(), r.at("next_unit").get<std::uint64_t>()};
  }
  if (ctx->progress) {
    options.progress = [ctx](const Cursor& cur, const SizeReport& rep) {
      ordered_json p;
      p["n"] = cur.n;
      p["next_unit"] = cur.next_unit;
      p["domain_size"] = rep.domain_size;
      p["colorings"] = rep.colorings;
      ctx->progress(p.dump().c_str(), ctx->progress_user);
    };
  }
  const int n_min = get_int(req, "n_min", smallest_size(inst));
  const int n_max = need_int(req, "n_max");
  const RamseyResult result = ramsey_number(inst, n_min, n_max, options);
  ordered_json out;
  out["certificate"] = ramsey_certificate(inst, result, options.reduce_colors);
  return out;
}

// ---------------------------------------------------------------- dispatch

template <class F>
dr_status call(dr_context* ctx, const char* request, F body) {
  if (!ctx) return DR_E_INVALID_ARGUMENT;
  ctx->result.clear();
  ctx->error.clear();
  if (!request) {
    ctx->error = "request is null";
    return DR_E_INVALID_ARGUMENT;
  }
  try {
    const json req = json::parse(request);
    ctx->result = body(req).dump(2);
    return DR_OK;
  } catch (const Error& e) {
    ctx->error = e.what();
    return static_cast<dr_status>(static_cast<int>(e.code()));
  } catch (const json::exception& e) {
    ctx->error = std::string("malformed request: ") + e.what();
    return DR_E_PARSE;
  } catch (const std::bad_alloc&) {
    ctx->error = "out of memory";
    return DR_E_BUDGET_EXCEEDED;
  } catch (const std::exception& e) {
    ctx->error = e.what();
    return DR_E_INTERNAL;
  }
}

}  // namespace

extern "C" {

dr_context* dr_context_new(void) { return new (std::nothrow) dr_context(); }

void dr_context_free(dr_context* ctx) { delete ctx; }

const char* dr_status_name(dr_status status) {
  if (status == DR_OK) return "Ok";
  return errc_name(static_cast<Errc>(static_cast<int>(status)));
}

const char* dr_last_error(const dr_context* ctx) { return ctx ? ctx->error.c_str() : "null context"; }

const char* dr_result(const dr_context* ctx) { return ctx ? ctx->result.c_str() : ""; }

void dr_set_progress(dr_context* ctx, dr_progress_fn fn, void* user) {
  if (!ctx) return;
  ctx->progress = fn;
  ctx->progress_user = user;
}

dr_status dr_enumerate(dr_context* ctx, const char* request) { return call(ctx, request, run_enumerate); }

dr_status dr_check(dr_context* ctx, const char* request) {
  return call(ctx, request, [](const json& req) { return run_check(req, budget_from(req)); });
}

dr_status dr_shelah(dr_context* ctx, const char* request) { return call(ctx, request, run_shelah); }

dr_status dr_bounds(dr_context* ctx, const char* request) { return call(ctx, request, run_bounds); }

dr_status dr_search(dr_context* ctx, const char* request) { return call(ctx, request, run_search); }

dr_status dr_verify(dr_context* ctx, const char* request) {
  return call(ctx, request, [ctx](const json& req) { return run_verify(req, ctx); });
}

const char* dr_version(void) { return "1.0.0"; }

}  // extern "C"
