#include <algorithm>
#include <functional>
#include <set>

#include "dualramsey/shelah.hpp"

namespace dr {

namespace {

// A rule pulls sub-quantities through Sub, which either evaluates them or replays recorded children.
class Sub {
 public:
  virtual ~Sub() = default;
  virtual BigInt operator()(const std::string& quantity, std::vector<BigInt> args) = 0;
  std::uint64_t max_bits = kDefaultMaxBits;
  std::uint64_t max_steps = 0;
};

using Args = std::vector<BigInt>;

struct RuleDef {
  std::string name;
  std::string quantity;
  bool by_default;  // tried automatically; the others run only when requested
  std::function<bool(const Args&)> applies;
  std::function<BigInt(const Args&, Sub&)> compute;
};

struct QuantityDef {
  std::string name;
  std::size_t arity;
  std::function<void(const Args&)> validate;  // throws invalid_argument
};

void need(bool ok, const std::string& what) {
  if (!ok) fail(Errc::invalid_argument, what);
}

std::int64_t small(const BigInt& v, const char* what) { return to_int64(v, what); }

void require_steps(const BigInt& n, const Sub& sub, const char* what) {
  if (n > sub.max_steps) fail(Errc::budget_exceeded, std::string(what) + " needs " + n.str() + " steps");
}

BigInt pow_(const BigInt& b, const BigInt& e, const Sub& sub) { return checked_pow(b, e, sub.max_bits); }

BigInt binomial(std::int64_t n, std::int64_t k) {
  BigInt out = 1;
  for (std::int64_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

const std::vector<QuantityDef>& quantities() {
  static const std::vector<QuantityDef> defs = {
      {"HJ", 2, [](const Args& a) { need(a[0] >= 1 && a[1] >= 1, "HJ(k,r) needs k, r >= 1"); }},
      {"MHJ", 3, [](const Args& a) { need(a[0] >= 1 && a[1] >= 1 && a[2] >= 1, "MHJ(k,m,r) needs k, m, r >= 1"); }},
      {"MHJ*", 4,
       [](const Args& a) {
         need(a[0] >= 1 && a[1] >= 1 && a[1] <= a[2] && a[3] >= 1, "MHJ*(k,kappa,m,r) needs 1 <= kappa <= m and k, r >= 1");
       }},
      {"Sh*", 4,
       [](const Args& a) {
         need(a[0] >= 1 && a[1] >= 1 && a[1] <= a[2] && a[3] >= 1, "Sh*(k,kappa,m,r) needs 1 <= kappa <= m and k, r >= 1");
       }},
      {"Q", 4,
       [](const Args& a) { need(a[0] >= 1 && a[1] <= a[2] && a[3] >= 1, "Q(k,kappa,m,r) needs kappa <= m and k, r >= 1"); }},
      {"CT", 5, [](const Args& a) { need(a[2] >= 1 && a[4] >= 1, "CT(k,m,b,d,r) needs b, r >= 1"); }},
      {"MTHJ", 7,
       [](const Args& a) {
         need(a[0] + a[1] + a[2] >= 1, "MTHJ needs d0 + d1 + d2 >= 1");
         need(a[3] >= 1 && a[4] >= 1 && a[5] >= 1 && a[6] >= 1, "MTHJ needs b, l, k, r >= 1");
       }},
      {"h1", 6,
       [](const Args& a) {
         need(a[0] + a[1] >= 1, "h1 needs d0 + d1 >= 1");
         need(a[2] >= 1 && a[3] >= 1 && a[4] >= 1 && a[5] >= 1, "h1 needs b, l, k, r >= 1");
       }},
      {"h2", 5,
       [](const Args& a) {
         need(a[0] >= 1 && a[1] >= 1 && a[2] >= 1 && a[3] >= 1 && a[4] >= 1, "h2(d,m,b,l,r) needs positive arguments");
       }},
      {"h3", 6,
       [](const Args& a) {
         need(a[0] >= 1 && a[2] >= 1 && a[3] >= 1 && a[4] >= 1 && a[5] >= 1, "h3 needs l, m, b, l, r >= 1");
         need(a[1] + 1 < a[2], "h3(l,m',m,...) needs m' < m - 1");
       }},
      {"h4", 5,
       [](const Args& a) {
         need(a[0] >= 1 && a[1] >= 1 && a[2] >= 1 && a[3] >= 1 && a[4] >= 1, "h4(l,m,b,l,r) needs positive arguments");
       }},
      {"TGR", 5,
       [](const Args& a) {
         need(a[0] >= 1 && a[0] <= a[1] && a[2] >= 1 && a[3] >= 1 && a[4] >= 1, "TGR(k,m,b,l,r) needs 1 <= k <= m and b, l, r >= 1");
       }},
      {"PTGR", 5,
       [](const Args& a) { need(a[1] >= 1 && a[2] >= 1 && a[3] >= 1 && a[4] >= 1, "PTGR(l,m,b,l,r) needs m, b, l, r >= 1"); }},
  };
  return defs;
}

const QuantityDef& quantity_def(const std::string& name) {
  for (const auto& q : quantities())
    if (q.name == name) return q;
  fail(Errc::invalid_argument, "unknown bound quantity '" + name + "'");
}

// Maximum of a sub-quantity over a finite index set.
template <class Each>
BigInt maximum(Each&& each) {
  BigInt best = 0;
  bool any = false;
  each([&](const BigInt& v) {
    if (!any || v > best) best = v;
    any = true;
  });
  if (!any) fail(Errc::invalid_argument, "maximum over an empty index set");
  return best;
}

BigInt h2_rule(const Args& a, Sub& sub) {
  const std::int64_t d = small(a[0], "d");
  const BigInt &m = a[1], &b = a[2], &l = a[3], &r = a[4];
  require_steps(m, sub, "h2");
  const auto steps = static_cast<std::int64_t>(m);
  BigInt q = 0;
  for (std::int64_t p = steps; p >= 1; --p) {
    const BigInt prev = q;
    q = maximum([&](auto&& take) {
      for (std::int64_t d2 = 0; d2 <= d; ++d2)
        for (std::int64_t d2p = 0; d2p <= d2; ++d2p) take(sub("Q", {l, d2p, p == steps ? BigInt(d2) : d2 * prev, r}));
    });
  }
  const BigInt Qs = q;
  BigInt M = 0;
  for (std::int64_t p = steps; p >= 1; --p) {
    const BigInt prev = M;
    M = maximum([&](auto&& take) {
      for (std::int64_t d0 = 0; d0 <= d; ++d0)
        for (std::int64_t d1 = 0; d0 + d1 <= d; ++d1) {
          if (d0 + d1 == 0) continue;  // no tree components left for the claim
          const std::int64_t d2 = d - d0 - d1;
          const BigInt colors = pow_(r, pow_(l, Qs * d2, sub) * pow_(Qs, d2, sub), sub);
          take(sub("MTHJ", {d0, d1, 0, b, l, p == steps ? BigInt(1) : prev, colors}));
        }
    });
  }
  return d * M + d * Qs;
}

BigInt tree_hj_rule(const Args& a, Sub& sub) {
  const BigInt &d0 = a[0], &d1 = a[1], &b = a[3], &l = a[4], &r = a[6];
  const std::int64_t d2 = small(a[2], "d2");
  const BigInt k = a[5] - 1;
  require_steps(pow_(2, d2, sub), sub, "tree_HJ");
  const BigInt d = d0 + d1 + d2;
  const BigInt lifted = pow_(r, pow_(l, d2, sub), sub);
  BigInt M = sub("MTHJ", {d0, d1, d2, b, l, k, r});
  for (std::int64_t e = 1; e <= d2; ++e) {
    const BigInt count = binomial(d2, e);
    for (BigInt q = 0; q < count; ++q) M = sub("MTHJ", {d0, d1 + e, d2 - e, b, l, M, lifted});
  }
  const BigInt nodes = tree_nodes(b, M, sub.max_bits);
  const BigInt bM = pow_(b, M, sub);
  const BigInt colors = pow_(r, pow_(l, d * nodes, sub) * pow_(nodes, d2, sub), sub);
  const BigInt Mp = sub("h2", {bM * d, pow_(b, d1 * M, sub) * pow_(bM + 1, d2, sub), b, l, colors});
  return M + Mp;
}

BigInt h4_rule(const Args& a, Sub& sub) {
  const int l = static_cast<int>(small(a[0], "l"));
  const int m = static_cast<int>(small(a[1], "m"));
  const int b = static_cast<int>(small(a[2], "b"));
  const int ell = static_cast<int>(small(a[3], "l"));
  const BigInt& r = a[4];
  if (m > 64 || b > 64 || ell > 64) fail(Errc::budget_exceeded, "h4 enumerates signatures only for desk-scale m, b, l");
  auto tree = Tree::make(Shape{b, m});
  EnumerationBudget budget;
  budget.max_items = sub.max_steps;
  auto sigs = observable_signatures(full_variable_word(tree), l, ell, budget);
  // Signatures in ≼-order of the node they are observed at.
  std::stable_sort(sigs.begin(), sigs.end(), [&](const Signature& x, const Signature& y) {
    return tree->llex_rank(x.pivot) < tree->llex_rank(y.pivot);
  });
  require_steps(BigInt(sigs.size()), sub, "h4");
  BigInt M = m;
  for (std::size_t p = sigs.size(); p-- > 0;) M = sub("h3", {l, tree->length(sigs[p].pivot), M, b, ell, r});
  return M;
}

const std::vector<RuleDef>& rules() {
  static const std::vector<RuleDef> defs = {
      {"trivial", "HJ", true, [](const Args& a) { return a[0] == 1 || a[1] == 1; },
       [](const Args&, Sub&) -> BigInt { return BigInt(1); }},
      {"trivial", "MHJ", true, [](const Args& a) { return a[0] == 1 || a[2] == 1; },
       [](const Args& a, Sub&) -> BigInt { return a[1]; }},
      {"eq01", "Sh*", true, [](const Args&) { return true; },
       [](const Args& a, Sub& sub) -> BigInt { return f1(a[0], a[1], a[2], a[2], a[3], sub.max_bits); }},
      {"hj_star", "MHJ*", true, [](const Args&) { return true; },
       [](const Args& a, Sub& sub) -> BigInt {
         if (a[0] == 1) return a[2];
         if (a[0] == 2) return sub("Sh*", a);
         return f2(a[0], a[0], a[1], a[2], a[3], sub.max_bits);
       }},
      {"trivial", "Q", true, [](const Args& a) { return a[2] == 0; }, [](const Args&, Sub&) -> BigInt { return BigInt(1); }},
      {"cor_v2", "Q", true, [](const Args& a) { return a[1] >= 1; },
       [](const Args& a, Sub& sub) -> BigInt { return sub("MHJ*", a); }},
      {"eq10", "h1", true, [](const Args& a) { return a[0] == 0 && a[4] == 1; },
       [](const Args&, Sub&) -> BigInt { return BigInt(1); }},
      {"eq06", "h1", true, [](const Args& a) { return a[0] >= 1 && a[4] == 1; },
       [](const Args& a, Sub& sub) -> BigInt {
         const BigInt &d0 = a[0], &d1 = a[1], &b = a[2], &l = a[3], &r = a[5];
         const BigInt hj = sub("HJ", {pow_(l, d0, sub), pow_(r, pow_(b * l, d1, sub), sub)});
         return d0 * hj - d0 + 1;
       }},
      {"eq07", "h1", true, [](const Args& a) { return a[4] >= 2; },
       [](const Args& a, Sub& sub) -> BigInt {
         const BigInt &d0 = a[0], &d1 = a[1], &b = a[2], &l = a[3], &r = a[5];
         const BigInt d = d0 + d1;
         const BigInt M = sub("h1", {d0, d1, b, l, a[4] - 1, pow_(r, pow_(l * b, d1, sub), sub)});
         const BigInt bM = pow_(b, M, sub);
         const BigInt colors = pow_(r, pow_(l, d * tree_nodes(b, M, sub.max_bits), sub) * pow_(b, d1, sub), sub);
         const BigInt Q = sub("Q", {l, d1, d * bM, colors});
         return M + d * bM * Q - d * bM + 1;
       }},
      {"prop_d2_0", "MTHJ", true, [](const Args& a) { return a[2] == 0; },
       [](const Args& a, Sub& sub) -> BigInt {
         const BigInt &d0 = a[0], &d1 = a[1], &b = a[3], &l = a[4], &k = a[5], &r = a[6];
         const BigInt M = sub("MHJ", {pow_(l * b, d1, sub), k, r});
         return sub("h1", {d0, d1, b, l, M, r});
       }},
      {"cor_k1", "MTHJ", true, [](const Args& a) { return a[2] >= 1 && a[5] == 1; },
       [](const Args& a, Sub& sub) -> BigInt { return sub("h2", {a[0] + a[1] + a[2], 1, a[3], a[4], a[6]}); }},
      {"tree_hj", "MTHJ", true, [](const Args& a) { return a[2] >= 1 && a[5] >= 2; }, tree_hj_rule},
      {"tree_hj_dim_1", "h2", true, [](const Args&) { return true; }, h2_rule},
      {"lem_ind_step", "h3", true, [](const Args&) { return true; },
       [](const Args& a, Sub& sub) -> BigInt {
         // The bound does not depend on l.
         const BigInt &mp = a[1], &m = a[2], &b = a[3], &ell = a[4], &r = a[5];
         const BigInt bound = pow_(b, mp + 1, sub);
         require_steps(bound * bound, sub, "h3");
         const auto B = static_cast<std::int64_t>(bound);
         return mp + maximum([&](auto&& take) {
                  for (std::int64_t d0 = 0; d0 <= B; ++d0)
                    for (std::int64_t d2 = 0; d0 + d2 <= B; ++d2) {
                      if (d0 + d2 == 0) continue;
                      const BigInt ct = sub("CT", {1, m - mp, b, d2, r});
                      take(sub("MTHJ", {d0, 0, d2, b, ell + mp + 1, ct, r}));
                    }
                });
       }},
      {"lem_ind", "h4", true, [](const Args&) { return true; }, h4_rule},
      {"point_subsets", "PTGR", true, [](const Args& a) { return a[0] >= 1; },
       [](const Args& a, Sub& sub) -> BigInt {
         const BigInt prev = sub("PTGR", {a[0] - 1, a[1], a[2], a[3], a[4]});
         return sub("h4", {a[0], prev + 1, a[2], a[3], a[4]});
       }},
      {"tgr_equiv", "PTGR", false, [](const Args&) { return true; },
       [](const Args& a, Sub& sub) -> BigInt {
         return sub("TGR", {smallest_height(a[2], a[0]) + 1, a[1], a[2], a[3], a[4]});
       }},
      {"ptgr_equiv", "TGR", true, [](const Args&) { return true; },
       [](const Args& a, Sub& sub) -> BigInt {
         return sub("PTGR", {tree_nodes(a[2], a[0], sub.max_bits), a[1] + 1, a[2], a[3], a[4]});
       }},
  };
  return defs;
}

const RuleDef* find_rule(const std::string& quantity, const std::string& name) {
  for (const auto& r : rules())
    if (r.quantity == quantity && r.name == name) return &r;
  return nullptr;
}

void validate_query(const std::string& quantity, const Args& args) {
  const QuantityDef& q = quantity_def(quantity);
  if (args.size() != q.arity)
    fail(Errc::invalid_argument, quantity + " takes " + std::to_string(q.arity) + " arguments, got " + std::to_string(args.size()));
  for (const BigInt& v : args) need(v >= 0, quantity + " takes non-negative arguments");
  q.validate(args);
}

class Evaluator : public Sub {
 public:
  Evaluator(const Oracle& oracle, const LadderOptions& options) : oracle_(oracle), options_(options) {
    max_bits = options.max_bits;
    max_steps = options.max_steps;
  }

  BoundNodePtr evaluate(const std::string& quantity, const Args& args, const std::string& forced, bool top) {
    validate_query(quantity, args);
    const std::string key = oracle_key(quantity, args);
    const bool plain = forced.empty() && !top;
    if (plain)
      if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (!active_.insert(key).second) fail(Errc::invalid_argument, "bound ladder cycles through " + key);
    if (active_.size() > 4096) fail(Errc::budget_exceeded, "bound ladder recursion deeper than 4096");

    auto node = std::make_shared<BoundNode>();
    node->quantity = quantity;
    node->args = args;
    const RuleDef* rule = nullptr;
    if (!forced.empty()) {
      rule = find_rule(quantity, forced);
      if (!rule) fail(Errc::invalid_argument, "no rule '" + forced + "' for " + quantity);
      if (!rule->applies(args)) fail(Errc::invalid_argument, "rule '" + forced + "' does not apply to " + key);
    } else if (auto it = oracle_.find(key); !top && it != oracle_.end()) {
      node->rule = "oracle";
      node->value = it->second;
    } else {
      for (const auto& r : rules())
        if (r.quantity == quantity && r.by_default && r.applies(args)) {
          rule = &r;
          break;
        }
      if (!rule) {
        if (it == oracle_.end()) fail(Errc::missing_oracle, "no oracle value for " + key);
        node->rule = "oracle";
        node->value = it->second;
      }
    }
    if (rule) {
      node->rule = rule->name;
      children_.push_back(&node->children);
      try {
        node->value = rule->compute(args, *this);
      } catch (...) {
        children_.pop_back();
        active_.erase(key);
        throw;
      }
      children_.pop_back();
    }
    active_.erase(key);
    if (++nodes_ > options_.max_nodes) fail(Errc::budget_exceeded, "bound ladder exceeded its node budget");
    BoundNodePtr out = node;
    if (plain) memo_[key] = out;
    return out;
  }

  BigInt operator()(const std::string& quantity, Args args) override {
    BoundNodePtr child = evaluate(quantity, args, "", false);
    children_.back()->push_back(child);
    return child->value;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  const Oracle& oracle_;
  LadderOptions options_;
  std::map<std::string, BoundNodePtr> memo_;
  std::set<std::string> active_;
  std::vector<std::vector<BoundNodePtr>*> children_;
  std::uint64_t nodes_ = 0;
};

class Replayer : public Sub {
 public:
  explicit Replayer(const LadderOptions& options) {
    max_bits = options.max_bits;
    max_steps = options.max_steps;
  }

  BigInt replay(const BoundNodePtr& node) {
    if (auto it = done_.find(node.get()); it != done_.end()) return it->second;
    BigInt value;
    if (node->rule == "oracle") {
      value = node->value;
    } else {
      const RuleDef* rule = find_rule(node->quantity, node->rule);
      if (!rule) fail(Errc::parse_error, "unknown rule '" + node->rule + "' in evaluation tree");
      validate_query(node->quantity, node->args);
      frames_.push_back({node.get(), 0});
      value = rule->compute(node->args, *this);
      if (frames_.back().next != node->children.size())
        fail(Errc::internal, "replay of " + oracle_key(node->quantity, node->args) + " left children unused");
      frames_.pop_back();
      if (value != node->value)
        fail(Errc::internal, "replay of " + oracle_key(node->quantity, node->args) + " gave " + value.str() + ", recorded " +
                                 node->value.str());
    }
    done_[node.get()] = value;
    return value;
  }

  BigInt operator()(const std::string& quantity, Args args) override {
    Frame& f = frames_.back();
    if (f.next >= f.node->children.size()) fail(Errc::internal, "replay asked for an unrecorded child " + oracle_key(quantity, args));
    const BoundNodePtr& child = f.node->children[f.next++];
    if (child->quantity != quantity || child->args != args)
      fail(Errc::internal, "replay expected " + oracle_key(child->quantity, child->args) + ", rule asked for " +
                               oracle_key(quantity, args));
    return replay(child);
  }

 private:
  struct Frame {
    const BoundNode* node;
    std::size_t next;
  };
  std::vector<Frame> frames_;
  std::map<const BoundNode*, BigInt> done_;
};

}  // namespace

std::string oracle_key(const std::string& quantity, const std::vector<BigInt>& args) {
  std::string out = quantity + "(";
  for (std::size_t i = 0; i < args.size(); ++i) out += (i ? "," : "") + args[i].str();
  return out + ")";
}

const std::vector<std::string>& bound_quantities() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& q : quantities()) out.push_back(q.name);
    return out;
  }();
  return names;
}

std::vector<std::string> bound_rules(const std::string& quantity) {
  quantity_def(quantity);
  std::vector<std::string> out;
  for (const auto& r : rules())
    if (r.quantity == quantity) out.push_back(r.name);
  return out;
}

BoundResult bound_ladder(const BoundQuery& query, const Oracle& oracle, const LadderOptions& options) {
  Evaluator eval(oracle, options);
  BoundResult out;
  out.tree = eval.evaluate(query.quantity, query.args, query.rule, true);
  out.value = out.tree->value;
  out.nodes = eval.nodes();
  return out;
}

BigInt replay(const BoundNodePtr& tree, const LadderOptions& options) {
  if (!tree) fail(Errc::invalid_argument, "empty evaluation tree");
  Replayer r(options);
  return r.replay(tree);
}

BigInt tree_nodes(const BigInt& b, const BigInt& k, std::uint64_t max_bits) {
  if (b < 1 || k < 0) fail(Errc::invalid_argument, "tree_nodes needs b >= 1 and k >= 0");
  if (b == 1) return k;
  return (checked_pow(b, k, max_bits) - 1) / (b - 1);
}

BigInt smallest_height(const BigInt& b, const BigInt& l) {
  if (b < 1 || l < 0) fail(Errc::invalid_argument, "smallest_height needs b >= 1 and l >= 0");
  if (b == 1) return l;
  BigInt k = 0, nodes = 0, level = 1;
  while (nodes < l) {
    nodes += level;
    level *= b;
    ++k;
  }
  return k;
}

}  // namespace dr
