#include "dualramsey/coloring.hpp"

namespace dr {

namespace {

constexpr std::pair<RuleKind, const char*> kRuleNames[] = {
    {RuleKind::constant, "constant"},
    {RuleKind::projection, "projection"},
    {RuleKind::anchor, "anchor"},
    {RuleKind::hash, "hash"},
};

int reduce(std::int64_t value, int r) { return static_cast<int>(((value % r) + r) % r); }

}  // namespace

const char* rule_kind_name(RuleKind kind) {
  for (const auto& [k, name] : kRuleNames)
    if (k == kind) return name;
  return "unknown";
}

RuleKind parse_rule_kind(const std::string& text) {
  for (const auto& [k, name] : kRuleNames)
    if (text == name) return k;
  fail(Errc::parse_error, "unknown coloring rule '" + text + "'");
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Coloring Coloring::table(DomainPtr domain, std::vector<int> colors, int r) {
  if (!domain) fail(Errc::invalid_argument, "table coloring needs a domain");
  if (r < 1) fail(Errc::invalid_argument, "r must be >= 1");
  if (colors.size() != domain->size()) fail(Errc::domain_mismatch, "color table size does not match the domain");
  for (int v : colors)
    if (v < 0 || v >= r) fail(Errc::invalid_argument, "color value outside [0, r)");
  Coloring c;
  c.descriptor_ = domain->descriptor();
  c.r_ = r;
  c.domain_ = std::move(domain);
  c.table_ = std::move(colors);
  return c;
}

Coloring Coloring::rule(DomainDescriptor D, Rule rule, int r) {
  validate(D);
  if (r < 1) fail(Errc::invalid_argument, "r must be >= 1");
  if (rule.kind == RuleKind::constant && (rule.parameter < 0 || rule.parameter >= r))
    fail(Errc::invalid_argument, "constant color outside [0, r)");
  if (rule.kind == RuleKind::anchor && D.kind != DomainKind::kappa_product && D.kind != DomainKind::block_product)
    fail(Errc::invalid_argument, "the anchor rule needs a domain with marked positions");
  if (rule.kind == RuleKind::projection && rule.parameter < 0) fail(Errc::invalid_argument, "projection coordinate must be >= 0");
  const int N = D.length;
  Evaluator eval;
  switch (rule.kind) {
    case RuleKind::constant:
      eval = [v = rule.parameter](const Key&) { return v; };
      break;
    case RuleKind::projection:
      eval = [coord = static_cast<std::size_t>(rule.parameter), r](const Key& key) {
        if (coord >= key.size()) fail(Errc::domain_mismatch, "projection coordinate outside the element");
        return reduce(key[coord], r);
      };
      break;
    case RuleKind::anchor:
      eval = [N, r](const Key& key) {
        auto p = static_cast<std::size_t>(key.at(static_cast<std::size_t>(N)));
        return reduce(key.at(p), r);
      };
      break;
    case RuleKind::hash:
      eval = [seed = rule.seed, r](const Key& key) {
        std::uint64_t h = splitmix64(seed);
        for (std::int32_t v : key) h = splitmix64(h ^ static_cast<std::uint32_t>(v));
        return static_cast<int>(h % static_cast<std::uint64_t>(r));
      };
      break;
  }
  Coloring c = custom(std::move(D), std::move(eval), r);
  c.rule_ = rule;
  return c;
}

Coloring Coloring::custom(DomainDescriptor D, Evaluator evaluate, int r) {
  if (r < 1) fail(Errc::invalid_argument, "r must be >= 1");
  Coloring c;
  c.descriptor_ = std::move(D);
  c.r_ = r;
  c.evaluate_ = std::move(evaluate);
  return c;
}

int Coloring::operator()(const Key& key) const {
  if (domain_) {
    auto i = domain_->index_of(key);
    if (!i) fail(Errc::domain_mismatch, "element outside the coloring's domain");
    return table_[*i];
  }
  int v = evaluate_(key);
  if (v < 0 || v >= r_) fail(Errc::invalid_argument, "evaluator returned a color outside [0, r)");
  return v;
}

Coloring Coloring::materialized(std::uint64_t max_items) const {
  if (domain_) return *this;
  if (auto n = Domain::count(descriptor_); n && *n > max_items) return *this;
  DomainPtr dom;
  try {
    dom = Domain::make(descriptor_, max_items);
  } catch (const Error& e) {
    if (e.code() == Errc::budget_exceeded) return *this;
    throw;
  }
  std::vector<int> colors;
  colors.reserve(dom->size());
  for (const Key& k : dom->keys()) colors.push_back((*this)(k));
  Coloring c = table(dom, std::move(colors), r_);
  c.rule_ = rule_;
  return c;
}

void Coloring::require_domain(const DomainDescriptor& D) const {
  if (!(descriptor_ == D))
    fail(Errc::domain_mismatch, "coloring is defined on " + describe(descriptor_) + ", not on " + describe(D));
}

void Coloring::require_kind(DomainKind kind) const {
  if (descriptor_.kind != kind)
    fail(Errc::domain_mismatch, "coloring is defined on " + describe(descriptor_) + ", expected a " + domain_kind_name(kind) + " domain");
}

}  // namespace dr
