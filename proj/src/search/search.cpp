#include <atomic>
#include <chrono>
#include <thread>

#include "dualramsey/search.hpp"

namespace dr {

namespace {

using Clock = std::chrono::steady_clock;

bool monochromatic(const std::vector<std::vector<std::uint32_t>>& groups, const std::vector<int>& colors) {
  for (const auto& g : groups)
    for (std::size_t x = 1; x < g.size(); ++x)
      if (colors[g[x]] != colors[g[0]]) return false;
  return true;
}

// Runs body(id) on width threads and rethrows the first captured exception.
template <class Body>
void run_parallel(int width, Body body) {
  if (width <= 1) {
    body(0);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(width));
  for (int id = 0; id < width; ++id)
    pool.emplace_back([&, id] {
      try {
        body(id);
      } catch (...) {
        errors[static_cast<std::size_t>(id)] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

Instance from_descriptor(const Coloring& c, Statement s, int m, int& n) {
  const DomainDescriptor& D = c.descriptor();
  Instance inst;
  inst.statement = s;
  inst.r = c.colors();
  inst.m = m;
  inst.b = D.branching;
  inst.alphabet = D.alphabet;
  inst.k = D.k;
  inst.d = D.d;
  inst.l = D.l;
  inst.roles = D.roles;
  n = D.depth;
  return inst;
}

template <class T>
std::optional<T> unwrap(const std::optional<Witness>& w) {
  if (!w) return std::nullopt;
  return std::get<T>(w->object);
}

}  // namespace

std::optional<Witness> find_witness(const Coloring& c, const Prepared& prepared, const SearchBudget& budget) {
  const Domain& domain = *prepared.domain;
  c.require_domain(domain.descriptor());
  const Instance& inst = prepared.instance;
  if (inst.statement == Statement::PTGR && !check_simple(c, full_variable_word(domain.tree())).certificate)
    fail(Errc::not_simple, "PTGR is stated for simple colorings only");

  const auto start = Clock::now();
  auto out_of_time = [&] {
    return budget.max_seconds > 0 &&
           std::chrono::duration<double>(Clock::now() - start).count() > budget.max_seconds;
  };
  const std::uint64_t size = domain.size();
  std::vector<int> colors(size);
  const int width = std::max(1, budget.threads);
  run_parallel(width, [&](int id) {
    for (std::uint64_t i = static_cast<std::uint64_t>(id); i < size; i += static_cast<std::uint64_t>(width))
      colors[i] = c(domain.key(i));
  });

  const std::uint64_t total = prepared.candidates.size();
  std::atomic<std::uint64_t> next{0}, best{total};
  std::atomic<bool> timed_out{false};
  run_parallel(width, [&](int) {
    while (true) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= best.load() || i >= total) return;
      if ((i & 1023) == 0 && out_of_time()) {
        timed_out = true;
        return;
      }
      if (!monochromatic(prepared.groups[i], colors)) continue;
      std::uint64_t seen = best.load();
      while (i < seen && !best.compare_exchange_weak(seen, i)) {
      }
      return;
    }
  });
  // Any timeout may have skipped an earlier candidate, so the minimum is unproven.
  if (timed_out) fail(Errc::budget_exceeded, "search time budget exhausted");
  if (best.load() == total) return std::nullopt;

  Witness w;
  w.statement = inst.statement;
  w.instance = inst;
  w.n = prepared.n;
  w.candidate_index = best.load();
  w.object = prepared.candidates[w.candidate_index];
  w.transcript = validate_witness(c, inst, prepared.n, w.object);
  if (!w.transcript.holds) fail(Errc::internal, "search produced a witness its checker rejects");
  return w;
}

std::optional<Witness> find_witness(const Coloring& c, const Instance& inst, int n, const SearchBudget& budget) {
  c.require_domain(instance_domain(inst, n));
  return find_witness(c, prepare(inst, n, budget), budget);
}

std::optional<LinearWord> find_line(const Coloring& c, const SearchBudget& budget) {
  c.require_kind(DomainKind::product);
  Instance inst;
  inst.statement = Statement::HJ;
  inst.k = c.descriptor().alphabet;
  inst.r = c.colors();
  return unwrap<LinearWord>(find_witness(c, inst, c.descriptor().length, budget));
}

std::optional<LinearWord> find_subspace(const Coloring& c, int m, const SearchBudget& budget) {
  c.require_kind(DomainKind::product);
  Instance inst;
  inst.statement = Statement::MHJ;
  inst.k = c.descriptor().alphabet;
  inst.m = m;
  inst.r = c.colors();
  return unwrap<LinearWord>(find_witness(c, inst, c.descriptor().length, budget));
}

std::optional<TreeWord> find_tgr(const Coloring& c, int m, const SearchBudget& budget) {
  c.require_kind(DomainKind::variable_words);
  int n = 0;
  Instance inst = from_descriptor(c, Statement::TGR, m, n);
  return unwrap<TreeWord>(find_witness(c, inst, n, budget));
}

std::optional<VectorSubtree> find_ct(const Coloring& c, int m, const SearchBudget& budget) {
  c.require_kind(DomainKind::ct);
  int n = 0;
  Instance inst = from_descriptor(c, Statement::CT, m, n);
  return unwrap<VectorSubtree>(find_witness(c, inst, n, budget));
}

std::optional<USpace> find_subsets(const Coloring& c, int m, const SearchBudget& budget) {
  c.require_kind(DomainKind::uspace);
  int n = 0;
  Instance inst = from_descriptor(c, Statement::SUBSETS, m, n);
  return unwrap<USpace>(find_witness(c, inst, n, budget));
}

std::optional<DisjointFamily> find_mt(const Coloring& c, int m, const SearchBudget& budget) {
  c.require_kind(DomainKind::ds);
  int n = 0;
  Instance inst = from_descriptor(c, Statement::MT, m, n);
  n = c.descriptor().length;
  return unwrap<DisjointFamily>(find_witness(c, inst, n, budget));
}

std::optional<TreeWord> find_ptgr(const Coloring& c, int m, const SearchBudget& budget) {
  c.require_kind(DomainKind::semi_pairs);
  int n = 0;
  Instance inst = from_descriptor(c, Statement::PTGR, m, n);
  return unwrap<TreeWord>(find_witness(c, inst, n, budget));
}

std::optional<VectorWord> find_product_tgr(const Coloring& c, int m, const SearchBudget& budget) {
  c.require_kind(DomainKind::vector_words);
  int n = 0;
  Instance inst = from_descriptor(c, Statement::PRODUCT_TGR, m, n);
  return unwrap<VectorWord>(find_witness(c, inst, n, budget));
}

std::optional<MixedWord> find_tree_hj(const Coloring& c, int k, const SearchBudget& budget) {
  c.require_kind(DomainKind::mixed);
  int n = 0;
  Instance inst = from_descriptor(c, Statement::TREE_HJ, 1, n);
  inst.k = k;
  return unwrap<MixedWord>(find_witness(c, inst, n, budget));
}

}  // namespace dr
