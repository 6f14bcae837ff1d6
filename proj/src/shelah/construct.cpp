#include <algorithm>
#include <map>
#include <numeric>
#include <thread>

#include "dualramsey/shelah.hpp"

namespace dr {

namespace {

std::vector<std::vector<int>> combinations(const std::vector<int>& items, int kappa) {
  std::vector<std::vector<int>> out;
  const int n = static_cast<int>(items.size());
  if (kappa > n) return out;
  std::vector<int> pick(static_cast<std::size_t>(kappa));
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    std::vector<int> F;
    for (int x : pick) F.push_back(items[static_cast<std::size_t>(x)]);
    out.push_back(std::move(F));
    int i = kappa - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - kappa + i) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < kappa; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

// Replaces variable j of w by image[j] (a letter or a new variable entry).
LinearWord rename(const LinearWord& w, const std::vector<Entry>& image, int dimension) {
  LinearWord out{w.entries, dimension};
  for (Entry& e : out.entries)
    if (is_variable(e)) e = image[static_cast<std::size_t>(linear_variable_index(e))];
  return out;
}

struct Collision {
  std::int64_t s1, s2;
};

// Lexicographically first (s1, s2) with g_{s1} = g_{s2}: the group with the smallest first member, then its second member.
std::optional<Collision> first_collision(const std::vector<std::vector<int>>& g) {
  std::map<std::vector<int>, std::vector<std::int64_t>> groups;
  for (std::size_t t = 0; t < g.size(); ++t) {
    auto& members = groups[g[t]];
    if (members.size() < 2) members.push_back(static_cast<std::int64_t>(t));
  }
  std::optional<Collision> best;
  for (const auto& [colors, members] : groups)
    if (members.size() == 2 && (!best || members[0] < best->s1)) best = Collision{members[0], members[1]};
  return best;
}

void check_kappa_domain(const Coloring& c) {
  c.require_kind(DomainKind::kappa_product);
  const DomainDescriptor& D = c.descriptor();
  if (D.alphabet < 2) fail(Errc::invalid_argument, "the construction needs an alphabet with at least two letters");
  if (D.kappa < 1) fail(Errc::invalid_argument, "the construction needs kappa >= 1");
}

// One L-insensitive pass over the variables of w (a block word of length N); w's first Σp variables are the staircase blocks.
ShelahResult run_pass(const Coloring& c, LinearWord w, const std::vector<int>& L, const std::vector<std::int64_t>& p,
                      const ShelahOptions& options, int pair) {
  const DomainDescriptor& D = c.descriptor();
  const int k = D.alphabet, kappa = D.kappa;
  const int a = L[0], b = L[1];
  ShelahResult result;
  for (std::size_t step = 1; step <= p.size(); ++step) {
    const int i = static_cast<int>(step);
    const int d = w.dimension;
    const auto len = static_cast<int>(p[step - 1]);
    const int lo = i - 1, hi = i - 1 + len;
    if (hi > d) fail(Errc::invalid_argument, "interval lengths exceed the available variables");
    std::vector<int> J;
    for (int j = 0; j < d; ++j)
      if (j < lo || j >= hi) J.push_back(j);
    const auto subsets = combinations(J, kappa);

    BigInt per_word = BigInt(subsets.size()) * checked_pow(BigInt(k), BigInt(J.size()));
    BigInt total = per_word * (len + 1);
    if (total > options.max_evaluations)
      fail(Errc::budget_exceeded, "block " + std::to_string(i) + " needs " + total.str() + " evaluations, budget is " +
                                      std::to_string(options.max_evaluations));
    const auto points = static_cast<std::uint64_t>(checked_pow(BigInt(k), BigInt(J.size())));
    const std::vector<int> mins = minima(w);

    std::vector<std::vector<int>> g(static_cast<std::size_t>(len) + 1);
    auto evaluate = [&](std::int64_t t) {
      std::vector<int>& out = g[static_cast<std::size_t>(t)];
      out.reserve(static_cast<std::size_t>(per_word));
      std::vector<Entry> letters(static_cast<std::size_t>(d));
      for (int u = 0; u < len; ++u) letters[static_cast<std::size_t>(lo + u)] = u < t ? a : b;
      for (std::uint64_t x = 0; x < points; ++x) {
        std::uint64_t rest = x;
        // First free variable is the most significant digit.
        for (std::size_t j = J.size(); j-- > 0;) {
          letters[static_cast<std::size_t>(J[j])] = static_cast<Entry>(rest % static_cast<std::uint64_t>(k));
          rest /= static_cast<std::uint64_t>(k);
        }
        const ConstantWord point = substitute(w, letters);
        for (const auto& F : subsets) {
          std::vector<int> positions;
          for (int j : F) positions.push_back(mins[static_cast<std::size_t>(j)]);
          out.push_back(c(key_of(point, positions)));
        }
      }
    };
    const int width = std::max(1, std::min(options.threads, len + 1));
    if (width == 1) {
      for (std::int64_t t = 0; t <= len; ++t) evaluate(t);
    } else {
      std::vector<std::thread> pool;
      std::vector<std::exception_ptr> errors(static_cast<std::size_t>(width));
      for (int id = 0; id < width; ++id)
        pool.emplace_back([&, id] {
          try {
            for (std::int64_t t = id; t <= len; t += width) evaluate(t);
          } catch (...) {
            errors[static_cast<std::size_t>(id)] = std::current_exception();
          }
        });
      for (auto& th : pool) th.join();
      for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    }

    auto hit = first_collision(g);
    if (!hit)
      throw NoCollisionError(i, pair, "no collision among the " + std::to_string(len + 1) + " staircase words of block " +
                                          std::to_string(i) + (pair ? " for letter pair " + std::to_string(pair) : ""));
    // Merge the block: before s1 reads a, [s1, s2) becomes variable i-1, from s2 on reads b.
    std::vector<Entry> image(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
      if (j < lo) image[static_cast<std::size_t>(j)] = linear_variable(j);
      else if (j >= hi) image[static_cast<std::size_t>(j)] = linear_variable(j - len + 1);
      else {
        const int u = j - lo;
        image[static_cast<std::size_t>(j)] = u < hit->s1 ? a : (u < hit->s2 ? linear_variable(lo) : b);
      }
    }
    w = rename(w, image, d - len + 1);
    result.transcript.push_back(ShelahStep{pair, i, hit->s1, hit->s2, static_cast<std::int64_t>(J.size()),
                                           static_cast<std::uint64_t>(total)});
  }
  result.word = std::move(w);
  return result;
}

LinearWord initial_word(std::int64_t n0, int length, int fill) {
  LinearWord w{std::vector<Entry>(static_cast<std::size_t>(length), fill), static_cast<int>(n0)};
  for (std::int64_t j = 0; j < n0; ++j) w.entries[static_cast<std::size_t>(j)] = linear_variable(static_cast<int>(j));
  return w;
}

void require_schedule(const std::vector<std::int64_t>& p, int kappa, std::int64_t available) {
  if (p.empty()) fail(Errc::invalid_argument, "the schedule needs at least one interval");
  if (static_cast<std::int64_t>(p.size()) < kappa) fail(Errc::invalid_argument, "the schedule needs kappa <= m");
  const auto q = prefix_bounds(p);
  if (q.back() > available)
    fail(Errc::invalid_argument, "the schedule needs " + std::to_string(q.back()) + " variables, only " +
                                     std::to_string(available) + " are available");
}

}  // namespace

ShelahResult construct_L_insensitive(const Coloring& c, const std::vector<int>& L, const std::vector<std::int64_t>& p,
                                     const ShelahOptions& options) {
  check_kappa_domain(c);
  const DomainDescriptor& D = c.descriptor();
  if (L.size() != 2 || L[0] == L[1]) fail(Errc::invalid_argument, "L must hold two distinct letters");
  for (int x : L)
    if (x < 0 || x >= D.alphabet) fail(Errc::invalid_argument, "L must be a subset of the alphabet");
  if (options.fill < 0 || options.fill >= D.alphabet) fail(Errc::invalid_argument, "fill letter outside the alphabet");
  require_schedule(p, D.kappa, D.length);
  const auto q = prefix_bounds(p);

  ShelahResult result = run_pass(c, initial_word(q.back(), D.length, options.fill), L, p, options, 0);
  result.q = q;
  if (options.self_check) {
    result.compatible = is_compatible(result.word, result.q);
    result.insensitive = check_L_insensitive(c, result.word, L, D.kappa);
    if (!result.compatible || !result.insensitive->holds)
      fail(Errc::internal, "L-insensitive construction failed its self-check");
  }
  return result;
}

ShelahResult construct_strongly_insensitive(const Coloring& c, const std::vector<std::vector<std::int64_t>>& schedules,
                                            const ShelahOptions& options) {
  check_kappa_domain(c);
  const DomainDescriptor D = c.descriptor();
  const int k = D.alphabet, kappa = D.kappa;
  if (static_cast<int>(schedules.size()) != k - 1)
    fail(Errc::invalid_argument, "one schedule per consecutive letter pair is required (" + std::to_string(k - 1) + ")");
  if (options.fill < 0 || options.fill >= k) fail(Errc::invalid_argument, "fill letter outside the alphabet");
  const std::int64_t m1 = prefix_bounds(schedules.front()).back();
  if (m1 > D.length) fail(Errc::invalid_argument, "the first schedule needs N >= " + std::to_string(m1));

  LinearWord w = initial_word(m1, D.length, options.fill);
  std::vector<std::int64_t> q(static_cast<std::size_t>(m1) + 1);
  std::iota(q.begin(), q.end(), 0);
  ShelahResult result;
  for (int j = 1; j < k; ++j) {
    const auto& p = schedules[static_cast<std::size_t>(j - 1)];
    require_schedule(p, kappa, w.dimension);
    // The induced coloring on the current subspace's coordinates.
    DomainDescriptor inner{};
    inner.kind = DomainKind::kappa_product;
    inner.alphabet = k;
    inner.length = w.dimension;
    inner.kappa = kappa;
    const std::vector<int> mins = minima(w);
    const auto dim = static_cast<std::size_t>(w.dimension);
    Coloring induced = Coloring::custom(
        inner,
        [&c, w, mins, dim](const Key& key) {
          std::vector<Entry> letters(key.begin(), key.begin() + static_cast<std::ptrdiff_t>(dim));
          std::vector<int> positions;
          for (std::size_t x = dim; x < key.size(); ++x) positions.push_back(mins[static_cast<std::size_t>(key[x])]);
          return c(key_of(substitute(w, letters), positions));
        },
        c.colors());
    ShelahOptions pass = options;
    pass.self_check = false;
    ShelahResult step;
    try {
      step = run_pass(induced, initial_word(prefix_bounds(p).back(), w.dimension, options.fill), {j - 1, j}, p, pass, j);
    } catch (const NoCollisionError& e) {
      throw NoCollisionError(e.step(), j, e.what());
    }
    w = compose(w, step.word);
    const auto qsh = prefix_bounds(p);
    std::vector<std::int64_t> next;
    for (std::int64_t x : qsh) next.push_back(q[static_cast<std::size_t>(x)]);
    q = std::move(next);
    result.transcript.insert(result.transcript.end(), step.transcript.begin(), step.transcript.end());
  }
  result.word = std::move(w);
  result.q = std::move(q);
  if (options.self_check) {
    result.compatible = is_compatible(result.word, result.q);
    result.insensitive = check_strongly_insensitive(c, result.word, kappa);
    if (!result.compatible || !result.insensitive->holds)
      fail(Errc::internal, "strongly insensitive construction failed its self-check");
  }
  return result;
}

}  // namespace dr
