#include <atomic>
#include <chrono>
#include <limits>
#include <mutex>
#include <thread>

#include "dualramsey/search.hpp"

namespace dr {

namespace {

using Clock = std::chrono::steady_clock;
using Wide = unsigned __int128;

constexpr Wide kSaturated = std::numeric_limits<Wide>::max();
constexpr std::uint64_t kMaxUnits = 4096;

Wide sat_add(Wide a, Wide b) { return a > kSaturated - b ? kSaturated : a + b; }
Wide sat_mul(Wide a, Wide b) { return a != 0 && b > kSaturated / a ? kSaturated : a * b; }

// Completions of t more positions when u colors are already in use.
// Reduced enumeration admits restricted-growth strings only: the next color is at most u.
class CompletionTable {
 public:
  CompletionTable(std::uint64_t length, int r, bool reduce) : r_(r), reduce_(reduce) {
    const auto cols = static_cast<std::size_t>(r) + 1;
    table_.assign(static_cast<std::size_t>(length + 1) * cols, 0);
    for (std::size_t u = 0; u < cols; ++u) table_[u] = 1;
    for (std::uint64_t t = 1; t <= length; ++t)
      for (std::size_t u = 0; u < cols; ++u) {
        Wide v;
        if (!reduce_) v = sat_mul(static_cast<Wide>(r), at(t - 1, u));
        else {
          v = sat_mul(static_cast<Wide>(u), at(t - 1, u));
          if (static_cast<int>(u) < r) v = sat_add(v, at(t - 1, u + 1));
        }
        table_[static_cast<std::size_t>(t) * cols + u] = v;
      }
  }
  Wide at(std::uint64_t t, std::size_t u) const { return table_[static_cast<std::size_t>(t) * (static_cast<std::size_t>(r_) + 1) + u]; }

 private:
  int r_;
  bool reduce_;
  std::vector<Wide> table_;
};

// Prefixes of length p in lexicographic order.
std::vector<std::vector<int>> unit_prefixes(std::size_t p, int r, bool reduce) {
  std::vector<std::vector<int>> out;
  std::vector<int> prefix;
  auto extend = [&](auto&& self, int used) -> void {
    if (prefix.size() == p) {
      out.push_back(prefix);
      return;
    }
    const int top = reduce ? std::min(r - 1, used) : r - 1;
    for (int x = 0; x <= top; ++x) {
      prefix.push_back(x);
      self(self, std::max(used, x + 1));
      prefix.pop_back();
    }
  };
  extend(extend, 0);
  return out;
}

int used_colors(const std::vector<int>& prefix) {
  int used = 0;
  for (int x : prefix) used = std::max(used, x + 1);
  return used;
}

struct Evaluator {
  const Prepared& prepared;
  int r;

  bool has_witness(const std::vector<int>& colors) const {
    if (prepared.instance.statement == Statement::PTGR) {
      // Only simple colorings are quantified over; the rest hold vacuously.
      Coloring c = Coloring::table(prepared.domain, colors, r);
      if (!check_simple(c, full_variable_word(prepared.domain->tree())).certificate) return true;
    }
    for (const auto& groups : prepared.groups) {
      bool mono = true;
      for (const auto& g : groups) {
        for (std::size_t x = 1; x < g.size() && mono; ++x) mono = colors[g[x]] == colors[g[0]];
        if (!mono) break;
      }
      if (mono) return true;
    }
    return false;
  }
};

enum class UnitState : int { pending, clean, failed, aborted };

struct UnitOutcome {
  std::uint64_t leaves = 0;
  std::optional<std::vector<int>> failing;
  bool aborted = false;
};

}  // namespace

std::optional<std::uint64_t> coloring_count(std::uint64_t domain_size, int r, bool reduce_colors) {
  if (r < 1) fail(Errc::invalid_argument, "r must be >= 1");
  Wide total;
  if (!reduce_colors) {
    total = 1;
    for (std::uint64_t i = 0; i < domain_size && total != kSaturated; ++i) total = sat_mul(total, static_cast<Wide>(r));
  } else {
    if (domain_size > 4096) {
      // Past this size the count exceeds 2^64 for every r >= 2.
      if (r >= 2) return std::nullopt;
      return 1;
    }
    total = CompletionTable(domain_size, r, true).at(domain_size, 0);
  }
  if (total > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  return static_cast<std::uint64_t>(total);
}

RamseyResult ramsey_number(const Instance& inst, int n_min, int n_max, const RamseyOptions& options) {
  if (n_min > n_max) fail(Errc::invalid_argument, "empty range of n");
  const SearchBudget& budget = options.budget;
  const auto start = Clock::now();
  auto out_of_time = [&] {
    return budget.max_seconds > 0 &&
           std::chrono::duration<double>(Clock::now() - start).count() > budget.max_seconds;
  };
  RamseyResult result;
  int first = std::max(n_min, smallest_size(inst));
  if (options.resume) {
    if (options.resume->n < first || options.resume->n > n_max) fail(Errc::invalid_argument, "resume cursor outside the range of n");
    first = options.resume->n;
  }
  for (int n = first; n <= n_max; ++n) {
    const std::uint64_t skip = options.resume && options.resume->n == n ? options.resume->next_unit : 0;
    auto stop = [&](std::uint64_t next_unit) {
      result.status = RamseyStatus::budget_exceeded;
      result.cursor = Cursor{n, next_unit};
      return result;
    };
    Prepared prepared;
    try {
      prepared = prepare(inst, n, budget);
    } catch (const Error& e) {
      if (e.code() == Errc::budget_exceeded) return stop(skip);
      throw;
    }
    const std::uint64_t L = prepared.domain->size();
    const auto count = coloring_count(L, inst.r, options.reduce_colors);
    if (!count || *count > budget.max_colorings) return stop(skip);

    const CompletionTable completions(L, inst.r, options.reduce_colors);
    std::size_t p = 0;
    while (p < L && completions.at(p + 1, 0) <= kMaxUnits) ++p;
    const auto prefixes = unit_prefixes(p, inst.r, options.reduce_colors);
    const std::uint64_t units = prefixes.size();
    if (skip > units) fail(Errc::invalid_argument, "resume cursor past the last unit");

    const Evaluator eval{prepared, inst.r};
    std::vector<std::atomic<int>> state(units);
    std::vector<UnitOutcome> outcome(units);
    for (std::uint64_t u = 0; u < skip; ++u) state[u] = static_cast<int>(UnitState::clean);
    std::atomic<std::uint64_t> next{skip}, min_failed{units};
    std::mutex progress_mutex;
    std::uint64_t contiguous = skip;

    auto run_unit = [&](std::uint64_t u) {
      UnitOutcome& out = outcome[u];
      std::vector<int> colors(L);
      std::copy(prefixes[u].begin(), prefixes[u].end(), colors.begin());
      auto dfs = [&](auto&& self, std::size_t pos, int used) -> bool {
        if (pos == L) {
          ++out.leaves;
          if ((out.leaves & 0xFFFF) == 0 && (out_of_time() || u > min_failed.load())) {
            out.aborted = true;
            return true;
          }
          if (!eval.has_witness(colors)) {
            out.failing = colors;
            return true;
          }
          return false;
        }
        const int top = options.reduce_colors ? std::min(inst.r - 1, used) : inst.r - 1;
        for (int x = 0; x <= top; ++x) {
          colors[pos] = x;
          if (self(self, pos + 1, std::max(used, x + 1))) return true;
        }
        return false;
      };
      dfs(dfs, p, used_colors(prefixes[u]));
    };

    auto report = [&](bool done) {
      SizeReport rep;
      rep.n = n;
      rep.domain_size = L;
      const std::uint64_t mf = min_failed.load();
      Wide examined = 0;
      for (std::uint64_t u = 0; u < std::min(contiguous, mf); ++u)
        examined = sat_add(examined, completions.at(L - p, static_cast<std::size_t>(used_colors(prefixes[u]))));
      if (done && mf < units) {
        examined = sat_add(examined, outcome[mf].leaves);
        rep.refutation = outcome[mf].failing;
      }
      rep.colorings = examined > std::numeric_limits<std::uint64_t>::max() ? std::numeric_limits<std::uint64_t>::max()
                                                                          : static_cast<std::uint64_t>(examined);
      rep.holds = done && mf == units;
      rep.complete = done;
      return rep;
    };

    auto worker = [&] {
      while (true) {
        if (out_of_time()) return;
        const std::uint64_t u = next.fetch_add(1);
        if (u >= units || u > min_failed.load()) return;
        run_unit(u);
        UnitState s = outcome[u].aborted ? UnitState::aborted : outcome[u].failing ? UnitState::failed : UnitState::clean;
        if (s == UnitState::failed) {
          std::uint64_t seen = min_failed.load();
          while (u < seen && !min_failed.compare_exchange_weak(seen, u)) {
          }
        }
        state[u] = static_cast<int>(s);
        std::lock_guard lock(progress_mutex);
        const std::uint64_t before = contiguous;
        while (contiguous < units && state[contiguous] == static_cast<int>(UnitState::clean)) ++contiguous;
        if (options.progress && contiguous != before) options.progress(Cursor{n, contiguous}, report(false));
      }
    };
    const int width = std::max(1, budget.threads);
    if (width == 1) worker();
    else {
      std::vector<std::thread> pool;
      for (int i = 0; i < width; ++i) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }

    const std::uint64_t mf = min_failed.load();
    // Complete when every unit below the reduction point finished cleanly (and the failing one, if any, finished).
    bool complete = contiguous >= std::min(mf, units);
    if (complete && mf < units && outcome[mf].aborted) complete = false;
    if (!complete) return stop(contiguous);
    SizeReport rep = report(true);
    result.sizes.push_back(rep);
    result.last_verified = n;
    if (rep.holds) {
      result.status = RamseyStatus::found;
      result.value = n;
      return result;
    }
  }
  result.status = RamseyStatus::none_in_range;
  return result;
}

}  // namespace dr
