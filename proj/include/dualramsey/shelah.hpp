#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dualramsey/coloring.hpp"

namespace dr {

using BigInt = boost::multiprecision::cpp_int;

// Results wider than this many bits raise Errc::overflow.
inline constexpr std::uint64_t kDefaultMaxBits = std::uint64_t{1} << 22;

BigInt parse_bigint(const std::string& text);  // non-negative decimal
std::string to_decimal(const BigInt& value);
std::int64_t to_int64(const BigInt& value, const char* what);  // throws overflow when out of range
BigInt checked_pow(const BigInt& base, const BigInt& exponent, std::uint64_t max_bits = kDefaultMaxBits);
std::uint64_t bit_length(const BigInt& value);

// ---------------------------------------------------------------- recursions

BigInt f1(const BigInt& k, const BigInt& kappa, const BigInt& i, const BigInt& m, const BigInt& r,
          std::uint64_t max_bits = kDefaultMaxBits);
BigInt f2(const BigInt& i, const BigInt& k, const BigInt& kappa, const BigInt& m, const BigInt& r,
          std::uint64_t max_bits = kDefaultMaxBits);

// 0 = q_0 < q_1 < ... < q_m = n_0 and p_i = q_i - q_{i-1}.
struct Schedule {
  BigInt n0;
  std::vector<BigInt> q;
  std::vector<BigInt> p;
};

Schedule shelah_schedule(const BigInt& k, const BigInt& kappa, const BigInt& m, const BigInt& r,
                         std::uint64_t max_bits = kDefaultMaxBits);
// The pigeonhole count r^{|J|^κ k^{|J|}} that guarantees a collision in a block of length p.
BigInt pigeonhole_count(const BigInt& k, const BigInt& kappa, const BigInt& J, const BigInt& r,
                        std::uint64_t max_bits = kDefaultMaxBits);
// Prefix sums of interval lengths, q_0 = 0.
std::vector<std::int64_t> prefix_bounds(const std::vector<std::int64_t>& p);

// ---------------------------------------------------------------- constructions

struct ShelahStep {
  int pair = 0;  // letter pair j (1-based) in a strongly insensitive run, 0 otherwise
  int step = 0;  // 1-based block index
  std::int64_t s1 = 0, s2 = 0;
  std::int64_t free_variables = 0;  // |J|
  std::uint64_t evaluations = 0;
};

struct ShelahOptions {
  int fill = 0;                                        // letter for the constant tail
  int threads = 1;                                     // staircase evaluation width
  std::uint64_t max_evaluations = std::uint64_t{1} << 25;  // per block
  bool self_check = true;
};

struct ShelahResult {
  LinearWord word;
  std::vector<std::int64_t> q;
  std::vector<ShelahStep> transcript;
  std::optional<Verdict> insensitive;  // the self-check verdict
  bool compatible = false;
};

// c lives on Λ^N × [N]^(κ); L = {a, b}; p gives the interval lengths of the schedule.
ShelahResult construct_L_insensitive(const Coloring& c, const std::vector<int>& L, const std::vector<std::int64_t>& p,
                                     const ShelahOptions& options = {});
// One schedule per consecutive letter pair L_j = {j-1, j}; schedule j has length m_{j+1}, the last one length m.
ShelahResult construct_strongly_insensitive(const Coloring& c, const std::vector<std::vector<std::int64_t>>& schedules,
                                            const ShelahOptions& options = {});

// ---------------------------------------------------------------- bound ladder

// Oracle keys are "NAME(a,b,...)" with decimal arguments.
using Oracle = std::map<std::string, BigInt>;
std::string oracle_key(const std::string& quantity, const std::vector<BigInt>& args);

struct BoundNode {
  std::string quantity;
  std::vector<BigInt> args;
  BigInt value;
  std::string rule;  // "oracle" for supplied leaves
  std::vector<std::shared_ptr<const BoundNode>> children;
};
using BoundNodePtr = std::shared_ptr<const BoundNode>;

struct BoundQuery {
  std::string quantity;
  std::vector<BigInt> args;
  std::string rule;  // empty selects the first applicable rule
};

struct LadderOptions {
  std::uint64_t max_bits = kDefaultMaxBits;
  std::uint64_t max_nodes = 1'000'000;
  std::uint64_t max_steps = 100'000;  // longest recursion run by any single rule
};

struct BoundResult {
  BigInt value;
  BoundNodePtr tree;
  std::uint64_t nodes = 0;
};

const std::vector<std::string>& bound_quantities();
// Rules that may bound a quantity, in the order tried.
std::vector<std::string> bound_rules(const std::string& quantity);
BoundResult bound_ladder(const BoundQuery& query, const Oracle& oracle, const LadderOptions& options = {});
// Recomputes every rule node from its recorded children; returns the recomputed root value.
BigInt replay(const BoundNodePtr& tree, const LadderOptions& options = {});
// Smallest k with (b^k - 1)/(b - 1) >= l.
BigInt smallest_height(const BigInt& b, const BigInt& l);
BigInt tree_nodes(const BigInt& b, const BigInt& k, std::uint64_t max_bits = kDefaultMaxBits);

}  // namespace dr
