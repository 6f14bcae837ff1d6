#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "dualramsey/coloring.hpp"

namespace dr {

enum class Statement { HJ, MHJ, TGR, PTGR, CT, MT, SUBSETS, PRODUCT_TGR, TREE_HJ };

const char* statement_name(Statement s);
Statement parse_statement(const std::string& text);
const char* role_name(Role role);
Role parse_role(const std::string& text);

// Everything but the size parameter n (N for HJ/MHJ, the tree depth otherwise, the ground set for MT).
struct Instance {
  Statement statement = Statement::HJ;
  int k = 1;         // alphabet size for HJ/MHJ; subspace dimension otherwise
  int m = 1;         // witness dimension
  int b = 2;
  int alphabet = 2;  // ℓ
  int r = 2;
  int l = 0;         // PTGR
  int d = 1;         // CT, PRODUCT_TGR
  std::vector<Role> roles;  // TREE_HJ
  bool operator==(const Instance&) const = default;
};

// Throws invalid_argument naming the offending parameter.
void validate_instance(const Instance& inst, int n);
DomainDescriptor instance_domain(const Instance& inst, int n);
// Smallest n at which the statement is well-formed.
int smallest_size(const Instance& inst);

using WitnessObject = std::variant<LinearWord, TreeWord, VectorSubtree, DisjointFamily, USpace, VectorWord, MixedWord>;

struct Transcript {
  std::string checker;
  bool holds = false;
  std::uint64_t evaluated = 0;
};

struct Witness {
  Statement statement = Statement::HJ;
  Instance instance;
  int n = 0;
  std::uint64_t candidate_index = 0;  // position in canonical order
  WitnessObject object;
  Transcript transcript;
};

struct SearchBudget {
  std::uint64_t max_candidates = std::uint64_t{1} << 24;
  std::uint64_t max_colorings = std::uint64_t{1} << 32;
  std::uint64_t max_domain = std::uint64_t{1} << 20;
  double max_seconds = 0;  // 0 means no limit
  int threads = 1;
};

// Candidates in canonical order, each with the groups of domain indices that must be monochromatic.
struct Prepared {
  Instance instance;
  int n = 0;
  DomainPtr domain;
  std::vector<WitnessObject> candidates;
  std::vector<std::vector<std::vector<std::uint32_t>>> groups;
};

Prepared prepare(const Instance& inst, int n, const SearchBudget& budget = {});

// Re-checks a witness from scratch with the statement's checker.
Transcript validate_witness(const Coloring& c, const Instance& inst, int n, const WitnessObject& object);

// First witness in canonical order, validated; nullopt when none exists.
std::optional<Witness> find_witness(const Coloring& c, const Instance& inst, int n, const SearchBudget& budget = {});
std::optional<Witness> find_witness(const Coloring& c, const Prepared& prepared, const SearchBudget& budget = {});

std::optional<LinearWord> find_line(const Coloring& c, const SearchBudget& budget = {});
std::optional<LinearWord> find_subspace(const Coloring& c, int m, const SearchBudget& budget = {});
std::optional<TreeWord> find_tgr(const Coloring& c, int m, const SearchBudget& budget = {});
std::optional<VectorSubtree> find_ct(const Coloring& c, int m, const SearchBudget& budget = {});
std::optional<USpace> find_subsets(const Coloring& c, int m, const SearchBudget& budget = {});
std::optional<DisjointFamily> find_mt(const Coloring& c, int m, const SearchBudget& budget = {});
// Throws not_simple unless c is simple.
std::optional<TreeWord> find_ptgr(const Coloring& c, int m, const SearchBudget& budget = {});
std::optional<VectorWord> find_product_tgr(const Coloring& c, int m, const SearchBudget& budget = {});
std::optional<MixedWord> find_tree_hj(const Coloring& c, int k, const SearchBudget& budget = {});

// ---------------------------------------------------------------- universal verification

struct Cursor {
  int n = 0;
  std::uint64_t next_unit = 0;  // units below this were fully verified without a failing coloring
};

struct SizeReport {
  int n = 0;
  std::uint64_t domain_size = 0;
  std::uint64_t colorings = 0;  // colorings examined
  bool holds = false;
  std::optional<std::vector<int>> refutation;  // least failing coloring in enumeration order
  bool complete = false;
};

enum class RamseyStatus { found, none_in_range, budget_exceeded };

struct RamseyResult {
  RamseyStatus status = RamseyStatus::none_in_range;
  std::optional<int> value;
  std::optional<int> last_verified;  // largest n refuted or verified completely
  std::vector<SizeReport> sizes;
  std::optional<Cursor> cursor;  // where to resume after budget_exceeded
};

struct RamseyOptions {
  bool reduce_colors = true;  // quotient by color permutations
  SearchBudget budget;
  std::optional<Cursor> resume;
  std::function<void(const Cursor&, const SizeReport&)> progress;
};

RamseyResult ramsey_number(const Instance& inst, int n_min, int n_max, const RamseyOptions& options = {});
// Number of colorings enumerated at a domain size, after the optional reduction; nullopt past 2^64.
std::optional<std::uint64_t> coloring_count(std::uint64_t domain_size, int r, bool reduce_colors);

// ---------------------------------------------------------------- certificates

nlohmann::ordered_json instance_to_json(const Instance& inst, int n);
std::pair<Instance, int> instance_from_json(const nlohmann::json& j);
nlohmann::ordered_json descriptor_to_json(const DomainDescriptor& D);
DomainDescriptor descriptor_from_json(const nlohmann::json& j);
// Inline table up to 2^20 entries, otherwise the rule; throws for custom colorings too large to tabulate.
nlohmann::ordered_json coloring_to_json(const Coloring& c);
Coloring coloring_from_json(const nlohmann::json& j, const DomainDescriptor& D);
nlohmann::ordered_json witness_object_to_json(const WitnessObject& w, const Instance& inst, int n);
WitnessObject witness_object_from_json(const nlohmann::json& j, const Instance& inst, int n);

nlohmann::ordered_json witness_certificate(const Coloring& c, const Witness& w);
nlohmann::ordered_json refutation_certificate(const Coloring& c, const Instance& inst, int n, std::uint64_t candidates);
nlohmann::ordered_json ramsey_certificate(const Instance& inst, const RamseyResult& result, bool reduce_colors);

struct CertificateCheck {
  bool valid = false;
  std::string detail;
};
// Rebuilds the coloring and witness and re-runs the checker, or re-runs the exhaustive search for refutations.
CertificateCheck verify_certificate(const nlohmann::json& certificate, const SearchBudget& budget = {});

}  // namespace dr
