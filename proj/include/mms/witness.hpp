#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mms/numerics.hpp"

namespace mms {

// Natural logarithms throughout: ln k enters through k^(k / ln k) = e^k.

enum class WitnessBranch {
  central_at_top,
  few_negatives,
  trim_and_partition_plus_top_zone,
  central_at_stage_i,
  two_range_family,
};

std::string to_string(WitnessBranch branch);

enum class WitnessMode { automatic, explicit_only, counted };

WitnessMode parse_witness_mode(const std::string& text);

// The medium index range of the two-range family runs past the elements that
// survive the stage removals. Only possible outside the theorem's n-range.
class RangeInfeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StageTrace {
  int stage_index = 0;
  int surviving_top = 0;    // original index of the stage maximum
  int removed_bottom = 0;   // smallest elements removed before this stage
  bool central = false;
  int stage_set_size = 0;   // n - (stage_index - 1) k
};

// An inequality lhs >= rhs re-checked exactly while extracting witnesses.
struct JustificationCheck {
  std::string name;
  Rational lhs;
  Rational rhs;
  bool holds = false;
};

// One disjoint piece of the witness family with its own count formula.
struct WitnessPart {
  std::string name;
  SubsetFamily family;
  BigInt formula_count;
  std::optional<KSubset> least_member;  // minimum-sum member (dominated by all)
};

struct WitnessOptions {
  WitnessMode mode = WitnessMode::automatic;
  std::int64_t explicit_limit = 1'000'000;  // automatic mode enumerates iff count <= limit
  int sample_size = 1000;
  std::uint64_t seed = 0;
  std::uint64_t partition_seed = 0;
  int workers = 0;
};

struct WitnessReport {
  int theorem = 0;
  int n = 0;
  int k = 0;
  WitnessBranch branch = WitnessBranch::central_at_top;
  std::vector<WitnessPart> parts;
  SubsetFamily witnesses{1, 1};  // union of parts (counted if any part is)
  BigInt guaranteed_count;
  BigInt target;  // C(n-1, k-1)
  std::vector<StageTrace> trace;
  std::vector<JustificationCheck> checks;
  std::vector<KSubset> samples;  // certified random members of counted parts
  std::int64_t certified_members = 0;
  bool certified = false;
  bool in_theorem_range = false;
  bool meets_target = false;
  bool below_guarantee = false;

  // First-guarantee parameters (0 when unused).
  int trimmed_size = 0;
  int top_zone_size = 0;
  // Staged-guarantee parameters (0 when unused).
  int stages = 0;
  int large_count = 0;
  int medium_range = 0;
};

// -x_{j+1} (n-j)/j, a lower bound on x_1 whenever the total is non-negative.
// Re-checks j x_1 + (n-j) x_{j+1} >= total >= 0 exactly.
Rational eq2_bound(const Configuration& config, int j);

// n >= 3 k^(k+1) + k^3.
bool in_thm1_range(int n, int k);

WitnessReport extract_thm1(const Configuration& config, int k, const WitnessOptions& options = {});
WitnessReport extract_thm2(const Configuration& config, int k, const WitnessOptions& options = {});

// {x_j} + S for every j <= stage and every (k-1)-subset S of the stage set
// minus its maximum. Requires the stage maximum to be central.
SubsetFamily substitution_family(const Configuration& config, int stage, int k,
                                 std::int64_t explicit_limit = 1'000'000);

// Number of members with a negative exact sum. Parallel kernel and serial
// reference.
std::int64_t count_violations(const Configuration& config, const std::vector<KSubset>& members, int workers = 0);
std::int64_t count_violations_serial(const Configuration& config, const std::vector<KSubset>& members);

}  // namespace mms
