#pragma once

// Desk-scale experiments on the bounded partition function and the southwest
// walk. Every quantity is kept exact; decimal strings are rendered only when a
// report is written.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "heis/group.hpp"
#include "heis/harmonic.hpp"
#include "heis/numeric.hpp"
#include "heis/report.hpp"

namespace heis {

struct Triple {
  std::int64_t t = 0;
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t z = 0;
};

/// x = x0 + x1·t, y = y0 + y1·t, z = z0 + z1·t.
struct AffineMap {
  std::int64_t x0 = 0, x1 = 1;
  std::int64_t y0 = 0, y1 = 1;
  std::int64_t z0 = 0, z1 = 1;
};

/// A family t -> (x(t), y(t), z(t)) in the normalized regime
/// 1 <= y <= x, 0 < z <= xy/2.
class SequenceSpec {
 public:
  enum class Preset { diagonal, fixed_height, affine };

  /// x = y = t, z = floor(t^2 / 2).
  static SequenceSpec diagonal(std::vector<std::int64_t> ts);
  /// y = height, x = t, z = floor(t·height / 2).
  static SequenceSpec fixed_height(std::int64_t height, std::vector<std::int64_t> ts);
  static SequenceSpec affine(const AffineMap& map, std::vector<std::int64_t> ts);

  /// Throws std::domain_error naming the first t outside the regime.
  std::vector<Triple> triples() const;
  std::string describe() const;
  Preset preset() const { return preset_; }
  const std::vector<std::int64_t>& ts() const { return ts_; }

 private:
  Preset preset_ = Preset::diagonal;
  std::int64_t height_ = 0;
  AffineMap map_{};
  std::vector<std::int64_t> ts_;
};

/// "a..b", "a..b:step" or "a,b,c".
std::vector<std::int64_t> parse_range(std::string_view text);

// --- ratio limit -----------------------------------------------------------

struct RatioRow {
  Triple at;
  BigInt previous;  // p(x, y, z-1)
  BigInt current;   // p(x, y, z)
  Rational ratio;
  Rational deviation;  // |ratio - 1|
};

struct RatioReport {
  std::string spec;
  std::vector<RatioRow> rows;
};

inline constexpr std::int64_t kDefaultRatioCells = 10'000;

/// Throws BudgetExceeded naming the first row with x·y > max_cells.
RatioReport ratio_table(const SequenceSpec& spec, std::int64_t max_cells = kDefaultRatioCells);

// --- unimodality -----------------------------------------------------------

/// Every (x, y, z) with 0 <= x <= max_x, 0 <= y <= max_y where the row fails
/// to be nondecreasing up to floor(xy/2) or nonincreasing after ceil(xy/2).
std::vector<GroupElement> unimodality_sweep(std::int64_t max_x, std::int64_t max_y);

// --- bounds ----------------------------------------------------------------

struct BoundRegion {
  std::int64_t max_x = 20;
  std::int64_t max_y = 20;
  std::int64_t max_i = 4;
  std::vector<std::int64_t> lower_js{1, 2};
  /// Extra (j, x, y, z) instances for the p >= z^j check; x, y, z here and
  /// j in the t slot.
  std::vector<Triple> lower_instances;
};

struct LowerBoundInstance {
  std::int64_t j = 0;
  GroupElement g;
  BigInt value;
  bool holds = false;
};

struct BoundReport {
  std::uint64_t upper_checked = 0;
  std::vector<GroupElement> upper_violations;  // p(x,y,z) > z^{y-1}
  /// Per height y: min of p/z^{y-1} over 1 <= z <= xy/2, with where it occurs.
  std::vector<std::pair<std::int64_t, std::pair<Rational, GroupElement>>> lower_ratio_minima;
  std::uint64_t corner_checked = 0;
  std::vector<std::pair<std::int64_t, GroupElement>> corner_violations;  // (i, g) with p_{<=i} > (2z)^{2i}
  std::vector<LowerBoundInstance> lower_instances;

  bool upper_bounds_hold() const { return upper_violations.empty() && corner_violations.empty(); }
};

BoundReport bound_sweep(const BoundRegion& region);

// --- corner ratio decay ----------------------------------------------------

struct CornerRatioRow {
  Triple at;
  BigInt bounded;  // p_{<=i}
  BigInt total;    // p
  Rational ratio;
};

std::vector<CornerRatioRow> corner_ratio_decay(std::int64_t i, const SequenceSpec& spec,
                                               std::int64_t max_cells = kDefaultRatioCells);

// --- southwest random walk -------------------------------------------------

inline constexpr const char* kWalkRng = "mt19937_64/seed_seq(seed_lo,seed_hi,trial_lo,trial_hi)";

struct WalkTally {
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::int64_t steps = 0;
  std::string rng = kWalkRng;
  std::map<GroupElement, std::uint64_t> visits;  // includes the start e

  std::uint64_t visits_at(const GroupElement& g) const;
};

/// Positions e, s1^-1, s2^-1 s1^-1, ... of one trial; the stream depends only
/// on (seed, trial).
std::vector<GroupElement> walk_trajectory(std::uint64_t seed, std::uint64_t trial, std::int64_t steps);

/// Splits trials over `threads` workers; the tally does not depend on it.
WalkTally simulate_walk(std::int64_t steps, std::uint64_t trials, std::uint64_t seed, unsigned threads = 1);

struct WalkEstimate {
  GroupElement g;
  std::uint64_t visits = 0;  // visits to inverse(g)
  Rational empirical;        // visits / trials
  Rational expected;         // 2^-(x+y) p(g)
  Rational variance;         // expected (1 - expected) / trials

  /// |empirical - expected| <= k standard errors, decided exactly.
  bool within(std::int64_t k) const;
  double z_score() const;
};

WalkEstimate walk_estimate(const WalkTally& tally, const GroupElement& g);

// --- coset decay -----------------------------------------------------------

/// Raised when the decay hypothesis fails on an a- or b-orbit.
class HypothesisFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CosetRow {
  std::int64_t n = 0;
  Rational value;
};

inline constexpr std::int64_t kDecayCheckLength = 64;

/// Checks f(a^-N g0), f(b^-N g0) <= f(g0)/1000 at N = check_length, then
/// returns coset_boundary_sum for each n.
std::vector<CosetRow> coset_decay_table(const Function& f, const GroupElement& g0, std::int64_t A,
                                        const std::vector<std::int64_t>& ns,
                                        std::int64_t check_length = kDecayCheckLength);

// --- tabular renderings ----------------------------------------------------

Table to_table(const RatioReport& r, int precision);
Table to_table(const std::vector<CornerRatioRow>& rows, int precision);
Table to_table(const std::vector<CosetRow>& rows, int precision);
Table to_table(const WalkTally& tally);
Table to_table(const std::vector<WalkEstimate>& estimates, int precision);

}  // namespace heis
