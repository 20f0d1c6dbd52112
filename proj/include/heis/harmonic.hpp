#pragma once

// Transfer operators P_mu f(g) = sum_s mu_s f(s g) for finitely supported
// positive measures on H3(Z), the harmonic functions built from partition
// counts and characters, and exact checks of the identities they satisfy.
//
// Conventions: the operator acts on the left, translates act on the right,
//   (translate f g0)(g) = f(g · g0).
// All values are exact nonnegative rationals.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "heis/group.hpp"
#include "heis/numeric.hpp"

namespace heis {

inline constexpr std::size_t kDefaultNodeBudget = 10'000'000;

class Measure {
 public:
  struct Atom {
    GroupElement point;
    Rational weight;
  };

  /// Throws std::domain_error for nonpositive weights, repeated points or an
  /// empty support.
  explicit Measure(std::vector<Atom> atoms, std::string tag = "custom");

  /// delta_{a^-1} + delta_{b^-1}.
  static Measure southwest();
  /// (delta_{a^-1} + delta_{b^-1}) / 2, the law of the southwest walk.
  static Measure southwest_probability();

  Measure probability_normalized() const;
  Rational total_mass() const;
  bool support_commutes() const;
  std::optional<Rational> weight_of(const GroupElement& g) const;

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::string& tag() const { return tag_; }

 private:
  std::vector<Atom> atoms_;
  std::string tag_;
};

/// JSON form: [[[x, y, z], "num/den"], ...].
nlohmann::json measure_to_json(const Measure& mu);
Measure measure_from_json(const nlohmann::json& j, std::string tag = "custom");

/// A subgroup generated by pairwise commuting elements together with a
/// character on it, given by its (positive) values on the generators.
///
/// The subgroup is <e> x <c^m>, where e projects onto a generator of the
/// image in Z^2 and c^m generates the central part; membership and character
/// values are computed exactly from that normal form. Throws
/// std::domain_error when the generators do not commute or the values do not
/// define a character.
class CommutingSubgroup {
 public:
  CommutingSubgroup(std::vector<GroupElement> generators, std::vector<Rational> values);

  bool contains(const GroupElement& g) const { return character_at(g).has_value(); }
  std::optional<Rational> character_at(const GroupElement& g) const;

  const std::vector<GroupElement>& generators() const { return generators_; }
  const std::vector<Rational>& values() const { return values_; }

 private:
  std::vector<GroupElement> generators_;
  std::vector<Rational> values_;
  bool has_direction_ = false;
  std::int64_t ux_ = 0, uy_ = 0;  // primitive direction of the projection
  std::int64_t step_ = 0;         // image of the projection is step_ · Z · u
  GroupElement section_{};        // element projecting to step_ · u
  Rational section_value_ = 1;
  std::int64_t central_period_ = 0;  // central part is c^{period Z}
  Rational central_value_ = 1;       // character at c^{period}
};

/// An immutable evaluable function G -> Q>=0 with a descriptive tag.
class Function {
 public:
  using Rule = std::function<Rational(const GroupElement&)>;

  Function(std::string tag, Rule rule);

  Rational operator()(const GroupElement& g) const { return (*rule_)(g); }
  const std::string& tag() const { return tag_; }

  /// r^x s^y (r, s > 0).
  static Function character(const Rational& r, const Rational& s);
  /// h0(x, y, z) = p_y(z).
  static Function h0();
  /// h1(x, y, z) = p_x(xy - z).
  static Function h1();
  /// p(x, y, z).
  static Function potential();
  static Function indicator(std::function<bool(const GroupElement&)> member, std::string tag);
  /// 1 on H0 = <a> (the a-axis).
  static Function a_axis_indicator();
  /// 1 on H1 = <b> (the b-axis).
  static Function b_axis_indicator();
  static Function identity_indicator();
  /// g -> f(g · g0).
  static Function translate(const Function& f, const GroupElement& g0);
  /// lambda · f, lambda > 0.
  static Function scale(const Function& f, const Rational& lambda);
  static Function sum(const Function& f, const Function& g);
  static Function product(const Function& f, const Function& g);
  /// chi0 · 1_{G_{S0}}.
  static Function seed(const CommutingSubgroup& subgroup);

 private:
  std::string tag_;
  std::shared_ptr<const Rule> rule_;
};

/// Closed box of lattice points.
struct Box {
  std::int64_t x_min = 0, x_max = 0;
  std::int64_t y_min = 0, y_max = 0;
  std::int64_t z_min = 0, z_max = 0;

  /// |x| <= rx, |y| <= ry, |z| <= rz.
  static Box symmetric(std::int64_t rx, std::int64_t ry, std::int64_t rz);
  std::uint64_t size() const;
  std::string describe() const;

  template <class F>
  void for_each(F&& visit) const {
    for (std::int64_t x = x_min; x <= x_max; ++x)
      for (std::int64_t y = y_min; y <= y_max; ++y)
        for (std::int64_t z = z_min; z <= z_max; ++z) visit(GroupElement{x, y, z});
  }
};

Rational apply_operator(const Measure& mu, const Function& f, const GroupElement& g);

/// Signed defect f(g) - P_mu f(g).
Rational defect(const Measure& mu, const Function& f, const GroupElement& g);

struct ResidualReport {
  Rational max_defect = 0;
  std::optional<GroupElement> witness;  // first point attaining the maximum
  std::uint64_t points = 0;
  std::uint64_t nonzero_points = 0;
  std::vector<std::pair<GroupElement, Rational>> nonzero_sample;  // signed defects

  bool harmonic() const { return max_defect == 0; }
};

/// max over the box of |f(g) - P_mu f(g)|, with the first few nonzero defects.
ResidualReport harmonic_residual(const Measure& mu, const Function& f, const Box& box,
                                 std::size_t sample_limit = 16);

struct SuperharmonicResult {
  bool holds = true;
  std::optional<GroupElement> witness;  // first g with f(g) < P_mu f(g)
  Rational witness_defect = 0;
};

SuperharmonicResult superharmonic_check(const Measure& mu, const Function& f, const Box& box);

/// (P_mu^n f)(g) with memoization over (remaining steps, point). Throws
/// BudgetExceeded once the memo would exceed the node budget.
class OperatorPowers {
 public:
  OperatorPowers(Measure mu, Function seed, std::size_t node_budget = kDefaultNodeBudget);

  Rational value(std::int64_t n, const GroupElement& g);
  std::size_t nodes() const { return memo_.size(); }

 private:
  struct Key {
    std::int64_t steps;
    GroupElement point;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      return GroupElementHash{}(k.point) * 31u + static_cast<std::size_t>(k.steps);
    }
  };

  Measure mu_;
  Function seed_;
  std::size_t budget_;
  std::unordered_map<Key, Rational, KeyHash> memo_;
};

/// sum_{k <= n} (P_mu0^k 1_e)(g); equals p(g) once n >= degree(g).
BigInt potential_partial_sum(std::int64_t n, const GroupElement& g, std::size_t node_budget = kDefaultNodeBudget);

/// (P_mu^n seed)(g). Throws std::domain_error for n < 0.
Rational iterate_seed(const Measure& mu, const Function& seed, std::int64_t n, const GroupElement& g,
                      std::size_t node_budget = kDefaultNodeBudget);

/// [point][k] = (P_mu^k seed)(point) for k = 0..n_max, one shared memo.
std::vector<std::vector<Rational>> iterate_seed_sequence(const Measure& mu, const Function& seed,
                                                         std::int64_t n_max,
                                                         const std::vector<GroupElement>& points,
                                                         std::size_t node_budget = kDefaultNodeBudget);

enum class InducedStatus { converged, increasing, diverged };
std::string to_string(InducedStatus s);

struct InducedResult {
  std::vector<GroupElement> points;
  std::vector<std::vector<Rational>> iterates;  // [n][point], n = 0..steps
  InducedStatus status = InducedStatus::increasing;
  std::int64_t steps = 0;

  const std::vector<Rational>& values() const { return iterates.back(); }
};

/// Iterates P_mu^n (chi0 · 1_{G_{S0}}) on the query points for n = 0..n_max.
/// Status is "diverged" as soon as a value exceeds divergence_bound,
/// "converged" when the last two iterates agree on every point, else
/// "increasing". Throws std::domain_error when S0 is not part of the support,
/// does not commute, or chi0 is not mu_{S0}-harmonic.
InducedResult induced_function(const Measure& mu, const std::vector<GroupElement>& s0,
                               const std::vector<Rational>& chi0, std::int64_t n_max,
                               const Rational& divergence_bound, const std::vector<GroupElement>& points,
                               std::size_t node_budget = kDefaultNodeBudget);

/// Default divergence threshold, 10^30.
Rational default_divergence_bound();

struct DegreeSum {
  Rational lhs;  // f(g0)
  Rational rhs;  // sum over G_n of p(g) f(g^-1 g0)
  Rational touched_max_defect;  // max mu0 defect of f over the touched points
  std::uint64_t terms = 0;
};

/// Both sides of f(g0) = sum_{g in G_n} p(g) f(g^-1 g0) for mu0-harmonic f.
DegreeSum degree_sum_identity(const Function& f, const GroupElement& g0, std::int64_t n,
                              bool check_touched = true);

/// sum over g in G_{n,A} ∪ G^sigma_{n,A} of p(g) f(g^-1 g0), where
/// G_{n,A} = {z <= A} and G^sigma_{n,A} = {xy - z <= A} inside G_n.
Rational coset_boundary_sum(const Function& f, const GroupElement& g0, std::int64_t n, std::int64_t A);

/// max over the box of |f(g) - f(g·c)|.
ResidualReport center_shift_defect(const Function& f, const Box& box);

/// |sum_s mu_s r^{x_s} s^{y_s} t^{z_s} - 1|. A nontrivial z-exponent is only
/// accepted when the support commutes; otherwise std::domain_error.
Rational character_harmonicity(const Measure& mu, const Rational& r, const Rational& s, const Rational& t = 1);

struct CenterProductResult {
  bool found = false;
  GroupElement first{}, second{};
  std::int64_t depth = 0;
  std::size_t semigroup_elements = 0;
};

/// Searches the products of at most `depth` support points for two
/// non-central elements whose product is central and nontrivial. A negative
/// answer only covers the searched depth.
CenterProductResult center_product_condition(const Measure& mu, std::int64_t depth);

}  // namespace heis
