#include "heis/harmonic.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "heis/partition.hpp"

namespace heis {

// ---------------------------------------------------------------------------
// Measure

Measure::Measure(std::vector<Atom> atoms, std::string tag) : atoms_(std::move(atoms)), tag_(std::move(tag)) {
  if (atoms_.empty()) throw std::domain_error("measure: empty support");
  std::set<GroupElement> seen;
  for (const auto& a : atoms_) {
    if (a.weight <= 0) throw std::domain_error("measure: nonpositive weight at " + to_string(a.point));
    if (!seen.insert(a.point).second) throw std::domain_error("measure: repeated support point " + to_string(a.point));
  }
}

Measure Measure::southwest() {
  return Measure({{inverse(gen_a()), Rational(1)}, {inverse(gen_b()), Rational(1)}}, "sw");
}

Measure Measure::southwest_probability() {
  return Measure({{inverse(gen_a()), Rational(1, 2)}, {inverse(gen_b()), Rational(1, 2)}}, "sw-prob");
}

Rational Measure::total_mass() const {
  Rational m = 0;
  for (const auto& a : atoms_) m += a.weight;
  return m;
}

Measure Measure::probability_normalized() const {
  const Rational m = total_mass();
  std::vector<Atom> atoms = atoms_;
  for (auto& a : atoms) a.weight /= m;
  return Measure(std::move(atoms), tag_ + "/normalized");
}

bool Measure::support_commutes() const {
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    for (std::size_t j = i + 1; j < atoms_.size(); ++j)
      if (!commute(atoms_[i].point, atoms_[j].point)) return false;
  return true;
}

std::optional<Rational> Measure::weight_of(const GroupElement& g) const {
  for (const auto& a : atoms_)
    if (a.point == g) return a.weight;
  return std::nullopt;
}

nlohmann::json measure_to_json(const Measure& mu) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& a : mu.atoms()) j.push_back(nlohmann::json::array({a.point, to_string(a.weight)}));
  return j;
}

Measure measure_from_json(const nlohmann::json& j, std::string tag) {
  if (!j.is_array()) throw std::invalid_argument("measure JSON must be a list of [[x,y,z], \"num/den\"]");
  std::vector<Measure::Atom> atoms;
  for (const auto& item : j) {
    if (!item.is_array() || item.size() != 2)
      throw std::invalid_argument("measure atom must be [[x,y,z], \"num/den\"]");
    GroupElement g = item.at(0).get<GroupElement>();
    const auto& w = item.at(1);
    Rational weight = w.is_string() ? parse_rational(w.get<std::string>()) : Rational(w.get<std::int64_t>());
    atoms.push_back({g, weight});
  }
  return Measure(std::move(atoms), std::move(tag));
}

// ---------------------------------------------------------------------------
// CommutingSubgroup

namespace {

// Returns g = gcd(values) >= 0 and coefficients c with sum c_i v_i = g.
std::pair<std::int64_t, std::vector<std::int64_t>> bezout(const std::vector<std::int64_t>& values) {
  std::vector<std::int64_t> coeffs(values.size(), 0);
  std::int64_t g = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    // Extended Euclid on (g, v_i).
    std::int64_t old_r = g, r = values[i];
    std::int64_t old_s = 1, s = 0;  // coefficient of g
    std::int64_t old_t = 0, t = 1;  // coefficient of v_i
    while (r != 0) {
      const std::int64_t q = old_r / r;
      std::tie(old_r, r) = std::make_pair(r, checked_sub(old_r, checked_mul(q, r)));
      std::tie(old_s, s) = std::make_pair(s, checked_sub(old_s, checked_mul(q, s)));
      std::tie(old_t, t) = std::make_pair(t, checked_sub(old_t, checked_mul(q, t)));
    }
    if (old_r < 0) {
      old_r = -old_r;
      old_s = -old_s;
      old_t = -old_t;
    }
    for (std::size_t k = 0; k < i; ++k) coeffs[k] = checked_mul(coeffs[k], old_s);
    coeffs[i] = old_t;
    g = old_r;
  }
  return {g, coeffs};
}

std::int64_t floor_mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

}  // namespace

CommutingSubgroup::CommutingSubgroup(std::vector<GroupElement> generators, std::vector<Rational> values)
    : generators_(std::move(generators)), values_(std::move(values)) {
  if (generators_.empty()) throw std::domain_error("commuting subgroup: no generators");
  if (generators_.size() != values_.size())
    throw std::domain_error("commuting subgroup: one character value per generator is required");
  for (const auto& v : values_)
    if (v <= 0) throw std::domain_error("commuting subgroup: character values must be positive");
  for (std::size_t i = 0; i < generators_.size(); ++i)
    for (std::size_t j = i + 1; j < generators_.size(); ++j)
      if (!commute(generators_[i], generators_[j]))
        throw std::domain_error("commuting subgroup: " + to_string(generators_[i]) + " and " +
                                to_string(generators_[j]) + " do not commute");

  const std::size_t n = generators_.size();
  std::vector<std::int64_t> central_exponent(n);
  std::vector<Rational> central_values(n);

  auto first = std::find_if(generators_.begin(), generators_.end(), [](const auto& g) { return !is_central(g); });
  if (first != generators_.end()) {
    has_direction_ = true;
    const std::int64_t g = std::gcd(first->x, first->y);
    ux_ = first->x / g;
    uy_ = first->y / g;
    if (ux_ < 0 || (ux_ == 0 && uy_ < 0)) {
      ux_ = -ux_;
      uy_ = -uy_;
    }
    std::vector<std::int64_t> along(n);
    for (std::size_t i = 0; i < n; ++i)
      along[i] = ux_ != 0 ? generators_[i].x / ux_ : generators_[i].y / uy_;
    auto [d, beta] = bezout(along);
    step_ = d;
    section_ = identity();
    section_value_ = 1;
    for (std::size_t i = 0; i < n; ++i) {
      section_ = multiply(section_, power(generators_[i], beta[i]));
      section_value_ *= pow(values_[i], beta[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      const std::int64_t j = along[i] / d;
      const GroupElement rest = multiply(generators_[i], power(section_, -j));
      central_exponent[i] = rest.z;
      central_values[i] = values_[i] * pow(section_value_, -j);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      central_exponent[i] = generators_[i].z;
      central_values[i] = values_[i];
    }
  }

  auto [m, gamma] = bezout(central_exponent);
  central_period_ = m;
  central_value_ = 1;
  if (m != 0)
    for (std::size_t i = 0; i < n; ++i) central_value_ *= pow(central_values[i], gamma[i]);
  for (std::size_t i = 0; i < n; ++i) {
    const Rational expected = m == 0 ? Rational(1) : pow(central_value_, central_exponent[i] / m);
    if (central_values[i] != expected)
      throw std::domain_error("commuting subgroup: the given values do not define a character");
  }
}

std::optional<Rational> CommutingSubgroup::character_at(const GroupElement& g) const {
  Rational value = 1;
  GroupElement rest = g;
  if (has_direction_) {
    if (checked_mul(g.x, uy_) != checked_mul(g.y, ux_)) return std::nullopt;
    const std::int64_t t = ux_ != 0 ? g.x / ux_ : g.y / uy_;
    if (floor_mod(t, step_) != 0) return std::nullopt;
    const std::int64_t j = t / step_;
    rest = multiply(power(section_, -j), g);
    value = pow(section_value_, j);
  }
  if (!is_central(rest)) return std::nullopt;
  if (central_period_ == 0) {
    if (rest.z != 0) return std::nullopt;
    return value;
  }
  if (floor_mod(rest.z, central_period_) != 0) return std::nullopt;
  return value * pow(central_value_, rest.z / central_period_);
}

// ---------------------------------------------------------------------------
// Function

Function::Function(std::string tag, Rule rule)
    : tag_(std::move(tag)), rule_(std::make_shared<const Rule>(std::move(rule))) {}

Function Function::character(const Rational& r, const Rational& s) {
  if (r <= 0 || s <= 0) throw std::domain_error("character: parameters must be positive");
  return Function("char:" + to_string(r) + "," + to_string(s),
                  [r, s](const GroupElement& g) { return pow(r, g.x) * pow(s, g.y); });
}

Function Function::h0() {
  return Function("h0", [](const GroupElement& g) { return Rational(count_at_most_rows(g.y, g.z)); });
}

Function Function::h1() {
  return Function("h1", [](const GroupElement& g) {
    return Rational(count_at_most_rows(g.x, checked_sub(checked_mul(g.x, g.y), g.z)));
  });
}

Function Function::potential() {
  return Function("potential", [](const GroupElement& g) { return Rational(count(g.x, g.y, g.z)); });
}

Function Function::indicator(std::function<bool(const GroupElement&)> member, std::string tag) {
  return Function(std::move(tag), [member = std::move(member)](const GroupElement& g) {
    return member(g) ? Rational(1) : Rational(0);
  });
}

Function Function::a_axis_indicator() {
  return indicator([](const GroupElement& g) { return g.y == 0 && g.z == 0; }, "psi0");
}

Function Function::b_axis_indicator() {
  return indicator([](const GroupElement& g) { return g.x == 0 && g.z == 0; }, "psi1");
}

Function Function::identity_indicator() {
  return indicator([](const GroupElement& g) { return g == identity(); }, "delta_e");
}

Function Function::translate(const Function& f, const GroupElement& g0) {
  return Function("translate:" + f.tag() + ":" + std::to_string(g0.x) + "," + std::to_string(g0.y) + "," +
                      std::to_string(g0.z),
                  [f, g0](const GroupElement& g) { return f(multiply(g, g0)); });
}

Function Function::scale(const Function& f, const Rational& lambda) {
  if (lambda <= 0) throw std::domain_error("scale: factor must be positive");
  return Function("scale:" + f.tag() + ":" + to_string(lambda),
                  [f, lambda](const GroupElement& g) { return lambda * f(g); });
}

Function Function::sum(const Function& f, const Function& g) {
  return Function("sum:" + f.tag() + "+" + g.tag(), [f, g](const GroupElement& p) { return f(p) + g(p); });
}

Function Function::product(const Function& f, const Function& g) {
  return Function("prod:" + f.tag() + "*" + g.tag(), [f, g](const GroupElement& p) { return f(p) * g(p); });
}

Function Function::seed(const CommutingSubgroup& subgroup) {
  std::ostringstream tag;
  tag << "seed:";
  for (std::size_t i = 0; i < subgroup.generators().size(); ++i)
    tag << (i ? ";" : "") << subgroup.generators()[i] << "->" << to_string(subgroup.values()[i]);
  return Function(tag.str(), [subgroup](const GroupElement& g) { return subgroup.character_at(g).value_or(Rational(0)); });
}

// ---------------------------------------------------------------------------
// Box and residual scans

Box Box::symmetric(std::int64_t rx, std::int64_t ry, std::int64_t rz) { return Box{-rx, rx, -ry, ry, -rz, rz}; }

std::uint64_t Box::size() const {
  if (x_max < x_min || y_max < y_min || z_max < z_min) return 0;
  return static_cast<std::uint64_t>(x_max - x_min + 1) * static_cast<std::uint64_t>(y_max - y_min + 1) *
         static_cast<std::uint64_t>(z_max - z_min + 1);
}

std::string Box::describe() const {
  std::ostringstream os;
  os << "[" << x_min << ".." << x_max << "]x[" << y_min << ".." << y_max << "]x[" << z_min << ".." << z_max << "]";
  return os.str();
}

Rational apply_operator(const Measure& mu, const Function& f, const GroupElement& g) {
  Rational total = 0;
  for (const auto& a : mu.atoms()) total += a.weight * f(multiply(a.point, g));
  return total;
}

Rational defect(const Measure& mu, const Function& f, const GroupElement& g) {
  return f(g) - apply_operator(mu, f, g);
}

ResidualReport harmonic_residual(const Measure& mu, const Function& f, const Box& box, std::size_t sample_limit) {
  ResidualReport rep;
  box.for_each([&](const GroupElement& g) {
    ++rep.points;
    const Rational d = defect(mu, f, g);
    if (d == 0) return;
    ++rep.nonzero_points;
    if (rep.nonzero_sample.size() < sample_limit) rep.nonzero_sample.emplace_back(g, d);
    const Rational ad = abs(d);
    if (ad > rep.max_defect) {
      rep.max_defect = ad;
      rep.witness = g;
    }
  });
  return rep;
}

SuperharmonicResult superharmonic_check(const Measure& mu, const Function& f, const Box& box) {
  SuperharmonicResult res;
  box.for_each([&](const GroupElement& g) {
    if (!res.holds) return;
    const Rational d = defect(mu, f, g);
    if (d < 0) {
      res.holds = false;
      res.witness = g;
      res.witness_defect = d;
    }
  });
  return res;
}

ResidualReport center_shift_defect(const Function& f, const Box& box) {
  ResidualReport rep;
  box.for_each([&](const GroupElement& g) {
    ++rep.points;
    const Rational d = f(g) - f(multiply(g, gen_c()));
    if (d == 0) return;
    ++rep.nonzero_points;
    if (rep.nonzero_sample.size() < 16) rep.nonzero_sample.emplace_back(g, d);
    const Rational ad = abs(d);
    if (ad > rep.max_defect) {
      rep.max_defect = ad;
      rep.witness = g;
    }
  });
  return rep;
}

// ---------------------------------------------------------------------------
// Operator powers

OperatorPowers::OperatorPowers(Measure mu, Function seed, std::size_t node_budget)
    : mu_(std::move(mu)), seed_(std::move(seed)), budget_(node_budget) {}

Rational OperatorPowers::value(std::int64_t n, const GroupElement& g) {
  if (n < 0) throw std::domain_error("operator power: negative exponent");
  const Key key{n, g};
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  Rational v = 0;
  if (n == 0) {
    v = seed_(g);
  } else {
    for (const auto& a : mu_.atoms()) v += a.weight * value(n - 1, multiply(a.point, g));
  }
  if (memo_.size() >= budget_)
    throw BudgetExceeded("operator power expansion exceeds the node budget of " + std::to_string(budget_));
  memo_.emplace(key, v);
  return v;
}

BigInt potential_partial_sum(std::int64_t n, const GroupElement& g, std::size_t node_budget) {
  if (n < 0) throw std::domain_error("potential_partial_sum: negative n");
  OperatorPowers powers(Measure::southwest(), Function::identity_indicator(), node_budget);
  Rational total = 0;
  for (std::int64_t k = 0; k <= n; ++k) total += powers.value(k, g);
  return boost::multiprecision::numerator(total);
}

Rational iterate_seed(const Measure& mu, const Function& seed, std::int64_t n, const GroupElement& g,
                      std::size_t node_budget) {
  OperatorPowers powers(mu, seed, node_budget);
  return powers.value(n, g);
}

std::vector<std::vector<Rational>> iterate_seed_sequence(const Measure& mu, const Function& seed, std::int64_t n_max,
                                                         const std::vector<GroupElement>& points,
                                                         std::size_t node_budget) {
  if (n_max < 0) throw std::domain_error("iterate_seed_sequence: negative n");
  OperatorPowers powers(mu, seed, node_budget);
  std::vector<std::vector<Rational>> out;
  out.reserve(points.size());
  for (const auto& g : points) {
    std::vector<Rational> seq;
    seq.reserve(static_cast<std::size_t>(n_max) + 1);
    for (std::int64_t k = 0; k <= n_max; ++k) seq.push_back(powers.value(k, g));
    out.push_back(std::move(seq));
  }
  return out;
}

std::string to_string(InducedStatus s) {
  switch (s) {
    case InducedStatus::converged: return "converged";
    case InducedStatus::increasing: return "increasing";
    case InducedStatus::diverged: return "diverged";
  }
  return "unknown";
}

Rational default_divergence_bound() { return Rational(pow(BigInt(10), 30)); }

InducedResult induced_function(const Measure& mu, const std::vector<GroupElement>& s0,
                               const std::vector<Rational>& chi0, std::int64_t n_max,
                               const Rational& divergence_bound, const std::vector<GroupElement>& points,
                               std::size_t node_budget) {
  if (n_max < 0) throw std::domain_error("induced_function: negative n_max");
  if (s0.empty()) throw std::domain_error("induced_function: S0 is empty");
  Rational harmonic_sum = 0;
  for (std::size_t i = 0; i < s0.size(); ++i) {
    auto w = mu.weight_of(s0[i]);
    if (!w) throw std::domain_error("induced_function: " + to_string(s0[i]) + " is not in the support");
    if (i < chi0.size()) harmonic_sum += *w * chi0[i];
  }
  CommutingSubgroup subgroup(s0, chi0);
  if (harmonic_sum != 1)
    throw std::domain_error("induced_function: chi0 is not harmonic for the restricted measure (sum = " +
                            to_string(harmonic_sum) + ")");

  OperatorPowers powers(mu, Function::seed(subgroup), node_budget);
  InducedResult res;
  res.points = points;
  for (std::int64_t n = 0; n <= n_max; ++n) {
    std::vector<Rational> vals;
    vals.reserve(points.size());
    bool diverged = false;
    for (const auto& g : points) {
      vals.push_back(powers.value(n, g));
      if (vals.back() > divergence_bound) diverged = true;
    }
    res.iterates.push_back(std::move(vals));
    res.steps = n;
    if (diverged) {
      res.status = InducedStatus::diverged;
      return res;
    }
  }
  const auto& it = res.iterates;
  res.status = (it.size() >= 2 && it[it.size() - 1] == it[it.size() - 2]) ? InducedStatus::converged
                                                                          : InducedStatus::increasing;
  return res;
}

// ---------------------------------------------------------------------------
// Degree sums

DegreeSum degree_sum_identity(const Function& f, const GroupElement& g0, std::int64_t n, bool check_touched) {
  if (n < 1) throw std::domain_error("degree_sum_identity: n must be at least 1");
  const Measure mu0 = Measure::southwest();
  DegreeSum out;
  out.lhs = f(g0);
  out.rhs = 0;
  out.touched_max_defect = 0;
  for (std::int64_t x = 0; x <= n; ++x) {
    const std::int64_t y = n - x;
    for (std::int64_t z = 0; z <= x * y; ++z) {
      const GroupElement q = multiply(inverse(GroupElement{x, y, z}), g0);
      out.rhs += Rational(count(x, y, z)) * f(q);
      ++out.terms;
      if (check_touched) {
        const Rational d = abs(defect(mu0, f, q));
        if (d > out.touched_max_defect) out.touched_max_defect = d;
      }
    }
  }
  return out;
}

Rational coset_boundary_sum(const Function& f, const GroupElement& g0, std::int64_t n, std::int64_t A) {
  if (n < 1) throw std::domain_error("coset_boundary_sum: n must be at least 1");
  if (A < 0) throw std::domain_error("coset_boundary_sum: A must be nonnegative");
  Rational total = 0;
  for (std::int64_t x = 0; x <= n; ++x) {
    const std::int64_t y = n - x;
    const std::int64_t cells = x * y;
    for (std::int64_t z = 0; z <= cells; ++z) {
      if (z > A && cells - z > A) continue;
      total += Rational(count(x, y, z)) * f(multiply(inverse(GroupElement{x, y, z}), g0));
    }
  }
  return total;
}

// ---------------------------------------------------------------------------
// Characters and the center condition

Rational character_harmonicity(const Measure& mu, const Rational& r, const Rational& s, const Rational& t) {
  if (r <= 0 || s <= 0 || t <= 0) throw std::domain_error("character_harmonicity: parameters must be positive");
  if (t != 1 && !mu.support_commutes())
    throw std::domain_error(
        "character_harmonicity: a z-exponent is not a character of H3(Z) on a non-commuting support");
  Rational total = 0;
  for (const auto& a : mu.atoms()) total += a.weight * pow(r, a.point.x) * pow(s, a.point.y) * pow(t, a.point.z);
  return abs(total - 1);
}

CenterProductResult center_product_condition(const Measure& mu, std::int64_t depth) {
  if (depth < 1) throw std::domain_error("center_product_condition: depth must be at least 1");
  CenterProductResult res;
  res.depth = depth;

  std::unordered_set<GroupElement, GroupElementHash> all;
  std::vector<GroupElement> layer;
  for (const auto& a : mu.atoms()) layer.push_back(a.point);
  for (std::int64_t len = 1; len <= depth && !layer.empty(); ++len) {
    std::vector<GroupElement> fresh;
    for (const auto& g : layer)
      if (all.insert(g).second) fresh.push_back(g);
    if (len == depth) break;
    std::unordered_set<GroupElement, GroupElementHash> next;
    for (const auto& g : fresh)
      for (const auto& a : mu.atoms()) next.insert(multiply(g, a.point));
    // Elements seen before were already extended at a shorter length.
    layer.assign(next.begin(), next.end());
  }
  res.semigroup_elements = all.size();

  std::vector<GroupElement> elements(all.begin(), all.end());
  std::sort(elements.begin(), elements.end());
  std::map<std::pair<std::int64_t, std::int64_t>, std::vector<GroupElement>> by_projection;
  for (const auto& g : elements)
    if (!is_central(g)) by_projection[{g.x, g.y}].push_back(g);

  for (const auto& g : elements) {
    if (is_central(g)) continue;
    auto it = by_projection.find({-g.x, -g.y});
    if (it == by_projection.end()) continue;
    for (const auto& h : it->second) {
      const GroupElement prod = multiply(g, h);
      if (prod != identity()) {
        res.found = true;
        res.first = g;
        res.second = h;
        return res;
      }
    }
  }
  return res;
}

}  // namespace heis
