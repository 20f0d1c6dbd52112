#include "heis/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

#include "heis/partition.hpp"

namespace heis {

// ---------------------------------------------------------------------------
// Sequence specs

SequenceSpec SequenceSpec::diagonal(std::vector<std::int64_t> ts) {
  SequenceSpec s;
  s.preset_ = Preset::diagonal;
  s.ts_ = std::move(ts);
  return s;
}

SequenceSpec SequenceSpec::fixed_height(std::int64_t height, std::vector<std::int64_t> ts) {
  SequenceSpec s;
  s.preset_ = Preset::fixed_height;
  s.height_ = height;
  s.ts_ = std::move(ts);
  return s;
}

SequenceSpec SequenceSpec::affine(const AffineMap& map, std::vector<std::int64_t> ts) {
  SequenceSpec s;
  s.preset_ = Preset::affine;
  s.map_ = map;
  s.ts_ = std::move(ts);
  return s;
}

std::vector<Triple> SequenceSpec::triples() const {
  std::vector<Triple> out;
  out.reserve(ts_.size());
  for (auto t : ts_) {
    Triple tr{t, 0, 0, 0};
    switch (preset_) {
      case Preset::diagonal:
        tr.x = tr.y = t;
        tr.z = checked_mul(t, t) / 2;
        break;
      case Preset::fixed_height:
        tr.x = t;
        tr.y = height_;
        tr.z = checked_mul(t, height_) / 2;
        break;
      case Preset::affine:
        tr.x = checked_add(map_.x0, checked_mul(map_.x1, t));
        tr.y = checked_add(map_.y0, checked_mul(map_.y1, t));
        tr.z = checked_add(map_.z0, checked_mul(map_.z1, t));
        break;
    }
    if (!(1 <= tr.y && tr.y <= tr.x && 0 < tr.z && 2 * tr.z <= checked_mul(tr.x, tr.y)))
      throw std::domain_error("sequence spec: t=" + std::to_string(t) + " gives (" + std::to_string(tr.x) + "," +
                              std::to_string(tr.y) + "," + std::to_string(tr.z) +
                              ") outside 1 <= y <= x, 0 < z <= xy/2");
    out.push_back(tr);
  }
  return out;
}

std::string SequenceSpec::describe() const {
  std::ostringstream os;
  switch (preset_) {
    case Preset::diagonal: os << "diagonal"; break;
    case Preset::fixed_height: os << "fixed-height(y=" << height_ << ")"; break;
    case Preset::affine:
      os << "affine(x=" << map_.x0 << "+" << map_.x1 << "t;y=" << map_.y0 << "+" << map_.y1 << "t;z=" << map_.z0
         << "+" << map_.z1 << "t)";
      break;
  }
  os << " t=";
  for (std::size_t i = 0; i < ts_.size(); ++i) os << (i ? ";" : "") << ts_[i];
  return os.str();
}

namespace {

std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw std::invalid_argument("malformed integer: " + std::string(s));
  return v;
}

}  // namespace

std::vector<std::int64_t> parse_range(std::string_view text) {
  std::vector<std::int64_t> out;
  if (auto dots = text.find(".."); dots != std::string_view::npos) {
    std::int64_t step = 1;
    auto hi_text = text.substr(dots + 2);
    if (auto colon = hi_text.find(':'); colon != std::string_view::npos) {
      step = parse_int(hi_text.substr(colon + 1));
      hi_text = hi_text.substr(0, colon);
    }
    if (step <= 0) throw std::invalid_argument("range step must be positive");
    const std::int64_t lo = parse_int(text.substr(0, dots));
    const std::int64_t hi = parse_int(hi_text);
    for (std::int64_t v = lo; v <= hi; v += step) out.push_back(v);
    return out;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    out.push_back(parse_int(text.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Ratio limit

RatioReport ratio_table(const SequenceSpec& spec, std::int64_t max_cells) {
  RatioReport rep;
  rep.spec = spec.describe();
  const auto triples = spec.triples();
  for (const auto& tr : triples)
    if (checked_mul(tr.x, tr.y) > max_cells)
      throw BudgetExceeded("ratio_table: row t=" + std::to_string(tr.t) + " (" + std::to_string(tr.x) + "x" +
                           std::to_string(tr.y) + ") exceeds the budget of " + std::to_string(max_cells) + " cells");
  for (const auto& tr : triples) {
    const auto row = count_row(tr.x, tr.y);
    RatioRow r{tr, (*row)[static_cast<std::size_t>(tr.z - 1)], (*row)[static_cast<std::size_t>(tr.z)], 0, 0};
    r.ratio = Rational(r.previous, r.current);
    r.deviation = abs(r.ratio - 1);
    rep.rows.push_back(std::move(r));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Unimodality

std::vector<GroupElement> unimodality_sweep(std::int64_t max_x, std::int64_t max_y) {
  std::vector<GroupElement> violations;
  for (std::int64_t x = 0; x <= max_x; ++x)
    for (std::int64_t y = 0; y <= max_y; ++y) {
      const auto& row = *count_row(x, y);
      const std::int64_t cells = x * y;
      for (std::int64_t z = 1; z <= cells; ++z) {
        const auto& prev = row[static_cast<std::size_t>(z - 1)];
        const auto& cur = row[static_cast<std::size_t>(z)];
        const bool rising_part = 2 * z <= cells;
        const bool falling_part = 2 * (z - 1) >= cells;
        if ((rising_part && cur < prev) || (falling_part && cur > prev)) violations.push_back({x, y, z});
      }
    }
  return violations;
}

// ---------------------------------------------------------------------------
// Bounds

BoundReport bound_sweep(const BoundRegion& region) {
  BoundReport rep;
  const std::int64_t max_z = checked_mul(region.max_x, region.max_y);

  // z^{y-1} for the upper bound and the normalized minima.
  std::vector<std::vector<BigInt>> zpow(static_cast<std::size_t>(region.max_y) + 1);
  for (std::int64_t y = 1; y <= region.max_y; ++y) {
    auto& v = zpow[static_cast<std::size_t>(y)];
    v.resize(static_cast<std::size_t>(max_z) + 1);
    for (std::int64_t z = 1; z <= max_z; ++z) v[static_cast<std::size_t>(z)] = pow(BigInt(z), static_cast<std::uint64_t>(y - 1));
  }

  for (std::int64_t y = 1; y <= region.max_y; ++y) {
    std::optional<std::pair<Rational, GroupElement>> minimum;
    for (std::int64_t x = 1; x <= region.max_x; ++x) {
      const auto& row = *count_row(x, y);
      for (std::int64_t z = 1; z <= x * y; ++z) {
        const auto& p = row[static_cast<std::size_t>(z)];
        const auto& bound = zpow[static_cast<std::size_t>(y)][static_cast<std::size_t>(z)];
        ++rep.upper_checked;
        if (p > bound) rep.upper_violations.push_back({x, y, z});
        if (2 * z <= x * y) {
          Rational q(p, bound);
          if (!minimum || q < minimum->first) minimum = std::make_pair(q, GroupElement{x, y, z});
        }
      }
    }
    if (minimum) rep.lower_ratio_minima.emplace_back(y, *minimum);
  }

  if (region.max_i >= 1) {
    const CornerHistogram hist(region.max_x, region.max_y, region.max_i);
    for (std::int64_t i = 1; i <= region.max_i; ++i) {
      // Saturated (2z)^{2i}: anything >= 2^64 cannot be exceeded by a 64-bit count.
      std::vector<std::uint64_t> bound(static_cast<std::size_t>(max_z) + 1);
      for (std::int64_t z = 1; z <= max_z; ++z) {
        BigInt b = pow(BigInt(2 * z), static_cast<std::uint64_t>(2 * i));
        bound[static_cast<std::size_t>(z)] =
            b > BigInt(std::numeric_limits<std::uint64_t>::max()) ? std::numeric_limits<std::uint64_t>::max()
                                                                  : static_cast<std::uint64_t>(b);
      }
      for (std::int64_t x = 1; x <= region.max_x; ++x)
        for (std::int64_t y = 1; y <= region.max_y; ++y)
          for (std::int64_t z = 1; z <= x * y; ++z) {
            ++rep.corner_checked;
            if (hist.at_most(x, y, z, i) > bound[static_cast<std::size_t>(z)])
              rep.corner_violations.emplace_back(i, GroupElement{x, y, z});
          }
    }
  }

  auto add_instance = [&](std::int64_t j, std::int64_t x, std::int64_t y, std::int64_t z) {
    LowerBoundInstance inst{j, {x, y, z}, count(x, y, z), false};
    inst.holds = inst.value >= pow(BigInt(z), static_cast<std::uint64_t>(j));
    rep.lower_instances.push_back(std::move(inst));
  };
  for (auto j : region.lower_js)
    for (std::int64_t y = std::max<std::int64_t>(4 * j, 1); y <= region.max_y; ++y)
      for (std::int64_t x = y; x <= region.max_x; ++x)
        for (std::int64_t z : {x * y / 4, x * y / 2})
          if (z >= 1) add_instance(j, x, y, z);
  for (const auto& tr : region.lower_instances) add_instance(tr.t, tr.x, tr.y, tr.z);
  return rep;
}

// ---------------------------------------------------------------------------
// Corner ratio decay

std::vector<CornerRatioRow> corner_ratio_decay(std::int64_t i, const SequenceSpec& spec, std::int64_t max_cells) {
  if (i < 0) throw std::domain_error("corner_ratio_decay: negative corner bound");
  std::vector<CornerRatioRow> out;
  const auto triples = spec.triples();
  for (const auto& tr : triples)
    if (checked_mul(tr.x, tr.y) > max_cells)
      throw BudgetExceeded("corner_ratio_decay: row t=" + std::to_string(tr.t) + " exceeds the budget of " +
                           std::to_string(max_cells) + " cells");
  for (const auto& tr : triples) {
    CornerRatioRow r{tr, count_bounded_corners(tr.x, tr.y, tr.z, i), count(tr.x, tr.y, tr.z), 0};
    r.ratio = Rational(r.bounded, r.total);
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Southwest walk

std::uint64_t WalkTally::visits_at(const GroupElement& g) const {
  auto it = visits.find(g);
  return it == visits.end() ? 0 : it->second;
}

std::vector<GroupElement> walk_trajectory(std::uint64_t seed, std::uint64_t trial, std::int64_t steps) {
  if (steps < 0) throw std::domain_error("walk: negative step count");
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  std::mt19937_64 gen(seq);
  std::vector<GroupElement> path;
  path.reserve(static_cast<std::size_t>(steps) + 1);
  GroupElement g = identity();
  path.push_back(g);
  std::uint64_t bits = 0;
  int left = 0;
  for (std::int64_t n = 0; n < steps; ++n) {
    if (left == 0) {
      bits = gen();
      left = 64;
    }
    const bool step_a = (bits & 1u) == 0;
    bits >>= 1;
    --left;
    // g <- s^-1 g
    g = step_a ? GroupElement{g.x - 1, g.y, g.z - g.y} : GroupElement{g.x, g.y - 1, g.z};
    path.push_back(g);
  }
  return path;
}

WalkTally simulate_walk(std::int64_t steps, std::uint64_t trials, std::uint64_t seed, unsigned threads) {
  if (steps < 0) throw std::domain_error("walk: negative step count");
  threads = std::max(1u, threads);
  std::vector<std::map<GroupElement, std::uint64_t>> partial(threads);
  auto work = [&](unsigned w) {
    const std::uint64_t lo = trials * w / threads;
    const std::uint64_t hi = trials * (w + 1) / threads;
    auto& local = partial[w];
    for (std::uint64_t t = lo; t < hi; ++t)
      for (const auto& g : walk_trajectory(seed, t, steps)) ++local[g];
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  WalkTally tally;
  tally.seed = seed;
  tally.trials = trials;
  tally.steps = steps;
  for (const auto& part : partial)
    for (const auto& [g, n] : part) tally.visits[g] += n;
  return tally;
}

bool WalkEstimate::within(std::int64_t k) const {
  const Rational diff = empirical - expected;
  return diff * diff <= Rational(k * k) * variance;
}

double WalkEstimate::z_score() const {
  const double diff = static_cast<double>(empirical - expected);
  const double var = static_cast<double>(variance);
  if (var == 0.0) return diff == 0.0 ? 0.0 : std::copysign(INFINITY, diff);
  return diff / std::sqrt(var);
}

WalkEstimate walk_estimate(const WalkTally& tally, const GroupElement& g) {
  if (tally.trials == 0) throw std::domain_error("walk_estimate: no trials");
  WalkEstimate e;
  e.g = g;
  e.visits = tally.visits_at(inverse(g));
  e.empirical = Rational(BigInt(e.visits), BigInt(tally.trials));
  if (in_positive_semigroup(g) && degree(g) <= tally.steps)
    e.expected = Rational(count(g.x, g.y, g.z), pow(BigInt(2), static_cast<std::uint64_t>(degree(g))));
  else
    e.expected = 0;
  e.variance = e.expected * (1 - e.expected) / Rational(BigInt(tally.trials));
  return e;
}

// ---------------------------------------------------------------------------
// Coset decay

std::vector<CosetRow> coset_decay_table(const Function& f, const GroupElement& g0, std::int64_t A,
                                        const std::vector<std::int64_t>& ns, std::int64_t check_length) {
  const Rational base = f(g0);
  for (const auto& [name, gen] : {std::pair{"a", gen_a()}, std::pair{"b", gen_b()}}) {
    const Rational far = f(multiply(power(gen, -check_length), g0));
    if (far * 1000 > base || (base == 0 && far != 0))
      throw HypothesisFailure("coset_decay: " + f.tag() + " does not decay along the " + name + "^-n orbit of " +
                              to_string(g0) + " (value " + to_decimal(far, 12) + " at n=" +
                              std::to_string(check_length) + " vs " + to_decimal(base, 12) + " at n=0)");
  }
  std::vector<CosetRow> rows;
  for (auto n : ns) rows.push_back({n, coset_boundary_sum(f, g0, n, A)});
  return rows;
}

// ---------------------------------------------------------------------------
// Tables

Table to_table(const RatioReport& r, int precision) {
  Table t{{"t", "x", "y", "z", "p_prev", "p", "ratio_exact", "ratio", "deviation"}, {}};
  for (const auto& row : r.rows)
    t.rows.push_back({std::to_string(row.at.t), std::to_string(row.at.x), std::to_string(row.at.y),
                      std::to_string(row.at.z), row.previous.str(), row.current.str(), to_string(row.ratio),
                      to_decimal(row.ratio, precision), to_decimal(row.deviation, precision)});
  return t;
}

Table to_table(const std::vector<CornerRatioRow>& rows, int precision) {
  Table t{{"t", "x", "y", "z", "p_le_i", "p", "ratio_exact", "ratio"}, {}};
  for (const auto& row : rows)
    t.rows.push_back({std::to_string(row.at.t), std::to_string(row.at.x), std::to_string(row.at.y),
                      std::to_string(row.at.z), row.bounded.str(), row.total.str(), to_string(row.ratio),
                      to_decimal(row.ratio, precision)});
  return t;
}

Table to_table(const std::vector<CosetRow>& rows, int precision) {
  Table t{{"n", "sum_exact", "sum"}, {}};
  for (const auto& row : rows)
    t.rows.push_back({std::to_string(row.n), to_string(row.value), to_decimal(row.value, precision)});
  return t;
}

Table to_table(const WalkTally& tally) {
  Table t{{"x", "y", "z", "visits"}, {}};
  for (const auto& [g, n] : tally.visits)
    t.rows.push_back({std::to_string(g.x), std::to_string(g.y), std::to_string(g.z), std::to_string(n)});
  return t;
}

Table to_table(const std::vector<WalkEstimate>& estimates, int precision) {
  Table t{{"x", "y", "z", "visits", "empirical", "expected", "z_score", "within_3se"}, {}};
  for (const auto& e : estimates) {
    std::ostringstream zs;
    zs.precision(6);
    zs << e.z_score();
    t.rows.push_back({std::to_string(e.g.x), std::to_string(e.g.y), std::to_string(e.g.z), std::to_string(e.visits),
                      to_decimal(e.empirical, precision), to_decimal(e.expected, precision), zs.str(),
                      e.within(3) ? "true" : "false"});
  }
  return t;
}

}  // namespace heis
