#include "heis/cli.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "heis/config.hpp"
#include "heis/experiments.hpp"
#include "heis/function_tag.hpp"
#include "heis/group.hpp"
#include "heis/harmonic.hpp"
#include "heis/partition.hpp"
#include "heis/report.hpp"
#include "heis/words.hpp"

namespace heis::cli {

namespace {

// A check failed; the message (with witness) was already written to `out`.
struct CheckFailed {};

std::string join_rows(const Partition& p) {
  std::string s;
  for (std::size_t i = 0; i < p.rows.size(); ++i) s += (i ? "+" : "") + std::to_string(p.rows[i]);
  return s.empty() ? "0" : s;
}

std::string as_string(std::int64_t v) { return std::to_string(v); }

struct Session {
  Config config;
  std::string command_line;
  bool with_metadata = false;
  std::ostream& out;

  Metadata metadata(const std::string& command, const std::string& spec = {}) const {
    Metadata m;
    m.add("command", command).add("argv", command_line).add("version", kLibraryVersion);
    if (!spec.empty()) m.add("spec", spec);
    config.describe(m);
    return m;
  }

  void emit(const Metadata& meta, const Table& table) const {
    if (config.format == "json")
      write_json(out, meta, table);
    else
      write_csv(out, meta, table);
  }

  // Scalar results: bare "key=value" lines, preceded by the metadata block
  // only when asked (so `count 5 4 12` prints just 11).
  void emit_scalars(const Metadata& meta, const std::vector<std::pair<std::string, std::string>>& kv,
                    bool bare_single = false) const {
    if (config.format == "json") {
      Table t{{}, {{}}};
      for (const auto& [k, v] : kv) {
        t.columns.push_back(k);
        t.rows[0].push_back(v);
      }
      write_json(out, meta, t);
      return;
    }
    if (with_metadata)
      for (const auto& [k, v] : meta.entries) out << "# " << k << "=" << v << "\n";
    if (bare_single && kv.size() == 1) {
      out << kv[0].second << "\n";
      return;
    }
    for (const auto& [k, v] : kv) out << k << "=" << v << "\n";
  }
};

std::string render(const Rational& q, int precision) {
  return boost::multiprecision::denominator(q) == 1 ? to_string(q) : to_string(q) + " (" + to_decimal(q, precision) + ")";
}

Box parse_box(const std::vector<std::int64_t>& b) {
  if (b.size() == 3) return Box::symmetric(b[0], b[1], b[2]);
  if (b.size() == 6) return Box{b[0], b[1], b[2], b[3], b[4], b[5]};
  throw CLI::ValidationError("--box", "expects 3 radii or 6 bounds xmin xmax ymin ymax zmin zmax");
}

SequenceSpec make_spec(const std::string& preset, const std::string& t_range, std::int64_t height,
                       const std::vector<std::int64_t>& affine) {
  auto ts = parse_range(t_range);
  if (preset == "diagonal") return SequenceSpec::diagonal(std::move(ts));
  if (preset == "fixed-height") {
    if (height < 1) throw CLI::ValidationError("--height", "fixed-height preset needs --height >= 1");
    return SequenceSpec::fixed_height(height, std::move(ts));
  }
  if (preset == "affine") {
    if (affine.size() != 6) throw CLI::ValidationError("--affine", "expects x0 x1 y0 y1 z0 z1");
    return SequenceSpec::affine({affine[0], affine[1], affine[2], affine[3], affine[4], affine[5]}, std::move(ts));
  }
  throw CLI::ValidationError("--preset", "unknown preset '" + preset + "'");
}

void add_spec_options(CLI::App* sub, std::string& preset, std::string& t_range, std::int64_t& height,
                      std::vector<std::int64_t>& affine) {
  sub->add_option("--preset", preset, "diagonal | fixed-height | affine")->capture_default_str();
  sub->add_option("--t-range", t_range, "a..b, a..b:step or a,b,c")->required();
  sub->add_option("--height", height, "row count for the fixed-height preset");
  sub->add_option("--affine", affine, "x0 x1 y0 y1 z0 z1")->expected(6);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact partition counts and harmonic functions on the discrete Heisenberg group"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kLibraryVersion);

  Session s{Config{}, {}, false, out};
  for (int i = 0; i < argc; ++i) s.command_line += (i ? " " : "") + std::string(argv[i]);

  std::string config_path;
  std::optional<std::string> format;
  std::optional<int> precision;
  std::optional<unsigned> threads;
  std::optional<std::int64_t> enum_cells, word_length, max_cells;
  std::optional<std::size_t> node_budget, memo_capacity;
  app.add_option("--config", config_path, "key=value configuration file");
  app.add_option("--format", format, "csv | json");
  app.add_option("--precision", precision, "decimal digits (>= 20)");
  app.add_option("--threads", threads, "worker threads for walks");
  app.add_option("--enum-cells", enum_cells, "largest x*y for enumerate");
  app.add_option("--word-length", word_length, "longest word for fiber and corner checks");
  app.add_option("--node-budget", node_budget, "memo nodes for operator powers");
  app.add_option("--memo-capacity", memo_capacity, "big integers kept by the count table");
  app.add_option("--max-cells", max_cells, "largest x*y per table row");
  app.add_flag("--metadata", s.with_metadata, "prefix scalar results with the metadata block");

  std::function<void()> action;
  auto command = [&](const char* name, const char* help) { return app.add_subcommand(name, help); };
  auto positional_ints = [](CLI::App* sub, std::initializer_list<std::pair<const char*, std::int64_t*>> list) {
    for (auto [name, ptr] : list) sub->add_option(name, *ptr)->required();
  };

  // count / row -------------------------------------------------------------
  std::int64_t X = 0, Y = 0, Z = 0;
  auto* c_count = command("count", "p(x, y, z)");
  positional_ints(c_count, {{"x", &X}, {"y", &Y}, {"z", &Z}});
  c_count->callback([&] {
    action = [&] {
      s.emit_scalars(s.metadata("count"), {{"count", count(X, Y, Z).str()}}, true);
    };
  });

  auto* c_row = command("row", "p(x, y, z) for 0 <= z <= xy");
  positional_ints(c_row, {{"x", &X}, {"y", &Y}});
  c_row->callback([&] {
    action = [&] {
      const auto row = count_row(X, Y);
      Table t{{"x", "y", "z", "count"}, {}};
      for (std::size_t z = 0; z < row->size(); ++z)
        t.rows.push_back({as_string(X), as_string(Y), std::to_string(z), (*row)[z].str()});
      s.emit(s.metadata("row"), t);
    };
  });

  auto* c_enum = command("enumerate", "every partition of z fitting in x-by-y");
  positional_ints(c_enum, {{"x", &X}, {"y", &Y}, {"z", &Z}});
  c_enum->callback([&] {
    action = [&] {
      Table t{{"partition", "distinct_parts"}, {}};
      for (const auto& p : enumerate(X, Y, Z, s.config.enum_cells))
        t.rows.push_back({join_rows(p), std::to_string(p.distinct_parts())});
      s.emit(s.metadata("enumerate"), t);
    };
  });

  // words -------------------------------------------------------------------
  auto* c_fiber = command("fiber", "words evaluating to (x, y, z)");
  positional_ints(c_fiber, {{"x", &X}, {"y", &Y}, {"z", &Z}});
  c_fiber->callback([&] {
    action = [&] {
      Table t{{"word", "inner_corners", "outer_corners", "partition"}, {}};
      for (const auto& w : fiber({X, Y, Z}, s.config.word_length).words)
        t.rows.push_back({w.letters(), std::to_string(inner_corners(w)), std::to_string(outer_corners(w)),
                          join_rows(partition_of(w))});
      s.emit(s.metadata("fiber"), t);
    };
  });

  std::string word_text;
  auto* c_corners = command("corners", "corner counts of a word");
  c_corners->add_option("word", word_text)->required();
  c_corners->callback([&] {
    action = [&] {
      const Word w(word_text);
      s.emit_scalars(s.metadata("corners"), {{"element", to_string(evaluate(w))},
                                             {"inner_corners", std::to_string(inner_corners(w))},
                                             {"outer_corners", std::to_string(outer_corners(w))},
                                             {"partition", join_rows(partition_of(w))}});
    };
  });

  auto* c_rel = command("relations", "pairs (w0 ab w1, w0 ba w1) with w evaluating to (x, y, z)");
  positional_ints(c_rel, {{"x", &X}, {"y", &Y}, {"z", &Z}});
  c_rel->callback([&] {
    action = [&] {
      Table t{{"w", "w_prime", "position", "f_w", "f_prime"}, {}};
      for (const auto& r : relation_pairs({X, Y, Z}, s.config.word_length))
        t.rows.push_back({r.w.letters(), r.w_prime.letters(), std::to_string(r.position),
                          std::to_string(inner_corners(r.w)), std::to_string(outer_corners(r.w_prime))});
      s.emit(s.metadata("relations"), t);
    };
  });

  auto* c_cid = command("corner-identity", "both corner-sum identities at (x, y, z)");
  positional_ints(c_cid, {{"x", &X}, {"y", &Y}, {"z", &Z}});
  c_cid->callback([&] {
    action = [&] {
      const auto r = corner_identity_check({X, Y, Z}, s.config.word_length);
      s.emit_scalars(s.metadata("corner-identity"),
                     {{"lhs", to_string(r.lhs)},
                      {"rhs", to_string(r.rhs)},
                      {"epsilon", std::to_string(r.epsilon)},
                      {"shifted_lhs", to_string(r.shifted_lhs)},
                      {"shifted_rhs", to_string(r.shifted_rhs)},
                      {"epsilon_prime", std::to_string(r.epsilon_prime)},
                      {"pairs", std::to_string(r.pairs)},
                      {"holds", r.holds() ? "true" : "false"}});
      if (!r.holds()) throw CheckFailed{};
    };
  });

  // harmonic analysis -------------------------------------------------------
  std::string fn_tag, measure_name = "sw";
  std::vector<std::int64_t> box_args{10, 10, 50};
  bool superharmonic = false;
  auto* c_hc = command("harmonic-check", "max |f - P_mu f| over a box");
  c_hc->add_option("function", fn_tag, "function tag")->required();
  c_hc->add_option("--measure", measure_name, "sw, sw-prob or a JSON file")->capture_default_str();
  c_hc->add_option("--box", box_args, "rx ry rz, or xmin xmax ymin ymax zmin zmax")->expected(3, 6);
  c_hc->add_flag("--superharmonic", superharmonic, "check f >= P_mu f instead");
  c_hc->callback([&] {
    action = [&] {
      const auto f = parse_function(fn_tag);
      const auto mu = resolve_measure(measure_name);
      const Box box = parse_box(box_args);
      auto meta = s.metadata("harmonic-check", f.tag() + " measure=" + mu.tag() + " box=" + box.describe());
      if (superharmonic) {
        const auto r = superharmonic_check(mu, f, box);
        std::vector<std::pair<std::string, std::string>> kv{{"superharmonic", r.holds ? "true" : "false"}};
        if (r.witness) {
          kv.emplace_back("witness", to_string(*r.witness));
          kv.emplace_back("defect", to_string(r.witness_defect));
        }
        s.emit_scalars(meta, kv);
        if (!r.holds) throw CheckFailed{};
        return;
      }
      const auto r = harmonic_residual(mu, f, box);
      std::vector<std::pair<std::string, std::string>> kv{{"max_defect", to_string(r.max_defect)},
                                                          {"points", std::to_string(r.points)},
                                                          {"nonzero_points", std::to_string(r.nonzero_points)}};
      if (r.witness && !r.harmonic()) kv.emplace_back("witness", to_string(*r.witness));
      s.emit_scalars(meta, kv);
      if (!r.harmonic()) throw CheckFailed{};
    };
  });

  auto* c_cs = command("center-shift", "max |f(g) - f(g c)| over a box");
  c_cs->add_option("function", fn_tag)->required();
  c_cs->add_option("--box", box_args)->expected(3, 6);
  c_cs->callback([&] {
    action = [&] {
      const auto f = parse_function(fn_tag);
      const auto r = center_shift_defect(f, parse_box(box_args));
      std::vector<std::pair<std::string, std::string>> kv{{"max_defect", to_string(r.max_defect)}};
      if (r.witness && !r.harmonic()) kv.emplace_back("witness", to_string(*r.witness));
      s.emit_scalars(s.metadata("center-shift", f.tag()), kv);
    };
  });

  std::string r_text, s_text, t_text = "1";
  auto* c_ch = command("char-harmonicity", "|sum_s mu_s r^x s^y t^z - 1|");
  c_ch->add_option("r", r_text)->required();
  c_ch->add_option("s", s_text)->required();
  c_ch->add_option("t", t_text);
  c_ch->add_option("--measure", measure_name)->capture_default_str();
  c_ch->callback([&] {
    action = [&] {
      const auto mu = resolve_measure(measure_name);
      const auto d = character_harmonicity(mu, parse_rational(r_text), parse_rational(s_text), parse_rational(t_text));
      s.emit_scalars(s.metadata("char-harmonicity", mu.tag()), {{"defect", to_string(d)}}, true);
    };
  });

  std::int64_t N = 0;
  auto* c_ps = command("potential-sum", "sum_{k<=n} (P^k 1_e)(x, y, z) for the southwest measure");
  positional_ints(c_ps, {{"n", &N}, {"x", &X}, {"y", &Y}, {"z", &Z}});
  c_ps->callback([&] {
    action = [&] {
      s.emit_scalars(s.metadata("potential-sum"),
                     {{"value", potential_partial_sum(N, {X, Y, Z}, s.config.node_budget).str()}}, true);
    };
  });

  bool sequence = false;
  auto* c_it = command("iterate-seed", "(P_mu^n seed)(x, y, z)");
  c_it->add_option("seed", fn_tag, "function tag, e.g. psi0")->required();
  positional_ints(c_it, {{"n", &N}, {"x", &X}, {"y", &Y}, {"z", &Z}});
  c_it->add_option("--measure", measure_name)->capture_default_str();
  c_it->add_flag("--sequence", sequence, "every k = 0..n as a table");
  c_it->callback([&] {
    action = [&] {
      const auto seed = parse_function(fn_tag);
      const auto mu = resolve_measure(measure_name);
      auto meta = s.metadata("iterate-seed", seed.tag() + " measure=" + mu.tag());
      if (!sequence) {
        const auto v = iterate_seed(mu, seed, N, {X, Y, Z}, s.config.node_budget);
        s.emit_scalars(meta, {{"value", render(v, s.config.precision)}}, true);
        return;
      }
      const auto seq = iterate_seed_sequence(mu, seed, N, {{X, Y, Z}}, s.config.node_budget);
      Table t{{"n", "value_exact", "value"}, {}};
      for (std::size_t k = 0; k < seq[0].size(); ++k)
        t.rows.push_back({std::to_string(k), to_string(seq[0][k]), to_decimal(seq[0][k], s.config.precision)});
      s.emit(meta, t);
    };
  });

  std::vector<std::string> s0_text, chi_text, point_text;
  std::string bound_text;
  auto* c_ind = command("induced", "P_mu^n (chi0 1_{G_S0}) on query points");
  c_ind->add_option("--measure", measure_name)->capture_default_str();
  c_ind->add_option("--s0", s0_text, "generator x,y,z (repeat)")->required();
  c_ind->add_option("--chi", chi_text, "character value per generator (repeat)")->required();
  c_ind->add_option("--n-max", N, "iterations")->required();
  c_ind->add_option("--point", point_text, "query point x,y,z (repeat)")->required();
  c_ind->add_option("--bound", bound_text, "divergence threshold (default 10^30)");
  c_ind->callback([&] {
    action = [&] {
      const auto mu = resolve_measure(measure_name);
      std::vector<GroupElement> s0, points;
      std::vector<Rational> chi;
      for (const auto& t : s0_text) s0.push_back(parse_element(t));
      for (const auto& t : chi_text) chi.push_back(parse_rational(t));
      for (const auto& t : point_text) points.push_back(parse_element(t));
      const Rational bound = bound_text.empty() ? default_divergence_bound() : parse_rational(bound_text);
      const auto r = induced_function(mu, s0, chi, N, bound, points, s.config.node_budget);
      auto meta = s.metadata("induced", "measure=" + mu.tag());
      meta.add("status", to_string(r.status)).add("steps", std::to_string(r.steps));
      Table t{{"x", "y", "z", "value_exact", "value"}, {}};
      for (std::size_t i = 0; i < r.points.size(); ++i) {
        const auto& v = r.values()[i];
        t.rows.push_back({as_string(r.points[i].x), as_string(r.points[i].y), as_string(r.points[i].z), to_string(v),
                          to_decimal(v, s.config.precision)});
      }
      s.emit(meta, t);
    };
  });

  std::string g0_text = "0,0,0";
  auto* c_ds = command("degree-sum", "both sides of f(g0) = sum_{G_n} p(g) f(g^-1 g0)");
  c_ds->add_option("function", fn_tag)->required();
  c_ds->add_option("n", N)->required();
  c_ds->add_option("--g0", g0_text, "x,y,z")->capture_default_str();
  c_ds->callback([&] {
    action = [&] {
      const auto f = parse_function(fn_tag);
      const auto r = degree_sum_identity(f, parse_element(g0_text), N);
      s.emit_scalars(s.metadata("degree-sum", f.tag()),
                     {{"lhs", to_string(r.lhs)},
                      {"rhs", to_string(r.rhs)},
                      {"terms", std::to_string(r.terms)},
                      {"touched_max_defect", to_string(r.touched_max_defect)},
                      {"equal", r.lhs == r.rhs ? "true" : "false"}});
      if (r.lhs != r.rhs) throw CheckFailed{};
    };
  });

  std::int64_t A = 0;
  std::string n_range;
  auto* c_cd = command("coset-decay", "boundary sums over G_{n,A} and G^sigma_{n,A}");
  c_cd->add_option("function", fn_tag)->required();
  c_cd->add_option("--g0", g0_text)->capture_default_str();
  c_cd->add_option("-A,--A", A, "height of the boundary strips")->required();
  c_cd->add_option("--n-range", n_range, "a..b, a..b:step or a,b,c")->required();
  c_cd->callback([&] {
    action = [&] {
      const auto f = parse_function(fn_tag);
      const auto g0 = parse_element(g0_text);
      std::vector<CosetRow> rows;
      try {
        rows = coset_decay_table(f, g0, A, parse_range(n_range));
      } catch (const HypothesisFailure& e) {
        s.out << "hypothesis_failed: " << e.what() << "\n";
        throw CheckFailed{};
      }
      auto meta = s.metadata("coset-decay", f.tag() + " g0=" + to_string(g0) + " A=" + std::to_string(A));
      s.emit(meta, to_table(rows, s.config.precision));
    };
  });

  std::int64_t depth = 8;
  auto* c_cc = command("center-condition", "search for non-central x, y in the semigroup with xy central");
  c_cc->add_option("--measure", measure_name)->required();
  c_cc->add_option("--depth", depth)->capture_default_str();
  c_cc->callback([&] {
    action = [&] {
      const auto mu = resolve_measure(measure_name);
      const auto r = center_product_condition(mu, depth);
      std::vector<std::pair<std::string, std::string>> kv{{"found", r.found ? "true" : "false"},
                                                          {"depth", std::to_string(r.depth)},
                                                          {"semigroup_elements", std::to_string(r.semigroup_elements)}};
      if (r.found) {
        kv.emplace_back("first", to_string(r.first));
        kv.emplace_back("second", to_string(r.second));
        kv.emplace_back("product", to_string(multiply(r.first, r.second)));
      }
      s.emit_scalars(s.metadata("center-condition", mu.tag()), kv);
    };
  });

  // experiments -------------------------------------------------------------
  std::string preset = "diagonal", t_range;
  std::int64_t height = 0;
  std::vector<std::int64_t> affine;
  auto* c_rt = command("ratio-table", "p(x,y,z-1)/p(x,y,z) along a sequence");
  add_spec_options(c_rt, preset, t_range, height, affine);
  c_rt->callback([&] {
    action = [&] {
      const auto spec = make_spec(preset, t_range, height, affine);
      const auto rep = ratio_table(spec, s.config.max_cells);
      s.emit(s.metadata("ratio-table", rep.spec), to_table(rep, s.config.precision));
    };
  });

  std::int64_t corner_i = 1;
  auto* c_crd = command("corner-decay", "p_{<=i}/p along a sequence");
  add_spec_options(c_crd, preset, t_range, height, affine);
  c_crd->add_option("-i,--i", corner_i, "corner bound")->capture_default_str();
  c_crd->callback([&] {
    action = [&] {
      const auto spec = make_spec(preset, t_range, height, affine);
      const auto rows = corner_ratio_decay(corner_i, spec, s.config.max_cells);
      s.emit(s.metadata("corner-decay", spec.describe() + " i=" + std::to_string(corner_i)),
             to_table(rows, s.config.precision));
    };
  });

  std::int64_t max_x = 30;
  std::optional<std::int64_t> max_y;
  auto* c_uni = command("unimodality", "rows that fail to rise then fall");
  c_uni->add_option("--max", max_x, "largest x (and y unless --max-y)")->capture_default_str();
  c_uni->add_option("--max-y", max_y);
  c_uni->callback([&] {
    action = [&] {
      const std::int64_t my = max_y.value_or(max_x);
      const auto v = unimodality_sweep(max_x, my);
      Table t{{"x", "y", "z"}, {}};
      for (const auto& g : v) t.rows.push_back({as_string(g.x), as_string(g.y), as_string(g.z)});
      auto meta = s.metadata("unimodality", "max_x=" + std::to_string(max_x) + " max_y=" + std::to_string(my));
      meta.add("violations", std::to_string(v.size()));
      s.emit(meta, t);
      if (!v.empty()) throw CheckFailed{};
    };
  });

  BoundRegion region;
  auto* c_b = command("bounds", "upper and lower bound sweep");
  c_b->add_option("--max-x", region.max_x)->capture_default_str();
  c_b->add_option("--max-y", region.max_y)->capture_default_str();
  c_b->add_option("--max-i", region.max_i)->capture_default_str();
  c_b->add_option("--lower-j", region.lower_js, "exponents j for p >= z^j (repeat)");
  c_b->callback([&] {
    action = [&] {
      const auto rep = bound_sweep(region);
      auto meta = s.metadata("bounds", "max_x=" + std::to_string(region.max_x) + " max_y=" +
                                           std::to_string(region.max_y) + " max_i=" + std::to_string(region.max_i));
      meta.add("upper_checked", std::to_string(rep.upper_checked))
          .add("upper_violations", std::to_string(rep.upper_violations.size()))
          .add("corner_checked", std::to_string(rep.corner_checked))
          .add("corner_violations", std::to_string(rep.corner_violations.size()));
      Table t{{"kind", "param", "x", "y", "z", "value", "holds"}, {}};
      for (const auto& g : rep.upper_violations)
        t.rows.push_back({"upper_violation", "", as_string(g.x), as_string(g.y), as_string(g.z),
                          count(g.x, g.y, g.z).str(), "false"});
      for (const auto& [i, g] : rep.corner_violations)
        t.rows.push_back({"corner_violation", std::to_string(i), as_string(g.x), as_string(g.y), as_string(g.z),
                          count_bounded_corners(g.x, g.y, g.z, i).str(), "false"});
      for (const auto& [y, m] : rep.lower_ratio_minima)
        t.rows.push_back({"lower_ratio_min", std::to_string(y), as_string(m.second.x), as_string(m.second.y),
                          as_string(m.second.z), to_decimal(m.first, s.config.precision), ""});
      for (const auto& inst : rep.lower_instances)
        t.rows.push_back({"lower_instance", std::to_string(inst.j), as_string(inst.g.x), as_string(inst.g.y),
                          as_string(inst.g.z), inst.value.str(), inst.holds ? "true" : "false"});
      s.emit(meta, t);
      if (!rep.upper_bounds_hold()) throw CheckFailed{};
    };
  });

  std::int64_t steps = 12;
  std::uint64_t trials = 100000;
  std::optional<std::uint64_t> walk_seed;
  std::vector<std::string> estimate_text;
  bool full_tally = false;
  auto* c_walk = command("walk", "southwest random walk tallies");
  c_walk->add_option("--steps", steps)->capture_default_str();
  c_walk->add_option("--trials", trials)->capture_default_str();
  c_walk->add_option("--seed", walk_seed, "overrides the configured seed");
  c_walk->add_option("--estimate", estimate_text, "compare the visits to g^-1 with 2^-(x+y) p(g); x,y,z (repeat)");
  c_walk->add_flag("--tally", full_tally, "print every visited point");
  c_walk->callback([&] {
    action = [&] {
      if (walk_seed) s.config.seed = *walk_seed;
      const auto tally = simulate_walk(steps, trials, s.config.seed, s.config.threads);
      auto meta = s.metadata("walk", "steps=" + std::to_string(steps) + " trials=" + std::to_string(trials));
      if (full_tally || estimate_text.empty()) {
        s.emit(meta, to_table(tally));
        if (estimate_text.empty()) return;
      }
      std::vector<WalkEstimate> est;
      for (const auto& t : estimate_text) est.push_back(walk_estimate(tally, parse_element(t)));
      s.emit(meta, to_table(est, s.config.precision));
      for (const auto& e : est)
        if (!e.within(3)) throw CheckFailed{};
    };
  });

  try {
    app.parse(argc, argv);
    if (!config_path.empty()) s.config.load_file(config_path);
    s.config.load_environment();
    if (format) s.config.set("format", *format);
    if (precision) s.config.set("precision", std::to_string(*precision));
    if (threads) s.config.set("threads", std::to_string(*threads));
    if (enum_cells) s.config.enum_cells = *enum_cells;
    if (word_length) s.config.word_length = *word_length;
    if (node_budget) s.config.node_budget = *node_budget;
    if (memo_capacity) s.config.memo_capacity = *memo_capacity;
    if (max_cells) s.config.max_cells = *max_cells;
    if (s.config.memo_capacity != CountTable::shared().capacity())
      CountTable::shared().set_capacity(s.config.memo_capacity);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (action) action();
    return kExitOk;
  } catch (const CheckFailed&) {
    return kExitCheckFailed;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace heis::cli
