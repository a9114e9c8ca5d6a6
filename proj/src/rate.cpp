#include "bilgrow/rate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace bilgrow {

Scalar crude_upper(const System& system) {
  require_valid(system);
  std::vector<Scalar> sums(system.dim());
  for (const auto& t : system.map.terms()) sums[t.k] += t.value;
  Scalar c, s;
  for (const auto& x : sums) c = std::max(c, x);
  for (const auto& x : system.seed) s = std::max(s, x);
  return c * s;
}

// ---------------------------------------------------------------- Fekete

std::optional<FeketeWitness> fekete_witness(const System& system, const DepGraph& graph, std::size_t k,
                                            std::size_t i, std::size_t j) {
  FeketeWitness w;
  w.target = k;
  w.k = k;
  w.i = i;
  w.j = j;
  w.coefficient = system.map.coeff(k, i, j);
  if (w.coefficient <= 0) return std::nullopt;
  auto leg = [&](std::size_t from, std::size_t& d, Scalar& alpha, std::vector<std::size_t>& path) {
    auto route = shortest_route(graph, from, k);
    if (!route) return false;
    path = *route;
    d = route->size() - 1;
    if (d == 0) {
      alpha = 1;
      return true;
    }
    try {
      alpha = pattern_for_path(system, *route).matrix(from, k);
    } catch (const InputError&) {
      return false;
    }
    return alpha > 0;
  };
  if (!leg(i, w.d1, w.alpha1, w.path1) || !leg(j, w.d2, w.alpha2, w.path2)) return std::nullopt;
  w.beta = w.coefficient * w.alpha1 * w.alpha2;
  return w;
}

FeketeOutcome fekete_lower(const System& system, const FrontierTable& table, std::size_t target) {
  if (target >= system.dim()) throw InputError("fekete_lower: vertex out of range");
  auto graph = build_depgraph(system);
  auto poset = components(graph);
  const auto comp = poset.component_of[target];
  const int N = table.depth();

  FeketeOutcome out;
  bool any_triple = false;
  for (const auto& t : system.map.terms()) {
    if (poset.component_of[t.k] != comp || poset.component_of[t.i] != comp || poset.component_of[t.j] != comp)
      continue;
    any_triple = true;
    auto w = fekete_witness(system, graph, t.k, t.i, t.j);
    if (!w) continue;
    w->target = target;
    const int D = static_cast<int>(w->shift());
    std::optional<RootValue> best;
    for (int n = D + 1; n <= N; ++n) {
      Scalar base = w->beta * table.g_k(n - D, t.k);
      if (base == 0) continue;
      auto v = RootValue::make(base, static_cast<unsigned long>(n));
      if (!best || v.scaled_floor > best->scaled_floor) {
        best = v;
        w->n_used = n;
      }
    }
    if (!best) continue;
    w->value = *best;
    if (!out.witness) {
      out.witness = std::move(w);
      continue;
    }
    const auto& cur = *out.witness;
    // terms arrive in lexicographic (k, i, j) order, so ties keep the earlier triple
    if (w->value.scaled_floor > cur.value.scaled_floor ||
        (w->value.scaled_floor == cur.value.scaled_floor && w->shift() < cur.shift()))
      out.witness = std::move(w);
  }
  if (!out.witness) {
    std::ostringstream os;
    if (!any_triple)
      os << "condition not met: the component of vertex " << target + 1 << " has no internal triple";
    else
      os << "condition not met: no internal triple yields a positive bound within depth " << N;
    out.reason = os.str();
  }
  return out;
}

// ---------------------------------------------------------- certification

namespace {

struct Generator {
  std::size_t id;
  int level;
  Vector scaled;
};

HullCertificate build_certificate(const System& scaled_system, const Scalar& lambda0,
                                  const std::vector<Generator>& gens) {
  HullCertificate cert;
  cert.lambda0 = lambda0;
  cert.seed = scaled_system.seed;
  const std::size_t d = scaled_system.dim();
  std::vector<Vector> basis;
  for (const auto& g : gens) {
    Scalar factor = pow(lambda0, static_cast<unsigned long>(g.level));
    Vector unscaled(d);
    for (std::size_t k = 0; k < d; ++k) unscaled[k] = g.scaled[k] * factor;
    cert.generators.push_back({g.level, std::move(unscaled), g.scaled});
    basis.push_back(g.scaled);
  }
  auto entry = [&](std::size_t a, std::size_t b, Vector target) {
    auto w = majorization_weights(target, basis);
    if (!w) throw std::logic_error("certificate: closure lost between search and emission");
    ClosureEntry e{a, b, std::move(target), std::move(*w), {}};
    e.combination = combine(e.weights, basis, d);
    return e;
  };
  cert.seed_entry = entry(0, 0, cert.seed);
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = 0; b < gens.size(); ++b)
      cert.closure.push_back(entry(a, b, star(scaled_system.map, basis[a], basis[b])));
  return cert;
}

}  // namespace

CertifyOutcome certify_upper(const System& system, const Scalar& lambda0, const CertifyOptions& options) {
  require_valid(system);
  if (options.max_level < 1) throw InputError("certify_upper: max_level must be positive");
  System scaled = scale_seed(system, lambda0);
  EnumerateOptions eo;
  eo.strategy = PruneStrategy::majorized;
  eo.budget = options.budget;
  eo.threads = options.threads;
  FrontierTable table(scaled, eo);

  std::vector<Generator> gens;
  std::size_t next_id = 0;
  std::set<std::pair<std::size_t, std::size_t>> passed;
  std::optional<std::pair<std::size_t, std::size_t>> last_escape;
  CertifyOutcome out;

  for (int L = 1; L <= options.max_level; ++L) {
    table.extend_to(L);
    out.levels_used = L;

    // existing generators first so that a repeated vector keeps its earlier level
    std::vector<Generator> pool = gens;
    for (const auto& v : table.level(L).vectors) pool.push_back({next_id++, L, v});
    std::stable_sort(pool.begin(), pool.end(), [](const Generator& a, const Generator& b) { return a.scaled < b.scaled; });
    std::vector<Vector> distinct;
    std::vector<std::size_t> owner;
    for (std::size_t t = 0; t < pool.size(); ++t) {
      if (!distinct.empty() && distinct.back() == pool[t].scaled) continue;
      distinct.push_back(pool[t].scaled);
      owner.push_back(t);
    }
    gens.clear();
    for (auto t : prune_sorted(distinct, PruneStrategy::majorized)) gens.push_back(pool[owner[t]]);
    if (gens.size() > options.budget) {
      std::ostringstream os;
      os << "certification at lambda0 = " << to_string(lambda0) << " holds " << gens.size()
         << " generators at level " << L << ", over the budget of " << options.budget;
      throw BudgetError(os.str(), L);
    }

    std::vector<Vector> basis;
    for (const auto& g : gens) basis.push_back(g.scaled);

    std::vector<std::pair<std::size_t, std::size_t>> pending;
    for (std::size_t a = 0; a < gens.size(); ++a)
      for (std::size_t b = 0; b < gens.size(); ++b)
        if (!passed.count({gens[a].id, gens[b].id})) pending.emplace_back(a, b);
    // the likeliest escapes first: the previous escape, then large level sums
    std::stable_sort(pending.begin(), pending.end(), [&](const auto& x, const auto& y) {
      auto key = [&](const auto& p) {
        bool last = last_escape && *last_escape == std::pair{gens[p.first].id, gens[p.second].id};
        return std::pair{!last, -(gens[p.first].level + gens[p.second].level)};
      };
      return key(x) < key(y);
    });

    std::optional<CertifyFailure> failure;
    if (!is_majorized(scaled.seed, basis)) {
      failure = CertifyFailure{L, scaled.seed, 0, 0, "the scaled seed escapes the generator hull"};
    }
    for (const auto& [a, b] : pending) {
      if (failure) break;
      Vector w = star(scaled.map, basis[a], basis[b]);
      if (is_majorized(w, basis)) {
        passed.insert({gens[a].id, gens[b].id});
        continue;
      }
      last_escape = std::pair{gens[a].id, gens[b].id};
      failure = CertifyFailure{L, std::move(w), gens[a].level, gens[b].level, "star of two generators escapes the hull"};
    }
    if (!failure) {
      out.certificate = build_certificate(scaled, lambda0, gens);
      out.failure.reset();
      return out;
    }
    out.failure = std::move(failure);
  }
  out.failure->reason += "; no closure up to level " + std::to_string(options.max_level);
  return out;
}

namespace {

std::optional<std::string> entry_error(const ClosureEntry& e, const Vector& expected_target,
                                       const std::vector<Vector>& basis, std::size_t d, const std::string& where) {
  if (e.target != expected_target) return where + ": target differs from the recomputed value";
  Scalar total;
  for (std::size_t t = 0; t < e.weights.size(); ++t) {
    const auto& [idx, mu] = e.weights[t];
    if (idx >= basis.size()) return where + ": weight index out of range";
    if (t > 0 && idx <= e.weights[t - 1].first) return where + ": weight indices not strictly increasing";
    if (mu <= 0) return where + ": nonpositive weight";
    total += mu;
  }
  if (total > 1) return where + ": weights sum above 1";
  if (e.combination.size() != d || e.combination != combine(e.weights, basis, d))
    return where + ": combination differs from the weighted sum";
  if (!leq(e.target, e.combination)) return where + ": target not below the combination";
  return std::nullopt;
}

}  // namespace

std::optional<std::string> certificate_error(const HullCertificate& cert, const System& system) {
  if (!validate(system).ok()) return "system is invalid";
  const std::size_t d = system.dim();
  if (cert.lambda0 <= 0) return "lambda0 must be positive";
  if (cert.seed.size() != d) return "seed has the wrong length";
  for (std::size_t k = 0; k < d; ++k)
    if (cert.seed[k] * cert.lambda0 != system.seed[k]) return "seed is not the system seed scaled by lambda0";
  if (cert.generators.empty()) return "no generators";
  std::vector<Vector> basis;
  for (std::size_t t = 0; t < cert.generators.size(); ++t) {
    const auto& g = cert.generators[t];
    std::string where = "generator " + std::to_string(t);
    if (g.level < 1) return where + ": level must be positive";
    if (g.unscaled.size() != d || g.scaled.size() != d) return where + ": wrong length";
    Scalar factor = pow(cert.lambda0, static_cast<unsigned long>(g.level));
    for (std::size_t k = 0; k < d; ++k) {
      if (g.scaled[k] < 0) return where + ": negative entry";
      if (g.scaled[k] * factor != g.unscaled[k]) return where + ": scaled and unscaled disagree";
    }
    basis.push_back(g.scaled);
  }
  if (cert.seed_entry.a != 0 || cert.seed_entry.b != 0) return "seed entry carries a pair index";
  if (auto e = entry_error(cert.seed_entry, cert.seed, basis, d, "seed entry")) return e;
  const std::size_t G = basis.size();
  if (cert.closure.size() != G * G) return "closure does not cover every ordered pair";
  for (std::size_t p = 0; p < cert.closure.size(); ++p) {
    const auto& e = cert.closure[p];
    std::string where = "closure entry " + std::to_string(p);
    if (e.a != p / G || e.b != p % G) return where + ": pair out of order";
    if (auto err = entry_error(e, star(system.map, basis[e.a], basis[e.b]), basis, d, where)) return err;
  }
  return std::nullopt;
}

bool check_certificate(const HullCertificate& cert, const System& system) {
  return !certificate_error(cert, system).has_value();
}

// ------------------------------------------------------------ text format

namespace {

void put_vector(std::ostream& os, const Vector& v) {
  for (const auto& x : v) os << ' ' << x.get_str();
}

void put_entry(std::ostream& os, const ClosureEntry& e) {
  os << " target";
  put_vector(os, e.target);
  os << " weights " << e.weights.size();
  for (const auto& [t, mu] : e.weights) os << ' ' << t << ':' << mu.get_str();
  os << " combination";
  put_vector(os, e.combination);
  os << '\n';
}

class Reader {
public:
  explicit Reader(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
      ++number;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      std::vector<std::string> words;
      for (std::string w; ls >> w;) words.push_back(w);
      if (!words.empty()) lines_.push_back({number, std::move(words)});
    }
  }

  void next_line(std::string_view keyword) {
    if (cur_ >= lines_.size()) fail("unexpected end of certificate, expected '" + std::string(keyword) + "'");
    line_ = &lines_[cur_++];
    pos_ = 0;
    expect(keyword);
  }
  void expect(std::string_view word) {
    if (word_() != word) fail("expected '" + std::string(word) + "'");
  }
  std::string word_() {
    if (pos_ >= line_->words.size()) fail("line ends early");
    return line_->words[pos_++];
  }
  Scalar scalar() {
    auto w = word_();
    try {
      return parse_scalar(w);
    } catch (const InputError& e) {
      fail(e.what());
    }
  }
  std::size_t count() {
    auto w = word_();
    if (w.empty() || w.find_first_not_of("0123456789") != std::string::npos) fail("expected a count, got '" + w + "'");
    return std::stoul(w);
  }
  Vector vector(std::size_t d) {
    Vector v;
    for (std::size_t k = 0; k < d; ++k) v.push_back(scalar());
    return v;
  }
  void end_line() {
    if (pos_ != line_->words.size()) fail("trailing text");
  }
  bool done() const { return cur_ >= lines_.size(); }
  [[noreturn]] void fail(const std::string& msg) {
    std::ostringstream os;
    os << "certificate";
    if (line_) os << " line " << line_->number;
    os << ": " << msg;
    throw InputError(os.str());
  }

  ClosureEntry entry(std::size_t d) {
    ClosureEntry e;
    expect("target");
    e.target = vector(d);
    expect("weights");
    const std::size_t m = count();
    for (std::size_t t = 0; t < m; ++t) {
      auto w = word_();
      auto colon = w.find(':');
      if (colon == std::string::npos || colon == 0) fail("weight '" + w + "' is not index:value");
      auto idx = w.substr(0, colon);
      if (idx.find_first_not_of("0123456789") != std::string::npos) fail("bad weight index '" + idx + "'");
      try {
        e.weights.emplace_back(std::stoul(idx), parse_scalar(w.substr(colon + 1)));
      } catch (const InputError& err) {
        fail(err.what());
      }
    }
    expect("combination");
    e.combination = vector(d);
    end_line();
    return e;
  }

private:
  struct Line {
    int number;
    std::vector<std::string> words;
  };
  std::vector<Line> lines_;
  std::size_t cur_ = 0;
  const Line* line_ = nullptr;
  std::size_t pos_ = 0;
};

}  // namespace

std::string write_certificate(const HullCertificate& cert) {
  std::ostringstream os;
  const std::size_t d = cert.seed.size();
  os << "hull-certificate 1\n";
  os << "lambda0 " << cert.lambda0.get_str() << '\n';
  os << "dim " << d << '\n';
  os << "seed";
  put_vector(os, cert.seed);
  os << '\n';
  os << "generators " << cert.generators.size() << '\n';
  for (const auto& g : cert.generators) {
    os << "generator " << g.level << " unscaled";
    put_vector(os, g.unscaled);
    os << " scaled";
    put_vector(os, g.scaled);
    os << '\n';
  }
  os << "seed-entry";
  put_entry(os, cert.seed_entry);
  os << "closure " << cert.closure.size() << '\n';
  for (const auto& e : cert.closure) {
    os << "entry " << e.a << ' ' << e.b;
    put_entry(os, e);
  }
  os << "end\n";
  return os.str();
}

HullCertificate read_certificate(std::string_view text) {
  Reader r(text);
  HullCertificate cert;
  r.next_line("hull-certificate");
  r.expect("1");
  r.end_line();
  r.next_line("lambda0");
  cert.lambda0 = r.scalar();
  r.end_line();
  r.next_line("dim");
  const std::size_t d = r.count();
  r.end_line();
  r.next_line("seed");
  cert.seed = r.vector(d);
  r.end_line();
  r.next_line("generators");
  const std::size_t G = r.count();
  r.end_line();
  for (std::size_t t = 0; t < G; ++t) {
    r.next_line("generator");
    CertificateGenerator g;
    g.level = static_cast<int>(r.count());
    r.expect("unscaled");
    g.unscaled = r.vector(d);
    r.expect("scaled");
    g.scaled = r.vector(d);
    r.end_line();
    cert.generators.push_back(std::move(g));
  }
  r.next_line("seed-entry");
  cert.seed_entry = r.entry(d);
  r.next_line("closure");
  const std::size_t C = r.count();
  r.end_line();
  for (std::size_t t = 0; t < C; ++t) {
    r.next_line("entry");
    std::size_t a = r.count(), b = r.count();
    auto e = r.entry(d);
    e.a = a;
    e.b = b;
    cert.closure.push_back(std::move(e));
  }
  r.next_line("end");
  r.end_line();
  if (!r.done()) r.fail("text after 'end'");
  return cert;
}

// --------------------------------------------------------------- sandwich

std::string_view to_string(LowerKind k) {
  switch (k) {
    case LowerKind::none:
      return "none";
    case LowerKind::pattern:
      return "pattern";
    case LowerKind::fekete:
      return "fekete";
  }
  return "?";
}

std::string_view to_string(UpperKind k) {
  return k == UpperKind::crude ? "crude" : "hull-certificate";
}

std::string_view to_string(Clause c) {
  switch (c) {
    case Clause::not_applicable:
      return "n/a";
    case Clause::holds:
      return "holds";
    case Clause::fails:
      return "fails";
    case Clause::undetermined:
      return "undetermined";
  }
  return "?";
}

std::vector<TrendRow> trend(const FrontierTable& table) {
  std::vector<TrendRow> rows;
  for (int n = 1; n <= table.depth(); ++n) {
    Scalar g = table.g(n);
    rows.push_back({n, g, root_decimal(g, static_cast<unsigned long>(n), 12, Rounding::nearest_even)});
  }
  return rows;
}

namespace {

// Smallest decimal grid point strictly above lo and at least x.
Scalar snap_up(const Scalar& x, const Scalar& lo, unsigned long digits) {
  const mpz_class scale = pow10(digits);
  mpz_class num = x.get_num() * scale, q;
  mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), x.get_den_mpz_t());
  Scalar s(q, scale);
  s.canonicalize();
  if (s <= lo) {
    mpz_class lnum = lo.get_num() * scale, f;
    mpz_fdiv_q(f.get_mpz_t(), lnum.get_mpz_t(), lo.get_den_mpz_t());
    s = Scalar(f + 1, scale);
    s.canonicalize();
  }
  return s;
}

unsigned long grid_digits(const Scalar& width) {
  unsigned long p = 2;
  while (p < 30 && Scalar(1, pow10(p)) * 8 > width) ++p;
  return p;
}

}  // namespace

LambdaBounds sandwich(FrontierTable& table, const SandwichOptions& options) {
  const System& sys = table.system();
  if (options.depth < 1 || options.pattern_budget < 1) throw InputError("sandwich: depth and pattern budget must be positive");
  if (options.width < 0) throw InputError("sandwich: width must be nonnegative");
  table.extend_to(std::max(options.depth, options.pattern_budget));

  LambdaBounds out;
  out.crude = crude_upper(sys);
  out.upper = out.crude;
  out.upper_decimal = format_fixed(out.crude, 12, Rounding::up);

  std::optional<RootValue> best;
  PatternSearchOptions po;
  po.max_leaves = options.pattern_budget;
  po.budget = options.pattern_matrices;
  auto search = search_lower_bound(sys, table, po);
  out.pattern_curve = search.curve;
  if (search.best) {
    out.pattern = search.best;
    if (auto p = power_diagonal_bound(search.best->pattern, options.max_power);
        p && p->value.scaled_floor > out.pattern->value.scaled_floor)
      out.pattern = p;
    best = out.pattern->value;
    out.lower_kind = LowerKind::pattern;
  }
  auto poset = components(build_depgraph(sys));
  auto classes = classify(sys, poset);
  for (std::size_t c = 0; c < poset.size(); ++c) {
    if (!classes[c].internal_triple) continue;
    auto f = fekete_lower(sys, table, poset.components[c].front());
    if (f.witness && (!best || f.witness->value.scaled_floor > best->scaled_floor)) {
      best = f.witness->value;
      out.fekete = f.witness;
      out.lower_kind = LowerKind::fekete;
    }
  }
  if (best) {
    out.lower = best->lower_rational();
    out.lower_decimal = best->decimal_down(12);
  } else {
    out.lower = 0;
    out.lower_decimal = format_fixed(Scalar(0), 12, Rounding::down);
  }
  out.trend = trend(table);

  // bisection: failures never move the certified upper bound
  const auto digits = grid_digits(options.width);
  Scalar lo = out.lower;
  int failures = 0;
  for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
    if (out.upper - out.lower <= options.width) break;
    Scalar mid = (lo + out.upper) / 2;
    Scalar lambda0 = snap_up(mid, lo, digits);
    if (lambda0 >= out.upper) break;
    BisectionStep step{lambda0, false, 0, ""};
    try {
      auto res = certify_upper(sys, lambda0, options.certify);
      step.levels_used = res.levels_used;
      if (res.ok()) {
        step.certified = true;
        out.upper = lambda0;
        out.upper_kind = UpperKind::hull_certificate;
        out.certificate = std::move(res.certificate);
      } else {
        step.note = res.failure->reason;
      }
    } catch (const BudgetError& e) {
      step.levels_used = e.level();
      step.note = e.what();
    }
    if (!step.certified) {
      lo = lambda0;
      ++failures;
    }
    out.attempts.push_back(std::move(step));
    if (failures >= options.max_failures) break;
  }
  if (out.upper_kind == UpperKind::hull_certificate) out.upper_decimal = format_fixed(out.upper, 12, Rounding::up);
  out.width_met = out.upper - out.lower <= options.width;
  return out;
}

LambdaBounds sandwich(const System& system, const SandwichOptions& options) {
  EnumerateOptions eo;
  eo.strategy = PruneStrategy::majorized;
  eo.budget = options.frontier_budget;
  eo.threads = options.threads;
  FrontierTable table(system, eo);
  return sandwich(table, options);
}

std::vector<ComponentLambda> lambda_component_report(const System& system, const SandwichOptions& options) {
  require_valid(system);
  auto poset = components(build_depgraph(system));
  auto classes = classify(system, poset);
  std::vector<std::optional<ComponentLambda>> done(poset.size());

  std::function<const ComponentLambda&(std::size_t)> solve = [&](std::size_t c) -> const ComponentLambda& {
    if (done[c]) return *done[c];
    ComponentLambda r;
    r.component = c;
    r.cls = classes[c];
    std::vector<Term> own;
    for (const auto& t : system.map.terms())
      if (poset.component_of[t.k] == c) own.push_back(t);
    bool all_below = std::all_of(own.begin(), own.end(), [&](const Term& t) {
      return poset.component_of[t.i] != c && poset.component_of[t.j] != c;
    });
    if (own.empty()) {
      r.lower = r.upper = 0;
      r.how = "zero";
    } else if (all_below) {
      r.how = "inherited";
      for (const auto& t : own)
        for (auto v : {t.i, t.j}) {
          const auto& sub = solve(poset.component_of[v]);
          r.lower = std::max(r.lower, sub.lower);
          r.upper = std::max(r.upper, sub.upper);
        }
    } else {
      auto sub = subsystem(system, poset, c);
      auto b = sandwich(sub.system, options);
      r.lower = b.lower;
      r.upper = b.upper;
      r.how = "sandwich";
    }
    if (r.cls.half_self_dependent && !own.empty()) {
      r.lambda_clause = Clause::holds;
      for (auto below : poset.below(c)) {
        const auto& sub = solve(below);
        if (sub.lower >= r.upper) {
          r.lambda_clause = Clause::fails;
          break;
        }
        if (!(sub.upper < r.lower)) r.lambda_clause = Clause::undetermined;
      }
    }
    done[c] = std::move(r);
    return *done[c];
  };
  std::vector<ComponentLambda> out;
  for (std::size_t c = 0; c < poset.size(); ++c) out.push_back(solve(c));
  return out;
}

std::optional<double> fitted_submultiplicativity(const FrontierTable& table, std::size_t k) {
  std::optional<double> K;
  const int N = table.depth();
  for (int m = 2; 2 * m <= N; ++m)
    for (int n = m; m + n <= N; ++n) {
      Scalar a = table.g_k(m, k), b = table.g_k(n, k), c = table.g_k(m + n, k);
      if (a == 0 || b == 0 || c == 0) continue;
      double lr = log_of(c) - log_of(a) - log_of(b);
      double need = std::exp(std::max(0.0, lr) / std::log(static_cast<double>(m)));
      K = K ? std::max(*K, need) : need;
    }
  return K;
}

std::optional<double> min_normalized_growth(const FrontierTable& table, const Scalar& lower) {
  if (lower <= 0) return std::nullopt;
  std::optional<double> best;
  for (int n = 1; n <= table.depth(); ++n) {
    Scalar g = table.g(n);
    if (g == 0) continue;
    double v = std::exp(log_of(g) - n * log_of(lower));
    best = best ? std::min(*best, v) : v;
  }
  return best;
}

}  // namespace bilgrow
