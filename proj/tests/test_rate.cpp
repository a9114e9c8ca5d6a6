#include "bilgrow/rate.hpp"
#include "bilgrow/system_io.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace bilgrow;

namespace {

System make(std::size_t d, std::vector<Term> terms) {
  System s;
  for (auto& t : terms) --t.k, --t.i, --t.j;
  s.map = BilinearMap(d, std::move(terms));
  s.seed.assign(d, Scalar(1));
  return s;
}

FrontierTable table_for(const System& sys, int depth, PruneStrategy strategy = PruneStrategy::dominance) {
  EnumerateOptions eo;
  eo.strategy = strategy;
  FrontierTable t(sys, eo);
  t.extend_to(depth);
  return t;
}

}  // namespace

TEST_CASE("crude upper bound") {
  CHECK(crude_upper(example("linear-order")) == 2);
  CHECK(crude_upper(example("aho-sloane")) == 2);
  CHECK(crude_upper(example("matmul:2:1,1,1,0")) == 2);
  auto zero = make(2, {});
  CHECK(crude_upper(zero) == 0);
  auto scaled = make(1, {{1, 1, 1, Scalar(3)}});
  scaled.seed = {Scalar(1, 2)};
  CHECK(crude_upper(scaled) == Scalar(3, 2));
}

TEST_CASE("fekete bound for aho-sloane") {
  auto sys = example("aho-sloane");
  auto table = table_for(sys, 10);
  auto out = fekete_lower(sys, table, 0);
  REQUIRE(out.witness);
  const auto& w = *out.witness;
  CHECK(w.k == 0);
  CHECK(w.i == 0);
  CHECK(w.j == 0);
  CHECK(w.shift() == 0);
  CHECK(w.beta == 1);
  CHECK(w.n_used == 8);
  CHECK(w.value.scaled_floor == RootValue::make(Scalar(26), 8).scaled_floor);
  CHECK(w.value.lower_rational() >= RootValue::make(Scalar(56), 10).lower_rational());
  CHECK(w.value.decimal_down(4) == "1.5026");
  auto t4 = table_for(sys, 4);
  CHECK(fekete_lower(sys, t4, 0).witness->value.decimal_down(10) == "1.4953487812");
}

TEST_CASE("fekete condition not met") {
  auto sys = example("linear-order");
  auto table = table_for(sys, 6);
  auto out = fekete_lower(sys, table, 0);
  CHECK_FALSE(out.witness);
  CHECK(out.reason.find("condition not met") == 0);
  CHECK_THROWS_AS(fekete_lower(sys, table, 7), InputError);
}

TEST_CASE("fekete witness through paths") {
  // 1 -> 2 and 2 -> 1: triple (1, 2, 2) needs paths 2 -> 1 on both sides
  auto sys = make(2, {{1, 2, 2, Scalar(1)}, {2, 1, 1, Scalar(2)}});
  auto graph = build_depgraph(sys);
  auto w = fekete_witness(sys, graph, 0, 1, 1);
  REQUIRE(w);
  CHECK(w->d1 == 1);
  CHECK(w->d2 == 1);
  CHECK(w->beta > 0);
  CHECK(w->beta == w->coefficient * w->alpha1 * w->alpha2);
}

TEST_CASE("fekete witnesses satisfy supermultiplicativity on random systems") {
  std::mt19937 rng(5);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    auto sys = oracle::random_system(rng);
    auto graph = build_depgraph(sys);
    auto poset = components(graph);
    auto levels = oracle::all_tree_values(sys, 9);
    for (const auto& t : sys.map.terms()) {
      auto c = poset.component_of[t.k];
      if (poset.component_of[t.i] != c || poset.component_of[t.j] != c) continue;
      auto w = fekete_witness(sys, graph, t.k, t.i, t.j);
      REQUIRE(w);
      const int D = static_cast<int>(w->shift());
      for (int m = 1; m <= 9; ++m)
        for (int n = 1; m + n + D <= 9; ++n) {
          auto gm = oracle::max_entry(levels[static_cast<std::size_t>(m)], t.k);
          auto gn = oracle::max_entry(levels[static_cast<std::size_t>(n)], t.k);
          auto gmn = oracle::max_entry(levels[static_cast<std::size_t>(m + n + D)], t.k);
          CHECK(w->beta * gm * gn <= gmn);
          ++checked;
        }
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("certification of small examples") {
  auto lin = example("linear-order");
  auto ok = certify_upper(lin, Scalar(3, 2), {});
  REQUIRE(ok.ok());
  CHECK(check_certificate(*ok.certificate, lin));
  CertifyOptions short_run;
  short_run.max_level = 12;
  auto bad = certify_upper(lin, Scalar(1), short_run);
  CHECK_FALSE(bad.ok());
  REQUIRE(bad.failure);
  CHECK(bad.failure->escaping.size() == 2);
  CHECK(bad.levels_used == 12);

  auto aho = example("aho-sloane");
  auto a = certify_upper(aho, Scalar(1503, 1000), {});
  REQUIRE(a.ok());
  CHECK(check_certificate(*a.certificate, aho));
  CertifyOptions limited;
  limited.max_level = 16;
  CHECK_FALSE(certify_upper(aho, Scalar(3, 2), limited).ok());

  auto fib = example("matmul:2:1,1,1,0");
  CHECK(certify_upper(fib, Scalar(81, 50), {}).ok());
  CertifyOptions tiny;
  tiny.budget = 1;
  CHECK_THROWS_AS(certify_upper(example("quadratic-order"), Scalar(21, 20), tiny), BudgetError);
}

TEST_CASE("certificates round-trip and reject tampering") {
  auto aho = example("aho-sloane");
  auto out = certify_upper(aho, Scalar(151, 100), {});
  REQUIRE(out.ok());
  const auto& cert = *out.certificate;
  auto text = write_certificate(cert);
  auto back = read_certificate(text);
  CHECK(write_certificate(back) == text);
  CHECK(check_certificate(back, aho));

  CHECK_FALSE(check_certificate(cert, example("linear-order")));
  auto wrong = cert;
  wrong.lambda0 = Scalar(3, 2);
  CHECK(certificate_error(wrong, aho).has_value());

  std::mt19937 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    auto m = cert;
    std::uniform_int_distribution<int> kind(0, 5);
    auto bump = [&](Scalar& x) { x += Scalar(1, 7); };
    auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
    auto& e = m.closure[pick(m.closure.size())];
    switch (kind(rng)) {
      case 0: bump(m.generators[pick(m.generators.size())].scaled[pick(2)]); break;
      case 1: m.generators[pick(m.generators.size())].level += 1; break;
      case 2: bump(e.target[pick(2)]); break;
      case 3:
        if (e.weights.empty())
          bump(e.target[0]);
        else
          bump(e.weights[pick(e.weights.size())].second);
        break;
      case 4: bump(e.combination[pick(2)]); break;
      default: bump(m.seed[pick(2)]); break;
    }
    CHECK(certificate_error(m, aho).has_value());
  }
  CHECK_THROWS_AS(read_certificate("hull-certificate 2\n"), InputError);
  CHECK_THROWS_AS(read_certificate(text + "extra\n"), InputError);
  CHECK_THROWS_AS(read_certificate(text.substr(0, text.size() / 2)), InputError);
}

TEST_CASE("sandwich brackets the Fibonacci growth rate") {
  SandwichOptions o;
  o.depth = 8;
  o.pattern_budget = 8;
  o.width = Scalar(1, 50);
  auto b = sandwich(example("matmul:2:1,1,1,0"), o);
  CHECK(oracle::compare_golden(b.lower) < 0);
  CHECK(oracle::compare_golden(b.upper) > 0);
  CHECK(b.upper_kind == UpperKind::hull_certificate);
  CHECK(b.lower_kind == LowerKind::pattern);
  CHECK(b.width_met);
  REQUIRE(b.certificate);
  CHECK(check_certificate(*b.certificate, example("matmul:2:1,1,1,0")));
}

TEST_CASE("sandwich on aho-sloane") {
  SandwichOptions o;
  o.pattern_budget = 32;
  o.width = Scalar(1, 20);
  auto b = sandwich(example("aho-sloane"), o);
  CHECK(b.lower <= Scalar(751418401, 500000000));
  CHECK(b.upper >= Scalar(1502836801, 1000000000));
  CHECK(b.lower >= Scalar(3, 2));
  CHECK(b.width_met);
  CHECK(b.trend.size() == 32);
  CHECK(b.trend[9].g == 56);
}

TEST_CASE("component report") {
  SandwichOptions o;
  o.depth = 8;
  o.pattern_budget = 4;
  o.width = Scalar(1, 4);
  auto lin = lambda_component_report(example("linear-order"), o);
  REQUIRE(lin.size() == 2);
  CHECK(lin[1].lower == 1);
  CHECK(lin[1].upper == 1);
  CHECK(lin[0].how == "sandwich");
  CHECK(lin[0].lower == 1);
  CHECK(lin[0].upper <= Scalar(5, 4));
  CHECK(lin[0].lambda_clause == Clause::undetermined);

  auto zero = lambda_component_report(make(2, {{1, 2, 2, Scalar(1)}}), o);
  CHECK(zero[1].how == "zero");
  CHECK(zero[0].how == "inherited");
  CHECK(zero[0].upper == 0);

  auto maxed = lambda_component_report(make(3, {{1, 2, 3, Scalar(1)}, {2, 2, 2, Scalar(2)}, {3, 3, 3, Scalar(3)}}), o);
  CHECK(maxed[1].lower == 2);
  CHECK(maxed[1].upper == 2);
  CHECK(maxed[2].lower == 3);
  CHECK(maxed[0].how == "inherited");
  CHECK(maxed[0].lower == 3);
  CHECK(maxed[0].upper == 3);

  auto hsd = lambda_component_report(make(2, {{1, 1, 2, Scalar(2)}, {2, 2, 2, Scalar(1)}}), o);
  CHECK(hsd[0].cls.half_self_dependent);
  CHECK(hsd[0].lambda_clause == Clause::holds);
}

TEST_CASE("growth diagnostics") {
  auto sys = example("aho-sloane");
  auto table = table_for(sys, 16);
  auto K = fitted_submultiplicativity(table, 0);
  REQUIRE(K);
  CHECK(*K >= 1.0);
  auto m = min_normalized_growth(table, Scalar(3, 2));
  REQUIRE(m);
  CHECK(*m > 0.0);
  CHECK(*m <= 1.0);
  CHECK_FALSE(min_normalized_growth(table, Scalar(0)));
  auto rows = trend(table);
  CHECK(rows[1].g == 2);
  CHECK(rows[1].root.substr(0, 6) == "1.4142");
}
