#include "bilgrow/cli.hpp"

#include "bilgrow/depgraph.hpp"
#include "bilgrow/frontier.hpp"
#include "bilgrow/patterns.hpp"
#include "bilgrow/rate.hpp"
#include "bilgrow/system_io.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace bilgrow {

namespace {

struct Common {
  std::string system_file;
  std::string example_name;
  int depth = 20;
  std::string strategy = "dominance";
  std::size_t budget = 100000;
  unsigned threads = 1;
  std::string out_dir;
};

void add_source(CLI::App* cmd, Common& c) {
  auto* sys = cmd->add_option("--system", c.system_file, "system definition file");
  auto* ex = cmd->add_option("--example", c.example_name, "built-in example name");
  sys->excludes(ex);
}

void add_enumeration(CLI::App* cmd, Common& c, int default_depth) {
  c.depth = default_depth;
  cmd->add_option("--depth", c.depth, "deepest level n")->check(CLI::Range(1, 100000));
  cmd->add_option("--strategy", c.strategy, "pruning: none, dominance, majorized")
      ->check(CLI::IsMember({"none", "dominance", "majorized", "majorized-hull"}));
  cmd->add_option("--budget", c.budget, "retained vectors allowed per level")->check(CLI::PositiveNumber);
  cmd->add_option("--threads", c.threads, "worker threads (results do not depend on it)")->check(CLI::Range(1u, 256u));
}

void add_out(CLI::App* cmd, Common& c) { cmd->add_option("--out", c.out_dir, "directory for output files"); }

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

System load(const Common& c) {
  if (!c.system_file.empty()) return load_system(c.system_file);
  if (!c.example_name.empty()) return example(c.example_name);
  throw UsageError("one of --system FILE or --example NAME is required");
}

/// Writes `text` to DIR/name when --out is given, otherwise to `out`.
void emit(const Common& c, const std::string& name, const std::string& text, std::ostream& out) {
  if (c.out_dir.empty()) {
    out << text;
    return;
  }
  std::filesystem::create_directories(c.out_dir);
  auto path = std::filesystem::path(c.out_dir) / name;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path.string() + "'");
  f << text;
  if (!f) throw InputError("failed writing '" + path.string() + "'");
}

Scalar parse_flag_scalar(const std::string& text, const char* flag) {
  try {
    return parse_scalar(text);
  } catch (const InputError& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

std::string levels_csv(const FrontierTable& table, bool shapes, bool hulls) {
  const auto d = table.system().dim();
  std::ostringstream os;
  os << "n,g,g_approx_nearest";
  for (std::size_t k = 0; k < d; ++k) os << ",g_" << k + 1;
  os << ",raw_count,distinct_count,retained_count";
  if (hulls) os << ",h,h_exact";
  if (shapes) os << ",shape_count";
  os << '\n';
  for (int n = 1; n <= table.depth(); ++n) {
    const auto& lvl = table.level(n);
    os << n << ',' << to_string(table.g(n)) << ',' << format_significant(table.g(n), 12, Rounding::nearest_even);
    for (std::size_t k = 0; k < d; ++k) os << ',' << to_string(table.g_k(n, k));
    os << ',' << lvl.raw_count << ',' << lvl.vectors.size() + lvl.pruned_count << ',' << lvl.vectors.size();
    if (hulls) {
      auto h = hull_vertex_count(table, n);
      os << ',' << h.vertices << ',' << (h.exact ? "yes" : "no");
    }
    if (shapes) os << ',' << lvl.shape_count.get_str();
    os << '\n';
  }
  return os.str();
}

EnumerateOptions enum_options(const Common& c, bool shapes = false) {
  EnumerateOptions o;
  o.strategy = parse_strategy(c.strategy);
  o.budget = c.budget;
  o.threads = c.threads;
  o.count_shapes = shapes;
  return o;
}

std::string matrix_text(const Matrix& m, const std::string& indent) {
  std::ostringstream os;
  for (std::size_t r = 0; r < m.size(); ++r) {
    os << indent;
    for (std::size_t c = 0; c < m.size(); ++c) os << (c ? " " : "") << to_string(m(r, c));
    os << '\n';
  }
  return os.str();
}

std::string describe_bound(const DiagonalBound& b) {
  std::ostringstream os;
  os << "  pattern with " << b.pattern.leaves << " leaves, power " << b.power << ", diagonal entry " << b.index + 1
     << '\n';
  os << "  exact: (" << to_string(b.value.base) << ")^(1/" << b.value.root << ")\n";
  os << "  witness: " << b.pattern.text() << '\n';
  return os.str();
}

std::string describe_fekete(const FeketeWitness& w) {
  std::ostringstream os;
  os << "  triple (k,i,j) = (" << w.k + 1 << ',' << w.i + 1 << ',' << w.j + 1 << "), c = " << to_string(w.coefficient)
     << ", d1 = " << w.d1 << ", d2 = " << w.d2 << ", alpha1 = " << to_string(w.alpha1)
     << ", alpha2 = " << to_string(w.alpha2) << ", beta = " << to_string(w.beta) << '\n';
  os << "  exact: (beta g_" << w.k + 1 << "(" << w.n_used - static_cast<int>(w.shift()) << "))^(1/" << w.n_used
     << ") = (" << to_string(w.value.base) << ")^(1/" << w.value.root << ")\n";
  return os.str();
}

std::string rate_report(const System& sys, const LambdaBounds& b, const SandwichOptions& o, const FrontierTable& table,
                        const std::vector<ComponentLambda>* comps) {
  std::ostringstream os;
  os << "system: " << (sys.name.empty() ? "(unnamed)" : sys.name) << '\n';
  os << "dimension: " << sys.dim() << '\n';
  os << "depth: " << o.depth << ", pattern budget: " << o.pattern_budget << ", target width: " << to_string(o.width)
     << '\n';
  os << '\n';
  os << "lower bound (rounded down): " << b.lower_decimal << " via " << to_string(b.lower_kind) << '\n';
  os << "lower bound exact rational: " << to_string(b.lower) << '\n';
  if (b.lower_kind == LowerKind::pattern && b.pattern) os << describe_bound(*b.pattern);
  if (b.lower_kind == LowerKind::fekete && b.fekete) os << describe_fekete(*b.fekete);
  os << "upper bound (rounded up): " << b.upper_decimal << " via " << to_string(b.upper_kind) << '\n';
  os << "upper bound exact rational: " << to_string(b.upper) << '\n';
  if (b.certificate)
    os << "  certificate: lambda0 = " << to_string(b.certificate->lambda0) << ", "
       << b.certificate->generators.size() << " generators, " << b.certificate->closure.size() << " closure entries\n";
  os << "crude upper bound: " << to_string(b.crude) << '\n';
  if (b.crude == 0) os << "  every level beyond the first is zero, so lambda = 0\n";
  os << "interval width: " << format_fixed(b.gap(), 12, Rounding::up) << " (rounded up), target "
     << (b.width_met ? "met" : "not met") << '\n';
  os << '\n';
  os << "bisection attempts:\n";
  if (b.attempts.empty()) os << "  none\n";
  for (const auto& a : b.attempts) {
    os << "  lambda0 = " << to_string(a.lambda0) << ": ";
    if (a.certified)
      os << "certified at level " << a.levels_used << '\n';
    else
      os << "not certified (" << a.note << ")\n";
  }
  if (b.pattern && b.lower_kind != LowerKind::pattern) {
    os << "\nbest pattern bound (rounded down): " << b.pattern->value.decimal_down(12) << '\n';
    os << describe_bound(*b.pattern);
  }
  if (b.fekete && b.lower_kind != LowerKind::fekete) {
    os << "\nbest Fekete bound (rounded down): " << b.fekete->value.decimal_down(12) << '\n';
    os << describe_fekete(*b.fekete);
  }
  if (comps) {
    os << "\ncomponents:\n";
    auto poset = components(build_depgraph(sys));
    for (const auto& c : *comps) {
      os << "  C" << c.component + 1 << " {";
      for (std::size_t t = 0; t < poset.components[c.component].size(); ++t)
        os << (t ? "," : "") << poset.components[c.component][t] + 1;
      os << "}: lambda in [" << format_fixed(c.lower, 12, Rounding::down) << ", "
         << format_fixed(c.upper, 12, Rounding::up) << "] (" << c.how << ")";
      if (c.cls.half_self_dependent) os << ", half-self-dependent lambda clause " << to_string(c.lambda_clause);
      os << '\n';
    }
  }
  os << "\nheuristic data (not certified):\n";
  auto poset = components(build_depgraph(sys));
  auto classes = classify(sys, poset);
  for (std::size_t c = 0; c < poset.size(); ++c) {
    if (!classes[c].internal_triple) continue;
    auto k = poset.components[c].front();
    if (auto K = fitted_submultiplicativity(table, k))
      os << "  fitted K in g_" << k + 1 << "(m+n) <= K^(ln m) g_" << k + 1 << "(m) g_" << k + 1 << "(n): " << *K
         << '\n';
  }
  if (auto m = min_normalized_growth(table, b.lower)) os << "  min over n of g(n) / lower^n: " << *m << '\n';
  os << "  trend g(n)^(1/n), rounded to nearest:\n";
  for (const auto& r : b.trend) os << "    " << r.n << ' ' << to_string(r.g) << ' ' << r.root << '\n';
  return os.str();
}

std::string bounds_csv(const LambdaBounds& b) {
  std::ostringstream os;
  os << "n,g,g_root_approx_nearest,pattern_lower_down\n";
  const std::size_t rows = std::max(b.trend.size(), b.pattern_curve.size());
  for (std::size_t t = 0; t < rows; ++t) {
    os << t + 1 << ',';
    if (t < b.trend.size()) os << to_string(b.trend[t].g) << ',' << b.trend[t].root;
    else os << ',';
    os << ',';
    if (t < b.pattern_curve.size() && b.pattern_curve[t]) os << b.pattern_curve[t]->decimal_down(12);
    os << '\n';
  }
  return os.str();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Growth of nonnegative bilinear systems", "bilgrow"};
  app.require_subcommand(1);
  Common c;

  auto* enumerate_cmd = app.add_subcommand("enumerate", "level sets A_n and g(n); writes levels.csv");
  add_source(enumerate_cmd, c);
  add_enumeration(enumerate_cmd, c, 20);
  add_out(enumerate_cmd, c);
  bool shapes = false, hulls = false;
  enumerate_cmd->add_flag("--count-shapes", shapes, "count evaluated tree shapes (exact under strategy none)");
  enumerate_cmd->add_flag("--hull", hulls, "add hull vertex counts");

  auto* hull_cmd = app.add_subcommand("hull-stats", "hull vertex counts h(n); writes hull.csv");
  add_source(hull_cmd, c);
  add_enumeration(hull_cmd, c, 20);
  add_out(hull_cmd, c);

  auto* rate_cmd = app.add_subcommand("rate", "certified bounds on lambda; writes rate-report.txt, bounds.csv, certificate.txt");
  add_source(rate_cmd, c);
  add_enumeration(rate_cmd, c, 24);
  add_out(rate_cmd, c);
  int pattern_budget = 16, max_level = 160;
  std::size_t generator_budget = 5000;
  std::string width = "1/100", lambda0_text;
  bool with_components = false;
  rate_cmd->add_option("--pattern-budget", pattern_budget, "largest pattern leaf count")->check(CLI::Range(1, 4096));
  rate_cmd->add_option("--width", width, "target interval width, p/q");
  rate_cmd->add_option("--max-level", max_level, "deepest level used by certification")->check(CLI::Range(1, 100000));
  rate_cmd->add_option("--generator-budget", generator_budget, "generators allowed per certificate")
      ->check(CLI::PositiveNumber);
  rate_cmd->add_option("--lambda0", lambda0_text, "only try to certify lambda <= lambda0");
  rate_cmd->add_flag("--components", with_components, "add per-component intervals");

  auto* patterns_cmd = app.add_subcommand("patterns", "best diagonal pattern bound; writes patterns.txt");
  add_source(patterns_cmd, c);
  add_enumeration(patterns_cmd, c, 16);
  add_out(patterns_cmd, c);
  std::size_t matrix_budget = 20000;
  unsigned max_power = 16;
  patterns_cmd->add_option("--pattern-budget", pattern_budget, "largest pattern leaf count")->check(CLI::Range(1, 4096));
  patterns_cmd->add_option("--matrix-budget", matrix_budget, "matrices kept per leaf count")->check(CLI::PositiveNumber);
  patterns_cmd->add_option("--max-power", max_power, "powers of the best pattern tried")->check(CLI::Range(1u, 1024u));

  auto* dep_cmd = app.add_subcommand("depgraph", "dependency graph and components; writes depgraph.dot");
  add_source(dep_cmd, c);
  add_out(dep_cmd, c);

  auto* check_cmd = app.add_subcommand("certify-check", "verify a certificate file against a system");
  add_source(check_cmd, c);
  std::string cert_file;
  check_cmd->add_option("--certificate", cert_file, "certificate file")->required();

  auto* examples_cmd = app.add_subcommand("examples", "list built-in examples or print one");
  std::string show;
  examples_cmd->add_option("--show", show, "print the named example in system-file form");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }

  try {
    if (*examples_cmd) {
      if (!show.empty()) {
        out << serialize_system(example(show));
      } else {
        for (const auto& n : example_names()) out << n << '\n';
      }
      return exit_ok;
    }

    const System sys = load(c);

    if (*enumerate_cmd || *hull_cmd) {
      const bool is_hull = hull_cmd->parsed();
      FrontierTable table(sys, enum_options(c, !is_hull && shapes));
      table.extend_to(c.depth);
      if (is_hull) {
        std::ostringstream os;
        os << "n,retained_count,h,h_exact\n";
        for (int n = 1; n <= table.depth(); ++n) {
          auto h = hull_vertex_count(table, n);
          os << n << ',' << table.level(n).vectors.size() << ',' << h.vertices << ',' << (h.exact ? "yes" : "no")
             << '\n';
        }
        emit(c, "hull.csv", os.str(), out);
      } else {
        emit(c, "levels.csv", levels_csv(table, shapes, hulls), out);
      }
      if (!c.out_dir.empty()) out << "wrote " << table.depth() << " levels to " << c.out_dir << '\n';
      return exit_ok;
    }

    if (*rate_cmd) {
      CertifyOptions co;
      co.max_level = max_level;
      co.budget = generator_budget;
      co.threads = c.threads;
      if (!lambda0_text.empty()) {
        auto res = certify_upper(sys, parse_flag_scalar(lambda0_text, "--lambda0"), co);
        if (!res.ok()) {
          const auto& f = *res.failure;
          err << "not certified at lambda0 = " << lambda0_text << ": " << f.reason << '\n';
          err << "escaping vector (scaled, from levels " << f.left_level << " and " << f.right_level
              << "): " << to_string(f.escaping) << '\n';
          return exit_failure;
        }
        emit(c, "certificate.txt", write_certificate(*res.certificate), out);
        if (!c.out_dir.empty())
          out << "certified lambda <= " << to_string(res.certificate->lambda0) << " at level " << res.levels_used
              << '\n';
        return exit_ok;
      }
      SandwichOptions o;
      o.depth = c.depth;
      o.pattern_budget = pattern_budget;
      o.width = parse_flag_scalar(width, "--width");
      if (o.width < 0) throw UsageError("--width must be nonnegative");
      o.frontier_budget = c.budget;
      o.certify = co;
      o.threads = c.threads;
      EnumerateOptions eo = enum_options(c);
      eo.strategy = PruneStrategy::majorized;
      FrontierTable table(sys, eo);
      auto b = sandwich(table, o);
      std::optional<std::vector<ComponentLambda>> comps;
      if (with_components) comps = lambda_component_report(sys, o);
      emit(c, "rate-report.txt", rate_report(sys, b, o, table, comps ? &*comps : nullptr), out);
      if (!c.out_dir.empty()) {
        emit(c, "bounds.csv", bounds_csv(b), out);
        if (b.certificate) emit(c, "certificate.txt", write_certificate(*b.certificate), out);
        out << "lambda in [" << b.lower_decimal << ", " << b.upper_decimal << "]\n";
      }
      return exit_ok;
    }

    if (*patterns_cmd) {
      EnumerateOptions eo = enum_options(c);
      FrontierTable table(sys, eo);
      table.extend_to(std::max(c.depth, pattern_budget));
      PatternSearchOptions po;
      po.max_leaves = pattern_budget;
      po.budget = matrix_budget;
      auto res = search_lower_bound(sys, table, po);
      std::ostringstream os;
      os << "leaves,kept_matrices,best_lower_down\n";
      for (std::size_t t = 0; t < res.curve.size(); ++t)
        os << t + 1 << ',' << res.kept[t] << ',' << (res.curve[t] ? res.curve[t]->decimal_down(12) : "") << '\n';
      if (res.best) {
        os << "\nbest pattern bound (rounded down): " << res.best->value.decimal_down(12) << '\n';
        os << describe_bound(*res.best);
        os << "  matrix:\n" << matrix_text(res.best->pattern.matrix, "    ");
        if (auto p = power_diagonal_bound(res.best->pattern, max_power)) {
          os << "best power bound (rounded down): " << p->value.decimal_down(12) << '\n';
          os << describe_bound(*p);
        }
      } else {
        os << "\nno pattern with a positive diagonal entry\n";
      }
      emit(c, "patterns.txt", os.str(), out);
      return exit_ok;
    }

    if (*dep_cmd) {
      auto graph = build_depgraph(sys);
      auto poset = components(graph);
      auto classes = classify(sys, poset);
      std::ostringstream os;
      for (std::size_t k = 0; k < poset.size(); ++k) {
        os << "C" << k + 1 << " {";
        for (std::size_t t = 0; t < poset.components[k].size(); ++t)
          os << (t ? "," : "") << poset.components[k][t] + 1;
        os << "} below:";
        for (auto b : poset.below(k)) os << " C" << b + 1;
        os << " internal_triple=" << (classes[k].internal_triple ? "yes" : "no")
           << " half_self_dependent=" << (classes[k].half_self_dependent ? "yes" : "no")
           << " sink_trivial=" << (classes[k].sink_trivial ? "yes" : "no") << '\n';
      }
      os << "longest chain: " << poset.longest_chain() << '\n';
      if (c.out_dir.empty()) {
        out << os.str() << '\n';
        out << to_dot(sys, graph, poset, classes);
      } else {
        emit(c, "depgraph.dot", to_dot(sys, graph, poset, classes), out);
        out << os.str();
      }
      return exit_ok;
    }

    if (*check_cmd) {
      std::ifstream f(cert_file, std::ios::binary);
      if (!f) throw InputError("cannot open certificate '" + cert_file + "'");
      std::ostringstream buf;
      buf << f.rdbuf();
      auto cert = read_certificate(buf.str());
      if (auto why = certificate_error(cert, sys)) {
        out << "invalid: " << *why << '\n';
        return exit_failure;
      }
      out << "valid: lambda <= " << to_string(cert.lambda0) << '\n';
      return exit_ok;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const BudgetError& e) {
    err << "budget exceeded at level " << e.level() << ": " << e.what() << '\n';
    return exit_failure;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return exit_failure;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return exit_failure;
  }
  return exit_usage;
}

}  // namespace bilgrow
