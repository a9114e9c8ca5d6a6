#pragma once

#include "bilgrow/depgraph.hpp"
#include "bilgrow/frontier.hpp"
#include "bilgrow/majorize.hpp"
#include "bilgrow/patterns.hpp"
#include "bilgrow/system.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bilgrow {

/// C * S with C = max_k sum_{i,j} c^(k)_{i,j} and S = max_i s_i. Every level-n
/// entry is at most (C S)^n / C, so lambda <= C S.
Scalar crude_upper(const System& system);

/// Explicit supermultiplicativity constant for a triple (k, i, j) inside one
/// component: beta g_k(m) g_k(n) <= g_k(m + n + d1 + d2).
struct FeketeWitness {
  std::size_t target = 0;       ///< vertex the bound was requested for
  std::size_t k = 0, i = 0, j = 0;
  std::size_t d1 = 0, d2 = 0;   ///< shortest path lengths i -> k and j -> k
  Scalar coefficient;           ///< c^(k)_{i,j}
  Scalar alpha1 = 1, alpha2 = 1;
  Scalar beta;
  std::vector<std::size_t> path1, path2;
  int n_used = 0;               ///< level n attaining the bound
  RootValue value;              ///< (beta g_k(n_used - d1 - d2))^(1/n_used)

  std::size_t shift() const noexcept { return d1 + d2; }
};

struct FeketeOutcome {
  std::optional<FeketeWitness> witness;
  std::string reason;  ///< set when the condition is not met
};

/// Best bound over every internal triple of the component containing `target`
/// (ties: smaller d1 + d2, then lexicographic (k, i, j)).
FeketeOutcome fekete_lower(const System& system, const FrontierTable& table, std::size_t target);

/// The candidate witnesses for one triple, without the level maximisation.
std::optional<FeketeWitness> fekete_witness(const System& system, const DepGraph& graph, std::size_t k,
                                            std::size_t i, std::size_t j);

struct CertificateGenerator {
  int level = 0;
  Vector unscaled;  ///< a level vector of the original system
  Vector scaled;    ///< unscaled / lambda0^level
};

/// One majorization: target <= combination = sum weights[t] * G[t], sum <= 1.
struct ClosureEntry {
  std::size_t a = 0, b = 0;  ///< generator indices of the pair (unused for the seed entry)
  Vector target;
  Weights weights;           ///< strictly increasing indices, positive weights
  Vector combination;
};

struct HullCertificate {
  Scalar lambda0;
  Vector seed;  ///< seed of the scaled system
  std::vector<CertificateGenerator> generators;
  ClosureEntry seed_entry;
  std::vector<ClosureEntry> closure;  ///< pair (a, b) at position a |G| + b
};

struct CertifyOptions {
  int max_level = 160;
  std::size_t budget = 5000;  ///< generators allowed
  unsigned threads = 1;
};

struct CertifyFailure {
  int level = 0;             ///< last level tried
  Vector escaping;           ///< a star of two generators outside the hull
  int left_level = 0, right_level = 0;
  std::string reason;
};

struct CertifyOutcome {
  std::optional<HullCertificate> certificate;
  std::optional<CertifyFailure> failure;
  int levels_used = 0;
  bool ok() const noexcept { return certificate.has_value(); }
};

/// Accumulates majorized-pruned scaled levels 1..L until the generator set
/// is closed under star up to majorization. Throws BudgetError past the budget.
CertifyOutcome certify_upper(const System& system, const Scalar& lambda0, const CertifyOptions& options);

/// Why a certificate is invalid for `system`, or nullopt when it checks out.
/// Pure exact arithmetic; no search.
std::optional<std::string> certificate_error(const HullCertificate& cert, const System& system);
bool check_certificate(const HullCertificate& cert, const System& system);

std::string write_certificate(const HullCertificate& cert);
HullCertificate read_certificate(std::string_view text);

enum class LowerKind { none, pattern, fekete };
enum class UpperKind { crude, hull_certificate };
std::string_view to_string(LowerKind k);
std::string_view to_string(UpperKind k);

struct BisectionStep {
  Scalar lambda0;
  bool certified = false;
  int levels_used = 0;
  std::string note;
};

struct TrendRow {
  int n = 0;
  Scalar g;
  std::string root;  ///< g(n)^(1/n), heuristic
};

struct SandwichOptions {
  int depth = 24;
  int pattern_budget = 16;           ///< largest pattern leaf count searched
  std::size_t pattern_matrices = 20000;
  unsigned max_power = 16;           ///< powers of the best pattern tried
  Scalar width = Scalar(1, 100);
  std::size_t frontier_budget = 100000;
  CertifyOptions certify;
  int max_attempts = 12;
  int max_failures = 3;
  unsigned threads = 1;
};

struct LambdaBounds {
  Scalar lower;  ///< exact rational, at most the certified value
  std::string lower_decimal;
  LowerKind lower_kind = LowerKind::none;
  std::optional<DiagonalBound> pattern;
  std::optional<FeketeWitness> fekete;

  Scalar upper;
  std::string upper_decimal;
  UpperKind upper_kind = UpperKind::crude;
  std::optional<HullCertificate> certificate;
  Scalar crude;

  std::vector<BisectionStep> attempts;
  std::vector<TrendRow> trend;
  std::vector<std::optional<RootValue>> pattern_curve;
  bool width_met = false;

  Scalar gap() const { return upper - lower; }
};

LambdaBounds sandwich(const System& system, const SandwichOptions& options);
/// Same, reusing an already built table (extended as needed).
LambdaBounds sandwich(FrontierTable& table, const SandwichOptions& options);

enum class Clause { not_applicable, holds, fails, undetermined };
std::string_view to_string(Clause c);

struct ComponentLambda {
  std::size_t component = 0;
  Scalar lower, upper;
  std::string how;  ///< "zero", "inherited", "sandwich"
  ComponentClass cls;
  Clause lambda_clause = Clause::not_applicable;
};

/// Intervals per component; vertices share the interval of their component.
std::vector<ComponentLambda> lambda_component_report(const System& system, const SandwichOptions& options);

/// Smallest K with g_k(m+n) <= K^(ln m) g_k(m) g_k(n) over 2 <= m <= n,
/// m + n <= depth, where all three values are positive; nullopt when no pair qualifies.
std::optional<double> fitted_submultiplicativity(const FrontierTable& table, std::size_t k);

/// min over n of g(n) / lower^n, as a double.
std::optional<double> min_normalized_growth(const FrontierTable& table, const Scalar& lower);

std::vector<TrendRow> trend(const FrontierTable& table);

}  // namespace bilgrow
