#include "bilgrow/system.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace bilgrow {

BilinearMap::BilinearMap(std::size_t dim, std::vector<Term> terms) : dim_(dim) {
  if (dim == 0) throw InputError("dimension must be positive");
  for (const auto& t : terms) {
    if (t.k >= dim || t.i >= dim || t.j >= dim) {
      std::ostringstream os;
      os << "coefficient index (" << t.k + 1 << "," << t.i + 1 << "," << t.j + 1
         << ") outside 1.." << dim;
      throw InputError(os.str());
    }
  }
  auto key = [](const Term& t) { return std::tie(t.k, t.i, t.j); };
  std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) { return key(a) < key(b); });
  for (std::size_t n = 1; n < terms.size(); ++n) {
    if (key(terms[n - 1]) == key(terms[n])) {
      std::ostringstream os;
      os << "duplicate coefficient (" << terms[n].k + 1 << "," << terms[n].i + 1 << ","
         << terms[n].j + 1 << ")";
      throw InputError(os.str());
    }
  }
  std::erase_if(terms, [](const Term& t) { return t.value == 0; });
  terms_ = std::move(terms);
}

Scalar BilinearMap::coeff(std::size_t k, std::size_t i, std::size_t j) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), std::make_tuple(k, i, j),
                             [](const Term& t, const auto& key) { return std::tie(t.k, t.i, t.j) < key; });
  if (it != terms_.end() && it->k == k && it->i == i && it->j == j) return it->value;
  return 0;
}

std::vector<Term> BilinearMap::row(std::size_t k) const {
  std::vector<Term> out;
  for (const auto& t : terms_)
    if (t.k == k) out.push_back(t);
  return out;
}

Vector star(const BilinearMap& map, const Vector& u, const Vector& v) {
  if (u.size() != map.dim() || v.size() != map.dim()) {
    std::ostringstream os;
    os << "star: operands of length " << u.size() << " and " << v.size() << " for a map of dimension "
       << map.dim();
    throw InputError(os.str());
  }
  Vector w(map.dim());
  Scalar prod;
  for (const auto& t : map.terms()) {
    if (u[t.i] == 0 || v[t.j] == 0) continue;
    prod = u[t.i] * v[t.j];
    prod *= t.value;
    w[t.k] += prod;
  }
  return w;
}

std::string ValidationReport::describe() const {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.message;
  }
  return out.empty() ? "ok" : out;
}

ValidationReport validate(const System& system) {
  ValidationReport report;
  const auto& map = system.map;
  if (system.seed.size() != map.dim()) {
    std::ostringstream os;
    os << "seed has length " << system.seed.size() << " but dimension is " << map.dim();
    report.violations.push_back({Violation::Kind::dimension_mismatch, 0, 0, 0, os.str()});
  }
  for (const auto& t : map.terms()) {
    if (t.value < 0) {
      std::ostringstream os;
      os << "negative coefficient c(" << t.k + 1 << "," << t.i + 1 << "," << t.j + 1
         << ") = " << t.value.get_str();
      report.violations.push_back({Violation::Kind::negative_coefficient, t.k, t.i, t.j, os.str()});
    }
  }
  for (std::size_t i = 0; i < system.seed.size(); ++i) {
    const auto& s = system.seed[i];
    if (s < 0 || (s == 0 && system.seed_policy == SeedPolicy::positive)) {
      std::ostringstream os;
      os << "seed entry " << i + 1 << " = " << s.get_str()
         << (s < 0 ? " is negative" : " is not strictly positive");
      report.violations.push_back({s < 0 ? Violation::Kind::negative_seed : Violation::Kind::nonpositive_seed,
                                   0, i, 0, os.str()});
    }
  }
  return report;
}

void require_valid(const System& system) {
  auto report = validate(system);
  if (!report.ok()) throw InputError("invalid system: " + report.describe());
}

System scale_seed(const System& system, const Scalar& lambda0) {
  if (lambda0 <= 0) throw InputError("scale_seed: lambda0 must be positive, got " + lambda0.get_str());
  System out = system;
  for (auto& s : out.seed) s /= lambda0;
  return out;
}

}  // namespace bilgrow
