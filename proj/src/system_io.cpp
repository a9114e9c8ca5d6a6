#include "bilgrow/system_io.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <tuple>

namespace bilgrow {

std::string ParseError::format(const std::string& what, int line, int column) {
  if (line <= 0) return what;
  std::ostringstream os;
  os << "line " << line;
  if (column > 0) os << ", column " << column;
  os << ": " << what;
  return os.str();
}

namespace {

struct Token {
  std::string text;
  int column;
};

std::vector<Token> split(const std::string& line) {
  std::vector<Token> out;
  std::size_t p = 0;
  while (p < line.size()) {
    while (p < line.size() && (line[p] == ' ' || line[p] == '\t' || line[p] == '\r')) ++p;
    if (p >= line.size()) break;
    std::size_t q = p;
    while (q < line.size() && line[q] != ' ' && line[q] != '\t' && line[q] != '\r') ++q;
    out.push_back({line.substr(p, q - p), static_cast<int>(p) + 1});
    p = q;
  }
  return out;
}

std::string rest_of_line(const std::string& line, const Token& keyword) {
  std::size_t p = static_cast<std::size_t>(keyword.column - 1) + keyword.text.size();
  while (p < line.size() && (line[p] == ' ' || line[p] == '\t')) ++p;
  std::size_t e = line.size();
  while (e > p && (line[e - 1] == ' ' || line[e - 1] == '\t' || line[e - 1] == '\r')) --e;
  return line.substr(p, e - p);
}

std::size_t parse_index(const Token& t, int line, std::size_t limit, const char* what) {
  if (t.text.empty() || t.text.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError(std::string(what) + " '" + t.text + "' is not a positive integer", line, t.column);
  std::size_t v;
  try {
    v = std::stoul(t.text);
  } catch (const std::exception&) {
    throw ParseError(std::string(what) + " '" + t.text + "' is too large", line, t.column);
  }
  if (v < 1 || v > limit) {
    std::ostringstream os;
    os << what << ' ' << t.text << " outside 1.." << limit;
    throw ParseError(os.str(), line, t.column);
  }
  return v;
}

Scalar parse_value(const Token& t, int line) {
  try {
    return parse_scalar(t.text);
  } catch (const InputError& e) {
    throw ParseError(e.what(), line, t.column);
  }
}

}  // namespace

System parse_system(std::string_view text) {
  System sys;
  std::optional<std::size_t> dim;
  std::optional<Vector> seed;
  int seed_line = 0;
  std::vector<Term> terms;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, int> term_line;
  bool have_name = false, have_policy = false;

  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto toks = split(line);
    if (toks.empty()) continue;
    const auto& kw = toks[0].text;
    auto need = [&](std::size_t count) {
      if (toks.size() != count) {
        std::ostringstream os;
        os << "'" << kw << "' takes " << count - 1 << " field" << (count == 2 ? "" : "s") << ", found "
           << toks.size() - 1;
        int col = toks.size() > count ? toks[count].column : static_cast<int>(line.size()) + 1;
        throw ParseError(os.str(), number, col);
      }
    };
    auto need_dim = [&] {
      if (!dim) throw ParseError("'" + kw + "' before 'dim'", number, toks[0].column);
    };
    if (kw == "name") {
      if (have_name) throw ParseError("repeated 'name'", number, toks[0].column);
      have_name = true;
      sys.name = rest_of_line(line, toks[0]);
    } else if (kw == "notes") {
      if (!sys.notes.empty()) sys.notes += '\n';
      sys.notes += rest_of_line(line, toks[0]);
    } else if (kw == "dim") {
      if (dim) throw ParseError("repeated 'dim'", number, toks[0].column);
      need(2);
      dim = parse_index(toks[1], number, 1u << 20, "dimension");
    } else if (kw == "seed") {
      need_dim();
      if (seed) throw ParseError("repeated 'seed'", number, toks[0].column);
      need(*dim + 1);
      Vector s;
      for (std::size_t t = 1; t < toks.size(); ++t) s.push_back(parse_value(toks[t], number));
      seed = std::move(s);
      seed_line = number;
    } else if (kw == "seed-policy") {
      if (have_policy) throw ParseError("repeated 'seed-policy'", number, toks[0].column);
      need(2);
      if (toks[1].text == "positive")
        sys.seed_policy = SeedPolicy::positive;
      else if (toks[1].text == "nonnegative")
        sys.seed_policy = SeedPolicy::nonnegative;
      else
        throw ParseError("seed-policy must be 'positive' or 'nonnegative'", number, toks[1].column);
      have_policy = true;
    } else if (kw == "coef") {
      need_dim();
      need(5);
      auto k = parse_index(toks[1], number, *dim, "index k");
      auto i = parse_index(toks[2], number, *dim, "index i");
      auto j = parse_index(toks[3], number, *dim, "index j");
      auto key = std::tuple{k - 1, i - 1, j - 1};
      if (auto it = term_line.find(key); it != term_line.end()) {
        std::ostringstream os;
        os << "coefficient (" << k << ", " << i << ", " << j << ") already given on line " << it->second;
        throw ParseError(os.str(), number, toks[1].column);
      }
      term_line[key] = number;
      terms.push_back({k - 1, i - 1, j - 1, parse_value(toks[4], number)});
    } else {
      throw ParseError("unknown keyword '" + kw + "'", number, toks[0].column);
    }
  }
  if (!dim) throw ParseError("missing 'dim'", number + 1, 0);
  if (!seed) throw ParseError("missing 'seed'", number + 1, 0);
  sys.map = BilinearMap(*dim, std::move(terms));
  sys.seed = std::move(*seed);

  auto report = validate(sys);
  if (!report.ok()) {
    const auto& v = report.violations.front();
    int at = 0;
    if (v.kind == Violation::Kind::negative_coefficient) {
      auto it = term_line.find(std::tuple{v.k, v.i, v.j});
      if (it != term_line.end()) at = it->second;
    } else {
      at = seed_line;
    }
    throw ParseError("invalid system: " + report.describe(), at, 0);
  }
  return sys;
}

System load_system(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open system file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_system(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), 0, 0);
  }
}

std::string serialize_system(const System& system) {
  std::ostringstream os;
  if (!system.name.empty()) os << "name " << system.name << '\n';
  if (!system.notes.empty()) {
    std::istringstream notes(system.notes);
    for (std::string l; std::getline(notes, l);) os << "notes " << l << '\n';
  }
  os << "dim " << system.dim() << '\n';
  os << "seed " << to_string(system.seed) << '\n';
  if (system.seed_policy == SeedPolicy::nonnegative) os << "seed-policy nonnegative\n";
  for (const auto& t : system.map.terms())
    os << "coef " << t.k + 1 << ' ' << t.i + 1 << ' ' << t.j + 1 << ' ' << to_string(t.value) << '\n';
  return os.str();
}

System matmul_system(std::size_t d, const std::vector<Scalar>& matrix) {
  if (d == 0) throw InputError("matmul: dimension must be positive");
  if (matrix.size() != d * d) {
    std::ostringstream os;
    os << "matmul: expected " << d * d << " entries, got " << matrix.size();
    throw InputError(os.str());
  }
  std::vector<Term> terms;
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c)
      for (std::size_t l = 0; l < d; ++l) terms.push_back({r * d + c, r * d + l, l * d + c, Scalar(1)});
  System sys;
  sys.map = BilinearMap(d * d, std::move(terms));
  sys.seed = matrix;
  sys.seed_policy = SeedPolicy::nonnegative;
  std::ostringstream name;
  name << "matmul:" << d << ':';
  for (std::size_t t = 0; t < matrix.size(); ++t) name << (t ? "," : "") << to_string(matrix[t]);
  sys.name = name.str();
  sys.notes = "product of two d x d matrices, entry (r,c) at index r*d+c";
  require_valid(sys);
  return sys;
}

std::vector<std::string> example_names() {
  return {"linear-order", "quadratic-order", "quartic-order", "aho-sloane", "matmul:<d>:<entries>"};
}

namespace {

System builtin(const std::string& name, const std::string& notes, std::size_t d, std::vector<Term> terms) {
  System sys;
  sys.name = name;
  sys.notes = notes;
  for (auto& t : terms) {
    --t.k;
    --t.i;
    --t.j;
  }
  sys.map = BilinearMap(d, std::move(terms));
  sys.seed.assign(d, Scalar(1));
  require_valid(sys);
  return sys;
}

}  // namespace

System example(std::string_view name) {
  const Scalar one(1);
  if (name == "linear-order")
    return builtin("linear-order", "s = (1,1), u*v = (u1v2+u2v1, u2v2); g(n) = n", 2,
                   {{1, 1, 2, one}, {1, 2, 1, one}, {2, 2, 2, one}});
  if (name == "quadratic-order")
    return builtin("quadratic-order", "s = (1,1,1), u*v = (u1v2+u2v1, u2v2, u1v1); growth of order n^2", 3,
                   {{1, 1, 2, one}, {1, 2, 1, one}, {2, 2, 2, one}, {3, 1, 1, one}});
  if (name == "quartic-order")
    return builtin("quartic-order", "s = (1,1,1,1), u*v = (u1v2+u2v1, u2v2, u1v1, u3v3); growth of order n^4", 4,
                   {{1, 1, 2, one}, {1, 2, 1, one}, {2, 2, 2, one}, {3, 1, 1, one}, {4, 3, 3, one}});
  if (name == "aho-sloane")
    return builtin("aho-sloane", "s = (1,1), x*y = (x1y1+x2y2, x2y2); lambda = 1.502836801...", 2,
                   {{1, 1, 1, one}, {1, 2, 2, one}, {2, 2, 2, one}});
  if (name.substr(0, 7) == "matmul:") {
    std::string rest(name.substr(7));
    auto colon = rest.find(':');
    if (colon == std::string::npos) throw InputError("matmul example needs the form matmul:<d>:<entries>");
    std::string ds = rest.substr(0, colon);
    if (ds.empty() || ds.find_first_not_of("0123456789") != std::string::npos || ds.size() > 3)
      throw InputError("matmul: bad dimension '" + ds + "'");
    std::vector<Scalar> entries;
    std::istringstream es(rest.substr(colon + 1));
    for (std::string e; std::getline(es, e, ',');) entries.push_back(parse_scalar(e));
    return matmul_system(std::stoul(ds), entries);
  }
  throw InputError("unknown example '" + std::string(name) + "'");
}

}  // namespace bilgrow
