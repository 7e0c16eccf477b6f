#ifndef MZVDECOMP_PROBLEM_FILE_HPP
#define MZVDECOMP_PROBLEM_FILE_HPP

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "actions.hpp"
#include "poly_parser.hpp"

namespace mzvdecomp {

// Text problem description:
//
//   # comment
//   A = 3 3
//   n = 1 1
//   r = 2 0
//   P = "(K1 + K2)*(K1 - K2)"
//   P.vars = K
//   field = Q
//   character = ((1,1),[2,1]) -> -1     (repeatable)
//   parity = 0 -                       ('-' leaves an index free)
//   xi = -1
//   theorem = 1.7
struct ProblemFile {
  std::vector<int> A, n, r;
  std::string P = "0";
  char frame = 'k';
  Field field;
  std::vector<std::pair<GroupElement, std::string>> character;
  std::vector<std::optional<int>> parity;
  std::string xi, theorem;

  int p() const { return static_cast<int>(A.size()); }

  template <class S>
  SeriesSpec<S> spec() const {
    SeriesSpec<S> s;
    s.p = p();
    s.A = A;
    s.n = n;
    s.r = r;
    s.field = field;
    s.P = MultiPoly<S>(s.p);
    s.check_shape();
    auto poly = parse_poly<S>(P, s.p, frame, field);
    s.P = frame == 'k' ? poly : change_frame(poly, s.K_frame(), s.k_frame());
    return s;
  }

  template <class S>
  CharacterSpec<S> character_spec() const {
    CharacterSpec<S> cs;
    for (const auto &[g, v] : character) {
      cs.generators.push_back(g);
      cs.values.push_back(parse_scalar<S>(v));
    }
    return cs;
  }

  template <class S>
  S parse_scalar(const std::string &text) const {
    auto poly = parse_poly<S>(text, 1, 'k', field);
    if (poly.degree_in(0) > 0)
      fail("SyntaxError", "scalar '" + text + "' must not contain variables");
    return poly.is_zero() ? S(Rational(0)) : poly.terms().begin()->second;
  }

  std::string print() const {
    auto ints = [](const std::vector<int> &v) {
      std::string s;
      for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? " " : "") + std::to_string(v[i]);
      return s;
    };
    std::ostringstream os;
    os << "A = " << ints(A) << "\n";
    os << "n = " << ints(n) << "\n";
    os << "r = " << ints(r) << "\n";
    os << "P = \"" << P << "\"\n";
    os << "P.vars = " << frame << "\n";
    os << "field = " << field.to_string() << "\n";
    for (const auto &[g, v] : character)
      os << "character = " << g.to_string() << " -> " << v << "\n";
    if (!parity.empty()) {
      os << "parity =";
      for (const auto &e : parity)
        os << " " << (e ? std::to_string(*e) : "-");
      os << "\n";
    }
    if (!xi.empty())
      os << "xi = " << xi << "\n";
    if (!theorem.empty())
      os << "theorem = " << theorem << "\n";
    return os.str();
  }

  friend bool operator==(const ProblemFile &, const ProblemFile &) = default;

  static ProblemFile parse(const std::string &text);

  static ProblemFile load(const std::string &path) {
    std::ifstream in(path);
    if (!in)
      fail("IOError", "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
  }
};

namespace detail {

inline std::string trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

inline std::vector<std::string> split_ws(const std::string &s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string w; is >> w;)
    out.push_back(w);
  return out;
}

inline int parse_int(const std::string &w, const std::string &where) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(w, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used == 0 || used != w.size())
    fail("SyntaxError", where + ": '" + w + "' is not an integer");
  return v;
}

// "((e_1,...,e_p),[g_1,...,g_p])" with one-based permutation images.
inline GroupElement parse_group_element(const std::string &text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch)))
      s += ch;
  const auto bad = [&] { fail("SyntaxError", "malformed group element '" + text + "'"); };
  if (s.size() < 8 || s.rfind("((", 0) != 0 || s.substr(s.size() - 2) != "])")
    bad();
  const auto mid = s.find("),[");
  if (mid == std::string::npos)
    bad();
  auto list = [&](const std::string &body) {
    std::vector<int> out;
    std::stringstream ss(body);
    for (std::string w; std::getline(ss, w, ',');)
      out.push_back(parse_int(w, "group element"));
    return out;
  };
  GroupElement g;
  g.signs = list(s.substr(2, mid - 2));
  g.perm = list(s.substr(mid + 3, s.size() - 2 - (mid + 3)));
  for (int &v : g.perm)
    --v;
  g.check();
  return g;
}

} // namespace detail

inline ProblemFile ProblemFile::parse(const std::string &text) {
  ProblemFile pf;
  std::istringstream in(text);
  std::optional<int> declared_p;
  int lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    const std::string where = "line " + std::to_string(lineno);
    std::string body = line;
    // '#' starts a comment outside the quoted numerator
    bool quoted = false;
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (body[i] == '"')
        quoted = !quoted;
      else if (body[i] == '#' && !quoted) {
        body.resize(i);
        break;
      }
    }
    body = detail::trim(body);
    if (body.empty())
      continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      fail("SyntaxError", where + ": expected 'key = value'");
    const std::string key = detail::trim(body.substr(0, eq)), value = detail::trim(body.substr(eq + 1));
    auto ints = [&] {
      std::vector<int> v;
      for (const auto &w : detail::split_ws(value))
        v.push_back(detail::parse_int(w, where));
      return v;
    };
    if (key == "p")
      declared_p = detail::parse_int(value, where);
    else if (key == "A")
      pf.A = ints();
    else if (key == "n")
      pf.n = ints();
    else if (key == "r")
      pf.r = ints();
    else if (key == "P") {
      if (value.size() < 2 || value.front() != '"' || value.back() != '"')
        fail("SyntaxError", where + ": P must be a quoted expression");
      pf.P = value.substr(1, value.size() - 2);
    } else if (key == "P.vars") {
      if (value != "k" && value != "K")
        fail("SyntaxError", where + ": P.vars must be k or K");
      pf.frame = value[0];
    } else if (key == "field")
      pf.field = Field::parse(value);
    else if (key == "character") {
      const auto arrow = value.find("->");
      if (arrow == std::string::npos)
        fail("SyntaxError", where + ": expected 'character = element -> value'");
      pf.character.emplace_back(detail::parse_group_element(value.substr(0, arrow)),
                                detail::trim(value.substr(arrow + 2)));
    } else if (key == "parity") {
      pf.parity.clear();
      for (const auto &w : detail::split_ws(value))
        pf.parity.push_back(w == "-" ? std::nullopt : std::optional<int>(detail::parse_int(w, where)));
    } else if (key == "xi")
      pf.xi = value;
    else if (key == "theorem")
      pf.theorem = value;
    else
      fail("SyntaxError", where + ": unknown key '" + key + "'");
  }
  if (pf.A.empty())
    fail("SyntaxError", "missing key 'A'");
  if (pf.n.size() != pf.A.size() || pf.r.size() != pf.A.size())
    fail("SizeMismatch", "A, n and r need the same length");
  if (declared_p && *declared_p != pf.p())
    fail("SizeMismatch", "p does not match the length of A");
  if (!pf.parity.empty() && static_cast<int>(pf.parity.size()) != pf.p())
    fail("SizeMismatch", "parity needs one entry per variable");
  for (const auto &[g, v] : pf.character)
    if (g.size() != pf.p())
      fail("SizeMismatch", "character element " + g.to_string() + " has the wrong size");
  return pf;
}

} // namespace mzvdecomp

#endif // MZVDECOMP_PROBLEM_FILE_HPP
