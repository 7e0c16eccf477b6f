#ifndef MZVDECOMP_GROUP_HPP
#define MZVDECOMP_GROUP_HPP

#include <algorithm>
#include <compare>
#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"

namespace mzvdecomp {

// Element (eps, gamma) of (Z/2Z)^p x| S_p. Signs are +-1, the permutation is
// stored zero-based in one-line form, perm[i] = gamma(i), and permutations
// compose as (gamma gamma')(i) = gamma(gamma'(i)).
struct GroupElement {
  std::vector<int> signs;
  std::vector<int> perm;

  static GroupElement identity(int p) {
    GroupElement g;
    g.signs.assign(static_cast<std::size_t>(p), 1);
    g.perm.resize(static_cast<std::size_t>(p));
    std::iota(g.perm.begin(), g.perm.end(), 0);
    return g;
  }

  // The cyclic permutation 1 -> 2 -> ... -> p -> 1 with trivial signs.
  static GroupElement rotation(int p) {
    GroupElement g = identity(p);
    for (int i = 0; i < p; ++i)
      g.perm[static_cast<std::size_t>(i)] = (i + 1) % p;
    return g;
  }

  static GroupElement flips(const std::vector<int> &signs) {
    GroupElement g = identity(static_cast<int>(signs.size()));
    g.signs = signs;
    return g;
  }

  int size() const { return static_cast<int>(perm.size()); }

  bool is_identity() const {
    for (int i = 0; i < size(); ++i)
      if (signs[static_cast<std::size_t>(i)] != 1 || perm[static_cast<std::size_t>(i)] != i)
        return false;
    return true;
  }

  bool has_permutation() const {
    for (int i = 0; i < size(); ++i)
      if (perm[static_cast<std::size_t>(i)] != i)
        return true;
    return false;
  }

  std::vector<int> inverse_perm() const {
    std::vector<int> inv(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i)
      inv[static_cast<std::size_t>(perm[i])] = static_cast<int>(i);
    return inv;
  }

  // (eps, gamma)(eps', gamma') = (eps_i eps'_{gamma^-1(i)}, gamma gamma').
  friend GroupElement operator*(const GroupElement &g, const GroupElement &h) {
    if (g.size() != h.size())
      fail("SizeMismatch", "group elements of different sizes");
    auto ginv = g.inverse_perm();
    GroupElement r;
    r.signs.resize(g.signs.size());
    r.perm.resize(g.perm.size());
    for (std::size_t i = 0; i < g.perm.size(); ++i) {
      r.signs[i] = g.signs[i] * h.signs[static_cast<std::size_t>(ginv[i])];
      r.perm[i] = g.perm[static_cast<std::size_t>(h.perm[i])];
    }
    return r;
  }

  GroupElement inverse() const {
    // (eps, gamma)^-1 = (eps'', gamma^-1) with eps''_i = eps_{gamma(i)}.
    GroupElement r;
    r.perm = inverse_perm();
    r.signs.resize(signs.size());
    for (std::size_t i = 0; i < signs.size(); ++i)
      r.signs[i] = signs[static_cast<std::size_t>(perm[i])];
    return r;
  }

  friend bool operator==(const GroupElement &, const GroupElement &) = default;
  friend auto operator<=>(const GroupElement &a, const GroupElement &b) {
    if (auto c = a.perm <=> b.perm; c != 0)
      return c;
    return b.signs <=> a.signs;
  }

  // One-based text, e.g. "((-1,1),[2,1])".
  std::string to_string() const {
    std::string s = "((";
    for (std::size_t i = 0; i < signs.size(); ++i)
      s += (i ? "," : "") + std::to_string(signs[i]);
    s += "),[";
    for (std::size_t i = 0; i < perm.size(); ++i)
      s += (i ? "," : "") + std::to_string(perm[i] + 1);
    return s + "])";
  }

  void check() const {
    if (signs.size() != perm.size())
      fail("SizeMismatch", "signs and permutation have different lengths");
    std::vector<int> seen(perm.size(), 0);
    for (int v : perm) {
      if (v < 0 || v >= size() || seen[static_cast<std::size_t>(v)]++)
        fail("InvalidArgument", "not a permutation");
    }
    for (int e : signs)
      if (e != 1 && e != -1)
        fail("InvalidArgument", "signs must be +1 or -1");
  }
};

// All 2^p p! elements in a fixed order.
inline std::vector<GroupElement> all_elements(int p) {
  std::vector<GroupElement> out;
  std::vector<int> perm(static_cast<std::size_t>(p));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    for (unsigned mask = 0; mask < (1u << p); ++mask) {
      GroupElement g;
      g.perm = perm;
      for (int i = 0; i < p; ++i)
        g.signs.push_back((mask >> i) & 1u ? -1 : 1);
      out.push_back(g);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

} // namespace mzvdecomp

#endif // MZVDECOMP_GROUP_HPP
