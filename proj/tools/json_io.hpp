#ifndef MZVDECOMP_TOOLS_JSON_IO_HPP
#define MZVDECOMP_TOOLS_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include <mzvdecomp/numeric.hpp>
#include <mzvdecomp/theorems.hpp>

namespace mzvdecomp::json_io {

// Key order follows insertion, so identical inputs give identical bytes.
using Json = nlohmann::ordered_json;

inline Json composition(const Composition &s) {
  Json a = Json::array();
  for (int x : s)
    a.push_back(x);
  return a;
}

template <class S>
Json combination(const FormalCombination<S> &x) {
  Json a = Json::array();
  for (const auto &[s, c] : x.terms())
    a.push_back(Json{{"s", composition(s)}, {"coeff", c.to_string()}});
  return a;
}

inline Json combination(const std::vector<std::pair<Composition, std::string>> &terms) {
  Json a = Json::array();
  for (const auto &[s, c] : terms)
    a.push_back(Json{{"s", composition(s)}, {"coeff", c}});
  return a;
}

inline Json value(const BigFloatValue &v, int digits) {
  Json j;
  j["re"] = format_float(v.re(), digits);
  if (!v.is_real())
    j["im"] = format_float(v.im(), digits);
  j["error"] = format_bound(v.error_double());
  return j;
}

inline Json error(const Error &e) {
  return Json{{"error", e.kind()}, {"message", e.what()}, {"internal", e.internal()}};
}

inline Json report(const TheoremReport &r, bool timings) {
  Json j;
  j["theorem"] = r.theorem;
  if (!r.label.empty())
    j["instance"] = r.label;
  j["pass"] = r.pass();
  if (r.skipped) {
    j["skipped"] = true;
  } else {
    j["hypothesis_verified"] = r.hypothesis_verified;
    j["membership"] = r.membership;
    j["digest"] = r.digest;
    Json off = Json::array();
    for (const auto &s : r.offending)
      off.push_back(composition(s));
    j["offending"] = off;
    j["combination"] = combination(r.combination);
  }
  if (r.theorem == "4.1" || r.theorem == "1.8") {
    j["coeff_2_2"] = r.coeff_22;
    j["coeff_2_2_2"] = r.coeff_222;
    j["soft_finding"] = r.soft_finding;
    if (!r.skipped) {
      j["max_weight_zero"] = r.max_weight_zero;
      j["support_in_basis"] = r.support_in_basis;
    }
  }
  if (r.residual)
    j["residual"] = format_bound(*r.residual);
  if (!r.notes.empty())
    j["notes"] = r.notes;
  if (timings)
    j["seconds"] = r.seconds;
  return j;
}

} // namespace mzvdecomp::json_io

#endif // MZVDECOMP_TOOLS_JSON_IO_HPP
