#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include <mzvdecomp/problem_file.hpp>
#include <mzvdecomp/theorems.hpp>

#include "json_io.hpp"

using namespace mzvdecomp;
using json_io::Json;

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitValidation = 2;
constexpr int kExitInternal = 3;

struct Options {
  bool json = false, timings = false, strict = false;
  unsigned bits = 0; // 0: the evaluator's default
  int jobs = 1;
  std::optional<double> numeric_check;
};

void emit(const Options &opt, const Json &j, const std::string &text) {
  if (opt.json)
    std::cout << j.dump() << "\n";
  else
    std::cout << text;
}

// Runs f with the exact scalar type matching the file's field.
template <class F>
int with_scalar(const ProblemFile &pf, F &&f) {
  if (pf.field.is_rational())
    return f(Rational{});
  return f(Cyclotomic{});
}

template <class S>
Json numeric_block(const SeriesSpec<S> &spec, const FormalCombination<S> &x, double eps, unsigned bits,
                   bool &pass) {
  const unsigned b = bits ? bits : kDefaultBits;
  const auto series = eval_series(spec, eps / 10, b);
  const auto comb = eval_combination(x, std::max(eps / 100, 1e-60), b);
  const BigFloat residual = distance(series, comb);
  pass = residual <= eps;
  return Json{{"series", json_io::value(series, 30)},
              {"combination", json_io::value(comb, 30)},
              {"residual", format_bound(to_double(residual))},
              {"tolerance", format_bound(eps)},
              {"pass", pass}};
}

int cmd_decompose(const std::string &file, const Options &opt) {
  const auto pf = ProblemFile::load(file);
  return with_scalar(pf, [&](auto tag) {
    using S = decltype(tag);
    detail::Stopwatch clock;
    const auto spec = pf.spec<S>();
    validate(spec);
    const auto d = decompose_table(expand_partial_fractions(spec));
    Json residue = Json::array();
    for (const auto &[deg, part] : d.total.parts())
      if (deg >= 1)
        residue.push_back(Json{{"lambda_power", deg}, {"terms", json_io::combination(part)}});
    Json j{{"command", "decompose"},
           {"field", spec.field.to_string()},
           {"combination", json_io::combination(d.combination)},
           {"lambda_residue", residue},
           {"depth_p_check", d.depth_p_check}};
    std::string text = d.combination.to_string() + "\n";
    text += std::string("depth-p check: ") + (d.depth_p_check ? "ok" : "FAILED") + "\n";
    bool pass = true;
    if (opt.numeric_check) {
      j["numeric"] = numeric_block(spec, d.combination, *opt.numeric_check, opt.bits, pass);
      text += "numeric residual " + j["numeric"]["residual"].get<std::string>() +
              (pass ? " <= " : " > ") + format_bound(*opt.numeric_check) + "\n";
    }
    if (opt.timings)
      j["seconds"] = clock.seconds();
    emit(opt, j, text);
    return pass ? 0 : kExitCheckFailed;
  });
}

int cmd_symmetries(const std::string &file, const Options &opt) {
  const auto pf = ProblemFile::load(file);
  return with_scalar(pf, [&](auto tag) {
    using S = decltype(tag);
    const auto spec = pf.spec<S>();
    validate(spec);
    const auto H = detect_symmetries(FamilyFunction<S>::of(spec));
    Json list = Json::array();
    std::string text;
    for (const auto &g : H.elements) {
      list.push_back(Json{{"element", g.to_string()}, {"value", H.value(g).to_string()}});
      text += g.to_string() + " -> " + H.value(g).to_string() + "\n";
    }
    emit(opt, Json{{"command", "symmetries"}, {"degenerate", H.degenerate}, {"symmetries", list}}, text);
    return 0;
  });
}

std::string report_text(const TheoremReport &r) {
  std::string s = r.theorem;
  if (!r.label.empty())
    s += " [" + r.label + "]";
  if (r.skipped)
    return s + ": skipped (" + (r.notes.empty() ? "" : r.notes.back()) + ")\n";
  s += r.pass() ? ": pass" : ": FAIL";
  if (r.soft_finding)
    s += " (soft finding)";
  if (!r.offending.empty()) {
    s += ", offending";
    for (const auto &c : r.offending)
      s += " " + to_string(c);
  }
  if (r.theorem == "4.1" || r.theorem == "1.8")
    s += ", coeff (2,2) = " + r.coeff_22 + ", (2,2,2) = " + r.coeff_222;
  return s + "\n";
}

int cmd_verify(const std::string &file, std::string theorem, std::optional<int> e, std::optional<int> f,
               const Options &opt) {
  const auto pf = ProblemFile::load(file);
  if (theorem.empty())
    theorem = pf.theorem;
  if (theorem.empty())
    fail("InvalidArgument", "no theorem given (use --theorem or a 'theorem' line)");
  return with_scalar(pf, [&](auto tag) {
    using S = decltype(tag);
    const auto spec = pf.spec<S>();
    TheoremReport rep;
    if (theorem == "3.1" || theorem == "main") {
      rep = verify_main(spec, pf.character_spec<S>(), theorem);
    } else if (theorem == "1.7") {
      if (spec.p != 2)
        fail("InvalidArgument", "theorem 1.7 concerns p = 2");
      rep = verify_main(spec, CharacterSpec<S>{{GroupElement{{1, 1}, {1, 0}}}, {S(Rational(-1))}}, "1.7");
    } else if (theorem == "1.6" || theorem == "3.3") {
      if (pf.parity.empty())
        fail("InvalidArgument", "theorem " + theorem + " needs a 'parity' line");
      if (theorem == "1.6")
        for (const auto &x : pf.parity)
          if (!x)
            fail("InvalidArgument", "theorem 1.6 needs every parity entry");
      rep = verify_parity(spec, pf.parity, theorem);
    } else if (theorem == "3.4") {
      if constexpr (std::is_same_v<S, Rational>) {
        if (!e || !f)
          fail("InvalidArgument", "theorem 3.4 needs --e and --f");
        rep = verify_pair(spec, *e, *f);
      } else {
        fail("UnsupportedField", "theorem 3.4 is stated over Q");
      }
    } else if (theorem == "3.7") {
      if (pf.xi.empty())
        fail("InvalidArgument", "theorem 3.7 needs an 'xi' line");
      rep = verify_cyclic(spec, pf.parse_scalar<S>(pf.xi));
    } else {
      fail("InvalidArgument", "unknown theorem '" + theorem + "' (expected 1.6, 1.7, 3.1, 3.3, 3.4 or 3.7)");
    }
    emit(opt, json_io::report(rep, opt.timings), report_text(rep));
    return rep.pass() ? 0 : kExitCheckFailed;
  });
}

int cmd_scan(const std::string &theorem, const std::string &conjecture, int n, std::optional<int> family,
             const Options &opt) {
  ScanOptions so;
  so.jobs = opt.jobs > 0 ? opt.jobs : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (opt.numeric_check)
    so.tolerance = *opt.numeric_check;
  std::vector<TheoremReport> reps;
  std::string name;
  if (!theorem.empty() && conjecture.empty()) {
    if (theorem != "4.1")
      fail("InvalidArgument", "scan supports --theorem 4.1");
    name = "4.1";
    std::vector<int> fams;
    if (family)
      fams.push_back(*family);
    else
      fams = {1, 2, 3, 4};
    for (int fam : fams)
      for (auto &r : scan_theorem41(n, fam, so))
        reps.push_back(std::move(r));
  } else if (theorem.empty() && !conjecture.empty()) {
    if (conjecture != "1.8")
      fail("InvalidArgument", "scan supports --conjecture 1.8");
    if (family)
      fail("InvalidArgument", "--family applies to --theorem 4.1 only");
    name = "1.8";
    reps = scan_conjecture18(n, so);
  } else {
    fail("InvalidArgument", "give exactly one of --theorem and --conjecture");
  }
  int instances = 0, skipped = 0, zeros = 0, soft = 0, failed = 0, max_weight_zero = 0;
  double slowest = 0;
  for (const auto &r : reps) {
    ++instances;
    slowest = std::max(slowest, r.seconds);
    if (r.skipped) {
      ++skipped;
      continue;
    }
    if (!r.pass())
      ++failed;
    else if (r.soft_finding)
      ++soft;
    else
      ++zeros;
    max_weight_zero += r.max_weight_zero;
    emit(opt, json_io::report(r, opt.timings), report_text(r));
  }
  for (const auto &r : reps)
    if (r.skipped && opt.json)
      std::cout << json_io::report(r, opt.timings).dump() << "\n";
  Json summary{{"scan", name},     {"n", n},         {"instances", instances}, {"skipped", skipped},
               {"conformant", zeros}, {"soft_findings", soft}, {"failures", failed},
               {"max_weight_zero", max_weight_zero}};
  if (opt.timings)
    summary["max_seconds"] = slowest;
  std::string text = "summary: " + std::to_string(instances) + " instances, " + std::to_string(skipped) +
                     " skipped, " + std::to_string(zeros) + " conformant, " + std::to_string(soft) +
                     " soft findings, " + std::to_string(failed) + " failures\n";
  emit(opt, Json{{"summary", summary}}, text);
  if (failed > 0 || (opt.strict && soft > 0))
    return kExitCheckFailed;
  return 0;
}

int cmd_eval_mzv(const std::vector<int> &s, double error, const Options &opt) {
  const unsigned bits = opt.bits ? opt.bits : kDefaultBits;
  const auto v = eval_mzv(s, error, bits);
  emit(opt, Json{{"command", "eval-mzv"}, {"s", json_io::composition(s)}, {"value", json_io::value(v, 40)}},
       "zeta" + to_string(s) + " = " + v.to_string(40) + "\n");
  return 0;
}

int cmd_eval_series(const std::string &file, double error, const Options &opt) {
  const auto pf = ProblemFile::load(file);
  return with_scalar(pf, [&](auto tag) {
    using S = decltype(tag);
    const auto spec = pf.spec<S>();
    const auto v = eval_series(spec, error, opt.bits ? opt.bits : 192);
    emit(opt, Json{{"command", "eval-series"}, {"value", json_io::value(v, 30)}}, v.to_string(30) + "\n");
    return 0;
  });
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Decomposes nested rational series into multiple zeta values"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_flag("--json", opt.json, "Print JSON (one object per line)");
  app.add_flag("--timings", opt.timings, "Include wall-clock timings in the output");
  app.add_flag("--strict", opt.strict, "Treat soft scan findings as failures");
  app.add_option("--precision", opt.bits, "Working precision in bits for numeric evaluation");
  app.add_option("--jobs", opt.jobs, "Worker threads for scans (0: all cores)");

  std::string file, theorem, conjecture;
  std::optional<int> e, f, family;
  int n = 0;
  double mzv_error = kDefaultMzvError, series_error = kDefaultSeriesError;
  std::vector<int> composition;

  auto *dec = app.add_subcommand("decompose", "Exact multiple zeta value decomposition of a problem file");
  dec->add_option("file", file, "Problem file")->required();
  dec->add_option("--numeric-check", opt.numeric_check, "Compare against the summed series at this tolerance");

  auto *sym = app.add_subcommand("symmetries", "List the signed permutations fixing R up to a scalar");
  sym->add_option("file", file, "Problem file")->required();

  auto *ver = app.add_subcommand("verify", "Check a theorem's hypothesis and predicted depth-p subspace");
  ver->add_option("file", file, "Problem file")->required();
  ver->add_option("--theorem", theorem, "1.6, 1.7, 3.1, 3.3, 3.4 or 3.7 (default: the file's theorem line)");
  ver->add_option("--e", e, "Exponent e for theorem 3.4");
  ver->add_option("--f", f, "Exponent f for theorem 3.4");

  auto *scan = app.add_subcommand("scan", "Scan the four-family theorem or the depth-3 conjecture");
  scan->add_option("--theorem", theorem, "4.1");
  scan->add_option("--conjecture", conjecture, "1.8");
  scan->add_option("--n", n, "Pochhammer length parameter n")->required();
  scan->add_option("--family", family, "Family 1..4 (default: all)");
  scan->add_option("--numeric-check", opt.numeric_check, "Tolerance of the soft numeric check (default 1e-20)");

  auto *emz = app.add_subcommand("eval-mzv", "Evaluate one multiple zeta value");
  emz->add_option("s", composition, "Composition, e.g. 2 1")->required();
  emz->add_option("--error", mzv_error, "Target absolute error")->capture_default_str();

  auto *ese = app.add_subcommand("eval-series", "Sum the series of a problem file directly");
  ese->add_option("file", file, "Problem file")->required();
  ese->add_option("--error", series_error, "Target absolute error")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*dec)
      return cmd_decompose(file, opt);
    if (*sym)
      return cmd_symmetries(file, opt);
    if (*ver)
      return cmd_verify(file, theorem, e, f, opt);
    if (*scan)
      return cmd_scan(theorem, conjecture, n, family, opt);
    if (*emz)
      return cmd_eval_mzv(composition, mzv_error, opt);
    if (*ese)
      return cmd_eval_series(file, series_error, opt);
  } catch (const Error &err) {
    if (opt.json)
      std::cout << json_io::error(err).dump() << "\n";
    else
      std::cerr << "error [" << err.kind() << "]: " << err.what() << "\n";
    return err.internal() ? kExitInternal : kExitValidation;
  } catch (const std::exception &err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitInternal;
  }
  return 0;
}
