// Command-line front end. Reports go to stdout (or --out), diagnostics to
// stderr.
//
// Exit codes:
//   0  success / every check passes
//   2  malformed input or arguments
//   3  synthesis failure
//   4  solve refused
//   5  some check fails
//   6  no check fails but some are inconclusive

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "twofold/exit_codes.hpp"
#include "twofold/io.hpp"
#include "twofold/oracle.hpp"
#include "twofold/structure_checks.hpp"

namespace {

using namespace twofold;

constexpr int kOk = kExitOk, kParse = kExitParse, kSynthesis = kExitSynthesis, kRefused = kExitRefused;

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void emit(const Json& j, const std::string& out) {
  const std::string text = j.dump(2);
  if (out.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream f(out);
  if (!f) throw Error("cannot write '" + out + "'");
  f << text << '\n';
}

void log_failures(const CheckReport& r) {
  for (const auto& e : r.entries) {
    if (e.verdict == Verdict::Pass) continue;
    std::cerr << to_string(e.verdict) << ": " << e.name << " = " << e.value << " (threshold " << e.threshold << ")";
    if (!e.detail.empty()) std::cerr << " [" << e.detail << "]";
    std::cerr << '\n';
  }
}

struct Options {
  std::string data_file, g_file, out;
  std::string method = "poly";
  std::optional<int> order;
  double tol = kDefaultTol;
  std::uint64_t seed = 0;
  int p = 1, q = 1, m = 0;
  double norm = 0.5;
};

int cmd_synthesize(const Options& o) {
  const LaurentPoly g = g_from_json(read_json(o.g_file));
  std::optional<Fixture> f;
  try {
    f = synthesize_data(g);
  } catch (const Error& e) {
    std::cerr << "synthesis failed: " << e.what() << '\n';
    return kSynthesis;
  }
  ProblemFile pf = ProblemFile::from(f->data, g);
  pf.provenance = f->note;
  emit(to_json(pf), o.out);
  return kOk;
}

int cmd_random(const Options& o) {
  std::optional<Fixture> f;
  try {
    f = random_fixture(o.p, o.q, o.m, o.norm, o.seed);
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  } catch (const Error& e) {
    std::cerr << "synthesis failed: " << e.what() << '\n';
    return kSynthesis;
  }
  ProblemFile pf = ProblemFile::from(f->data, f->g);
  pf.m = o.m;
  pf.seed = o.seed;
  pf.provenance = f->note;
  emit(to_json(pf), o.out);
  return kOk;
}

int cmd_solve(const Options& o) {
  const ProblemFile pf = problem_from_json(read_json(o.data_file));
  const DataSet& data = pf.data;
  std::vector<std::string> methods;
  if (o.method == "all") methods = {"poly", "truncated", "factorization"};
  else methods = {o.method};

  std::vector<SolveReport> reports;
  for (const auto& name : methods) {
    try {
      if (name == "poly") reports.push_back(solve_polynomial(data, o.tol));
      else if (name == "truncated") reports.push_back(solve_truncated(data, o.order.value_or(default_order(data)), o.tol));
      else reports.push_back(solve_factorization(data, o.tol));
    } catch (const Error& e) {
      SolveReport r;
      r.method = name == "poly" ? SolveMethod::Polynomial
                 : name == "truncated" ? SolveMethod::Truncated
                                       : SolveMethod::Factorization;
      r.status = SolveStatus::Refused;
      r.reason = e.what();
      r.g = LaurentPoly(data.p(), data.q());
      reports.push_back(std::move(r));
    }
  }

  const int code = solve_exit_code(reports);
  for (const auto& r : reports) {
    if (r.refused()) {
      std::cerr << to_string(r.method) << " refused: " << r.reason << '\n';
    } else if (!r.accepted()) {
      std::cerr << to_string(r.method) << " flagged: " << r.reason << '\n';
    }
  }

  if (reports.size() == 1) {
    emit(to_json(reports.front()), o.out);
    return code;
  }
  Json out = {{"reports", Json::array()}};
  double gap = 0.0;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    out["reports"].push_back(to_json(reports[i]));
    if (reports[i].refused()) continue;
    for (std::size_t j = i + 1; j < reports.size(); ++j) {
      if (!reports[j].refused()) gap = std::max(gap, max_abs_diff(reports[i].g, reports[j].g));
    }
  }
  out["cross_method_gap"] = gap;
  emit(out, o.out);
  return code;
}

int cmd_check(const Options& o) {
  const ProblemFile pf = problem_from_json(read_json(o.data_file));
  CheckReport r = check_identities(pf.data, o.tol);
  for (const auto& e : check_strict_contraction(pf.data, o.tol).entries) {
    if (!r.find(e.name)) r.entries.push_back(e);
  }
  emit(to_json(r), o.out);
  log_failures(r);
  return check_exit_code(r);
}

int cmd_verify(const Options& o) {
  const ProblemFile pf = problem_from_json(read_json(o.data_file));
  const LaurentPoly g = g_from_json(read_json(o.g_file));
  if (g.rows() != pf.p || g.cols() != pf.q) throw ParseError("g shape does not match the data");
  const CheckReport r = verify_solution(pf.data, g, o.tol);
  emit(to_json(r), o.out);
  log_failures(r);
  return check_exit_code(r);
}

int cmd_invert(const Options& o) {
  const Json j = read_json(o.g_file);
  const LaurentPoly g = g_from_json(j);
  std::optional<DataSet> data;
  if (j.contains("alpha")) {
    data = problem_from_json(j).data;
  } else {
    try {
      data = synthesize_data(g).data;
    } catch (const Error& e) {
      std::cerr << "synthesis failed: " << e.what() << '\n';
      return kSynthesis;
    }
  }
  const int m = std::max(data->degree(), g.is_zero() ? 0 : g.hi());
  const int N = o.order.value_or(4 * m + 4);
  if (N < 1) throw ParseError("--order must be positive");

  CheckReport r;
  try {
    r.append(verify_inverse(build_omega(g, N), build_M(*data, N), inverse_margin(*data, g, N), o.tol));
  } catch (const SingularError& e) {
    r.add_inconclusive("M*Omega-I", 0.0, o.tol, e.what());
    r.add_inconclusive("Omega*M-I", 0.0, o.tol, e.what());
  }
  r.append(check_lemma_suite(*data, N, o.tol), "lemma: ");
  r.append(check_appendix_structure(*data, g, N, o.tol), "structure: ");
  emit(to_json(r), o.out);
  log_failures(r);
  return check_exit_code(r);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"twofold: recover g from data {alpha, beta, gamma, delta} and check the result"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out,-o", o.out, "Write the JSON report here instead of stdout");
    sub->add_option("--tol", o.tol, "Residual tolerance")->check(CLI::PositiveNumber);
  };

  auto* syn = app.add_subcommand("synthesize", "Build the data set belonging to g");
  syn->add_option("g_file", o.g_file, "JSON file with g")->required();
  add_common(syn);

  auto* rnd = app.add_subcommand("random", "Write a random synthesized problem file");
  rnd->add_option("--p", o.p, "Rows of g")->check(CLI::PositiveNumber);
  rnd->add_option("--q", o.q, "Columns of g")->check(CLI::PositiveNumber);
  rnd->add_option("--m", o.m, "Degree of g")->check(CLI::NonNegativeNumber);
  rnd->add_option("--norm", o.norm, "Hankel norm of g, in [0, 1)");
  rnd->add_option("--seed", o.seed, "RNG seed");
  add_common(rnd);

  auto* sol = app.add_subcommand("solve", "Recover g from a problem file");
  sol->add_option("data_file", o.data_file, "Problem file")->required();
  sol->add_option("--method", o.method, "poly, truncated, factorization or all")
      ->check(CLI::IsMember({"poly", "truncated", "factorization", "all"}));
  sol->add_option("--order", o.order, "Window size N for the truncated solve")->check(CLI::PositiveNumber);
  add_common(sol);

  auto* chk = app.add_subcommand("check", "Check the identities and contraction conditions of a problem file");
  chk->add_option("data_file", o.data_file, "Problem file")->required();
  add_common(chk);

  auto* ver = app.add_subcommand("verify", "Check that g solves the problem");
  ver->add_option("data_file", o.data_file, "Problem file")->required();
  ver->add_option("g_file", o.g_file, "JSON file with g")->required();
  add_common(ver);

  auto* inv = app.add_subcommand("invert", "Check Omega(g) against its explicit inverse");
  inv->add_option("g_file", o.g_file, "JSON file with g, or a problem file carrying g")->required();
  inv->add_option("--order", o.order, "Window size N")->check(CLI::PositiveNumber);
  add_common(inv);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  std::cerr.precision(17);
  try {
    if (*syn) return cmd_synthesize(o);
    if (*rnd) return cmd_random(o);
    if (*sol) return cmd_solve(o);
    if (*chk) return cmd_check(o);
    if (*ver) return cmd_verify(o);
    if (*inv) return cmd_invert(o);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const Json::exception& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const SingularError& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kRefused;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParse;
  }
  return kParse;
}
