#pragma once

// JSON codec for problem files and reports. Complex entries are [re, im]
// pairs; polynomials are {"rows", "cols", "coeffs": [{"deg": k, "mat": ...}]}.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "json.hpp"

#include "twofold/dataset.hpp"
#include "twofold/report.hpp"
#include "twofold/solver.hpp"

namespace twofold {

using Json = nlohmann::json;

struct ProblemFile {
  Index p = 1, q = 1;
  int m = 0;
  DataSet data = DataSet::trivial(1, 1);
  std::optional<LaurentPoly> g;
  std::optional<std::uint64_t> seed;
  std::string provenance;

  static ProblemFile from(const DataSet& data, std::optional<LaurentPoly> g = std::nullopt) {
    ProblemFile f;
    f.p = data.p();
    f.q = data.q();
    f.m = data.degree();
    f.data = data;
    f.g = std::move(g);
    return f;
  }
};

namespace detail {

inline Json number_to_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

inline double number_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw ParseError("expected a number, got " + j.dump());
}

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline Index count_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 0) throw ParseError(std::string("'") + key + "' must be a count");
  return v.get<Index>();
}

}  // namespace detail

inline Json matrix_to_json(const CMat& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

inline CMat matrix_from_json(const Json& j, Index rows, Index cols) {
  if (!j.is_array() || static_cast<Index>(j.size()) != rows) {
    throw ParseError("matrix must have " + std::to_string(rows) + " rows");
  }
  CMat m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      throw ParseError("matrix row must have " + std::to_string(cols) + " entries");
    }
    for (Index k = 0; k < cols; ++k) {
      const Json& z = row[static_cast<std::size_t>(k)];
      if (z.is_number()) {
        m(i, k) = Complex(z.get<double>(), 0.0);
      } else if (z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number()) {
        m(i, k) = Complex(z[0].get<double>(), z[1].get<double>());
      } else {
        throw ParseError("complex entry must be [re, im], got " + z.dump());
      }
    }
  }
  return m;
}

inline Json poly_to_json(const LaurentPoly& f) {
  Json coeffs = Json::array();
  for (const auto& [k, c] : f.coefficients()) coeffs.push_back({{"deg", k}, {"mat", matrix_to_json(c)}});
  return {{"rows", f.rows()}, {"cols", f.cols()}, {"coeffs", std::move(coeffs)}};
}

/// Reads the coefficient list of a polynomial of known shape. Accepts either
/// the bare coefficient array or the full polynomial object.
inline LaurentPoly poly_from_json(const Json& j, Index rows, Index cols) {
  const Json& coeffs = j.is_object() ? detail::field(j, "coeffs") : j;
  if (!coeffs.is_array()) throw ParseError("polynomial coefficients must be an array");
  LaurentPoly::Coefficients c;
  for (const auto& entry : coeffs) {
    const Json& deg = detail::field(entry, "deg");
    if (!deg.is_number_integer()) throw ParseError("'deg' must be an integer");
    const int k = deg.get<int>();
    if (c.count(k)) throw ParseError("degree " + std::to_string(k) + " listed twice");
    c.emplace(k, matrix_from_json(detail::field(entry, "mat"), rows, cols));
  }
  try {
    return LaurentPoly(rows, cols, std::move(c));
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

inline LaurentPoly poly_from_json(const Json& j) {
  return poly_from_json(j, detail::count_field(j, "rows"), detail::count_field(j, "cols"));
}

inline Json to_json(const ProblemFile& f) {
  Json j = {{"p", f.p},
            {"q", f.q},
            {"m", f.m},
            {"alpha", poly_to_json(f.data.alpha())["coeffs"]},
            {"beta", poly_to_json(f.data.beta())["coeffs"]},
            {"gamma", poly_to_json(f.data.gamma())["coeffs"]},
            {"delta", poly_to_json(f.data.delta())["coeffs"]}};
  if (f.g) j["g"] = poly_to_json(*f.g)["coeffs"];
  Json meta = Json::object();
  if (f.seed) meta["seed"] = *f.seed;
  if (!f.provenance.empty()) meta["provenance"] = f.provenance;
  j["metadata"] = std::move(meta);
  return j;
}

inline ProblemFile problem_from_json(const Json& j) {
  ProblemFile f;
  f.p = detail::count_field(j, "p");
  f.q = detail::count_field(j, "q");
  if (f.p < 1 || f.q < 1) throw ParseError("p and q must be positive");
  const Index m = detail::count_field(j, "m");
  f.m = static_cast<int>(m);
  const LaurentPoly al = poly_from_json(detail::field(j, "alpha"), f.p, f.p);
  const LaurentPoly be = poly_from_json(detail::field(j, "beta"), f.p, f.q);
  const LaurentPoly ga = poly_from_json(detail::field(j, "gamma"), f.q, f.p);
  const LaurentPoly de = poly_from_json(detail::field(j, "delta"), f.q, f.q);
  auto within = [&](const LaurentPoly& x, int lo, int hi, const char* name) {
    if (!x.is_zero() && (x.lo() < lo || x.hi() > hi)) {
      throw ParseError(std::string(name) + " degrees must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) +
                       "]");
    }
  };
  within(al, 0, f.m, "alpha");
  within(be, 0, f.m, "beta");
  within(ga, -f.m, 0, "gamma");
  within(de, -f.m, 0, "delta");
  try {
    f.data = DataSet(al, be, ga, de);
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
  if (j.contains("g") && !j.at("g").is_null()) {
    f.g = poly_from_json(j.at("g"), f.p, f.q);
    if (!f.g->in_subspace(SubspaceTag::Plus)) throw ParseError("g must have non-negative degrees");
  }
  if (j.contains("metadata")) {
    const Json& meta = j.at("metadata");
    if (meta.contains("seed")) f.seed = meta.at("seed").get<std::uint64_t>();
    if (meta.contains("provenance")) f.provenance = meta.at("provenance").get<std::string>();
  }
  return f;
}

/// A g file is either a polynomial object or a problem file carrying "g".
inline LaurentPoly g_from_json(const Json& j) {
  if (j.is_object() && j.contains("coeffs")) {
    LaurentPoly g = poly_from_json(j);
    if (!g.in_subspace(SubspaceTag::Plus)) throw ParseError("g must have non-negative degrees");
    return g;
  }
  const ProblemFile f = problem_from_json(j);
  if (!f.g) throw ParseError("file carries no g");
  return *f.g;
}

inline Json to_json(const CheckReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    entries.push_back({{"name", e.name},
                       {"value", detail::number_to_json(e.value)},
                       {"threshold", detail::number_to_json(e.threshold)},
                       {"verdict", to_string(e.verdict)},
                       {"detail", e.detail}});
  }
  return {{"entries", std::move(entries)}};
}

inline CheckReport check_report_from_json(const Json& j) {
  CheckReport r;
  for (const auto& e : detail::field(j, "entries")) {
    const auto v = detail::field(e, "verdict").get<std::string>();
    Verdict verdict;
    if (v == "pass") verdict = Verdict::Pass;
    else if (v == "fail") verdict = Verdict::Fail;
    else if (v == "inconclusive") verdict = Verdict::Inconclusive;
    else throw ParseError("unknown verdict '" + v + "'");
    r.entries.push_back({detail::field(e, "name").get<std::string>(), detail::number_from_json(detail::field(e, "value")),
                         detail::number_from_json(detail::field(e, "threshold")), verdict,
                         e.value("detail", std::string())});
  }
  return r;
}

inline Json to_json(const SolveReport& r) {
  Json ids = Json::array(), inc = Json::array();
  for (double v : r.residual_identities) ids.push_back(detail::number_to_json(v));
  for (double v : r.residual_inclusions) inc.push_back(detail::number_to_json(v));
  Json cand = Json::object();
  for (const auto& [k, g] : r.candidates) cand[k] = poly_to_json(g);
  Json metrics = Json::object();
  for (const auto& [k, v] : r.metrics) metrics[k] = detail::number_to_json(v);
  return {{"method", to_string(r.method)},
          {"status", to_string(r.status)},
          {"reason", r.reason},
          {"g", poly_to_json(r.g)},
          {"residual_identities", std::move(ids)},
          {"residual_inclusions", std::move(inc)},
          {"cross_method_gap", r.cross_method_gap ? detail::number_to_json(*r.cross_method_gap) : Json()},
          {"phi", r.phi ? poly_to_json(*r.phi) : Json()},
          {"candidates", std::move(cand)},
          {"metrics", std::move(metrics)}};
}

inline SolveReport solve_report_from_json(const Json& j) {
  SolveReport r;
  const auto method = detail::field(j, "method").get<std::string>();
  if (method == "poly") r.method = SolveMethod::Polynomial;
  else if (method == "truncated") r.method = SolveMethod::Truncated;
  else if (method == "factorization") r.method = SolveMethod::Factorization;
  else throw ParseError("unknown method '" + method + "'");
  const auto status = detail::field(j, "status").get<std::string>();
  if (status == "accepted") r.status = SolveStatus::Accepted;
  else if (status == "flagged") r.status = SolveStatus::Flagged;
  else if (status == "refused") r.status = SolveStatus::Refused;
  else throw ParseError("unknown status '" + status + "'");
  r.reason = detail::field(j, "reason").get<std::string>();
  r.g = poly_from_json(detail::field(j, "g"));
  const Json& ids = detail::field(j, "residual_identities");
  const Json& inc = detail::field(j, "residual_inclusions");
  if (ids.size() != 3 || inc.size() != 4) throw ParseError("residual arrays have the wrong length");
  for (std::size_t k = 0; k < 3; ++k) r.residual_identities[k] = detail::number_from_json(ids[k]);
  for (std::size_t k = 0; k < 4; ++k) r.residual_inclusions[k] = detail::number_from_json(inc[k]);
  if (j.contains("cross_method_gap") && !j.at("cross_method_gap").is_null()) {
    r.cross_method_gap = detail::number_from_json(j.at("cross_method_gap"));
  }
  if (j.contains("phi") && !j.at("phi").is_null()) r.phi = poly_from_json(j.at("phi"));
  if (j.contains("candidates")) {
    for (const auto& [k, v] : j.at("candidates").items()) r.candidates.emplace(k, poly_from_json(v));
  }
  if (j.contains("metrics")) {
    for (const auto& [k, v] : j.at("metrics").items()) r.metrics.emplace(k, detail::number_from_json(v));
  }
  return r;
}

}  // namespace twofold
