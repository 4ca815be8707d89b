#include "qig/io.hpp"

#include <charconv>
#include <ostream>

#include "qig/error.hpp"

namespace qig {

namespace {

Json complex_json(cplx z) { return Json::array({z.real(), z.imag()}); }

Json matrix_json(const Eigen::MatrixXcd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat2 mat2_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw Error(ErrorKind::InconsistentTomogram, "frame matrix must be 2x2");
  }
  Mat2 m;
  for (int r = 0; r < 2; ++r) {
    const Json& row = j.at(static_cast<std::size_t>(r));
    if (!row.is_array() || row.size() != 2) {
      throw Error(ErrorKind::InconsistentTomogram, "frame matrix must be 2x2");
    }
    for (int c = 0; c < 2; ++c) {
      const Json& z = row.at(static_cast<std::size_t>(c));
      if (!z.is_array() || z.size() != 2) {
        throw Error(ErrorKind::InconsistentTomogram, "matrix entries are [re, im] pairs");
      }
      m(r, c) = cplx(z.at(0).get<double>(), z.at(1).get<double>());
    }
  }
  return m;
}

Json witness_json(const Witness& w) {
  return std::visit(
      [](const auto& x) -> Json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, LoewnerWitness>) {
          return {{"kind", "loewner"}, {"z", complex_json(x.z)}, {"value", complex_json(x.value)}};
        } else if constexpr (std::is_same_v<T, MatrixWitness>) {
          return {{"kind", "matrix"},
                  {"sample", x.sample},
                  {"a", matrix_json(x.a)},
                  {"b", matrix_json(x.b)},
                  {"min_eigenvalue", x.min_eigenvalue}};
        } else {
          Json kraus = Json::array();
          for (const auto& k : x.kraus) kraus.push_back(matrix_json(k));
          return {{"kind", "cptp"},
                  {"sample", x.sample},
                  {"state", {x.state.y1, x.state.y2, x.state.y3}},
                  {"tangent", matrix_json(x.tangent)},
                  {"kraus", kraus},
                  {"lhs", x.lhs},
                  {"rhs", x.rhs}};
        }
      },
      w);
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

Json to_json(const Tomogram& t) {
  Json frames = Json::array();
  for (const auto& f : t.frames) frames.push_back({{"label", f.label()}, {"u", matrix_json(f.u())}});
  Json probs = Json::array();
  for (const auto& p : t.probs) probs.push_back({p[0], p[1]});
  return {{"frames", frames}, {"probs", probs}};
}

Tomogram tomogram_from_json(const Json& j) {
  Tomogram t;
  try {
    for (const auto& f : j.at("frames")) {
      t.frames.emplace_back(mat2_from_json(f.at("u")), f.value("label", std::string{}));
    }
    for (const auto& p : j.at("probs")) {
      if (!p.is_array() || p.size() != 2) {
        throw Error(ErrorKind::InconsistentTomogram, "each probability entry is a pair");
      }
      t.probs.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InconsistentTomogram, std::string("malformed tomogram: ") + e.what());
  }
  t.validate();
  return t;
}

Json to_json(const MonotonicityReport& r) {
  Json witnesses = Json::array();
  for (const auto& w : r.witnesses) witnesses.push_back(witness_json(w));
  Json j = {{"function", r.function},
            {"params", r.params},
            {"test", r.test},
            {"verdict", to_string(r.verdict)},
            {"witnesses", witnesses},
            {"violations", r.violations},
            {"samples", r.samples},
            {"skipped", r.skipped},
            {"seed", r.seed},
            {"tolerance", r.tolerance}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json to_json(const VerificationRecord& r) {
  return {{"f", r.f},
          {"h", r.h},
          {"source", r.source},
          {"points", r.points},
          {"ode_residual_max", r.ode_residual_max},
          {"factorization_residual_max", r.factorization_residual_max},
          {"bound", r.bound},
          {"passed", r.passed}};
}

void write_metric_csv(std::ostream& os, const std::vector<MetricRow>& rows) {
  const bool extended = !rows.empty() && rows.front().conformal.has_value();
  os << "w,g_w,g_perp" << (extended ? ",A,h\n" : "\n");
  for (const auto& r : rows) {
    os << format_double(r.w) << ',' << format_double(r.g_w) << ',' << format_double(r.g_perp);
    if (extended) {
      os << ',' << format_double(r.conformal.value_or(0.0)) << ','
         << format_double(r.extracted_h.value_or(0.0));
    }
    os << '\n';
  }
}

void write_solution_csv(std::ostream& os, const OdeSolution& sol) {
  os << "w,wt,dwt_dw,residual\n";
  for (const auto& p : sol.grid) {
    os << format_double(p.w) << ',' << format_double(p.wt) << ',' << format_double(p.dwt) << ','
       << format_double(p.residual) << '\n';
  }
}

void write_function_csv(std::ostream& os, const PetzFunction& f, const std::vector<double>& ts) {
  os << "t,f\n";
  for (double t : ts) os << format_double(t) << ',' << format_double(f(t)) << '\n';
}

SpectralMap parse_scheme_spec(std::string_view spec) {
  const SpecParts parts = split_spec(spec);
  if (parts.id == "identity" && parts.params.empty()) return identity_scheme();
  if ((parts.id == "exp" || parts.id == "exponential") && parts.params.size() == 1) {
    return exponential_scheme(parts.params[0]);
  }
  throw Error(ErrorKind::DomainError, "unknown scheme '" + std::string(spec) +
                                          "' (expected identity or exp:beta)");
}

}  // namespace qig
