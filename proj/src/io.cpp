// SPDX-License-Identifier: Apache-2.0

#include "hpcalc/io.hpp"

#include <fstream>
#include <sstream>

namespace hpcalc::io {

namespace {

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument("complex entries must be [re, im] pairs");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

Vector vector_from_json(const json& j) {
  Vector v(static_cast<Index>(j.size()));
  for (Index i = 0; i < v.size(); ++i) v(i) = complex_from_json(j[i]);
  return v;
}

json poly_to_json(const Poly& p) {
  json out = json::array();
  for (const Complex& c : p.coeff) out.push_back(complex_to_json(c));
  return out;
}

Poly poly_from_json(const json& j) {
  std::vector<Complex> c;
  for (const auto& e : j) c.push_back(complex_from_json(e));
  return Poly(std::move(c));
}

}  // namespace

json space_to_json(const SpaceDescriptor& s) {
  switch (s.kind) {
    case SpaceKind::Hilbert:
      return {{"type", "hilbert"}, {"dim", s.dim}};
    case SpaceKind::SeqLattice:
      return {{"type", "seq_lattice"}, {"dim", s.dim}, {"p", s.p}};
    case SpaceKind::FuncLattice:
      return {{"type", "func_lattice"},
              {"grid_start", s.gridStart},
              {"grid_step", s.gridStep},
              {"grid_count", s.dim},
              {"p", s.p}};
  }
  throw std::logic_error("unreachable");
}

SpaceDescriptor space_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "hilbert") return SpaceDescriptor::hilbert(j.at("dim").get<Index>());
  if (type == "seq_lattice")
    return SpaceDescriptor::seq_lattice(j.at("dim").get<Index>(),
                                        j.at("p").get<double>());
  if (type == "func_lattice")
    return SpaceDescriptor::func_lattice(
        j.at("grid_start").get<double>(), j.at("grid_step").get<double>(),
        j.at("grid_count").get<Index>(), j.at("p").get<double>());
  throw std::invalid_argument("unknown space type: " + type);
}

json matrix_to_json(const MatrixOperator& A) {
  json entries = json::array();
  for (Index i = 0; i < A.dim(); ++i) {
    json row = json::array();
    for (Index j = 0; j < A.dim(); ++j) row.push_back(complex_to_json(A.entries(i, j)));
    entries.push_back(row);
  }
  return {{"dim", A.dim()}, {"space", space_to_json(A.space)}, {"entries", entries}};
}

MatrixOperator matrix_from_json(const json& j) {
  const Index n = j.at("dim").get<Index>();
  const SpaceDescriptor space = space_from_json(j.at("space"));
  const json& entries = j.at("entries");
  if (static_cast<Index>(entries.size()) != n)
    throw std::invalid_argument("matrix row count does not match dim");
  Matrix M(n, n);
  for (Index r = 0; r < n; ++r) {
    const json& row = entries[r];
    if (static_cast<Index>(row.size()) != n)
      throw std::invalid_argument("matrix column count does not match dim");
    for (Index c = 0; c < n; ++c) M(r, c) = complex_from_json(row[c]);
  }
  return MatrixOperator(std::move(M), space);
}

MatrixOperator read_matrix(const std::string& path) {
  return matrix_from_json(read_json(path));
}

void write_matrix(const MatrixOperator& A, const std::string& path) {
  write_json(matrix_to_json(A), path);
}

json function_to_json(const HalfPlaneFunction& f) {
  json j;
  j["alpha"] = f.domain_abscissa();
  j["decay_order"] = f.decay_order();
  switch (f.variant()) {
    case HalfPlaneFunction::Variant::Rational:
    case HalfPlaneFunction::Variant::ExpRational: {
      j["variant"] = f.variant() == HalfPlaneFunction::Variant::Rational
                         ? "rational"
                         : "exp_rational";
      json terms = json::array();
      for (const ExpTerm& t : f.terms()) {
        json jt;
        jt["shift"] = t.shift;
        jt["log_scale"] = t.logScale;
        jt["numerator"] = poly_to_json(t.r.num);
        jt["scale"] = complex_to_json(t.r.scale);
        json poles = json::array();
        for (const auto& [q, m] : t.r.poles)
          poles.push_back({{"location", complex_to_json(q)}, {"multiplicity", m}});
        jt["poles"] = poles;
        terms.push_back(jt);
      }
      j["terms"] = terms;
      return j;
    }
    case HalfPlaneFunction::Variant::LaplaceDensityV: {
      j["variant"] = "laplace_density";
      j["t_start"] = f.density().tStart;
      j["t_step"] = f.density().tStep;
      j["samples"] = vector_to_json(f.density().samples);
      return j;
    }
  }
  throw std::logic_error("unreachable");
}

HalfPlaneFunction function_from_json(const json& j) {
  const std::string variant = j.at("variant").get<std::string>();
  const double alpha = j.at("alpha").get<double>();
  if (variant == "laplace_density") {
    LaplaceDensity d;
    d.tStart = j.at("t_start").get<double>();
    d.tStep = j.at("t_step").get<double>();
    d.samples = vector_from_json(j.at("samples"));
    return HalfPlaneFunction::laplace_of_density(std::move(d), alpha);
  }
  if (variant == "rational" && j.contains("numerator")) {
    // compact coefficient form
    return HalfPlaneFunction::rational(poly_from_json(j.at("numerator")),
                                       poly_from_json(j.at("denominator")),
                                       alpha);
  }
  if (variant == "rational" || variant == "exp_rational") {
    std::vector<ExpTerm> terms;
    for (const auto& jt : j.at("terms")) {
      ExpTerm t;
      t.shift = jt.value("shift", 0.0);
      t.logScale = jt.value("log_scale", 0.0);
      if (jt.contains("poles")) {
        t.r.num = poly_from_json(jt.at("numerator"));
        t.r.scale = jt.contains("scale") ? complex_from_json(jt.at("scale"))
                                         : Complex(1.0);
        for (const auto& jp : jt.at("poles"))
          t.r.poles.push_back({complex_from_json(jp.at("location")),
                               jp.at("multiplicity").get<int>()});
      } else {
        t.r = RationalFn::from_coeffs(poly_from_json(jt.at("numerator")),
                                      poly_from_json(jt.at("denominator")));
      }
      terms.push_back(std::move(t));
    }
    if (variant == "rational" && terms.size() == 1 && terms[0].shift == 0.0)
      return HalfPlaneFunction::rational_fn(terms[0].r, alpha);
    return HalfPlaneFunction::exp_rational(std::move(terms), alpha);
  }
  throw std::invalid_argument("unknown function variant: " + variant);
}

HalfPlaneFunction read_function(const std::string& path) {
  return function_from_json(read_json(path));
}

json estimate_to_json(const std::string& quantity, const Estimate& e) {
  return {{"quantity", quantity}, {"estimate", e.value},
          {"ci", json::array({e.ciLow, e.ciHigh})}, {"exact", e.exact},
          {"seed", e.seed}, {"samples", e.samples}};
}

json witness_to_json(const ConditionWitness& w) {
  json j;
  j["ratio"] = w.recordedRatio;
  j["params"] = w.params;
  json xs = json::array(), ys = json::array();
  for (const auto& x : w.xs) xs.push_back(vector_to_json(x));
  for (const auto& y : w.ys) ys.push_back(vector_to_json(y));
  j["xs"] = xs;
  j["ys"] = ys;
  j["function_index"] = w.functionIndex;
  return j;
}

ConditionWitness witness_from_json(const json& j) {
  ConditionWitness w;
  w.recordedRatio = j.at("ratio").get<double>();
  w.params = j.at("params").get<std::vector<double>>();
  for (const auto& jx : j.at("xs")) w.xs.push_back(vector_from_json(jx));
  for (const auto& jy : j.at("ys")) w.ys.push_back(vector_from_json(jy));
  w.functionIndex = j.at("function_index").get<std::vector<int>>();
  return w;
}

json condition_report_to_json(const ConditionReport& rep) {
  json j;
  j["condition"] = rep.conditionName;
  j["m"] = rep.m;
  j["omega"] = rep.omega;
  j["constant_lower_bound"] = rep.constantLowerBound;
  j["quadrature_error_bound"] = rep.quadratureErrorBound;
  j["verdict"] = rep.verdict;
  j["seed"] = rep.seed;
  j["exact"] = rep.exact;
  json ws = json::array();
  for (const auto& w : rep.witnesses) ws.push_back(witness_to_json(w));
  j["witnesses"] = ws;
  return j;
}

json bounds_report_to_json(const BoundsReport& rep) {
  json j;
  j["omega"] = rep.omega;
  j["s0"] = rep.s0;
  j["omega_gamma"] =
      rep.omegaGammaNegInf ? json("-inf") : json(rep.omegaGamma);
  j["s0_gamma"] = rep.s0GammaNegInf ? json("-inf") : json(rep.s0Gamma);
  j["fit_omega"] = rep.fitOmega;
  j["ordering_ok"] = rep.orderingOk;
  j["linfty_means_bound"] = rep.lInftyMeansBound;
  j["linfty_probe"] = rep.lInftyProbe;
  j["methods"] = rep.methods;
  return j;
}

void append_witness_line(const std::string& path, const std::string& condition,
                         double omega, int m, const ConditionWitness& w) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("cannot open witness store: " + path);
  json j = witness_to_json(w);
  j["condition"] = condition;
  j["omega"] = omega;
  j["m"] = m;
  out << j.dump() << "\n";
}

std::vector<std::pair<ConditionReport, ConditionWitness>> read_witness_store(
    const std::string& path) {
  std::vector<std::pair<ConditionReport, ConditionWitness>> out;
  std::ifstream in(path);
  if (!in) return out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    ConditionReport rep;
    rep.conditionName = j.at("condition").get<std::string>();
    rep.omega = j.at("omega").get<double>();
    rep.m = j.at("m").get<int>();
    out.emplace_back(rep, witness_from_json(j));
  }
  return out;
}

void write_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return json::parse(in);
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  for (size_t i = 0; i < header.size(); ++i)
    out << header[i] << (i + 1 < header.size() ? "," : "\n");
  out.precision(17);
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i)
      out << row[i] << (i + 1 < row.size() ? "," : "\n");
  }
}

}  // namespace hpcalc::io
