// SPDX-License-Identifier: Apache-2.0

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hpcalc/io.hpp"

using namespace hpcalc;
using nlohmann::json;

namespace {

struct CliError : std::runtime_error {
  std::string code;
  CliError(std::string c, const std::string& msg)
      : std::runtime_error(msg), code(std::move(c)) {}
};

void emit_error(const std::string& code, const std::string& msg) {
  json j;
  j["error"] = {{"code", code}, {"message", msg}};
  std::cout << j.dump(2) << std::endl;
}

MatrixOperator load_matrix(const std::string& path) {
  try {
    return io::read_matrix(path);
  } catch (const std::exception& e) {
    throw CliError("E_INPUT", std::string("matrix file: ") + e.what());
  }
}

HalfPlaneFunction load_function(const std::string& path) {
  try {
    return io::read_function(path);
  } catch (const std::exception& e) {
    throw CliError("E_INPUT", std::string("function file: ") + e.what());
  }
}

std::vector<Complex> parse_complex_list(const std::string& text) {
  std::vector<Complex> out;
  std::string token;
  std::stringstream ss(text);
  while (std::getline(ss, token, ',')) {
    double re = 0.0, im = 0.0;
    const auto ipos = token.find('i');
    if (ipos == std::string::npos) {
      re = std::stod(token);
    } else {
      // forms like "2+1i", "-1i", "1i"
      size_t split = token.find_last_of("+-", ipos - 1 > 0 ? ipos - 1 : 0);
      if (split == std::string::npos || split == 0) {
        im = std::stod(token.substr(0, ipos));
      } else {
        re = std::stod(token.substr(0, split));
        im = std::stod(token.substr(split, ipos - split));
      }
    }
    out.emplace_back(re, im);
  }
  if (out.empty()) throw CliError("E_PARAM", "empty complex list");
  return out;
}

SpaceDescriptor parse_space(const std::string& text, Index dim) {
  // "hilbert", "seq:p", "func:start:h:p"
  std::vector<std::string> parts;
  std::string token;
  std::stringstream ss(text);
  while (std::getline(ss, token, ':')) parts.push_back(token);
  if (parts.empty()) throw CliError("E_PARAM", "empty space spec");
  if (parts[0] == "hilbert") return SpaceDescriptor::hilbert(dim);
  if (parts[0] == "seq")
    return SpaceDescriptor::seq_lattice(dim, parts.size() > 1 ? std::stod(parts[1]) : 2.0);
  if (parts[0] == "func")
    return SpaceDescriptor::func_lattice(
        parts.size() > 1 ? std::stod(parts[1]) : 0.0,
        parts.size() > 2 ? std::stod(parts[2]) : 1.0, dim,
        parts.size() > 3 ? std::stod(parts[3]) : 2.0);
  throw CliError("E_PARAM", "unknown space spec: " + text);
}

void write_report(const json& j, const std::string& outPath) {
  if (outPath.empty())
    std::cout << j.dump(2) << std::endl;
  else
    io::write_json(j, outPath);
}

json run_config_json(std::uint64_t seed, long samples, int batches, int budget,
                     double tol) {
  return {{"seed", seed}, {"samples", samples}, {"batches", batches},
          {"budget", budget}, {"quad_tolerance", tol}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"half-plane functional calculus and gamma-boundedness toolkit"};
  app.require_subcommand(1);

  // HPCALC_THREADS caps internal parallelism (the estimators run their work
  // units sequentially unless this allows more)
  if (const char* th = std::getenv("HPCALC_THREADS")) {
    const int cap = std::max(1, std::atoi(th));
    Eigen::setNbThreads(cap);
  } else {
    Eigen::setNbThreads(1);
  }

  std::string matrixPath, functionPath, outPath, csvPath, witnessStore;
  std::vector<std::string> matrixPaths;
  double omega = 0.0, lambdaRe = 0.0, lambdaIm = 0.0, tol = 1e-7;
  double mu = std::numeric_limits<double>::quiet_NaN();
  int m = 1, budget = 200;
  long samples = 10000;
  int batches = 20;
  std::uint64_t seed = 12345;
  bool withGamma = false;

  int exitCode = 0;

  auto gaussian_cfg = [&]() {
    GaussianConfig cfg;
    cfg.sampleCount = samples;
    cfg.batches = batches;
    cfg.seed = seed;
    cfg.searchBudget = budget;
    return cfg;
  };
  auto quad_cfg = [&]() {
    QuadratureConfig q = condition_quadrature_defaults();
    q.tolerance = tol;
    return q;
  };

  // resolvent
  auto* cResolvent = app.add_subcommand("resolvent", "resolvent R(lambda, A)");
  cResolvent->add_option("--matrix", matrixPath)->required();
  cResolvent->add_option("--lambda-re", lambdaRe)->required();
  cResolvent->add_option("--lambda-im", lambdaIm);
  cResolvent->add_option("--out", outPath);
  cResolvent->callback([&] {
    const MatrixOperator A = load_matrix(matrixPath);
    const ResolventInfo info = resolvent_info(A, Complex(lambdaRe, lambdaIm));
    json j;
    j["resolvent"] = io::matrix_to_json(info.R);
    j["condition_estimate"] = info.conditionEstimate;
    j["ill_conditioned"] = info.illConditioned;
    j["lambda"] = json::array({lambdaRe, lambdaIm});
    write_report(j, outPath);
  });

  // funcalc
  auto* cFuncalc = app.add_subcommand("funcalc", "evaluate f(A)");
  cFuncalc->add_option("--matrix", matrixPath)->required();
  cFuncalc->add_option("--function", functionPath)->required();
  cFuncalc->add_option("--mu", mu, "regularizer pole (needed when f has no decay)");
  cFuncalc->add_option("--tol", tol);
  cFuncalc->add_option("--out", outPath);
  cFuncalc->callback([&] {
    const MatrixOperator A = load_matrix(matrixPath);
    const HalfPlaneFunction f = load_function(functionPath);
    CalcResult res;
    std::string method;
    if (f.decay_order() > 0.0 && std::isnan(mu)) {
      res = dunford_eval(A, f, quad_cfg());
      method = "dunford";
    } else {
      const double muUse = std::isnan(mu) ? f.domain_abscissa() - 1.0 : mu;
      res = regularized_eval(A, f, muUse, quad_cfg());
      method = "regularized(mu=" + std::to_string(muUse) + ")";
    }
    json j;
    j["f_of_A"] = io::matrix_to_json(res.op);
    j["error_bound"] = res.errorBound;
    j["method"] = method;
    j["delta"] = res.delta;
    j["config"] = run_config_json(seed, samples, batches, budget, tol);
    write_report(j, outPath);
  });

  // gfs-check
  auto* cGfs = app.add_subcommand("gfs-check", "GFS condition constant");
  cGfs->add_option("--matrix", matrixPath)->required();
  cGfs->add_option("--omega", omega)->required();
  cGfs->add_option("--m", m);
  cGfs->add_option("--budget", budget);
  cGfs->add_option("--seed", seed);
  cGfs->add_option("--tol", tol);
  cGfs->add_option("--witness-store", witnessStore);
  cGfs->add_option("--out", outPath);
  cGfs->callback([&] {
    const MatrixOperator A = load_matrix(matrixPath);
    ConditionReport rep = gfs_constant(A, omega, m, budget, quad_cfg(), seed);
    if (!witnessStore.empty()) {
      // regression: prior maxima must re-evaluate within 1%
      for (const auto& [prior, w] : io::read_witness_store(witnessStore)) {
        if (prior.conditionName != "gfs" || prior.omega != omega || prior.m != m)
          continue;
        ConditionReport ref = rep;
        ref.conditionName = "gfs";
        ref.omega = omega;
        ref.m = m;
        const double re = reevaluate_witness(A, ref, w, gaussian_cfg(), quad_cfg());
        if (std::abs(re - w.recordedRatio) > 0.01 * std::abs(w.recordedRatio))
          throw CliError("E_REGRESSION", "stored witness does not reproduce");
        rep.constantLowerBound = std::max(rep.constantLowerBound, re);
      }
      for (const auto& w : rep.witnesses)
        io::append_witness_line(witnessStore, "gfs", omega, m, w);
    }
    json j = io::condition_report_to_json(rep);
    j["config"] = run_config_json(seed, samples, batches, budget, tol);
    write_report(j, outPath);
    if (rep.verdict == "violatedWithWitness") exitCode = 2;
  });

  // wgfs-check
  auto* cWgfs = app.add_subcommand("wgfs-check", "weak-gamma GFS constant");
  cWgfs->add_option("--matrix", matrixPath)->required();
  cWgfs->add_option("--omega", omega)->required();
  cWgfs->add_option("--m", m);
  cWgfs->add_option("--budget", budget);
  cWgfs->add_option("--samples", samples);
  cWgfs->add_option("--batches", batches);
  cWgfs->add_option("--seed", seed);
  cWgfs->add_option("--tol", tol);
  cWgfs->add_option("--out", outPath);
  cWgfs->callback([&] {
    const MatrixOperator A = load_matrix(matrixPath);
    const ConditionReport rep =
        wgfs_constant(A, omega, m, budget, gaussian_cfg(), quad_cfg());
    json j = io::condition_report_to_json(rep);
    j["config"] = run_config_json(seed, samples, batches, budget, tol);
    write_report(j, outPath);
    if (rep.verdict == "violatedWithWitness") exitCode = 2;
  });

  // calc-constant
  auto* cCalc = app.add_subcommand("calc-constant",
                                   "strong m-bounded calculus constant");
  cCalc->add_option("--matrix", matrixPath)->required();
  cCalc->add_option("--omega", omega)->required();
  cCalc->add_option("--m", m);
  cCalc->add_flag("--gamma", withGamma, "gamma-bounded variant");
  cCalc->add_option("--samples", samples);
  cCalc->add_option("--seed", seed);
  cCalc->add_option("--tol", tol);
  cCalc->add_option("--out", outPath);
  cCalc->callback([&] {
    const MatrixOperator A = load_matrix(matrixPath);
    const ConditionReport rep =
        withGamma ? gamma_strong_m_calc_constant(A, omega, m,
                                                 standard_function_corpus,
                                                 gaussian_cfg(), quad_cfg())
                  : strong_m_calc_constant(A, omega, m,
                                           standard_function_corpus, quad_cfg());
    json j = io::condition_report_to_json(rep);
    j["config"] = run_config_json(seed, samples, batches, budget, tol);
    write_report(j, outPath);
    if (rep.verdict == "violatedWithWitness") exitCode = 2;
  });

  // square-function
  auto* cSq = app.add_subcommand("square-function",
                                 "square-function condition constants");
  cSq->add_option("--matrix", matrixPath)->required();
  cSq->add_option("--omega", omega)->required();
  cSq->add_option("--budget", budget);
  cSq->add_option("--samples", samples);
  cSq->add_option("--seed", seed);
  cSq->add_option("--tol", tol);
  cSq->add_option("--out", outPath);
  cSq->callback([&] {
    const MatrixOperator A = load_matrix(matrixPath);
    const SquareFunctionReport rep =
        square_function_condition(A, omega, budget, gaussian_cfg(), quad_cfg());
    json j;
    j["primal"] = io::condition_report_to_json(rep.primal);
    j["adjoint"] = io::condition_report_to_json(rep.adjoint);
    j["config"] = run_config_json(seed, samples, batches, budget, tol);
    write_report(j, outPath);
    if (rep.primal.verdict != "consistent" || rep.adjoint.verdict != "consistent")
      exitCode = 2;
  });

  // gamma-bound
  auto* cGb = app.add_subcommand("gamma-bound",
                                 "gamma-bound estimate of an operator family");
  cGb->add_option("--matrix", matrixPaths, "family member (repeatable)")
      ->required();
  cGb->add_option("--budget", budget);
  cGb->add_option("--samples", samples);
  cGb->add_option("--batches", batches);
  cGb->add_option("--seed", seed);
  cGb->add_option("--out", outPath);
  cGb->callback([&] {
    std::vector<MatrixOperator> family;
    for (const auto& p : matrixPaths) family.push_back(load_matrix(p));
    const GammaBound gb = gamma_bound_estimate(family, {}, gaussian_cfg());
    json j;
    j["lower_bound"] = gb.lowerBound;
    j["exact"] = gb.exact;
    if (!gb.exact) {
      j["numerator"] = io::estimate_to_json("gaussian_norm_Tx", gb.numerator);
      j["denominator"] = io::estimate_to_json("gaussian_norm_x", gb.denominator);
    }
    j["config"] = run_config_json(seed, samples, batches, budget, tol);
    write_report(j, outPath);
  });

  // spectral-bounds
  auto* cSb = app.add_subcommand("spectral-bounds",
                                 "growth/uniform-boundedness abscissae");
  cSb->add_option("--matrix", matrixPath)->required();
  cSb->add_option("--samples", samples);
  cSb->add_option("--seed", seed);
  cSb->add_option("--out", outPath);
  cSb->callback([&] {
    const MatrixOperator A = load_matrix(matrixPath);
    const BoundsReport rep = gearhart_pruss_report(A, gaussian_cfg());
    json j = io::bounds_report_to_json(rep);
    j["config"] = run_config_json(seed, samples, batches, budget, tol);
    write_report(j, outPath);
    if (!rep.orderingOk) exitCode = 2;
  });

  // reproduce
  auto* cRep = app.add_subcommand("reproduce", "paper corpus cases");
  std::string caseName, xiText = "1,2,5", baseText = "hilbert", diagText = "1";
  int nParam = 16;
  double pParam = 4.0, tParam = 1.0, alphaParam = -1.0;
  bool sweep = false;
  cRep->add_option("case", caseName, "nogtype | multiplier | sectorial | laplace")
      ->required();
  cRep->add_option("--n", nParam);
  cRep->add_option("--p", pParam);
  cRep->add_option("--xi", xiText);
  cRep->add_option("--base", baseText);
  cRep->add_option("--diag", diagText);
  cRep->add_option("--t", tParam);
  cRep->add_option("--alpha", alphaParam);
  cRep->add_option("--seed", seed);
  cRep->add_option("--samples", samples);
  cRep->add_option("--budget", budget);
  cRep->add_flag("--sweep", sweep, "emit rows for n = 4, 8, ..., --n");
  cRep->add_flag("--with-gamma", withGamma, "include gamma-bound estimates");
  cRep->add_option("--out", outPath);
  cRep->add_option("--csv", csvPath);
  cRep->callback([&] {
    json j;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> header;
    if (caseName == "nogtype") {
      header = {"n", "shifted", "unshifted"};
      if (withGamma) header.push_back("gamma_lower_bound");
      std::vector<int> ns;
      if (sweep)
        for (int k = 4; k <= nParam; k *= 2) ns.push_back(k);
      else
        ns.push_back(nParam);
      json cases = json::array();
      for (int n : ns) {
        const ShiftSemigroupCase c = shift_semigroup_case(n, pParam);
        json jc;
        jc["id"] = c.meta.id;
        jc["n"] = n;
        jc["p"] = pParam;
        jc["shifted"] = c.shiftedValue;
        jc["unshifted"] = c.unshiftedValue;
        jc["expected_shifted"] = c.expectedShifted;
        jc["expected_unshifted"] = c.expectedUnshifted;
        std::vector<double> row = {static_cast<double>(n), c.shiftedValue,
                                   c.unshiftedValue};
        if (withGamma) {
          const GammaBound gb = gamma_bound_estimate(
              c.shifts,
              {GaussianSum{c.witnesses, c.space},
               GaussianSum{c.pileupWitnesses, c.space}},
              gaussian_cfg());
          jc["gamma_lower_bound"] = gb.lowerBound;
          row.push_back(gb.lowerBound);
        }
        cases.push_back(jc);
        rows.push_back(row);
      }
      j["cases"] = cases;
    } else if (caseName == "multiplier") {
      std::vector<double> xi;
      for (const Complex& z : parse_complex_list(xiText)) xi.push_back(z.real());
      const Index baseDim = 4;
      const SpaceDescriptor base = parse_space(baseText, baseDim);
      const MultiplierGroup g = multiplier_group_case(xi, base);
      const Estimate norm = multiplier_norm_estimate(g, tParam, gaussian_cfg());
      std::vector<double> grid;
      for (int i = 0; i <= 8; ++i) grid.push_back(tParam * i / 8.0);
      j["norm_estimate"] = io::estimate_to_json("multiplier_norm", norm);
      j["group_law_error"] = multiplier_group_law_error(g, grid);
      // calculus check with b(t) = e^{-t}
      LaplaceDensity b;
      b.tStart = 0.0;
      b.tStep = 0.01;
      b.samples = Vector(3000);
      for (Index i = 0; i < b.samples.size(); ++i)
        b.samples(i) = std::exp(-b.node(i));
      const MultiplierCalcCheck chk = multiplier_calculus_case(g, b, gaussian_cfg());
      j["calculus"] = {{"max_abs_error", chk.maxAbsError},
                       {"op_norm_lower_bound", chk.opNormLowerBound},
                       {"hinf_norm", chk.hinfNorm},
                       {"norm_ratio", chk.normRatio}};
      header = {"t", "norm_estimate", "group_law_error"};
      rows.push_back({tParam, norm.value, j["group_law_error"].get<double>()});
    } else if (caseName == "sectorial") {
      const std::vector<Complex> diag = parse_complex_list(diagText);
      Vector d(static_cast<Index>(diag.size()));
      for (size_t i = 0; i < diag.size(); ++i) d(static_cast<Index>(i)) = diag[i];
      const SpaceDescriptor space = parse_space(baseText, d.size());
      const SectorialCase c = sectorial_case(d, space, budget, quad_cfg(), seed);
      j["sector_constant"] = c.sectorConstant;
      j["holds"] = c.holds;
      j["min_margin"] = c.minMargin;
      header = {"alpha", "lhs", "bound"};
      for (const auto& sm : c.samples) rows.push_back({sm.alpha, sm.lhs, sm.bound});
      if (!c.holds) exitCode = 2;
    } else if (caseName == "laplace") {
      const std::vector<Complex> diag = parse_complex_list(diagText);
      Vector d(static_cast<Index>(diag.size()));
      for (size_t i = 0; i < diag.size(); ++i) d(static_cast<Index>(i)) = diag[i];
      const SpaceDescriptor space = parse_space(baseText, d.size());
      const MatrixOperator A(Matrix(d.asDiagonal()), space);
      const Vector x = Vector::Ones(d.size());
      const LaplaceResolventCheck c =
          laplace_resolvent_case(A, alphaParam, tParam, x, quad_cfg());
      j["rel_error"] = c.relError;
      j["quad_error_bound"] = c.quadErrorBound;
      header = {"alpha", "t", "rel_error"};
      rows.push_back({alphaParam, tParam, c.relError});
    } else {
      throw CliError("E_PARAM", "unknown case: " + caseName);
    }
    j["config"] = run_config_json(seed, samples, batches, budget, tol);
    write_report(j, outPath);
    if (!csvPath.empty()) io::write_csv(csvPath, header, rows);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return 0;  // --help
    emit_error("E_PARAM", e.what());
    return 1;
  } catch (const CliError& e) {
    emit_error(e.code, e.what());
    return 1;
  } catch (const SpectrumHit& e) {
    emit_error("E_SPECTRUM", e.what());
    return 1;
  } catch (const AbscissaError& e) {
    emit_error("E_PARAM", e.what());
    return 1;
  } catch (const TailBoundFailure& e) {
    emit_error("E_PARAM", e.what());
    return 1;
  } catch (const std::exception& e) {
    emit_error("E_INPUT", e.what());
    return 1;
  }
  return exitCode;
}
