// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hpcalc/io.hpp"
#include "test_support.hpp"

using namespace hpcalc;
using nlohmann::json;

namespace {

std::string cli_path() {
  const char* p = std::getenv("HPCALC_BIN");
  return p ? std::string(p) : std::string();
}

int run_cli(const std::string& args, std::string* output = nullptr) {
  const std::string outFile = "/tmp/hpcalc_cli_out.txt";
  const std::string cmd = cli_path() + " " + args + " > " + outFile + " 2>&1";
  const int status = std::system(cmd.c_str());
  if (output) {
    std::ifstream in(outFile);
    std::stringstream ss;
    ss << in.rdbuf();
    *output = ss.str();
  }
  return WEXITSTATUS(status);
}

void write_diag12(const std::string& path) {
  json j = {{"dim", 2},
            {"space", {{"type", "hilbert"}, {"dim", 2}}},
            {"entries",
             {{{1.0, 0.0}, {0.0, 0.0}}, {{0.0, 0.0}, {2.0, 0.0}}}}};
  io::write_json(j, path);
}

}  // namespace

TEST_CASE("matrix json round trip") {
  RandomStream rs(70);
  const MatrixOperator A(rs.gaussian_matrix(3, 3),
                         SpaceDescriptor::func_lattice(0.0, 0.25, 3, 4.0));
  const MatrixOperator B = io::matrix_from_json(io::matrix_to_json(A));
  CHECK(B.entries.isApprox(A.entries));
  CHECK(B.space == A.space);

  CHECK_THROWS(io::matrix_from_json(json{{"dim", 2}}));
}

TEST_CASE("space json round trip") {
  for (const auto& s :
       {SpaceDescriptor::hilbert(5), SpaceDescriptor::seq_lattice(3, 1.5),
        SpaceDescriptor::func_lattice(-1.0, 0.5, 8, 4.0)}) {
    CHECK(io::space_from_json(io::space_to_json(s)) == s);
  }
}

TEST_CASE("function json round trip preserves evaluations") {
  const HalfPlaneFunction f = HalfPlaneFunction::rational(
      Poly({Complex(1.0), Complex(0.5)}),
      Poly({Complex(2.0), Complex(2.5), Complex(1.0)}), 0.0);
  const HalfPlaneFunction g = io::function_from_json(io::function_to_json(f));
  for (Complex z : {Complex(1.0, 0.0), Complex(0.5, 3.0), Complex(2.0, -1.0)})
    CHECK(std::abs(f.eval(z) - g.eval(z)) < 1e-10);

  // exponential terms and laplace densities survive too
  const HalfPlaneFunction e = HalfPlaneFunction::exp_rational(
      {ExpTerm{1.5, RationalFn::simple(Complex(-2.0), 2), 0.25}}, 0.0);
  const HalfPlaneFunction e2 = io::function_from_json(io::function_to_json(e));
  CHECK(std::abs(e.eval(Complex(1.0, 1.0)) - e2.eval(Complex(1.0, 1.0))) <
        1e-12);

  LaplaceDensity d;
  d.tStart = 0.0;
  d.tStep = 0.1;
  d.samples = Vector::Ones(10);
  const HalfPlaneFunction l = HalfPlaneFunction::laplace_of_density(d, 0.0);
  const HalfPlaneFunction l2 = io::function_from_json(io::function_to_json(l));
  CHECK(std::abs(l.eval(Complex(1.0)) - l2.eval(Complex(1.0))) < 1e-14);
}

TEST_CASE("estimate fragment schema") {
  Estimate e;
  e.value = 1.5;
  e.ciLow = 1.4;
  e.ciHigh = 1.6;
  e.exact = false;
  e.seed = 99;
  e.samples = 10000;
  const json j = io::estimate_to_json("gaussian_norm", e);
  CHECK(j.at("quantity") == "gaussian_norm");
  CHECK(j.at("estimate") == 1.5);
  CHECK(j.at("ci")[0] == 1.4);
  CHECK(j.at("ci")[1] == 1.6);
  CHECK(j.at("exact") == false);
  CHECK(j.at("seed") == 99);
  CHECK(j.at("samples") == 10000);
}

TEST_CASE("witness store round trip") {
  const std::string path = "/tmp/hpcalc_witness_test.jsonl";
  std::remove(path.c_str());
  ConditionWitness w;
  w.recordedRatio = 2.5;
  w.params = {-1.0, -2.0};
  w.xs = {Vector::Ones(2)};
  w.ys = {Vector::Unit(2, 1)};
  w.functionIndex = {3};
  io::append_witness_line(path, "gfs", 0.0, 1, w);
  io::append_witness_line(path, "gfs", 0.0, 1, w);
  const auto loaded = io::read_witness_store(path);
  REQUIRE(loaded.size() == 2);
  CHECK(loaded[0].first.conditionName == "gfs");
  CHECK(loaded[0].second.recordedRatio == 2.5);
  CHECK(loaded[0].second.xs[0].isApprox(w.xs[0]));
  std::remove(path.c_str());
}

TEST_CASE("cli: spectral-bounds on diag(1,2)") {
  REQUIRE(!cli_path().empty());
  write_diag12("/tmp/hpcalc_diag12.json");
  std::string out;
  const int code = run_cli(
      "spectral-bounds --matrix /tmp/hpcalc_diag12.json --samples 2000", &out);
  CHECK(code == 0);
  const json j = json::parse(out);
  CHECK(j.at("omega") == doctest::Approx(1.0));
  CHECK(j.at("s0") == doctest::Approx(1.0));
  CHECK(j.at("omega_gamma") == doctest::Approx(1.0));
  CHECK(j.at("s0_gamma") == doctest::Approx(1.0));
  CHECK(j.at("ordering_ok") == true);
}

TEST_CASE("cli: reproduce nogtype emits the expected csv row") {
  REQUIRE(!cli_path().empty());
  const std::string csv = "/tmp/hpcalc_nogtype.csv";
  std::remove(csv.c_str());
  const int code = run_cli("reproduce nogtype --n 16 --p 4 --csv " + csv);
  CHECK(code == 0);
  std::ifstream in(csv);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == "n,shifted,unshifted");
  CHECK(row == "16,1,2");  // 16^{1/2 - 1/4} = 2
}

TEST_CASE("cli: missing file fails with E_INPUT") {
  REQUIRE(!cli_path().empty());
  std::string out;
  const int code =
      run_cli("spectral-bounds --matrix /tmp/does_not_exist_ever.json", &out);
  CHECK(code == 1);
  const json j = json::parse(out);
  CHECK(j.at("error").at("code") == "E_INPUT");
}

TEST_CASE("cli: spectrum hit is a machine-readable error") {
  REQUIRE(!cli_path().empty());
  write_diag12("/tmp/hpcalc_diag12.json");
  std::string out;
  const int code = run_cli(
      "resolvent --matrix /tmp/hpcalc_diag12.json --lambda-re 1", &out);
  CHECK(code == 1);
  const json j = json::parse(out);
  CHECK(j.at("error").at("code") == "E_SPECTRUM");
}

TEST_CASE("cli: reports reproduce bit-exactly under one seed") {
  REQUIRE(!cli_path().empty());
  write_diag12("/tmp/hpcalc_diag12.json");
  std::string a, b;
  const std::string cmd =
      "wgfs-check --matrix /tmp/hpcalc_diag12.json --omega 1 --m 1 "
      "--budget 4 --samples 2000 --seed 31415";
  CHECK(run_cli(cmd, &a) == 0);
  CHECK(run_cli(cmd, &b) == 0);
  CHECK(a == b);
}

TEST_CASE("cli: gfs witness store regression check") {
  REQUIRE(!cli_path().empty());
  write_diag12("/tmp/hpcalc_diag12.json");
  const std::string store = "/tmp/hpcalc_store.jsonl";
  std::remove(store.c_str());
  const std::string cmd =
      "gfs-check --matrix /tmp/hpcalc_diag12.json --omega 1 --m 1 --budget 20 "
      "--witness-store " + store;
  CHECK(run_cli(cmd) == 0);
  // second run re-checks the stored maxima and appends again
  CHECK(run_cli(cmd) == 0);
  std::ifstream in(store);
  int lines = 0;
  std::string line;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 2);
  std::remove(store.c_str());
}
