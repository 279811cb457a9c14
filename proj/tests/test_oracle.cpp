#include "doctest.h"

#include <cmath>

#include "decor/oracle.hpp"

using namespace decor;

namespace {

void require_all_pass(const VerificationReport& rep) {
  for (const auto& c : rep.checks) {
    INFO(rep.descriptor << " :: " << c.name << " err=" << c.max_error << " tol=" << c.tol);
    CHECK(c.pass);
  }
}

Instance single_vertex_k2() { return laplacian_instance(Graph(1, {}), RootedGraph(complete_graph(2), 0)); }

}  // namespace

TEST_CASE("spectral_measure_at") {
  const std::vector<double> c{1.5}, one{1.0};
  const auto trivial = spectral_measure_at(SymmetricOperator::diagonal(c), one);
  REQUIRE(trivial.atoms.size() == 1);
  CHECK(trivial.atoms[0].value == 1.5);
  CHECK(trivial.atoms[0].weight == doctest::Approx(1.0));

  const auto k3 = spectral_measure_at(laplacian(complete_graph(3)), unit_vector(3, 0));
  REQUIRE(k3.atoms.size() == 2);
  CHECK(std::abs(k3.atoms[0].value) < 1e-13);
  CHECK(std::abs(k3.atoms[0].weight - 1.0 / 3.0) < 1e-13);
  CHECK(std::abs(k3.atoms[1].value - 3.0) < 1e-13);
  CHECK(std::abs(k3.atoms[1].weight - 2.0 / 3.0) < 1e-13);

  const auto c4 = spectral_measure_at(laplacian(cycle_graph(4)), unit_vector(4, 0));
  REQUIRE(c4.atoms.size() == 3);
  const double values[] = {0.0, 2.0, 4.0}, weights[] = {0.25, 0.5, 0.25};
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(std::abs(c4.atoms[i].value - values[i]) < 1e-13);
    CHECK(std::abs(c4.atoms[i].weight - weights[i]) < 1e-13);
  }
  CHECK(std::abs(c4.total_mass() - 1.0) < 1e-10);
}

TEST_CASE("verify_spectral_map on fixed instances") {
  const auto inst = single_vertex_k2();
  const auto rep = verify_spectral_map(inst);
  require_all_pass(rep);
  CHECK(rep.find("spectral_map")->max_error <= 1e-10);

  require_all_pass(verify_spectral_map(laplacian_instance(cycle_graph(4), RootedGraph(complete_graph(2), 0))));

  // C4 by K3: the flat band at 3 shows up |base| times on top of the
  // preimage of 0
  const auto tri = laplacian_instance(cycle_graph(4), RootedGraph(complete_graph(3), 0));
  require_all_pass(verify_spectral_map(tri));
  const auto eig = eigenvalues(tri.decorated_operator());
  CHECK(std::count_if(eig.begin(), eig.end(), [](double e) { return std::abs(e - 3.0) < 1e-9; }) >= 4);
}

TEST_CASE("decorated spectrum of C4 by K2 against closed forms") {
  const auto inst = laplacian_instance(cycle_graph(4), RootedGraph(complete_graph(2), 0));
  const auto eig = eigenvalues(inst.decorated_operator());
  std::vector<double> expected{0.0,
                               2.0 - std::sqrt(2.0),
                               2.0 - std::sqrt(2.0),
                               3.0 - std::sqrt(5.0),
                               2.0,
                               2.0 + std::sqrt(2.0),
                               2.0 + std::sqrt(2.0),
                               3.0 + std::sqrt(5.0)};
  std::sort(expected.begin(), expected.end());
  for (std::size_t i = 0; i < 8; ++i) CHECK(std::abs(eig[i] - expected[i]) < 1e-12);
}

TEST_CASE("verify_spectral_map rejects incompatible operators") {
  auto inst = single_vertex_k2();
  Matrix m(2, 2);
  m(0, 1) = m(1, 0) = 0.5;
  inst.decoration = RootedGraph(Graph(2, {}), 0);
  inst.decoration_op = SymmetricOperator(m);
  CHECK_THROWS_AS(verify_spectral_map(inst), InputError);
}

TEST_CASE("green relation") {
  SUBCASE("single base vertex, hand formula at z = i") {
    const Complex z(0.0, 1.0);
    const HerglotzRational g(-1.0, {1.0}, {1.0});
    // (H - i)^{-1} for H = [[1,-1],[-1,1]]: entry (0,0) is 0.2 + 0.6i
    CHECK(std::abs(-1.0 / g(z) - Complex(0.2, 0.6)) < 1e-15);
    const std::vector<Complex> zs{z};
    const auto rep = verify_green_relation(single_vertex_k2(), zs);
    require_all_pass(rep);
    CHECK(rep.find("green_relation")->max_error < 1e-12);
  }
  SUBCASE("P5 by K3 at 20 samples") {
    const auto inst = laplacian_instance(path_graph(5), RootedGraph(complete_graph(3), 0));
    const auto rep = verify_green_relation(inst, sample_upper_half_plane(9, 20, 2.0, 4.0));
    require_all_pass(rep);
  }
  const std::vector<Complex> real{Complex(0.5, 0.0)};
  CHECK_THROWS_AS(verify_green_relation(single_vertex_k2(), real), InputError);
}

TEST_CASE("measure relation") {
  const auto rep = verify_measure_relation(single_vertex_k2());
  require_all_pass(rep);

  // gamma is the identity for a one-vertex decoration with A = [0]
  const std::vector<double> zero{0.0};
  Instance id{cycle_graph(4), laplacian(cycle_graph(4)), RootedGraph(Graph(1, {}), 0),
              SymmetricOperator::diagonal(zero), "identity decoration"};
  require_all_pass(verify_measure_relation(id));
  const auto mu = spectral_measure_at(id.decorated_operator(), unit_vector(4, 1));
  const auto mu_base = spectral_measure_at(id.base_op, unit_vector(4, 1));
  REQUIRE(mu.atoms.size() == mu_base.atoms.size());
  for (std::size_t i = 0; i < mu.atoms.size(); ++i) CHECK(mu.atoms[i].weight == doctest::Approx(mu_base.atoms[i].weight));

  require_all_pass(verify_measure_relation(laplacian_instance(cycle_graph(4), RootedGraph(complete_graph(3), 0))));
  // star decoration: remainder eigenvalue 1 sits exactly on the pole
  require_all_pass(verify_measure_relation(laplacian_instance(path_graph(3), RootedGraph(star_graph(3), 0))));
}

TEST_CASE("single base vertex K2: atoms 1/2 at 0 and 2") {
  const auto mu = spectral_measure_at(laplacian(complete_graph(2)), unit_vector(2, 0));
  REQUIRE(mu.atoms.size() == 2);
  CHECK(mu.atoms[0].weight == doctest::Approx(0.5));
  CHECK(mu.atoms[1].value == doctest::Approx(2.0));
  const HerglotzRational g(-1.0, {1.0}, {1.0});
  CHECK(g.derivative(0.0) == doctest::Approx(2.0));
  CHECK(g.derivative(2.0) == doctest::Approx(2.0));
}

TEST_CASE("lift_eigenfunction") {
  const auto a = laplacian(complete_graph(2));
  const std::vector<double> psi{1.0};
  const auto lifted = lift_eigenfunction(psi, 2.0, a, 0);
  REQUIRE(lifted.size() == 2);
  CHECK(lifted[0] == doctest::Approx(1.0));
  CHECK(lifted[1] == doctest::Approx(-1.0));

  const auto map = gamma_from_decoration(laplacian(complete_graph(3)), 0);
  for (double e : {-0.7, 0.4, 2.2, 3.0, 5.0}) CHECK(lift_eigenfunction(psi, e, map, 0)[0] == doctest::Approx(1.0));

  CHECK_THROWS_AS(lift_eigenfunction(psi, 1.0, a, 0), std::domain_error);

  require_all_pass(verify_lifting(laplacian_instance(cycle_graph(4), RootedGraph(complete_graph(2), 0))));
  require_all_pass(verify_lifting(laplacian_instance(cycle_graph(4), RootedGraph(complete_graph(3), 0))));
}

TEST_CASE("pole projection: cyclic equality, non-cyclic strict subset") {
  const auto k2 = verify_pole_projection(laplacian(complete_graph(2)), 0);
  require_all_pass(k2);
  const auto k3 = verify_pole_projection(laplacian(complete_graph(3)), 0);
  require_all_pass(k3);
  CHECK(k3.checks[0].name.find("non-cyclic") != std::string::npos);
}

TEST_CASE("campaign is deterministic and passes") {
  const auto a = run_campaign(3, 12);
  const auto b = run_campaign(3, 12);
  REQUIRE(a.cases.size() == 12);
  for (std::size_t i = 0; i < a.cases.size(); ++i) {
    CHECK(a.cases[i].descriptor == b.cases[i].descriptor);
    REQUIRE(a.cases[i].checks.size() == b.cases[i].checks.size());
    for (std::size_t k = 0; k < a.cases[i].checks.size(); ++k)
      CHECK(a.cases[i].checks[k].max_error == b.cases[i].checks[k].max_error);
    require_all_pass(a.cases[i]);
  }
  CHECK(run_campaign(3, 0).cases.empty());
}

TEST_CASE("random instances are connected and compatible") {
  for (std::size_t i = 0; i < 50; ++i) {
    const auto inst = random_instance(99, i);
    CHECK(inst.base.connected());
    CHECK(inst.decoration.graph.connected());
    CHECK(inst.base.vertex_count() <= 8);
    CHECK(inst.decoration.graph.vertex_count() <= 5);
    CHECK_NOTHROW(inst.validate());
  }
}
