#include <cmath>
#include <numbers>
#include <sstream>

#include <doctest.h>

#include "cloneq/ensembles.hpp"
#include "cloneq/qubit.hpp"
#include "test_support.hpp"

using namespace cloneq;
using namespace cloneq::testing;

namespace {

ComplexMatrix pauli_z() {
  ComplexMatrix z(2, 2);
  z << 1, 0, 0, -1;
  return z;
}

ComplexMatrix pauli_x() {
  ComplexMatrix x(2, 2);
  x << 0, 1, 1, 0;
  return x;
}

ObservableSet make_set(int dim, std::vector<ComplexMatrix> list) {
  ObservableSet set;
  set.dim = dim;
  set.observables = std::move(list);
  return set;
}

}  // namespace

TEST_CASE("eigenstate ensemble of pauli-z") {
  const EigenstateEnsemble s = eigenstate_ensemble(make_set(2, {pauli_z()}));
  CHECK(s.num_states() == 2);
  CHECK(s.weight() == doctest::Approx(0.5));
  CHECK((s.states() - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() <
        1e-12);
}

TEST_CASE("eigenstate ensemble of {Z, X} holds both eigenbases") {
  const EigenstateEnsemble s =
      eigenstate_ensemble(make_set(2, {pauli_z(), pauli_x()}));
  CHECK(s.num_states() == 4);
  CHECK(s.num_observables() == 2);
  CHECK(s.weight() == doctest::Approx(0.25));
  // group 0: Z basis
  CHECK((s.group(0) - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() <
        1e-12);
  // group 1: |+>, |-> up to the canonical phase
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  for (int m = 0; m < 2; ++m) {
    const ComplexVector ket = s.group(1).col(m);
    CHECK(std::abs(std::abs(ket[0]) - inv_sqrt2) < 1e-12);
    CHECK(std::abs(std::abs(ket[1]) - inv_sqrt2) < 1e-12);
  }
  const double overlap = std::abs(s.group(1).col(0).dot(s.group(1).col(1)));
  CHECK(overlap < 1e-12);
}

TEST_CASE("eigenstate ensemble ordering is deterministic across runs") {
  const ComplexMatrix obs = pauli_z() + 1e-12 * pauli_x();
  const ObservableSet set = make_set(2, {obs, pauli_x()});
  const EigenstateEnsemble s1 = eigenstate_ensemble(set);
  const EigenstateEnsemble s2 = eigenstate_ensemble(set);
  CHECK((s1.states() - s2.states()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("mub_family d=2 gives the pauli eigenbases up to phases") {
  const ObservableSet set = mub_family(2, 3);
  CHECK(set.num_observables() == 3);
  CHECK(is_mutually_unbiased(set, 1e-9));
  // check eigenprojector sets against Z, X, Y directly
  const EigenstateEnsemble s = eigenstate_ensemble(set);
  const Vector3 dirs[3] = {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}};
  for (int l = 0; l < 3; ++l) {
    const EigenSystem sys = hermitian_eigensystem(bloch_to_observable(dirs[l]));
    const ComplexMatrix overlap = sys.basis.kets().adjoint() * s.group(l);
    // same basis up to phases: |overlap| is a permutation matrix
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        const double a = std::abs(overlap(i, j));
        CHECK((a < 1e-9 || std::abs(a - 1.0) < 1e-9));
      }
    }
  }
}

TEST_CASE("mub_family d=3 N=4: exhaustive overlap check") {
  const ObservableSet set = mub_family(3, 4);
  const EigenstateEnsemble s = eigenstate_ensemble(set);
  for (int l = 0; l < 4; ++l) {
    for (int k = l + 1; k < 4; ++k) {
      const ComplexMatrix cross = s.group(l).adjoint() * s.group(k);
      CHECK((cross.cwiseAbs2().array() - 1.0 / 3.0).abs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("mub_family d=5 N=6 passes is_mutually_unbiased") {
  CHECK(is_mutually_unbiased(mub_family(5, 6), 1e-9));
  // intra-group orthonormality of all constructed states
  const EigenstateEnsemble s = eigenstate_ensemble(mub_family(5, 6));
  for (int l = 0; l < 6; ++l) {
    CHECK_NOTHROW(OrthonormalBasis{s.group(l)});
  }
}

TEST_CASE("mub_family rejects bad arguments") {
  CHECK_THROWS_AS(mub_family(4, 2), NotPrime);
  CHECK_THROWS_AS(mub_family(6, 2), NotPrime);
  CHECK_THROWS_AS(mub_family(3, 5), TooManyBases);
  CHECK_THROWS_AS(mub_family(3, 0), TooManyBases);
}

TEST_CASE("is_mutually_unbiased rejects non-MUB sets") {
  CHECK(is_mutually_unbiased(make_set(2, {pauli_z(), pauli_x()}), 1e-9));
  CHECK_FALSE(is_mutually_unbiased(make_set(2, {pauli_z(), pauli_z()}), 1e-9));
  const ComplexMatrix tilted = (pauli_z() + pauli_x()) / std::numbers::sqrt2;
  CHECK_FALSE(is_mutually_unbiased(make_set(2, {pauli_z(), tilted}), 1e-9));
}

TEST_CASE("participation of a basis against itself") {
  const EigenstateEnsemble s = eigenstate_ensemble(make_set(2, {pauli_z()}));
  const ParticipationReport rep =
      participation(s, OrthonormalBasis::canonical(2));
  CHECK(rep.a_total == doctest::Approx(2.0).epsilon(1e-14));
  for (double a_m : rep.per_state_a) {
    CHECK(a_m == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("participation of MUB ensembles against a member basis is N+d-1") {
  for (auto [n, d] : {std::pair{2, 2}, {3, 2}, {2, 3}, {4, 3}, {3, 5}}) {
    const EigenstateEnsemble s = eigenstate_ensemble(mub_family(d, n));
    for (int l = 0; l < n; ++l) {
      const ParticipationReport rep =
          participation(s, OrthonormalBasis(s.group(l)));
      CHECK(std::abs(rep.a_total - (n + d - 1.0)) < 1e-10);
    }
  }
}

TEST_CASE("participation of a qubit pair matches 2 + (r.a)^2 + (r.b)^2") {
  std::mt19937_64 gen(31);
  for (int rep = 0; rep < 10; ++rep) {
    Vector3 a(normal(gen), normal(gen), normal(gen));
    Vector3 b(normal(gen), normal(gen), normal(gen));
    Vector3 r(normal(gen), normal(gen), normal(gen));
    a.normalize();
    b.normalize();
    r.normalize();
    const BlochPair pair(a, b);
    const EigenstateEnsemble s = eigenstate_ensemble(pair.observables());
    const OrthonormalBasis basis =
        hermitian_eigensystem(bloch_to_observable(r)).basis;
    const double computed = participation(s, basis).a_total;
    const double ra = r.dot(a);
    const double rb = r.dot(b);
    CHECK(std::abs(computed - (2.0 + ra * ra + rb * rb)) < 1e-10);
  }
}

TEST_CASE("participation invariants") {
  std::mt19937_64 gen(37);
  const int d = 4;
  ObservableSet set =
      make_set(d, {random_hermitian(d, gen), random_hermitian(d, gen)});
  const EigenstateEnsemble s = eigenstate_ensemble(set);
  const ComplexMatrix u = haar_unitary(d, 99);
  const OrthonormalBasis basis{u};
  const ParticipationReport rep = participation(s, basis);

  const int m = s.num_states();
  CHECK(std::abs(rep.a_total + rep.b_total - m) < 1e-10);
  for (int j = 0; j < m; ++j) {
    CHECK(rep.per_state_a[j] >= 1.0 / d - 1e-12);
    CHECK(rep.per_state_a[j] <= 1.0 + 1e-12);
    CHECK(std::abs(rep.per_state_a[j] + rep.per_state_b[j] - 1.0) < 1e-10);
  }

  // invariance under ket permutation and per-ket phases
  ComplexMatrix permuted(d, d);
  permuted << u.col(2), u.col(0), u.col(3), u.col(1);
  const double a_perm = participation(s, OrthonormalBasis{permuted}).a_total;
  CHECK(std::abs(a_perm - rep.a_total) < 1e-12);

  ComplexMatrix rephased = u;
  for (int j = 0; j < d; ++j) {
    const double angle = uniform01(gen) * 6.28;
    rephased.col(j) *= Complex(std::cos(angle), std::sin(angle));
  }
  const double a_phase = participation(s, OrthonormalBasis{rephased}).a_total;
  CHECK(std::abs(a_phase - rep.a_total) < 1e-12);
}

TEST_CASE("observable set JSON round trip") {
  const ObservableSet set = mub_family(3, 2);
  const nlohmann::json doc = observable_set_to_json(set);
  const ObservableSet back = observable_set_from_json(doc);
  CHECK(back.dim == 3);
  CHECK(back.num_observables() == 2);
  for (int l = 0; l < 2; ++l) {
    CHECK((back.observables[l] - set.observables[l]).cwiseAbs().maxCoeff() <
          1e-15);
  }
  CHECK(back.labels == set.labels);
}

TEST_CASE("observable set JSON rejects malformed input") {
  using nlohmann::json;
  CHECK_THROWS_AS(observable_set_from_json(json::array()), InputError);
  CHECK_THROWS_AS(observable_set_from_json(json{{"dim", 2}}), InputError);

  json missing_row = {{"dim", 2}, {"observables", {{{{1.0, 0.0}}}}}};
  CHECK_THROWS_AS(observable_set_from_json(missing_row), InputError);

  json bad_entry = {
      {"dim", 2},
      {"observables", {{{{1.0, 0.0}, {0.0, 0.0}}, {{0.0, 0.0}, {"x", 0.0}}}}}};
  CHECK_THROWS_AS(observable_set_from_json(bad_entry), InputError);

  // non-Hermitian matrix must be rejected on load
  json non_hermitian = {
      {"dim", 2},
      {"observables", {{{{0.0, 0.0}, {1.0, 0.0}}, {{0.0, 0.0}, {0.0, 0.0}}}}}};
  CHECK_THROWS_AS(observable_set_from_json(non_hermitian), InputError);

  json label_mismatch = observable_set_to_json(mub_family(2, 2));
  label_mismatch["labels"] = {"only-one"};
  CHECK_THROWS_AS(observable_set_from_json(label_mismatch), InputError);

  std::istringstream bad_stream("{not json");
  CHECK_THROWS_AS(load_observable_set(bad_stream), InputError);
}

TEST_CASE("primality helper") {
  CHECK(is_prime(2));
  CHECK(is_prime(3));
  CHECK(is_prime(11));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(9));
  CHECK_FALSE(is_prime(12));
}
