#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "syk/evolution.hpp"
#include "syk/model.hpp"

using namespace syk;

namespace {

PauliSum n8_hamiltonian(double mu, std::uint64_t seed) {
    ModelParams p;
    p.n_majorana = 8;
    p.mu = mu;
    p.seed = seed;
    return build_hamiltonian(generate_couplings(p));
}

// Straight-line reference: per-term dense exponentials multiplied in order,
// repeated n times, no power tricks.
oracle::Mat trotter_reference(const PauliSum& h, const std::vector<int>& order, double tau, int n) {
    const Eigen::Index dim = Eigen::Index{1} << h.qubit_count();
    oracle::Mat u = oracle::Mat::Identity(dim, dim);
    for (int rep = 0; rep < n; ++rep) {
        for (int idx : order) {
            const auto& t = h.terms()[static_cast<std::size_t>(idx)];
            u = oracle::expm_hermitian(
                    oracle::dense_word(t.letters(), t.coefficient().real()), tau / n) *
                u;
        }
    }
    return u;
}

double spectral_norm(const oracle::Mat& m) {
    return m.jacobiSvd().singularValues()(0);
}

}  // namespace

TEST_SUITE_BEGIN("evolution");

TEST_CASE("exact unitary basics") {
    const auto h = n8_hamiltonian(5.0, 3);
    const auto eig = diagonalize(h);
    CHECK(oracle::max_abs(exact_unitary(eig, 0.0) - oracle::Mat::Identity(16, 16)) < 1e-14);

    const auto u1 = exact_unitary(eig, 0.8);
    const auto u2 = exact_unitary(eig, 1.9);
    const auto u12 = exact_unitary(eig, 2.7);
    CHECK(oracle::max_abs(u1 * u2 - u12) < 1e-11);
    CHECK(oracle::max_abs(oracle::Mat(u1.adjoint() * u1) - oracle::Mat::Identity(16, 16)) < 1e-10);
}

TEST_CASE("exact unitary of a single term equals the closed form") {
    const auto term = PauliString::from_letters("XYZI", 0.42);
    const auto h = PauliSum::from_terms(4, {term});
    CHECK(oracle::max_abs(exact_unitary(h, 1.3) - exp_pauli_term(term, 1.3)) < 1e-12);
}

TEST_CASE("non-hermitian sums are rejected") {
    const auto h = PauliSum::from_terms(2, {PauliString::from_letters("XX", cx{0.0, 1.0})});
    CHECK_THROWS_AS(diagonalize(h), NotHermitianError);
    CHECK_THROWS_AS(trotter_unitary(h, TrotterPlan{1.0, 1, {0}}), NotHermitianError);
}

TEST_CASE("interaction table order on the N=8 hamiltonian") {
    const auto h = n8_hamiltonian(5.0, 1);
    const auto order = interaction_table_order(h);
    REQUIRE(order.size() == 70);
    auto lower = [&](int idx) {
        std::string s = h.terms()[static_cast<std::size_t>(idx)].letters();
        for (char& c : s) c = c == 'I' ? '0' : static_cast<char>(std::tolower(c));
        return s;
    };
    CHECK(lower(order.front()) == "xx00");
    CHECK(lower(order[1]) == "xyxy");
    CHECK(lower(order.back()) == "00xx");
}

TEST_CASE("trotter identity cases") {
    const auto h = n8_hamiltonian(5.0, 3);
    const auto plan = TrotterPlan::with_default_order(h, 0.0, 7);
    CHECK(oracle::max_abs(trotter_unitary(h, plan) - oracle::Mat::Identity(16, 16)) < 1e-12);
}

TEST_CASE("trotter is exact for mutually commuting terms") {
    // all-Z terms commute
    std::vector<PauliString> terms = {PauliString::from_letters("ZZI", 0.7),
                                      PauliString::from_letters("IZZ", -0.4),
                                      PauliString::from_letters("ZIZ", 1.1)};
    const auto h = PauliSum::from_terms(3, terms);
    const auto plan = TrotterPlan::with_default_order(h, 2.3, 1);
    CHECK(oracle::max_abs(trotter_unitary(h, plan) - exact_unitary(h, 2.3)) < 1e-12);
}

TEST_CASE("trotter matches the straight-line reference") {
    std::mt19937_64 eng{5};
    std::uniform_real_distribution<double> w(-1.0, 1.0);
    std::vector<PauliString> terms;
    for (int i = 0; i < 5; ++i) {
        terms.push_back(PauliString::from_letters(oracle::random_word(eng, 2), w(eng)));
    }
    const auto h = PauliSum::from_terms(2, terms);
    const auto plan = TrotterPlan::with_default_order(h, 1.7, 13);
    CHECK(oracle::max_abs(trotter_unitary(h, plan) - trotter_reference(h, plan.ordering, 1.7, 13)) <
          1e-12);
}

TEST_CASE("trotter unitarity") {
    const auto h = n8_hamiltonian(5.0, 9);
    const auto plan = TrotterPlan::with_default_order(h, 3.0, 20);
    const auto u = trotter_unitary(h, plan);
    CHECK(oracle::max_abs(oracle::Mat(u.adjoint() * u) - oracle::Mat::Identity(16, 16)) < 1e-10);
}

TEST_CASE("first-order error halves with doubled steps") {
    const auto h = n8_hamiltonian(5.0, 1000);
    const auto exact = exact_unitary(h, 1.0);
    const auto order = interaction_table_order(h);
    double prev = 0.0;
    for (int n : {8, 16, 32, 64}) {
        const double err = spectral_norm(exact - trotter_unitary(h, {1.0, n, order}));
        if (n > 8) {
            const double ratio = err / prev;
            CHECK(ratio > 0.4);
            CHECK(ratio < 0.6);
        }
        prev = err;
    }
}

TEST_CASE("measured error sits within the commutator bound") {
    const auto h = n8_hamiltonian(5.0, 1000);
    const auto order = interaction_table_order(h);
    for (double tau : {0.5, 1.0}) {
        for (int n : {8, 16}) {
            const double err =
                spectral_norm(exact_unitary(h, tau) - trotter_unitary(h, {tau, n, order}));
            double commutator_sum = 0.0;
            for (std::size_t s = 0; s < h.size(); ++s) {
                for (std::size_t t = s + 1; t < h.size(); ++t) {
                    const auto& a = h.terms()[s];
                    const auto& b = h.terms()[t];
                    if (commutator_is_zero(a, b)) continue;
                    // ||[A,B]|| = 2 |a||b| for anticommuting pauli words
                    commutator_sum += 2.0 * std::abs(a.coefficient()) * std::abs(b.coefficient());
                }
            }
            const double bound = commutator_sum * tau * tau / (2.0 * n);
            CHECK(err <= 3.0 * bound);
        }
    }
}

TEST_CASE("unitary fidelity") {
    const auto h = n8_hamiltonian(5.0, 4);
    const auto u = exact_unitary(h, 1.0);
    CHECK(unitary_fidelity(u, u) == doctest::Approx(1.0));
    const DenseOperator v = std::exp(cx{0.0, 0.77}) * u;
    CHECK(unitary_fidelity(u, v) == doctest::Approx(1.0));

    const double theta = 0.9;
    const auto rz = exp_pauli_term(PauliString::from_letters("Z", 0.5), theta);
    CHECK(unitary_fidelity(DenseOperator::Identity(2, 2), rz) ==
          doctest::Approx(std::abs(std::cos(theta / 2.0))));

    CHECK_THROWS_AS(unitary_fidelity(DenseOperator::Identity(2, 2), DenseOperator::Identity(4, 4)),
                    DimensionError);
}

TEST_CASE("steps_from_log10") {
    CHECK(steps_from_log10(0.0) == 1);
    CHECK(steps_from_log10(1.0) == 10);
    CHECK(steps_from_log10(1.55) == 35);
    CHECK(steps_from_log10(-2.0) == 1);
}

TEST_CASE("fidelity surface matches per-cell recomputation") {
    std::mt19937_64 eng{15};
    std::uniform_real_distribution<double> w(-1.0, 1.0);
    std::vector<PauliString> terms;
    for (int i = 0; i < 3; ++i) {
        terms.push_back(PauliString::from_letters(oracle::random_word(eng, 2), w(eng)));
    }
    const auto h = PauliSum::from_terms(2, terms);
    const std::vector<double> ln_tau = {-1.0, 0.0, 1.0};
    const std::vector<double> log_n = {0.0, 0.7};
    const auto grid = fidelity_surface(h, ln_tau, log_n);
    const auto order = interaction_table_order(h);
    for (std::size_t i = 0; i < ln_tau.size(); ++i) {
        for (std::size_t j = 0; j < log_n.size(); ++j) {
            const double tau = std::exp(ln_tau[i]);
            const oracle::Mat exact = oracle::expm_hermitian(
                oracle::dense_word("II", 0.0) + to_dense(h), tau);
            const oracle::Mat trotter =
                trotter_reference(h, order, tau, steps_from_log10(log_n[j]));
            const double expected = std::abs((exact.adjoint() * trotter).trace()) / 4.0;
            CHECK(grid.fidelity(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) ==
                  doctest::Approx(expected).epsilon(1e-12));
        }
    }
    CHECK(grid.fidelity.minCoeff() >= 0.0);
    CHECK(grid.fidelity.maxCoeff() <= 1.0 + 1e-12);
}

TEST_CASE("fidelity surface short-time row is 1") {
    const auto h = n8_hamiltonian(5.0, 6);
    const auto grid = fidelity_surface(h, {std::log(1e-6)}, {0.0, 1.0});
    CHECK(grid.fidelity(0, 0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(grid.fidelity(0, 1) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("fidelity surface is deterministic and thread-invariant") {
    const auto h = n8_hamiltonian(5.0, 8);
    const std::vector<double> ln_tau = {0.0, 1.0, 2.0};
    const std::vector<double> log_n = {0.5, 1.0};
    const auto a = fidelity_surface(h, ln_tau, log_n, 1);
    const auto b = fidelity_surface(h, ln_tau, log_n, 4);
    CHECK((a.fidelity - b.fidelity).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(fidelity_surface(h, {}, log_n), ParameterError);
}

TEST_CASE("matrix-free trotter step agrees with dense") {
    const auto h = n8_hamiltonian(5.0, 11);
    const auto order = interaction_table_order(h);
    std::mt19937_64 eng{77};
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::VectorXcd state(16);
    for (auto& v : state) v = cx{u(eng), u(eng)};
    state.normalize();
    Eigen::VectorXcd via_apply = state;
    const double dt = 0.05;
    apply_trotter_step(h, order, dt, via_apply);
    const auto step = trotter_unitary(h, {dt, 1, order});
    CHECK((step * state - via_apply).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_SUITE_END();
