#include <doctest.h>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "syk/pauli.hpp"

using namespace syk;

TEST_SUITE_BEGIN("pauli");

TEST_CASE("single qubit products") {
    const auto X = PauliString::from_letters("XI");
    const auto Z = PauliString::from_letters("ZI");
    const auto prod = pauli_mul(X, Z);
    // XZ = -iY
    CHECK(prod.letters() == "YI");
    CHECK(prod.coefficient() == cx{0.0, -1.0});
}

TEST_CASE("pauli involution gives identity") {
    std::mt19937_64 eng{11};
    for (int trial = 0; trial < 50; ++trial) {
        const auto word = oracle::random_word(eng, 4);
        const auto p = PauliString::from_letters(word);
        const auto sq = pauli_mul(p, p);
        CHECK(sq.is_identity_pattern());
        CHECK(sq.coefficient() == cx{1.0, 0.0});
    }
}

TEST_CASE("product matches dense oracle") {
    const auto a = PauliString::from_letters("XZ");
    const auto b = PauliString::from_letters("YY");
    const auto prod = pauli_mul(a, b);
    const oracle::Mat expected = oracle::dense_word("XZ") * oracle::dense_word("YY");
    CHECK(oracle::max_abs(to_dense(prod) - expected) < 1e-13);
}

TEST_CASE("product phase law on random pairs") {
    std::mt19937_64 eng{23};
    for (int trial = 0; trial < 200; ++trial) {
        const auto wa = oracle::random_word(eng, 3);
        const auto wb = oracle::random_word(eng, 3);
        const auto dense = to_dense(pauli_mul(PauliString::from_letters(wa),
                                              PauliString::from_letters(wb)));
        CHECK(oracle::max_abs(dense - oracle::dense_word(wa) * oracle::dense_word(wb)) < 1e-13);
    }
}

TEST_CASE("commutation agrees with dense commutator") {
    CHECK(commutator_is_zero(PauliString::from_letters("XI"), PauliString::from_letters("IZ")));
    CHECK_FALSE(commutator_is_zero(PauliString::from_letters("XI"), PauliString::from_letters("ZI")));
    CHECK(commutator_is_zero(PauliString::from_letters("ZZI"), PauliString::from_letters("XXI")));

    std::mt19937_64 eng{37};
    for (int trial = 0; trial < 1000; ++trial) {
        const int q = 1 + static_cast<int>(eng() % 4);
        const auto wa = oracle::random_word(eng, q);
        const auto wb = oracle::random_word(eng, q);
        const auto da = oracle::dense_word(wa);
        const auto db = oracle::dense_word(wb);
        const bool dense_commutes = oracle::max_abs(da * db - db * da) < 1e-13;
        CHECK(commutator_is_zero(PauliString::from_letters(wa), PauliString::from_letters(wb)) ==
              dense_commutes);
    }
}

TEST_CASE("mismatched registers are rejected") {
    const auto a = PauliString::from_letters("X");
    const auto b = PauliString::from_letters("XX");
    CHECK_THROWS_AS(pauli_mul(a, b), DimensionError);
    CHECK_THROWS_AS(commutator_is_zero(a, b), DimensionError);
}

TEST_CASE("to_dense basics") {
    CHECK(oracle::max_abs(to_dense(PauliString::identity(2)) - oracle::Mat::Identity(4, 4)) == 0.0);
    oracle::Mat z(2, 2);
    z << 1, 0, 0, -1;
    CHECK(oracle::max_abs(to_dense(PauliString::from_letters("Z")) - z) == 0.0);
    // qubit 0 is the most significant factor
    CHECK(oracle::max_abs(to_dense(PauliString::from_letters("ZIX")) -
                          oracle::dense_word("ZIX")) == 0.0);
}

TEST_CASE("to_dense respects the qubit cap") {
    const auto p = PauliString::identity(13);
    CHECK_THROWS_AS(to_dense(p), ResourceError);
    CHECK_NOTHROW(to_dense(p, 13));
}

TEST_CASE("random pauli sum is hermitian iff coefficients real") {
    std::mt19937_64 eng{53};
    std::vector<PauliString> terms;
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 10; ++i) {
        terms.push_back(PauliString::from_letters(oracle::random_word(eng, 3), u(eng)));
    }
    const auto h = PauliSum::from_terms(3, terms);
    const auto dense = to_dense(h);
    CHECK(oracle::max_abs(dense - dense.adjoint()) < 1e-14);

    terms.push_back(PauliString::from_letters("XYZ", cx{0.0, 0.5}));
    const auto g = PauliSum::from_terms(3, terms);
    const auto gd = to_dense(g);
    CHECK(oracle::max_abs(gd - gd.adjoint()) > 0.1);
}

TEST_CASE("pauli sum normalization merges and orders") {
    std::vector<PauliString> terms = {
        PauliString::from_letters("XX", 0.5),
        PauliString::from_letters("ZI", 1.0),
        PauliString::from_letters("XX", -0.5),  // cancels the first
        PauliString::from_letters("IZ", 2.0),
    };
    const auto h = PauliSum::from_terms(2, terms);
    REQUIRE(h.size() == 2);
    // canonical order: lexicographic on (z_mask, x_mask); ZI has z bit 0, IZ bit 1
    CHECK(h.terms()[0].letters() == "ZI");
    CHECK(h.terms()[1].letters() == "IZ");
}

TEST_CASE("exp_pauli_term closed forms") {
    const auto z = PauliString::from_letters("Z");
    CHECK(oracle::max_abs(exp_pauli_term(z.with_coefficient(0.0), 0.7) -
                          oracle::Mat::Identity(2, 2)) == 0.0);
    // a t = pi/2 on Z: diag(-i, i) = -i Z
    const auto u = exp_pauli_term(z, std::numbers::pi / 2.0);
    oracle::Mat expected(2, 2);
    expected << cx{0, -1}, 0, 0, cx{0, 1};
    CHECK(oracle::max_abs(u - expected) < 1e-15);
}

TEST_CASE("exp_pauli_term matches dense eigensolver exponential") {
    std::mt19937_64 eng{71};
    for (int trial = 0; trial < 10; ++trial) {
        const auto word = oracle::random_word(eng, 4);
        const double a = 0.3 + 0.1 * static_cast<double>(trial);
        const auto h = PauliString::from_letters(word, a);
        const auto direct = exp_pauli_term(h, 0.37);
        const auto reference = oracle::expm_hermitian(oracle::dense_word(word, a), 0.37);
        CHECK(oracle::max_abs(direct - reference) < 1e-12);
    }
}

TEST_CASE("exp_pauli_term one-parameter group and unitarity") {
    std::mt19937_64 eng{89};
    const auto word = oracle::random_word(eng, 3);
    const auto h = PauliString::from_letters(word, 0.83);
    const auto u1 = exp_pauli_term(h, 0.4);
    const auto u2 = exp_pauli_term(h, 1.1);
    const auto u12 = exp_pauli_term(h, 1.5);
    CHECK(oracle::max_abs(u1 * u2 - u12) < 1e-12);
    CHECK(oracle::max_abs(u1.adjoint() * u1 - oracle::Mat::Identity(8, 8)) < 1e-12);
}

TEST_CASE("exp_pauli_term rejects complex coefficients") {
    const auto h = PauliString::from_letters("X", cx{0.0, 1.0});
    CHECK_THROWS_AS(exp_pauli_term(h, 1.0), NotHermitianError);
}

TEST_CASE("matrix-free application matches dense") {
    std::mt19937_64 eng{97};
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const auto word = oracle::random_word(eng, 5);
        const auto p = PauliString::from_letters(word, cx{u(eng), u(eng)});
        Eigen::VectorXcd state(32);
        for (auto& v : state) v = cx{u(eng), u(eng)};
        Eigen::VectorXcd via_apply;
        apply_pauli(p, state, via_apply);
        CHECK((to_dense(p) * state - via_apply).cwiseAbs().maxCoeff() < 1e-13);

        const auto hp = p.with_coefficient(0.6);
        Eigen::VectorXcd evolved = state;
        apply_exp_pauli(hp, 0.9, evolved);
        CHECK((exp_pauli_term(hp, 0.9) * state - evolved).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("text form") {
    const auto p = PauliString::from_letters("XYZI", cx{-0.25, 0.0});
    CHECK(p.to_string() == "(-0.25+0j) XYZI");
    CHECK(PauliString::from_letters("xyz0").letters() == "XYZI");
}

TEST_SUITE_END();
