#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "oracles.hpp"
#include "syk/model.hpp"
#include "syk/rng.hpp"

using namespace syk;

namespace {

// The 70 spin-interaction patterns of the N=8 encoding, as published.
const std::set<std::string> kInteractionTable = {
    "xx00", "xyxy", "xyxz", "xyy0", "xyz0", "xzxy", "xzxz", "xzy0", "xzz0", "x0x0",
    "x0yy", "x0yz", "x0zy", "x0zz", "x00x", "yxyx", "yxzx", "yx0y", "yx0z", "yyx0",
    "yyyy", "yyyz", "yyzy", "yyzz", "yy0x", "yzx0", "yzyy", "yzyz", "yzzy", "yzzz",
    "yz0x", "y0xy", "y0xz", "y0y0", "y0z0", "zxyx", "zxzx", "zx0y", "zx0z", "zyx0",
    "zyyy", "zyyz", "zyzy", "zyzz", "zy0x", "zzx0", "zzyy", "zzyz", "zzzy", "zzzz",
    "zz0x", "z0xy", "z0xz", "z0y0", "z0z0", "0xx0", "0xyy", "0xyz", "0xzy", "0xzz",
    "0x0x", "0yyx", "0yzx", "0y0y", "0y0z", "0zyx", "0zzx", "0z0y", "0z0z", "00xx"};

std::string lowercase_pattern(const PauliString& p) {
    std::string s = p.letters();
    for (char& c : s) c = c == 'I' ? '0' : static_cast<char>(std::tolower(c));
    return s;
}

ModelParams params_n8(double mu, std::uint64_t seed,
                      CVarianceConvention conv = CVarianceConvention::kMainText) {
    ModelParams p;
    p.n_majorana = 8;
    p.mu = mu;
    p.seed = seed;
    p.c_variance = conv;
    return p;
}

// Brute-force reference: H = sum over all 4-index tuples of
// (J_ijkl/4! + (mu/4) C_ij C_kl) chi_i chi_j chi_k chi_l on dense matrices,
// reading the antisymmetric tensors directly.
oracle::Mat brute_force_hamiltonian(const CouplingSet& sample) {
    const int n = sample.params().n_majorana;
    const auto chi = oracle::dense_majoranas(n);
    const Eigen::Index dim = chi.front().rows();
    oracle::Mat h = oracle::Mat::Zero(dim, dim);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    const double w = sample.j(i, j, k, l) / 24.0 +
                                     sample.params().mu / 4.0 * sample.c(i, j) * sample.c(k, l);
                    if (w != 0.0) {
                        h += w * (chi[static_cast<std::size_t>(i)] * chi[static_cast<std::size_t>(j)] *
                                  chi[static_cast<std::size_t>(k)] * chi[static_cast<std::size_t>(l)]);
                    }
                }
    return h;
}

oracle::Mat dense_boson(const CouplingSet& sample) {
    const int n = sample.params().n_majorana;
    const auto chi = oracle::dense_majoranas(n);
    const Eigen::Index dim = chi.front().rows();
    oracle::Mat b = oracle::Mat::Zero(dim, dim);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double w = sample.c(i, j);
            if (w != 0.0) {
                b += cx{0.0, w} * (chi[static_cast<std::size_t>(i)] * chi[static_cast<std::size_t>(j)]);
            }
        }
    return b;
}

}  // namespace

TEST_SUITE_BEGIN("model");

TEST_CASE("coupling generation is deterministic and sized") {
    const auto a = generate_couplings(params_n8(5.0, 42));
    const auto b = generate_couplings(params_n8(5.0, 42));
    CHECK(a.j_values() == b.j_values());
    CHECK(a.c_values() == b.c_values());
    CHECK(a.j_values().size() == 70);
    CHECK(a.c_values().size() == 28);
}

TEST_CASE("antisymmetric reads") {
    const auto s = generate_couplings(params_n8(5.0, 7));
    CHECK(s.j(0, 1, 2, 3) == -s.j(1, 0, 2, 3));
    CHECK(s.j(0, 1, 2, 3) == s.j(1, 0, 3, 2));
    CHECK(s.j(2, 3, 0, 1) == s.j(0, 1, 2, 3));
    CHECK(s.j(0, 0, 2, 3) == 0.0);
    CHECK(s.c(3, 1) == -s.c(1, 3));
    CHECK(s.c(2, 2) == 0.0);
    // every stored value reachable through the canonical read
    const auto quads = CouplingSet::quadruples(8);
    for (std::size_t r = 0; r < quads.size(); ++r) {
        CHECK(s.j(quads[r][0], quads[r][1], quads[r][2], quads[r][3]) == s.j_values()[r]);
    }
}

TEST_CASE("odd n rejected") {
    ModelParams p = params_n8(0.0, 1);
    p.n_majorana = 7;
    CHECK_THROWS_AS(p.validate(), ParameterError);
    p.n_majorana = 2;
    CHECK_THROWS_AS(p.validate(), ParameterError);
}

TEST_CASE("coupling variances match the stated distributions") {
    // Monte Carlo over seeds; 3-sigma statistical bands.
    const int trials = 4000;
    double sum_j = 0.0, sum_j2 = 0.0, sum_c = 0.0, sum_c2 = 0.0, sum_c2_supp = 0.0;
    for (int t = 0; t < trials; ++t) {
        const auto s = generate_couplings(params_n8(0.0, 100000 + static_cast<std::uint64_t>(t)));
        sum_j += s.j_values()[0];
        sum_j2 += s.j_values()[0] * s.j_values()[0];
        sum_c += s.c_values()[0];
        sum_c2 += s.c_values()[0] * s.c_values()[0];
        const auto s2 = generate_couplings(
            params_n8(0.0, 100000 + static_cast<std::uint64_t>(t), CVarianceConvention::kSupplement));
        sum_c2_supp += s2.c_values()[0] * s2.c_values()[0];
    }
    const double var_j_expected = 6.0 / 512.0;    // 3! J4^2 / N^3
    const double var_c_expected = 1.0 / 64.0;     // J^2 / N^2
    const double var_j = sum_j2 / trials;
    const double var_c = sum_c2 / trials;
    // variance of a sample variance of gaussians: 2 var^2 / n
    const double band_j = 3.0 * var_j_expected * std::sqrt(2.0 / trials);
    const double band_c = 3.0 * var_c_expected * std::sqrt(2.0 / trials);
    CHECK(std::abs(var_j - var_j_expected) < band_j);
    CHECK(std::abs(var_c - var_c_expected) < band_c);
    CHECK(std::abs(sum_c2_supp / trials - 2.0 * var_c_expected) < 2.0 * band_c);
    CHECK(std::abs(sum_j / trials) < 4.0 * std::sqrt(var_j_expected / trials));
    CHECK(std::abs(sum_c / trials) < 4.0 * std::sqrt(var_c_expected / trials));
}

TEST_CASE("jordan-wigner words") {
    const auto n2 = jordan_wigner(2);
    CHECK(n2.operators[0].letters() == "Z");
    CHECK(n2.operators[1].letters() == "Y");
    CHECK(n2.operators[0].coefficient().real() == doctest::Approx(1.0 / std::sqrt(2.0)));

    const auto n8 = jordan_wigner(8);
    CHECK(n8.operators[4].letters() == "XXZI");  // chi_5
    CHECK(n8.operators[7].letters() == "XXXY");  // chi_8
}

TEST_CASE("jordan-wigner anticommutators") {
    const auto chi = jordan_wigner(8);
    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) {
            const oracle::Mat a = to_dense(chi.operators[static_cast<std::size_t>(i)]);
            const oracle::Mat b = to_dense(chi.operators[static_cast<std::size_t>(j)]);
            const oracle::Mat anti = a * b + b * a;
            const oracle::Mat target =
                i == j ? oracle::Mat(oracle::Mat::Identity(16, 16)) : oracle::Mat(oracle::Mat::Zero(16, 16));
            CHECK(oracle::max_abs(anti - target) < 1e-13);
        }
    }
}

TEST_CASE("hamiltonian: zero couplings give an empty sum") {
    ModelParams p = params_n8(5.0, 1);
    const CouplingSet zero(p, std::vector<double>(70, 0.0), std::vector<double>(28, 0.0));
    CHECK(build_hamiltonian(zero).empty());
    CHECK(build_boson_operator(zero).empty());
}

TEST_CASE("hamiltonian census equals the published 70 patterns") {
    for (std::uint64_t seed : {1ULL, 2ULL, 99ULL}) {
        for (double mu : {0.0, 5.0, -5.0}) {
            const auto h = build_hamiltonian(generate_couplings(params_n8(mu, seed)));
            REQUIRE(h.size() == 70);
            std::set<std::string> census;
            for (const auto& t : h.terms()) census.insert(lowercase_pattern(t));
            CHECK(census == kInteractionTable);
        }
    }
}

TEST_CASE("hamiltonian matches the brute-force tuple sum") {
    for (double mu : {0.0, 5.0}) {
        const auto sample = generate_couplings(params_n8(mu, 12345));
        const oracle::Mat brute = brute_force_hamiltonian(sample);
        const oracle::Mat built = to_dense(build_hamiltonian(sample));
        // the build drops the constant from coincident pair indices
        const double id_coeff = dropped_identity_coefficient(sample);
        const oracle::Mat shifted = built + id_coeff * oracle::Mat::Identity(16, 16);
        CHECK(oracle::max_abs(shifted - brute) < 1e-12);
        CHECK(std::abs(brute.trace().real() / 16.0 - id_coeff) < 1e-13);
    }
}

TEST_CASE("hamiltonian and boson operator are hermitian") {
    const auto sample = generate_couplings(params_n8(5.0, 31));
    const oracle::Mat h = to_dense(build_hamiltonian(sample));
    const oracle::Mat b = to_dense(build_boson_operator(sample));
    CHECK(oracle::max_abs(h - h.adjoint()) < 1e-13);
    CHECK(oracle::max_abs(b - b.adjoint()) < 1e-13);
}

TEST_CASE("boson operator structure") {
    const auto sample = generate_couplings(params_n8(5.0, 77));
    const auto b = build_boson_operator(sample);
    CHECK(b.size() <= 28);
    CHECK(oracle::max_abs(to_dense(b) - dense_boson(sample)) < 1e-13);
}

TEST_CASE("pair term equals -(mu/4) b^2 exactly") {
    // Eq.(1)'s pair term, assembled as the double sum over the antisymmetric
    // tensors, reproduces -(mu/4) b^2 with no residual constant; the often
    // quoted -mu b^2/2 corresponds to a different summation convention.
    const double mu = 5.0;
    CouplingSet sample = generate_couplings(params_n8(mu, 2024));
    const CouplingSet mu_only(sample.params(), std::vector<double>(70, 0.0), sample.c_values());
    const oracle::Mat h_mu = brute_force_hamiltonian(mu_only);
    const oracle::Mat b = dense_boson(mu_only);
    CHECK(oracle::max_abs(h_mu + (mu / 4.0) * b * b) < 1e-12);
    // and the mu/2 combination is NOT a multiple of the identity
    const oracle::Mat combo = h_mu + (mu / 2.0) * b * b;
    const oracle::Mat dev = combo - combo.trace() / 16.0 * oracle::Mat::Identity(16, 16);
    CHECK(oracle::max_abs(dev) > 1e-3);
}

TEST_CASE("negating the four-fermion tensor flips H_J only") {
    const auto sample = generate_couplings(params_n8(5.0, 5));
    const auto flipped = with_negated_syk(sample);
    CHECK(flipped.c_values() == sample.c_values());
    ModelParams neg = sample.params();
    neg.mu = -neg.mu;
    const CouplingSet mirrored(neg, flipped.j_values(), flipped.c_values());
    const oracle::Mat h = to_dense(build_hamiltonian(sample));
    const oracle::Mat h_neg = to_dense(build_hamiltonian(mirrored));
    CHECK(oracle::max_abs(h + h_neg) < 1e-12);
}

TEST_CASE("coefficient statistic") {
    std::vector<PauliString> terms = {PauliString::from_letters("XI", 1.0),
                                      PauliString::from_letters("ZZ", 1.0)};
    CHECK(coefficient_statistic(PauliSum::from_terms(2, terms)) == doctest::Approx(1.0));
    terms = {PauliString::from_letters("XI", 1.0), PauliString::from_letters("ZZ", 3.0)};
    CHECK(coefficient_statistic(PauliSum::from_terms(2, terms)) ==
          doctest::Approx(1.0 / std::sqrt(5.0)));
    CHECK_THROWS_AS(coefficient_statistic(PauliSum(2)), ParameterError);
}

TEST_CASE("coefficient statistic against the analytic ensemble value") {
    // Pattern coefficients are J_q/4 + (mu/2)(C C - C C + C C); with the
    // main-text convention the predicted mean square is
    // var(J)/16 + (mu/2)^2 3 var(C)^2.
    const double mu = 5.0;
    const double var_j = 6.0 / 512.0;
    const double var_c = 1.0 / 64.0;
    const double predicted_ms = var_j / 16.0 + mu * mu / 4.0 * 3.0 * var_c * var_c;
    const double predicted = 1.0 / std::sqrt(predicted_ms);
    double stat_mean = 0.0;
    double mean_sq = 0.0;
    const int trials = 200;
    for (int t = 0; t < trials; ++t) {
        const auto h =
            build_hamiltonian(generate_couplings(params_n8(mu, 500 + static_cast<std::uint64_t>(t))));
        const double stat = coefficient_statistic(h);
        stat_mean += stat;
        mean_sq += 1.0 / (stat * stat);
    }
    stat_mean /= trials;
    mean_sq /= trials;
    // unbiased check on the mean-square coefficient itself
    CHECK(std::abs(mean_sq - predicted_ms) / predicted_ms < 0.10);
    // the inverse-root statistic carries a Jensen bias upward of ~10%; keep a
    // loose band around the ensemble value
    CHECK(stat_mean / predicted > 0.9);
    CHECK(stat_mean / predicted < 1.4);
}

TEST_SUITE_END();
