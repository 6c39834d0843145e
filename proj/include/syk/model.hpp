#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "syk/pauli.hpp"

namespace syk {

// The main text and the supplement state the pair-tensor variance with a
// factor-2 disagreement (J^2/N^2 vs 2J^2/N^2); both are supported and every
// consumer pins the convention it uses.
enum class CVarianceConvention { kMainText, kSupplement };

std::string to_string(CVarianceConvention c);
CVarianceConvention c_variance_from_string(const std::string& s);

struct ModelParams {
    int n_majorana = 8;         // N, even
    double mu = 0.0;            // dimensionless multiplier on the pair term
    double j4 = 1.0;            // energy scale of the four-fermion coupling
    double j2 = 1.0;            // scale of the pair tensor, dimension (energy)^(1/2)
    std::uint64_t seed = 0;
    CVarianceConvention c_variance = CVarianceConvention::kMainText;

    int qubit_count() const { return n_majorana / 2; }
    void validate() const;
};

// One disorder sample: independent Gaussians on the canonical ordered index
// sets (quadruples i<j<k<l for J, pairs i<j for C); the full antisymmetric
// tensors are recovered on read.
class CouplingSet {
public:
    CouplingSet(ModelParams params, std::vector<double> j_values, std::vector<double> c_values);

    const ModelParams& params() const { return params_; }

    // Antisymmetric reads with 0-based Majorana indices; repeated indices
    // read 0, odd permutations flip sign.
    double j(int i, int jj, int k, int l) const;
    double c(int i, int jj) const;

    const std::vector<double>& j_values() const { return j_values_; }
    const std::vector<double>& c_values() const { return c_values_; }

    static std::vector<std::array<int, 4>> quadruples(int n_majorana);
    static std::vector<std::array<int, 2>> pairs(int n_majorana);

private:
    ModelParams params_;
    std::vector<double> j_values_;  // canonical quadruple order
    std::vector<double> c_values_;  // canonical pair order
};

// Deterministic for a fixed seed.  Draw order: J over quadruples in canonical
// order, then C over pairs, from one Box-Muller mt19937_64 stream seeded with
// params.seed.  Variances: J ~ 3! j4^2/N^3, C ~ j2^2/N^2 (main text) or
// 2 j2^2/N^2 (supplement).
CouplingSet generate_couplings(const ModelParams& params);

// Same sample with the four-fermion tensor negated.  Combined with mu -> -mu
// this realizes H -> -H with the pair structure (C, b) untouched.
CouplingSet with_negated_syk(const CouplingSet& sample);

struct MajoranaSet {
    std::vector<PauliString> operators;  // chi_1..chi_N, each carrying 1/sqrt(2)
};

// Jordan-Wigner encoding: chi_{2i-1} = X..X Z / sqrt2, chi_{2i} = X..X Y / sqrt2
// with the string on qubits 0..i-2 and the final letter on qubit i-1.
// Normalized so {chi_i, chi_j} = delta_ij I.
MajoranaSet jordan_wigner(const ModelParams& params);
MajoranaSet jordan_wigner(int n_majorana);

// Spin Hamiltonian of the sample.  The four-fermion part sums
// J_ijkl chi_i chi_j chi_k chi_l over ordered quadruples; the pair part sums
// (mu/4) C_ij C_kl chi_i chi_j chi_k chi_l over all index tuples, evaluated
// as 2 mu sum_{p<q disjoint pairs} C_p C_q chi_p chi_q (overlapping-pair
// contributions cancel identically and the constant offset -(mu/4) sum C^2
// from coincident pairs is omitted as a physically inert energy shift).
PauliSum build_hamiltonian(const CouplingSet& sample);

// b = i sum_{ij} C_ij chi_i chi_j (full antisymmetric sum); Hermitian, at
// most one Pauli term per pair.
PauliSum build_boson_operator(const CouplingSet& sample);

// (mean over terms of |coefficient|^2)^(-1/2).
double coefficient_statistic(const PauliSum& h);

// The constant dropped from build_hamiltonian: -(mu/4) sum_{i<j} C_ij^2.
double dropped_identity_coefficient(const CouplingSet& sample);

}  // namespace syk
