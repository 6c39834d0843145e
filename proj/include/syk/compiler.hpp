#pragma once

#include <optional>
#include <vector>

#include "syk/model.hpp"
#include "syk/pauli.hpp"

namespace syk {

// One hardware-native rotation exp(-i angle P) with a 1- or 2-local
// generator P (unit coefficient).
struct PauliRotation {
    PauliString generator;
    double angle = 0.0;
};

// Left-to-right application order: gates[0] acts first in time.  The tracked
// global phase makes sequence_unitary equal its target exactly, so
// concatenations stay phase-coherent.
struct GateSequence {
    int qubit_count = 0;
    std::vector<PauliRotation> gates;
    double global_phase = 0.0;   // realized unitary = e^{i global_phase} * product
    int core_gate_index = -1;    // the native rotation carrying the target angle

    int one_body_count() const;
    int two_body_count() const;
    // Counts excluding the native core: the published 5(k-2)/2(k-2) law
    // prices the conjugation overhead only.
    int overhead_one_body_count() const;
    int overhead_two_body_count() const;
};

DenseOperator sequence_unitary(const GateSequence& seq);

// Compiles exp(-i (pi/2) Z...Z tau) on `qubit_count` qubits (the chain on
// qubits 0..k-1) by the verified two-sided conjugation identity
//   exp(-i a Z_1 Q) = P1 exp(-i a Q) P1^dagger,
//   P1 = e^{-i pi X2/4} e^{-i pi Z1 Z2/4} e^{-i pi Y2/4},
// peeling one qubit per round (5 one-body + 2 two-body gates each) down to a
// native 2-body core.
GateSequence decompose_zz_chain(int k, double tau, int qubit_count = 0);

// Arbitrary Hermitian Pauli term: single-qubit basis changes reduce X/Y
// letters to Z, then the chain decomposition runs on the support.  The
// identity pattern yields an empty sequence with the phase recorded.
GateSequence decompose_general_pauli(const PauliString& term, double tau);

// |Tr(U_target^dagger U_seq)| / d against the direct exponential
// exp(-i coeff P tau); phase-coherent sequences reach 1 within float error.
double verify_sequence(const GateSequence& seq, const PauliString& term, double tau);

struct ResourceEstimate {
    long long one_body_count = 0;   // per Trotter step, decomposition-overhead bookkeeping
    long long two_body_count = 0;
    long long term_count = 0;       // m = C(N,4) at mu != 0 or full support
    long long trotter_steps = 0;    // n = ceil(c |a|^2 tau^2 / epsilon)
    long long total_gates = 0;      // n * sum_terms l(k), l(k) = 7(k-2) for k>2 else 1
};

// Gate-count estimate for one disorder sample at the given evolution time and
// accuracy target.  |a| defaults to coefficient_statistic of the sample's
// Hamiltonian; pass a_override to study the count law at fixed |a|.
ResourceEstimate complexity_estimate(const ModelParams& params, double tau, double epsilon,
                                     std::optional<double> a_override = std::nullopt,
                                     double step_constant = 1.0);

}  // namespace syk
