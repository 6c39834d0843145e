#pragma once

#include <vector>

#include "syk/pauli.hpp"

namespace syk {

struct Eigensystem {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXcd eigenvectors;
    Eigen::Index dimension() const { return eigenvalues.size(); }
};

// Hermitian eigendecomposition of a PauliSum (coefficients must be real
// within 1e-12).
Eigensystem diagonalize(const PauliSum& h, int max_qubits = kDenseQubitCap);

// exp(-i H tau) from a cached eigendecomposition / from scratch.
DenseOperator exact_unitary(const Eigensystem& eig, double tau);
DenseOperator exact_unitary(const PauliSum& h, double tau);

// One first-order Trotter prescription: the product over terms in `ordering`
// (ordering[0] acts first in time) of exp(-i H_s tau/steps), repeated
// `steps` times.
struct TrotterPlan {
    double tau = 0.0;
    int steps = 1;
    std::vector<int> ordering;  // permutation of term indices

    static TrotterPlan with_default_order(const PauliSum& h, double tau, int steps);
};

// Indices of h's terms sorted the way the interaction table lists them:
// lexicographic in the per-qubit letters ranked X < Y < Z < I, qubit 0 first.
std::vector<int> interaction_table_order(const PauliSum& h);

DenseOperator trotter_unitary(const PauliSum& h, const TrotterPlan& plan);

// Matrix-free single Trotter step applied to a state vector (for registers
// past the dense cap).
void apply_trotter_step(const PauliSum& h, const std::vector<int>& ordering, double dt,
                        Eigen::VectorXcd& state);

// |Tr(u^dagger v)| / dim, global-phase invariant; 1 iff equal up to phase.
double unitary_fidelity(const DenseOperator& u, const DenseOperator& v);

struct UnitaryFidelityGrid {
    std::vector<double> ln_tau_axis;
    std::vector<double> log10_n_axis;
    Eigen::MatrixXd fidelity;  // (ln_tau index, log10_n index)
};

// Trotter step count for a nominal log10 value.
int steps_from_log10(double log10_n);

UnitaryFidelityGrid fidelity_surface(const PauliSum& h, const std::vector<double>& ln_tau_axis,
                                     const std::vector<double>& log10_n_axis, int threads = 1);

}  // namespace syk
