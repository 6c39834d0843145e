#include "syk/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "syk/parallel.hpp"

namespace syk {

namespace {

constexpr double kHermitianTol = 1e-12;

void require_hermitian(const PauliSum& h) {
    if (h.max_imag_coefficient() > kHermitianTol) {
        throw NotHermitianError("PauliSum has complex coefficients (max imag " +
                                std::to_string(h.max_imag_coefficient()) + ")");
    }
}

}  // namespace

Eigensystem diagonalize(const PauliSum& h, int max_qubits) {
    require_hermitian(h);
    const DenseOperator dense = to_dense(h, max_qubits);
    Eigen::SelfAdjointEigenSolver<DenseOperator> solver(dense);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigendecomposition failed");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

DenseOperator exact_unitary(const Eigensystem& eig, double tau) {
    const Eigen::VectorXcd phases =
        (cx{0.0, -tau} * eig.eigenvalues.cast<cx>().array()).exp();
    return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

DenseOperator exact_unitary(const PauliSum& h, double tau) {
    return exact_unitary(diagonalize(h), tau);
}

std::vector<int> interaction_table_order(const PauliSum& h) {
    auto rank = [](char letter) {
        switch (letter) {
            case 'X': return 0;
            case 'Y': return 1;
            case 'Z': return 2;
            default: return 3;  // identity
        }
    };
    std::vector<int> order(h.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const auto& ta = h.terms()[static_cast<std::size_t>(a)];
        const auto& tb = h.terms()[static_cast<std::size_t>(b)];
        for (int q = 0; q < h.qubit_count(); ++q) {
            const int ra = rank(ta.letter(q));
            const int rb = rank(tb.letter(q));
            if (ra != rb) return ra < rb;
        }
        return false;
    });
    return order;
}

TrotterPlan TrotterPlan::with_default_order(const PauliSum& h, double tau, int steps) {
    return {tau, steps, interaction_table_order(h)};
}

DenseOperator trotter_unitary(const PauliSum& h, const TrotterPlan& plan) {
    require_hermitian(h);
    if (plan.steps < 1) throw ParameterError("trotter steps must be >= 1");
    if (plan.ordering.size() != h.size()) {
        throw ParameterError("trotter ordering size does not match term count");
    }
    const Eigen::Index dim = Eigen::Index{1} << h.qubit_count();
    if (h.qubit_count() > kDenseQubitCap) {
        throw ResourceError("dense trotter_unitary beyond qubit cap; use apply_trotter_step");
    }
    DenseOperator step = DenseOperator::Identity(dim, dim);
    const double dt = plan.tau / plan.steps;
    for (int idx : plan.ordering) {
        if (idx < 0 || static_cast<std::size_t>(idx) >= h.size()) {
            throw ParameterError("trotter ordering index out of range");
        }
        step = exp_pauli_term(h.terms()[static_cast<std::size_t>(idx)], dt) * step;
    }
    // step^n by binary powering; same factors, fewer multiplies.
    DenseOperator result = DenseOperator::Identity(dim, dim);
    DenseOperator power = step;
    int n = plan.steps;
    while (n > 0) {
        if (n & 1) result = power * result;
        power = power * power;
        n >>= 1;
    }
    return result;
}

void apply_trotter_step(const PauliSum& h, const std::vector<int>& ordering, double dt,
                        Eigen::VectorXcd& state) {
    require_hermitian(h);
    for (int idx : ordering) {
        apply_exp_pauli(h.terms()[static_cast<std::size_t>(idx)], dt, state);
    }
}

double unitary_fidelity(const DenseOperator& u, const DenseOperator& v) {
    if (u.rows() != v.rows() || u.cols() != v.cols()) {
        throw DimensionError("unitary_fidelity dimension mismatch");
    }
    // |Tr(u^dagger v)| = |sum conj(u) .* v|
    const cx overlap = (u.conjugate().cwiseProduct(v)).sum();
    return std::abs(overlap) / static_cast<double>(u.rows());
}

int steps_from_log10(double log10_n) {
    const auto n = static_cast<int>(std::llround(std::pow(10.0, log10_n)));
    return std::max(1, n);
}

UnitaryFidelityGrid fidelity_surface(const PauliSum& h, const std::vector<double>& ln_tau_axis,
                                     const std::vector<double>& log10_n_axis, int threads) {
    if (ln_tau_axis.empty() || log10_n_axis.empty()) {
        throw ParameterError("fidelity_surface axes must be nonempty");
    }
    const Eigensystem eig = diagonalize(h);
    const std::vector<int> order = interaction_table_order(h);
    UnitaryFidelityGrid grid;
    grid.ln_tau_axis = ln_tau_axis;
    grid.log10_n_axis = log10_n_axis;
    grid.fidelity.resize(static_cast<Eigen::Index>(ln_tau_axis.size()),
                         static_cast<Eigen::Index>(log10_n_axis.size()));
    parallel_for(ln_tau_axis.size(), threads, [&](std::size_t i) {
        const double tau = std::exp(ln_tau_axis[i]);
        const DenseOperator exact = exact_unitary(eig, tau);
        for (std::size_t j = 0; j < log10_n_axis.size(); ++j) {
            const TrotterPlan plan{tau, steps_from_log10(log10_n_axis[j]), order};
            grid.fidelity(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                unitary_fidelity(exact, trotter_unitary(h, plan));
        }
    });
    return grid;
}

}  // namespace syk
