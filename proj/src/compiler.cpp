#include "syk/compiler.hpp"

#include <cmath>
#include <numbers>

namespace syk {

namespace {

constexpr double kQuarterTurn = std::numbers::pi / 4.0;

PauliString one_body(int qubit_count, int qubit, char axis) {
    std::uint64_t x = 0, z = 0;
    const std::uint64_t bit = std::uint64_t{1} << qubit;
    if (axis == 'x' || axis == 'y') x |= bit;
    if (axis == 'z' || axis == 'y') z |= bit;
    return {qubit_count, x, z, cx{1.0, 0.0}};
}

PauliString zz_pair(int qubit_count, int a, int b) {
    const std::uint64_t z = (std::uint64_t{1} << a) | (std::uint64_t{1} << b);
    return {qubit_count, 0, z, cx{1.0, 0.0}};
}

PauliString z_chain(int qubit_count, const std::vector<int>& qubits) {
    std::uint64_t z = 0;
    for (int q : qubits) z |= std::uint64_t{1} << q;
    return {qubit_count, 0, z, cx{1.0, 0.0}};
}

// Rotation angle alpha on the chain over `support`; recursion peels the
// leading qubit with the P1 / P1^dagger pair on (support[0], support[1]).
// *core receives the index of the innermost native rotation.
void emit_chain(std::vector<PauliRotation>& gates, int qubit_count,
                const std::vector<int>& support, double alpha, int* core) {
    if (support.size() == 1) {
        *core = static_cast<int>(gates.size());
        gates.push_back({one_body(qubit_count, support[0], 'z'), alpha});
        return;
    }
    if (support.size() == 2) {
        *core = static_cast<int>(gates.size());
        gates.push_back({zz_pair(qubit_count, support[0], support[1]), alpha});
        return;
    }
    const int q0 = support[0];
    const int q1 = support[1];
    // P2 = P1^dagger in time order (earliest first), using the printed form
    // e^{-i pi Y2/4} e^{-i pi Z1Z2/4} e^{+i pi Y2/2} e^{+i pi X2/4}.
    gates.push_back({one_body(qubit_count, q1, 'x'), -kQuarterTurn});
    gates.push_back({one_body(qubit_count, q1, 'y'), -2.0 * kQuarterTurn});
    gates.push_back({zz_pair(qubit_count, q0, q1), kQuarterTurn});
    gates.push_back({one_body(qubit_count, q1, 'y'), kQuarterTurn});

    emit_chain(gates, qubit_count, {support.begin() + 1, support.end()}, alpha, core);

    // P1 in time order: e^{-i pi Y2/4}, e^{-i pi Z1Z2/4}, e^{-i pi X2/4}.
    gates.push_back({one_body(qubit_count, q1, 'y'), kQuarterTurn});
    gates.push_back({zz_pair(qubit_count, q0, q1), kQuarterTurn});
    gates.push_back({one_body(qubit_count, q1, 'x'), kQuarterTurn});
}

}  // namespace

int GateSequence::one_body_count() const {
    int n = 0;
    for (const auto& g : gates) n += g.generator.support_size() == 1 ? 1 : 0;
    return n;
}

int GateSequence::two_body_count() const {
    int n = 0;
    for (const auto& g : gates) n += g.generator.support_size() == 2 ? 1 : 0;
    return n;
}

int GateSequence::overhead_one_body_count() const {
    int n = 0;
    for (std::size_t i = 0; i < gates.size(); ++i) {
        if (static_cast<int>(i) == core_gate_index) continue;
        n += gates[i].generator.support_size() == 1 ? 1 : 0;
    }
    return n;
}

int GateSequence::overhead_two_body_count() const {
    int n = 0;
    for (std::size_t i = 0; i < gates.size(); ++i) {
        if (static_cast<int>(i) == core_gate_index) continue;
        n += gates[i].generator.support_size() == 2 ? 1 : 0;
    }
    return n;
}

DenseOperator sequence_unitary(const GateSequence& seq) {
    const Eigen::Index dim = Eigen::Index{1} << seq.qubit_count;
    DenseOperator u = DenseOperator::Identity(dim, dim);
    for (const auto& g : seq.gates) {
        u = exp_pauli_term(g.generator, g.angle) * u;
    }
    return std::exp(cx{0.0, seq.global_phase}) * u;
}

GateSequence decompose_zz_chain(int k, double tau, int qubit_count) {
    if (k < 2) throw ParameterError("zz chain needs k >= 2");
    if (qubit_count == 0) qubit_count = k;
    if (qubit_count < k) throw ParameterError("qubit_count smaller than chain length");
    std::vector<int> support(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) support[static_cast<std::size_t>(i)] = i;
    GateSequence seq{qubit_count, {}, 0.0, -1};
    emit_chain(seq.gates, qubit_count, support, std::numbers::pi / 2.0 * tau, &seq.core_gate_index);
    return seq;
}

GateSequence decompose_general_pauli(const PauliString& term, double tau) {
    if (std::abs(term.coefficient().imag()) > 0.0) {
        throw NotHermitianError("decompose_general_pauli needs a real coefficient");
    }
    const int q = term.qubit_count();
    const double alpha = term.coefficient().real() * tau;
    GateSequence seq{q, {}, 0.0, -1};
    if (term.is_identity_pattern()) {
        seq.global_phase = -alpha;  // exp(-i c tau) times the empty product
        return seq;
    }
    if (term.coefficient() == cx{0.0, 0.0}) return seq;

    std::vector<int> support;
    std::vector<PauliRotation> pre, post;
    for (int i = 0; i < q; ++i) {
        switch (term.letter(i)) {
            case 'I':
                break;
            case 'Z':
                support.push_back(i);
                break;
            case 'X':
                // exp(-i a X) = V exp(-i a Z) V^dagger with V = e^{-i pi Y/4}
                support.push_back(i);
                pre.push_back({one_body(q, i, 'y'), -kQuarterTurn});
                post.push_back({one_body(q, i, 'y'), kQuarterTurn});
                break;
            case 'Y':
                // exp(-i a Y) = W exp(-i a Z) W^dagger with W = e^{+i pi X/4}
                support.push_back(i);
                pre.push_back({one_body(q, i, 'x'), kQuarterTurn});
                post.push_back({one_body(q, i, 'x'), -kQuarterTurn});
                break;
            default:
                break;
        }
    }
    seq.gates = pre;
    emit_chain(seq.gates, q, support, alpha, &seq.core_gate_index);
    seq.gates.insert(seq.gates.end(), post.begin(), post.end());
    return seq;
}

double verify_sequence(const GateSequence& seq, const PauliString& term, double tau) {
    const DenseOperator target =
        term.is_identity_pattern()
            ? DenseOperator(std::exp(cx{0.0, -term.coefficient().real() * tau}) *
                            DenseOperator::Identity(Eigen::Index{1} << term.qubit_count(),
                                                    Eigen::Index{1} << term.qubit_count()))
            : exp_pauli_term(term, tau);
    const DenseOperator realized = sequence_unitary(seq);
    const cx overlap = (target.conjugate().cwiseProduct(realized)).sum();
    return std::abs(overlap) / static_cast<double>(target.rows());
}

ResourceEstimate complexity_estimate(const ModelParams& params, double tau, double epsilon,
                                     std::optional<double> a_override, double step_constant) {
    if (epsilon <= 0.0) throw ParameterError("epsilon must be positive");
    params.validate();
    const CouplingSet sample = generate_couplings(params);
    const PauliSum h = build_hamiltonian(sample);
    const double a = a_override.value_or(h.empty() ? 0.0 : coefficient_statistic(h));

    ResourceEstimate est;
    est.term_count = static_cast<long long>(h.size());
    est.trotter_steps =
        std::max<long long>(1, static_cast<long long>(std::ceil(step_constant * a * a * tau * tau / epsilon)));
    long long per_step = 0;
    for (const auto& t : h.terms()) {
        const int k = t.support_size();
        if (k > 2) {
            est.one_body_count += 5LL * (k - 2);
            est.two_body_count += 2LL * (k - 2);
            per_step += 7LL * (k - 2);
        } else {
            if (k == 1) est.one_body_count += 1;
            if (k == 2) est.two_body_count += 1;
            per_step += 1;
        }
    }
    est.total_gates = est.trotter_steps * per_step;
    return est;
}

}  // namespace syk
