#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "syk/pauli.hpp"

namespace syk {

struct SpinSystemParams {
    std::vector<double> chemical_shifts_hz;  // omega_i / 2pi
    Eigen::MatrixXd j_couplings_hz;          // symmetric, zero diagonal
    std::vector<double> t1_s;                // stored for documentation only
    std::vector<double> t2_s;

    int spin_count() const { return static_cast<int>(chemical_shifts_hz.size()); }
    void validate() const;
    SpinSystemParams subsystem(const std::vector<int>& spins) const;

    // The four carbons of trans-crotonic acid.
    static SpinSystemParams trans_crotonic_acid();
};

// H = sum_i (omega_i/2) Z_i + sum_{i<j} (pi J_ij / 2) Z_i Z_j, in rad/s.
PauliSum internal_hamiltonian(const SpinSystemParams& params);

struct PulseElement {
    enum class Kind { kHardPulse, kFreeEvolution, kCouplingBlock };
    Kind kind = Kind::kFreeEvolution;
    int spin = 0;            // hard pulse target (0-based)
    char axis = 'x';
    double theta = 0.0;      // hard pulse angle
    int spin_b = 0;          // coupling block partner
    double duration_s = 0.0; // free evolution / coupling block

    static PulseElement hard(int spin, char axis, double theta);
    static PulseElement free_evolution(double duration_s);
    static PulseElement coupling(int spin_a, int spin_b, double duration_s);
};

struct PulseRecipe {
    std::vector<PulseElement> elements;  // element 0 acts first in time
};

// The supplement's symbol table defines [theta]_alpha^j = e^{-i theta sigma},
// while its one-body recipe is only consistent with the rotation reading
// e^{-i theta sigma/2}.  Both are supported; every consumer pins its choice.
enum class PulseConvention { kRotation, kLiteral };

struct RecipeIdealization {
    bool zero_shifts = false;
    // nullopt keeps every coupling; otherwise only the listed pairs act
    // during free evolution.
    std::optional<std::vector<std::pair<int, int>>> kept_couplings;

    static RecipeIdealization full() { return {}; }
    static RecipeIdealization reduced(std::vector<std::pair<int, int>> kept) {
        return {true, std::move(kept)};
    }
};

// Composes instantaneous hard pulses, exp(-i H_int t) blocks, and ideal
// two-spin coupling blocks exp(-i pi J_ab t Z_a Z_b / 2).
DenseOperator simulate_recipe(const PulseRecipe& recipe, const SpinSystemParams& params,
                              const RecipeIdealization& idealization = RecipeIdealization::full(),
                              PulseConvention convention = PulseConvention::kRotation);

// The supplement's printed sequences 1-4.
PulseRecipe recipe_one_body(int spin, double theta);
PulseRecipe recipe_two_body(double tau);  // isolates Z1 Z2 via pi pulses on spins 3 and 4
PulseRecipe recipe_three_body(double tau, double j123, const SpinSystemParams& params);
PulseRecipe recipe_four_body(double tau, double j1234, const SpinSystemParams& params);

// Piecewise-constant single-channel RF field addressing all spins.
struct ControlField {
    double slice_duration_s = 1e-5;
    std::vector<double> amplitude_hz;
    std::vector<double> phase_rad;
    double max_amplitude_hz = 20000.0;

    int slices() const { return static_cast<int>(amplitude_hz.size()); }
    double total_duration_s() const { return slice_duration_s * slices(); }
    void validate() const;

    static ControlField zeros(int slices, double slice_duration_s);
    static ControlField random_init(int slices, double slice_duration_s, double sigma_hz,
                                    std::uint64_t seed);
};

// Rotating-frame propagator prod_j exp(-i (H_int + H_C(B_j, phi_j)) dt) with
// H_C = pi B [cos(phi) sum_i X_i + sin(phi) sum_i Y_i]; rf_scale multiplies
// every amplitude.  A field with |B| = 1/(4 t) Hz held for t seconds turns a
// decoupled spin by pi/2.
DenseOperator control_propagator(const ControlField& field, const SpinSystemParams& params,
                                 double rf_scale = 1.0);

struct GrapeOptions {
    int max_iter = 2000;
    double fidelity_goal = 0.99;
    std::vector<double> rf_scales{1.0};
    double initial_step = 1e4;
    int max_backtracks = 60;
};

struct GrapeTracePoint {
    int iter = 0;
    double objective = 0.0;
    double step_size = 0.0;
};

struct GrapeResult {
    ControlField field;
    std::vector<GrapeTracePoint> trace;
    double objective = 0.0;
    bool converged = false;
};

// Objective Phi(x) = mean over RF scales of |Tr(U_target^dag U(x))|^2 / d^2
// in optimizer coordinates x = [ux_0..ux_{M-1}, uy_0..uy_{M-1}] (Hz), with
// the exact per-slice propagator derivative from the eigenbasis divided
// differences.  grad may be null.
double grape_objective(const Eigen::VectorXd& x, const DenseOperator& target,
                       const SpinSystemParams& params, double slice_duration_s,
                       const std::vector<double>& rf_scales, Eigen::VectorXd* grad);

// Polak-Ribiere ascent with backtracking line search (shrink 0.5); accepted
// iterations never decrease the robust objective.
GrapeResult grape_optimize(const DenseOperator& target, const ControlField& init,
                           const SpinSystemParams& params, const GrapeOptions& options = {});

struct RobustnessPoint {
    double scale = 1.0;
    double fidelity = 0.0;
};

std::vector<RobustnessPoint> robustness_profile(const ControlField& field,
                                                const DenseOperator& target,
                                                const SpinSystemParams& params,
                                                const std::vector<double>& scales);

}  // namespace syk
