#pragma once

#include <cstdint>
#include <vector>

#include "syk/evolution.hpp"
#include "syk/model.hpp"
#include "syk/pauli.hpp"

namespace syk {

struct ThermalState {
    double beta = 0.0;
    DenseOperator rho;
};

// rho = exp(-beta H)/Tr(exp(-beta H)) via eigendecomposition, shifting by the
// extremal eigenvalue so the largest Boltzmann weight is exactly 1.
ThermalState thermal_state(const Eigensystem& eig, double beta);
ThermalState thermal_state(const PauliSum& h, double beta);

// Spectral correlator for one sample: one diagonalization serves a whole
// tau sweep at O(d^2) per point.
//   D(tau) = sum_{m,n} p_m e^{i(E_n - E_m) tau} |b_mn|^2,  p = Boltzmann(beta)
class CorrelatorEngine {
public:
    CorrelatorEngine(const PauliSum& h, const PauliSum& b, int max_qubits = kDenseQubitCap);

    cx correlation(double beta, double tau) const;
    double normalization(double beta) const { return correlation(beta, 0.0).real(); }
    const Eigensystem& eigensystem() const { return eig_; }

private:
    Eigensystem eig_;
    Eigen::MatrixXcd b_eig_;      // b in the H eigenbasis
    Eigen::MatrixXd abs_b_sq_;    // |b_mn|^2
};

// Tr(e^{-beta H} e^{-i H tau} b e^{i H tau} b) / Tr(e^{-beta H}).
cx boson_correlation(const PauliSum& h, const PauliSum& b, double beta, double tau);

struct InitialStatePair {
    DenseOperator rho_real;  // (rho_beta b + b rho_beta)/2
    DenseOperator rho_imag;  // -i (rho_beta b - b rho_beta)/2
};

InitialStatePair initial_state_pair(const PauliSum& h, const PauliSum& b, double beta);

// The measurement-path correlator: Re D from rho_real, Im D from rho_imag,
// each via Tr(e^{-iH tau} rho e^{iH tau} b).
cx correlation_via_initial_states(const PauliSum& h, const PauliSum& b, double beta, double tau);

struct CorrelationSeries {
    std::uint64_t seed = 0;
    std::vector<double> tau_grid;
    std::vector<cx> values;              // D(tau)
    std::vector<double> normalized_abs;  // |D(tau)/D(0)|
};

struct AveragedCorrelation {
    std::vector<double> tau_grid;
    std::vector<double> avg_abs;    // Eq.(9): normalize, take modulus, then average
    std::vector<double> std_err;    // sample standard error of the mean
    std::vector<CorrelationSeries> samples;
};

struct EvolutionEngine {
    enum class Mode { kExact, kTrotter } mode = Mode::kExact;
    // Trotter step budget scales as ceil(anchor_steps (tau/anchor_tau)^2),
    // holding the first-order error at its anchor level across the sweep.
    int anchor_steps = 200;
    double anchor_tau = 7.38905609893065;  // e^2

    int steps_for(double tau) const;
    static EvolutionEngine exact() { return {Mode::kExact}; }
    static EvolutionEngine trotter(int anchor_steps = 200) {
        return {Mode::kTrotter, anchor_steps};
    }
};

CorrelationSeries sample_correlation(const CouplingSet& sample, double beta,
                                     const std::vector<double>& tau_grid,
                                     const EvolutionEngine& engine);

AveragedCorrelation averaged_correlation(const std::vector<CouplingSet>& samples, double beta,
                                         const std::vector<double>& tau_grid,
                                         const EvolutionEngine& engine, int threads = 1);

// Mean of the averaged curve over the trailing `window_fraction` of the grid.
double saturation_value(const std::vector<double>& values, double window_fraction = 0.25);

// 30 log-spaced times, ln tau in [-3, 3] by default.
std::vector<double> log_time_grid(double ln_tau_min = -3.0, double ln_tau_max = 3.0,
                                  int points = 30);

struct ScalingPoint {
    int n_majorana = 0;
    double mu = 0.0;
    double avg_d_inf = 0.0;
    double std_err = 0.0;
};

// avg|D(inf)| for every (N, mu) on a shared per-N seed set derived from
// master_seed.
std::vector<ScalingPoint> scaling_sweep(const std::vector<int>& n_list,
                                        const std::vector<double>& mu_list, double beta,
                                        int samples_per_point, std::uint64_t master_seed,
                                        const ModelParams& base, const EvolutionEngine& engine,
                                        int threads = 1);

}  // namespace syk
