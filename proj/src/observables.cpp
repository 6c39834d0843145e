#include "syk/observables.hpp"

#include <algorithm>
#include <cmath>

#include "syk/parallel.hpp"
#include "syk/rng.hpp"

namespace syk {

namespace {

constexpr double kDegenerateNormalization = 1e-12;

Eigen::VectorXd boltzmann_weights(const Eigen::VectorXd& energies, double beta) {
    if (beta < 0.0) throw ParameterError("beta must be >= 0");
    const double shift = energies.minCoeff();
    Eigen::VectorXd w = (-beta * (energies.array() - shift)).exp();
    w /= w.sum();
    return w;
}

}  // namespace

ThermalState thermal_state(const Eigensystem& eig, double beta) {
    const Eigen::VectorXd w = boltzmann_weights(eig.eigenvalues, beta);
    ThermalState out;
    out.beta = beta;
    out.rho = eig.eigenvectors * w.cast<cx>().asDiagonal() * eig.eigenvectors.adjoint();
    return out;
}

ThermalState thermal_state(const PauliSum& h, double beta) {
    return thermal_state(diagonalize(h), beta);
}

CorrelatorEngine::CorrelatorEngine(const PauliSum& h, const PauliSum& b, int max_qubits) {
    if (h.qubit_count() != b.qubit_count()) {
        throw DimensionError("hamiltonian and boson operator qubit counts differ");
    }
    if (b.empty()) {
        throw DegenerateSampleError("boson operator is identically zero; Eq.(9) normalization undefined");
    }
    eig_ = diagonalize(h, max_qubits);
    if (b.max_imag_coefficient() > 1e-12) {
        throw NotHermitianError("boson operator must be Hermitian");
    }
    const DenseOperator b_dense = to_dense(b, max_qubits);
    b_eig_ = eig_.eigenvectors.adjoint() * b_dense * eig_.eigenvectors;
    abs_b_sq_ = b_eig_.cwiseAbs2();
}

cx CorrelatorEngine::correlation(double beta, double tau) const {
    const Eigen::VectorXd p = boltzmann_weights(eig_.eigenvalues, beta);
    const Eigen::VectorXcd phase =
        (cx{0.0, 1.0} * tau * eig_.eigenvalues.cast<cx>().array()).exp();
    // sum_m p_m conj(phase_m) sum_n phase_n |b_mn|^2
    const Eigen::VectorXcd inner = abs_b_sq_.cast<cx>() * phase;
    return (p.cast<cx>().cwiseProduct(phase.conjugate()).cwiseProduct(inner)).sum();
}

cx boson_correlation(const PauliSum& h, const PauliSum& b, double beta, double tau) {
    return CorrelatorEngine(h, b).correlation(beta, tau);
}

InitialStatePair initial_state_pair(const PauliSum& h, const PauliSum& b, double beta) {
    const ThermalState ts = thermal_state(h, beta);
    const DenseOperator b_dense = to_dense(b);
    InitialStatePair out;
    out.rho_real = 0.5 * (ts.rho * b_dense + b_dense * ts.rho);
    out.rho_imag = cx{0.0, -0.5} * (ts.rho * b_dense - b_dense * ts.rho);
    return out;
}

cx correlation_via_initial_states(const PauliSum& h, const PauliSum& b, double beta, double tau) {
    const InitialStatePair init = initial_state_pair(h, b, beta);
    const DenseOperator u = exact_unitary(h, tau);
    const DenseOperator b_dense = to_dense(b);
    const cx re = (u * init.rho_real * u.adjoint() * b_dense).trace();
    const cx im = (u * init.rho_imag * u.adjoint() * b_dense).trace();
    return {re.real(), im.real()};
}

int EvolutionEngine::steps_for(double tau) const {
    const double ratio = tau / anchor_tau;
    const double n = std::ceil(anchor_steps * ratio * ratio);
    return std::max(1, static_cast<int>(n));
}

CorrelationSeries sample_correlation(const CouplingSet& sample, double beta,
                                     const std::vector<double>& tau_grid,
                                     const EvolutionEngine& engine) {
    const PauliSum h = build_hamiltonian(sample);
    const PauliSum b = build_boson_operator(sample);
    CorrelationSeries series;
    series.seed = sample.params().seed;
    series.tau_grid = tau_grid;
    series.values.reserve(tau_grid.size());

    if (b.empty()) {
        throw DegenerateSampleError("seed " + std::to_string(sample.params().seed) +
                                    ": boson operator is zero");
    }

    if (engine.mode == EvolutionEngine::Mode::kExact || h.empty()) {
        const CorrelatorEngine corr(h, b);
        for (double tau : tau_grid) series.values.push_back(corr.correlation(beta, tau));
    } else {
        const Eigensystem eig = diagonalize(h);
        const ThermalState ts = thermal_state(eig, beta);
        const DenseOperator b_dense = to_dense(b);
        const std::vector<int> order = interaction_table_order(h);
        for (double tau : tau_grid) {
            const TrotterPlan plan{tau, engine.steps_for(tau), order};
            const DenseOperator u = trotter_unitary(h, plan);
            series.values.push_back((ts.rho * u * b_dense * u.adjoint() * b_dense).trace());
        }
    }

    const double d0 = std::abs(series.values.front());
    if (d0 < kDegenerateNormalization) {
        throw DegenerateSampleError("seed " + std::to_string(sample.params().seed) +
                                    ": |D(0)| < 1e-12, normalization undefined");
    }
    series.normalized_abs.reserve(series.values.size());
    for (const cx& v : series.values) {
        series.normalized_abs.push_back(std::abs(v / series.values.front()));
    }
    return series;
}

AveragedCorrelation averaged_correlation(const std::vector<CouplingSet>& samples, double beta,
                                         const std::vector<double>& tau_grid,
                                         const EvolutionEngine& engine, int threads) {
    if (samples.empty()) throw ParameterError("averaged_correlation needs at least one sample");
    AveragedCorrelation out;
    out.tau_grid = tau_grid;
    out.samples.resize(samples.size());
    parallel_for(samples.size(), threads, [&](std::size_t i) {
        out.samples[i] = sample_correlation(samples[i], beta, tau_grid, engine);
    });
    const auto r = static_cast<double>(samples.size());
    out.avg_abs.resize(tau_grid.size());
    out.std_err.resize(tau_grid.size());
    for (std::size_t t = 0; t < tau_grid.size(); ++t) {
        double mean = 0.0;
        for (const auto& s : out.samples) mean += s.normalized_abs[t];
        mean /= r;
        double var = 0.0;
        for (const auto& s : out.samples) {
            const double d = s.normalized_abs[t] - mean;
            var += d * d;
        }
        out.avg_abs[t] = mean;
        out.std_err[t] = samples.size() > 1 ? std::sqrt(var / (r - 1.0) / r) : 0.0;
    }
    return out;
}

double saturation_value(const std::vector<double>& values, double window_fraction) {
    if (window_fraction <= 0.0 || window_fraction > 1.0) {
        throw ParameterError("window_fraction must lie in (0, 1]");
    }
    const auto want = static_cast<std::size_t>(
        std::llround(window_fraction * static_cast<double>(values.size())));
    const std::size_t k = std::max<std::size_t>(2, want);
    if (k > values.size()) {
        throw ParameterError("too few points for the late-time window");
    }
    double mean = 0.0;
    for (std::size_t i = values.size() - k; i < values.size(); ++i) mean += values[i];
    return mean / static_cast<double>(k);
}

std::vector<double> log_time_grid(double ln_tau_min, double ln_tau_max, int points) {
    if (points < 2) throw ParameterError("log_time_grid needs >= 2 points");
    std::vector<double> grid(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double f = static_cast<double>(i) / (points - 1);
        grid[static_cast<std::size_t>(i)] = std::exp(ln_tau_min + f * (ln_tau_max - ln_tau_min));
    }
    return grid;
}

std::vector<ScalingPoint> scaling_sweep(const std::vector<int>& n_list,
                                        const std::vector<double>& mu_list, double beta,
                                        int samples_per_point, std::uint64_t master_seed,
                                        const ModelParams& base, const EvolutionEngine& engine,
                                        int threads) {
    if (samples_per_point < 1) throw ParameterError("samples_per_point must be >= 1");
    const std::vector<double> tau_grid = log_time_grid();
    std::vector<ScalingPoint> table;
    for (int n : n_list) {
        for (double mu : mu_list) {
            std::vector<CouplingSet> samples;
            samples.reserve(static_cast<std::size_t>(samples_per_point));
            for (int r = 0; r < samples_per_point; ++r) {
                ModelParams p = base;
                p.n_majorana = n;
                p.mu = mu;
                p.seed = child_seed(master_seed, static_cast<std::uint64_t>(r));
                samples.push_back(generate_couplings(p));
            }
            const AveragedCorrelation avg =
                averaged_correlation(samples, beta, tau_grid, engine, threads);
            // per-sample saturation, then mean/stderr across samples
            std::vector<double> sat;
            sat.reserve(avg.samples.size());
            for (const auto& s : avg.samples) sat.push_back(saturation_value(s.normalized_abs));
            double mean = 0.0;
            for (double v : sat) mean += v;
            mean /= static_cast<double>(sat.size());
            double var = 0.0;
            for (double v : sat) var += (v - mean) * (v - mean);
            const double se = sat.size() > 1 ? std::sqrt(var / (static_cast<double>(sat.size()) - 1.0) /
                                                         static_cast<double>(sat.size()))
                                             : 0.0;
            table.push_back({n, mu, mean, se});
        }
    }
    return table;
}

}  // namespace syk
