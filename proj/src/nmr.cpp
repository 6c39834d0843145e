#include "syk/nmr.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "syk/rng.hpp"

namespace syk {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

PauliString spin_op(int spin_count, int spin, char axis, double coeff) {
    std::uint64_t x = 0, z = 0;
    const std::uint64_t bit = std::uint64_t{1} << spin;
    if (axis == 'x' || axis == 'y') x |= bit;
    if (axis == 'z' || axis == 'y') z |= bit;
    return {spin_count, x, z, cx{coeff, 0.0}};
}

PauliString zz_op(int spin_count, int a, int b, double coeff) {
    const std::uint64_t z = (std::uint64_t{1} << a) | (std::uint64_t{1} << b);
    return {spin_count, 0, z, cx{coeff, 0.0}};
}

}  // namespace

void SpinSystemParams::validate() const {
    const int n = spin_count();
    if (n < 1) throw ParameterError("spin system needs at least one spin");
    if (j_couplings_hz.rows() != n || j_couplings_hz.cols() != n) {
        throw ParameterError("j_couplings matrix size does not match spin count");
    }
    for (int i = 0; i < n; ++i) {
        if (j_couplings_hz(i, i) != 0.0) throw ParameterError("j_couplings diagonal must be zero");
        for (int j = 0; j < n; ++j) {
            if (j_couplings_hz(i, j) != j_couplings_hz(j, i)) {
                throw ParameterError("j_couplings must be symmetric");
            }
        }
    }
}

SpinSystemParams SpinSystemParams::subsystem(const std::vector<int>& spins) const {
    SpinSystemParams out;
    const int m = static_cast<int>(spins.size());
    out.j_couplings_hz = Eigen::MatrixXd::Zero(m, m);
    for (int a = 0; a < m; ++a) {
        out.chemical_shifts_hz.push_back(chemical_shifts_hz.at(static_cast<std::size_t>(spins[a])));
        if (!t1_s.empty()) out.t1_s.push_back(t1_s.at(static_cast<std::size_t>(spins[a])));
        if (!t2_s.empty()) out.t2_s.push_back(t2_s.at(static_cast<std::size_t>(spins[a])));
        for (int b = 0; b < m; ++b) {
            out.j_couplings_hz(a, b) = j_couplings_hz(spins[a], spins[b]);
        }
    }
    out.validate();
    return out;
}

SpinSystemParams SpinSystemParams::trans_crotonic_acid() {
    SpinSystemParams p;
    p.chemical_shifts_hz = {2989.0, 25459.0, 21592.0, 29341.0};
    p.j_couplings_hz = Eigen::MatrixXd::Zero(4, 4);
    auto set = [&](int i, int j, double v) {
        p.j_couplings_hz(i, j) = v;
        p.j_couplings_hz(j, i) = v;
    };
    set(0, 1, 41.6);
    set(0, 2, 1.4);
    set(1, 2, 69.7);
    set(0, 3, 7.0);
    set(1, 3, 1.2);
    set(2, 3, 72.2);
    p.t1_s = {5.7, 5.3, 5.6, 10.2};
    p.t2_s = {1.02, 0.92, 0.89, 0.94};
    return p;
}

PauliSum internal_hamiltonian(const SpinSystemParams& params) {
    params.validate();
    const int n = params.spin_count();
    std::vector<PauliString> terms;
    for (int i = 0; i < n; ++i) {
        const double w = kTwoPi * params.chemical_shifts_hz[static_cast<std::size_t>(i)] / 2.0;
        if (w != 0.0) terms.push_back(spin_op(n, i, 'z', w));
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double w = std::numbers::pi * params.j_couplings_hz(i, j) / 2.0;
            if (w != 0.0) terms.push_back(zz_op(n, i, j, w));
        }
    }
    return PauliSum::from_terms(n, std::move(terms));
}

PulseElement PulseElement::hard(int spin, char axis, double theta) {
    PulseElement e;
    e.kind = Kind::kHardPulse;
    e.spin = spin;
    e.axis = axis;
    e.theta = theta;
    return e;
}

PulseElement PulseElement::free_evolution(double duration_s) {
    PulseElement e;
    e.kind = Kind::kFreeEvolution;
    e.duration_s = duration_s;
    return e;
}

PulseElement PulseElement::coupling(int spin_a, int spin_b, double duration_s) {
    PulseElement e;
    e.kind = Kind::kCouplingBlock;
    e.spin = spin_a;
    e.spin_b = spin_b;
    e.duration_s = duration_s;
    return e;
}

namespace {

DenseOperator hermitian_exp(const DenseOperator& h, double t) {
    Eigen::SelfAdjointEigenSolver<DenseOperator> solver(h);
    const Eigen::VectorXcd phases =
        (cx{0.0, -t} * solver.eigenvalues().cast<cx>().array()).exp();
    return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

SpinSystemParams idealized(const SpinSystemParams& params, const RecipeIdealization& ideal) {
    SpinSystemParams p = params;
    if (ideal.zero_shifts) {
        std::fill(p.chemical_shifts_hz.begin(), p.chemical_shifts_hz.end(), 0.0);
    }
    if (ideal.kept_couplings) {
        Eigen::MatrixXd kept = Eigen::MatrixXd::Zero(p.spin_count(), p.spin_count());
        for (const auto& [a, b] : *ideal.kept_couplings) {
            kept(a, b) = params.j_couplings_hz(a, b);
            kept(b, a) = params.j_couplings_hz(b, a);
        }
        p.j_couplings_hz = kept;
    }
    return p;
}

}  // namespace

DenseOperator simulate_recipe(const PulseRecipe& recipe, const SpinSystemParams& params,
                              const RecipeIdealization& idealization, PulseConvention convention) {
    params.validate();
    const int n = params.spin_count();
    const Eigen::Index dim = Eigen::Index{1} << n;
    const SpinSystemParams effective = idealized(params, idealization);
    const PauliSum h_int = internal_hamiltonian(effective);

    DenseOperator u = DenseOperator::Identity(dim, dim);
    for (const auto& e : recipe.elements) {
        DenseOperator step;
        switch (e.kind) {
            case PulseElement::Kind::kHardPulse: {
                const double angle =
                    convention == PulseConvention::kRotation ? e.theta / 2.0 : e.theta;
                step = exp_pauli_term(spin_op(n, e.spin, e.axis, 1.0), angle);
                break;
            }
            case PulseElement::Kind::kFreeEvolution: {
                step = h_int.empty() ? DenseOperator::Identity(dim, dim)
                                     : hermitian_exp(to_dense(h_int), e.duration_s);
                break;
            }
            case PulseElement::Kind::kCouplingBlock: {
                const double w =
                    std::numbers::pi * params.j_couplings_hz(e.spin, e.spin_b) / 2.0;
                step = exp_pauli_term(zz_op(n, e.spin, e.spin_b, w), e.duration_s);
                break;
            }
        }
        u = step * u;
    }
    return u;
}

PulseRecipe recipe_one_body(int spin, double theta) {
    return {{PulseElement::hard(spin, 'x', theta)}};
}

PulseRecipe recipe_two_body(double tau) {
    const double q = tau / 4.0;
    return {{
        PulseElement::free_evolution(q),
        PulseElement::hard(3, 'y', std::numbers::pi),
        PulseElement::free_evolution(q),
        PulseElement::hard(2, 'y', std::numbers::pi),
        PulseElement::free_evolution(q),
        PulseElement::hard(3, 'y', std::numbers::pi),
        PulseElement::free_evolution(q),
    }};
}

PulseRecipe recipe_three_body(double tau, double j123, const SpinSystemParams& params) {
    const double half = std::numbers::pi / 2.0;
    const double j12 = params.j_couplings_hz(0, 1);
    const double j23 = params.j_couplings_hz(1, 2);
    if (j12 == 0.0 || j23 == 0.0) throw ParameterError("recipe 3 needs J12 and J23");
    return {{
        PulseElement::hard(1, 'x', half),
        PulseElement::hard(1, 'y', std::numbers::pi),
        PulseElement::coupling(0, 1, 1.0 / (2.0 * j12)),
        PulseElement::hard(1, 'y', -half),
        PulseElement::coupling(1, 2, j123 * tau / j23),
        PulseElement::hard(1, 'y', -half),
        PulseElement::coupling(0, 1, 1.0 / (2.0 * j12)),
        PulseElement::hard(1, 'x', -half),
    }};
}

PulseRecipe recipe_four_body(double tau, double j1234, const SpinSystemParams& params) {
    const double half = std::numbers::pi / 2.0;
    const double j12 = params.j_couplings_hz(0, 1);
    const double j23 = params.j_couplings_hz(1, 2);
    const double j34 = params.j_couplings_hz(2, 3);
    if (j12 == 0.0 || j23 == 0.0 || j34 == 0.0) {
        throw ParameterError("recipe 4 needs J12, J23 and J34");
    }
    return {{
        PulseElement::hard(1, 'x', half),
        PulseElement::hard(1, 'y', std::numbers::pi),
        PulseElement::coupling(0, 1, 1.0 / (2.0 * j12)),
        PulseElement::hard(1, 'y', -half),
        PulseElement::hard(2, 'x', half),
        PulseElement::hard(2, 'y', std::numbers::pi),
        PulseElement::coupling(1, 2, 1.0 / (2.0 * j23)),
        PulseElement::hard(2, 'y', -half),
        PulseElement::coupling(2, 3, j1234 * tau / j34),
        PulseElement::hard(2, 'y', -half),
        PulseElement::coupling(1, 2, 1.0 / (2.0 * j23)),
        PulseElement::hard(2, 'x', -half),
        PulseElement::hard(1, 'y', -half),
        PulseElement::coupling(0, 1, 1.0 / (2.0 * j12)),
        PulseElement::hard(1, 'x', -half),
    }};
}

void ControlField::validate() const {
    if (amplitude_hz.size() != phase_rad.size()) {
        throw ParameterError("amplitude/phase slice counts differ");
    }
    if (slice_duration_s <= 0.0) throw ParameterError("slice_duration must be positive");
    for (double a : amplitude_hz) {
        if (std::abs(a) > max_amplitude_hz) {
            throw ParameterError("control amplitude exceeds hardware bound");
        }
    }
}

ControlField ControlField::zeros(int slices, double slice_duration_s) {
    ControlField f;
    f.slice_duration_s = slice_duration_s;
    f.amplitude_hz.assign(static_cast<std::size_t>(slices), 0.0);
    f.phase_rad.assign(static_cast<std::size_t>(slices), 0.0);
    return f;
}

ControlField ControlField::random_init(int slices, double slice_duration_s, double sigma_hz,
                                       std::uint64_t seed) {
    GaussianSampler rng(seed);
    ControlField f = zeros(slices, slice_duration_s);
    for (int j = 0; j < slices; ++j) {
        const double ux = rng.normal(sigma_hz);
        const double uy = rng.normal(sigma_hz);
        f.amplitude_hz[static_cast<std::size_t>(j)] = std::hypot(ux, uy);
        f.phase_rad[static_cast<std::size_t>(j)] = std::atan2(uy, ux);
    }
    return f;
}

namespace {

struct ControlBasis {
    DenseOperator h_int;
    DenseOperator hx;  // pi * sum_i X_i
    DenseOperator hy;  // pi * sum_i Y_i
    Eigen::Index dim;
};

ControlBasis control_basis(const SpinSystemParams& params) {
    params.validate();
    const int n = params.spin_count();
    const Eigen::Index dim = Eigen::Index{1} << n;
    ControlBasis basis;
    basis.dim = dim;
    const PauliSum h = internal_hamiltonian(params);
    basis.h_int = h.empty() ? DenseOperator::Zero(dim, dim) : to_dense(h);
    basis.hx = DenseOperator::Zero(dim, dim);
    basis.hy = DenseOperator::Zero(dim, dim);
    for (int i = 0; i < n; ++i) {
        basis.hx += to_dense(spin_op(n, i, 'x', std::numbers::pi));
        basis.hy += to_dense(spin_op(n, i, 'y', std::numbers::pi));
    }
    return basis;
}

}  // namespace

DenseOperator control_propagator(const ControlField& field, const SpinSystemParams& params,
                                 double rf_scale) {
    field.validate();
    const ControlBasis basis = control_basis(params);
    DenseOperator u = DenseOperator::Identity(basis.dim, basis.dim);
    for (int j = 0; j < field.slices(); ++j) {
        const double b = rf_scale * field.amplitude_hz[static_cast<std::size_t>(j)];
        const double phi = field.phase_rad[static_cast<std::size_t>(j)];
        const DenseOperator h =
            basis.h_int + b * std::cos(phi) * basis.hx + b * std::sin(phi) * basis.hy;
        u = hermitian_exp(h, field.slice_duration_s) * u;
    }
    return u;
}

double grape_objective(const Eigen::VectorXd& x, const DenseOperator& target,
                       const SpinSystemParams& params, double slice_duration_s,
                       const std::vector<double>& rf_scales, Eigen::VectorXd* grad) {
    const ControlBasis basis = control_basis(params);
    const Eigen::Index d = basis.dim;
    if (target.rows() != d || target.cols() != d) {
        throw DimensionError("grape target dimension does not match spin system");
    }
    const int m = static_cast<int>(x.size() / 2);
    const double dt = slice_duration_s;
    const double d2 = static_cast<double>(d) * static_cast<double>(d);

    double objective = 0.0;
    if (grad) grad->setZero(x.size());

    for (const double s : rf_scales) {
        std::vector<DenseOperator> props(static_cast<std::size_t>(m));
        std::vector<Eigen::VectorXd> evals(static_cast<std::size_t>(m));
        std::vector<DenseOperator> evecs(static_cast<std::size_t>(m));
        for (int j = 0; j < m; ++j) {
            const DenseOperator h =
                basis.h_int + s * (x[j] * basis.hx + x[m + j] * basis.hy);
            Eigen::SelfAdjointEigenSolver<DenseOperator> solver(h);
            evals[static_cast<std::size_t>(j)] = solver.eigenvalues();
            evecs[static_cast<std::size_t>(j)] = solver.eigenvectors();
            const Eigen::VectorXcd phases =
                (cx{0.0, -dt} * solver.eigenvalues().cast<cx>().array()).exp();
            props[static_cast<std::size_t>(j)] =
                solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
        }
        // prefix[j] = U_{j-1} ... U_0 (prefix[0] = I)
        std::vector<DenseOperator> prefix(static_cast<std::size_t>(m) + 1);
        prefix[0] = DenseOperator::Identity(d, d);
        for (int j = 0; j < m; ++j) {
            prefix[static_cast<std::size_t>(j) + 1] = props[static_cast<std::size_t>(j)] * prefix[static_cast<std::size_t>(j)];
        }
        const cx g = (target.conjugate().cwiseProduct(prefix[static_cast<std::size_t>(m)])).sum();
        objective += std::norm(g) / d2 / static_cast<double>(rf_scales.size());
        if (!grad || m == 0) continue;

        const DenseOperator target_adj = target.adjoint();
        // suffix[j] = U_{m-1} ... U_{j+1} (suffix[m-1] = I)
        std::vector<DenseOperator> suffix(static_cast<std::size_t>(m));
        suffix[static_cast<std::size_t>(m) - 1] = DenseOperator::Identity(d, d);
        for (int j = m - 2; j >= 0; --j) {
            suffix[static_cast<std::size_t>(j)] =
                suffix[static_cast<std::size_t>(j) + 1] * props[static_cast<std::size_t>(j) + 1];
        }
        for (int j = 0; j < m; ++j) {
            const auto& w = evals[static_cast<std::size_t>(j)];
            const auto& v = evecs[static_cast<std::size_t>(j)];
            // divided differences of f(w) = e^{-i w dt}, in the subtraction-free
            // form -i dt e^{-i dt (a+b)/2} sinc(dt (a-b)/2)
            Eigen::MatrixXcd gamma(d, d);
            for (Eigen::Index a = 0; a < d; ++a) {
                for (Eigen::Index bb = 0; bb < d; ++bb) {
                    const double half = 0.5 * dt * (w[a] - w[bb]);
                    const double sinc = std::abs(half) < 1e-8 ? 1.0 : std::sin(half) / half;
                    gamma(a, bb) =
                        cx{0.0, -dt} * std::exp(cx{0.0, -0.5 * dt * (w[a] + w[bb])}) * sinc;
                }
            }
            const DenseOperator mj =
                prefix[static_cast<std::size_t>(j)] * target_adj * suffix[static_cast<std::size_t>(j)];
            for (int c = 0; c < 2; ++c) {
                const DenseOperator& hc = c == 0 ? basis.hx : basis.hy;
                const Eigen::MatrixXcd dh_eig = v.adjoint() * (s * hc) * v;
                const DenseOperator du = v * dh_eig.cwiseProduct(gamma) * v.adjoint();
                const cx dg = (mj * du).trace();
                (*grad)[c * m + j] +=
                    2.0 * std::real(std::conj(g) * dg) / d2 / static_cast<double>(rf_scales.size());
            }
        }
    }
    return objective;
}

namespace {

Eigen::VectorXd field_to_coords(const ControlField& f) {
    const int m = f.slices();
    Eigen::VectorXd x(2 * m);
    for (int j = 0; j < m; ++j) {
        x[j] = f.amplitude_hz[static_cast<std::size_t>(j)] *
               std::cos(f.phase_rad[static_cast<std::size_t>(j)]);
        x[m + j] = f.amplitude_hz[static_cast<std::size_t>(j)] *
                   std::sin(f.phase_rad[static_cast<std::size_t>(j)]);
    }
    return x;
}

ControlField coords_to_field(const Eigen::VectorXd& x, const ControlField& like) {
    ControlField f = like;
    const int m = like.slices();
    for (int j = 0; j < m; ++j) {
        f.amplitude_hz[static_cast<std::size_t>(j)] = std::hypot(x[j], x[m + j]);
        f.phase_rad[static_cast<std::size_t>(j)] = std::atan2(x[m + j], x[j]);
    }
    return f;
}

}  // namespace

GrapeResult grape_optimize(const DenseOperator& target, const ControlField& init,
                           const SpinSystemParams& params, const GrapeOptions& options) {
    init.validate();
    if (options.fidelity_goal <= 0.0 || options.fidelity_goal >= 1.0) {
        throw ParameterError("fidelity_goal must lie in (0, 1)");
    }
    const DenseOperator check = target * target.adjoint();
    if ((check - DenseOperator::Identity(target.rows(), target.cols())).cwiseAbs().maxCoeff() >
        1e-8) {
        throw NotHermitianError("grape target is not unitary");
    }

    Eigen::VectorXd x = field_to_coords(init);
    Eigen::VectorXd grad(x.size());
    double objective = grape_objective(x, target, params, init.slice_duration_s,
                                       options.rf_scales, &grad);
    GrapeResult result;
    result.trace.push_back({0, objective, 0.0});

    Eigen::VectorXd direction = grad;
    Eigen::VectorXd grad_prev = grad;
    double step = options.initial_step;
    const double cap = init.max_amplitude_hz;

    for (int iter = 1; iter <= options.max_iter && objective < options.fidelity_goal; ++iter) {
        bool accepted = false;
        double trial = step;
        for (int back = 0; back < options.max_backtracks; ++back) {
            Eigen::VectorXd xn = x + trial * direction;
            // project onto the amplitude ball per slice
            const int m = static_cast<int>(xn.size() / 2);
            for (int j = 0; j < m; ++j) {
                const double a = std::hypot(xn[j], xn[m + j]);
                if (a > cap) {
                    xn[j] *= cap / a;
                    xn[m + j] *= cap / a;
                }
            }
            Eigen::VectorXd gn(xn.size());
            const double on = grape_objective(xn, target, params, init.slice_duration_s,
                                              options.rf_scales, &gn);
            if (on > objective) {
                x = xn;
                objective = on;
                // Polak-Ribiere with automatic restart on non-ascent directions
                const double beta =
                    std::max(0.0, gn.dot(gn - grad_prev) / grad_prev.squaredNorm());
                direction = gn + beta * direction;
                if (direction.dot(gn) <= 0.0) direction = gn;
                grad_prev = gn;
                step = trial * 2.0;
                accepted = true;
                break;
            }
            trial *= 0.5;
        }
        result.trace.push_back({iter, objective, accepted ? trial : 0.0});
        if (!accepted) break;  // no ascent left at any step size
    }

    result.objective = objective;
    result.converged = objective >= options.fidelity_goal;
    result.field = coords_to_field(x, init);
    return result;
}

std::vector<RobustnessPoint> robustness_profile(const ControlField& field,
                                                const DenseOperator& target,
                                                const SpinSystemParams& params,
                                                const std::vector<double>& scales) {
    std::vector<RobustnessPoint> out;
    out.reserve(scales.size());
    const double d2 = static_cast<double>(target.rows()) * static_cast<double>(target.rows());
    for (double s : scales) {
        const DenseOperator u = control_propagator(field, params, s);
        const cx overlap = (target.conjugate().cwiseProduct(u)).sum();
        out.push_back({s, std::norm(overlap) / d2});
    }
    return out;
}

}  // namespace syk
