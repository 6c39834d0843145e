#include "syk/model.hpp"

#include <algorithm>
#include <cmath>

#include "syk/rng.hpp"

namespace syk {

std::string to_string(CVarianceConvention c) {
    return c == CVarianceConvention::kMainText ? "main_text" : "supplement";
}

CVarianceConvention c_variance_from_string(const std::string& s) {
    if (s == "main_text" || s == "MAIN_TEXT" || s == "main") return CVarianceConvention::kMainText;
    if (s == "supplement" || s == "SUPPLEMENT") return CVarianceConvention::kSupplement;
    throw ParameterError("unknown c_variance convention: " + s);
}

void ModelParams::validate() const {
    if (n_majorana < 4 || n_majorana % 2 != 0) {
        throw ParameterError("n_majorana must be even and >= 4, got " + std::to_string(n_majorana));
    }
    if (j4 <= 0.0 || j2 <= 0.0) {
        throw ParameterError("j4 and j2 must be positive");
    }
}

std::vector<std::array<int, 4>> CouplingSet::quadruples(int n) {
    std::vector<std::array<int, 4>> out;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                for (int l = k + 1; l < n; ++l) out.push_back({i, j, k, l});
    return out;
}

std::vector<std::array<int, 2>> CouplingSet::pairs(int n) {
    std::vector<std::array<int, 2>> out;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) out.push_back({i, j});
    return out;
}

namespace {

// Rank of (i<j<k<l) in the lexicographic enumeration above.
int quadruple_rank(int n, int i, int j, int k, int l) {
    auto c2 = [](long v) { return v * (v - 1) / 2; };
    auto c3 = [&](long v) { return v * (v - 1) * (v - 2) / 6; };
    auto c4 = [&](long v) { return v * (v - 1) * (v - 2) * (v - 3) / 24; };
    const long total = c4(n);
    long rank = total - c4(n - i) + (c3(n - i - 1) - c3(n - j)) + (c2(n - j - 1) - c2(n - k)) +
                (l - k - 1);
    return static_cast<int>(rank);
}

int pair_rank(int n, int i, int j) {
    const long before = static_cast<long>(i) * n - static_cast<long>(i) * (i + 1) / 2;
    return static_cast<int>(before + (j - i - 1));
}

}  // namespace

CouplingSet::CouplingSet(ModelParams params, std::vector<double> j_values,
                         std::vector<double> c_values)
    : params_(params), j_values_(std::move(j_values)), c_values_(std::move(c_values)) {
    params_.validate();
    const auto n = static_cast<std::size_t>(params_.n_majorana);
    const std::size_t nq = n * (n - 1) * (n - 2) * (n - 3) / 24;
    const std::size_t np = n * (n - 1) / 2;
    if (j_values_.size() != nq || c_values_.size() != np) {
        throw ParameterError("coupling vector sizes do not match n_majorana");
    }
}

double CouplingSet::j(int i, int jj, int k, int l) const {
    int idx[4] = {i, jj, k, l};
    int sign = 1;
    // insertion sort, tracking permutation parity; repeated indices -> 0
    for (int a = 1; a < 4; ++a) {
        for (int b = a; b > 0 && idx[b - 1] >= idx[b]; --b) {
            if (idx[b - 1] == idx[b]) return 0.0;
            std::swap(idx[b - 1], idx[b]);
            sign = -sign;
        }
    }
    return sign * j_values_[static_cast<std::size_t>(
                      quadruple_rank(params_.n_majorana, idx[0], idx[1], idx[2], idx[3]))];
}

double CouplingSet::c(int i, int jj) const {
    if (i == jj) return 0.0;
    const int sign = i < jj ? 1 : -1;
    if (i > jj) std::swap(i, jj);
    return sign * c_values_[static_cast<std::size_t>(pair_rank(params_.n_majorana, i, jj))];
}

CouplingSet generate_couplings(const ModelParams& params) {
    params.validate();
    const int n = params.n_majorana;
    const double var_j = 6.0 * params.j4 * params.j4 / (static_cast<double>(n) * n * n);
    const double factor = params.c_variance == CVarianceConvention::kSupplement ? 2.0 : 1.0;
    const double var_c = factor * params.j2 * params.j2 / (static_cast<double>(n) * n);
    GaussianSampler rng(params.seed);
    std::vector<double> j_values(CouplingSet::quadruples(n).size());
    for (auto& v : j_values) v = rng.normal(std::sqrt(var_j));
    std::vector<double> c_values(CouplingSet::pairs(n).size());
    for (auto& v : c_values) v = rng.normal(std::sqrt(var_c));
    return {params, std::move(j_values), std::move(c_values)};
}

CouplingSet with_negated_syk(const CouplingSet& sample) {
    std::vector<double> j_values = sample.j_values();
    for (auto& v : j_values) v = -v;
    return {sample.params(), std::move(j_values), sample.c_values()};
}

MajoranaSet jordan_wigner(int n_majorana) {
    if (n_majorana < 2 || n_majorana % 2 != 0) {
        throw ParameterError("jordan_wigner needs an even n_majorana >= 2");
    }
    const int q = n_majorana / 2;
    const double norm = 1.0 / std::sqrt(2.0);
    MajoranaSet out;
    out.operators.reserve(static_cast<std::size_t>(n_majorana));
    for (int site = 1; site <= q; ++site) {
        const std::uint64_t tail = (std::uint64_t{1} << (site - 1)) - 1;  // X on qubits 0..site-2
        const std::uint64_t head = std::uint64_t{1} << (site - 1);
        // chi_{2 site - 1}: final letter Z
        out.operators.emplace_back(q, tail, head, cx{norm, 0.0});
        // chi_{2 site}: final letter Y
        out.operators.emplace_back(q, tail | head, head, cx{norm, 0.0});
    }
    return out;
}

MajoranaSet jordan_wigner(const ModelParams& params) {
    params.validate();
    return jordan_wigner(params.n_majorana);
}

namespace {

PauliString majorana_product4(const MajoranaSet& chi, int i, int j, int k, int l) {
    return pauli_mul(pauli_mul(chi.operators[static_cast<std::size_t>(i)],
                               chi.operators[static_cast<std::size_t>(j)]),
                     pauli_mul(chi.operators[static_cast<std::size_t>(k)],
                               chi.operators[static_cast<std::size_t>(l)]));
}

}  // namespace

PauliSum build_hamiltonian(const CouplingSet& sample) {
    const ModelParams& p = sample.params();
    const MajoranaSet chi = jordan_wigner(p.n_majorana);
    const auto quads = CouplingSet::quadruples(p.n_majorana);
    const auto prs = CouplingSet::pairs(p.n_majorana);

    std::vector<PauliString> terms;
    terms.reserve(quads.size());
    for (std::size_t r = 0; r < quads.size(); ++r) {
        const auto [i, j, k, l] = quads[r];
        const double w = sample.j_values()[r];
        if (w == 0.0 && p.mu == 0.0) continue;
        PauliString word = majorana_product4(chi, i, j, k, l);
        terms.push_back(word.with_coefficient(word.coefficient() * w));
    }
    if (p.mu != 0.0) {
        for (std::size_t a = 0; a < prs.size(); ++a) {
            for (std::size_t b = a + 1; b < prs.size(); ++b) {
                const auto [i, j] = prs[a];
                const auto [k, l] = prs[b];
                if (i == k || i == l || j == k || j == l) continue;
                const double w = 2.0 * p.mu * sample.c_values()[a] * sample.c_values()[b];
                if (w == 0.0) continue;
                PauliString word = majorana_product4(chi, i, j, k, l);
                terms.push_back(word.with_coefficient(word.coefficient() * w));
            }
        }
    }
    return PauliSum::from_terms(p.qubit_count(), std::move(terms));
}

PauliSum build_boson_operator(const CouplingSet& sample) {
    const ModelParams& p = sample.params();
    const MajoranaSet chi = jordan_wigner(p.n_majorana);
    const auto prs = CouplingSet::pairs(p.n_majorana);
    std::vector<PauliString> terms;
    terms.reserve(prs.size());
    for (std::size_t r = 0; r < prs.size(); ++r) {
        const auto [i, j] = prs[r];
        const double w = sample.c_values()[r];
        if (w == 0.0) continue;
        PauliString word = pauli_mul(chi.operators[static_cast<std::size_t>(i)],
                                     chi.operators[static_cast<std::size_t>(j)]);
        terms.push_back(word.with_coefficient(word.coefficient() * cx{0.0, 2.0 * w}));
    }
    return PauliSum::from_terms(p.qubit_count(), std::move(terms));
}

double coefficient_statistic(const PauliSum& h) {
    if (h.empty()) throw ParameterError("coefficient_statistic of an empty sum");
    double mean_sq = 0.0;
    for (const auto& t : h.terms()) mean_sq += std::norm(t.coefficient());
    mean_sq /= static_cast<double>(h.size());
    return 1.0 / std::sqrt(mean_sq);
}

double dropped_identity_coefficient(const CouplingSet& sample) {
    double sum_sq = 0.0;
    for (double v : sample.c_values()) sum_sq += v * v;
    return -(sample.params().mu / 4.0) * sum_sq;
}

}  // namespace syk
