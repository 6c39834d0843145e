#include "syk/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace syk {

namespace {

void check_same_register(const PauliString& a, const PauliString& b) {
    if (a.qubit_count() != b.qubit_count()) {
        throw DimensionError("pauli operands act on different qubit counts: " +
                             std::to_string(a.qubit_count()) + " vs " +
                             std::to_string(b.qubit_count()));
    }
}

// Reverse the low `q` bits so mask bit i (qubit i) lands on basis-index bit
// q-1-i (qubit 0 = most significant index bit).
std::uint64_t reverse_bits(std::uint64_t mask, int q) {
    std::uint64_t out = 0;
    for (int i = 0; i < q; ++i) {
        if (mask >> i & 1) out |= std::uint64_t{1} << (q - 1 - i);
    }
    return out;
}

constexpr cx kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

}  // namespace

PauliString::PauliString(int qubit_count, std::uint64_t x_mask, std::uint64_t z_mask, cx coefficient)
    : qubit_count_(qubit_count), x_mask_(x_mask), z_mask_(z_mask), coefficient_(coefficient) {
    if (qubit_count < 1 || qubit_count > 63) {
        throw ParameterError("qubit_count out of range: " + std::to_string(qubit_count));
    }
    const std::uint64_t valid = (std::uint64_t{1} << qubit_count) - 1;
    if ((x_mask & ~valid) || (z_mask & ~valid)) {
        throw ParameterError("pauli mask has bits beyond qubit_count");
    }
}

PauliString PauliString::identity(int qubit_count, cx coefficient) {
    return {qubit_count, 0, 0, coefficient};
}

PauliString PauliString::from_letters(std::string_view letters, cx coefficient) {
    if (letters.empty()) throw ParameterError("empty pauli letter string");
    std::uint64_t x = 0, z = 0;
    for (std::size_t i = 0; i < letters.size(); ++i) {
        const std::uint64_t bit = std::uint64_t{1} << i;
        switch (letters[i]) {
            case 'I': case 'i': case '0': break;
            case 'X': case 'x': x |= bit; break;
            case 'Y': case 'y': x |= bit; z |= bit; break;
            case 'Z': case 'z': z |= bit; break;
            default:
                throw ParameterError(std::string("unknown pauli letter '") + letters[i] + "'");
        }
    }
    return {static_cast<int>(letters.size()), x, z, coefficient};
}

char PauliString::letter(int qubit) const {
    const bool x = x_mask_ >> qubit & 1;
    const bool z = z_mask_ >> qubit & 1;
    return x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
}

std::string PauliString::letters() const {
    std::string s(static_cast<std::size_t>(qubit_count_), 'I');
    for (int i = 0; i < qubit_count_; ++i) s[static_cast<std::size_t>(i)] = letter(i);
    return s;
}

int PauliString::support_size() const {
    return std::popcount(x_mask_ | z_mask_);
}

std::string PauliString::to_string() const {
    std::ostringstream os;
    os << '(' << coefficient_.real();
    if (coefficient_.imag() >= 0 || std::isnan(coefficient_.imag())) os << '+';
    os << coefficient_.imag() << "j) " << letters();
    return os.str();
}

PauliString pauli_mul(const PauliString& a, const PauliString& b) {
    check_same_register(a, b);
    const std::uint64_t x = a.x_mask() ^ b.x_mask();
    const std::uint64_t z = a.z_mask() ^ b.z_mask();
    // Each word is i^{|x&z|} X^x Z^z; commuting Z^za past X^xb costs
    // (-1)^{|za & xb|}.
    const int phase = std::popcount(a.x_mask() & a.z_mask()) +
                      std::popcount(b.x_mask() & b.z_mask()) -
                      std::popcount(x & z) +
                      2 * std::popcount(a.z_mask() & b.x_mask());
    return {a.qubit_count(), x, z,
            a.coefficient() * b.coefficient() * kIPowers[((phase % 4) + 4) % 4]};
}

bool commutator_is_zero(const PauliString& a, const PauliString& b) {
    check_same_register(a, b);
    const int overlap = std::popcount(a.x_mask() & b.z_mask()) +
                        std::popcount(a.z_mask() & b.x_mask());
    return overlap % 2 == 0;
}

PauliSum PauliSum::from_terms(int qubit_count, std::vector<PauliString> terms) {
    for (const auto& t : terms) {
        if (t.qubit_count() != qubit_count) {
            throw DimensionError("PauliSum term qubit_count mismatch");
        }
    }
    std::stable_sort(terms.begin(), terms.end(), [](const PauliString& a, const PauliString& b) {
        if (a.z_mask() != b.z_mask()) return a.z_mask() < b.z_mask();
        return a.x_mask() < b.x_mask();
    });
    PauliSum out(qubit_count);
    for (const auto& t : terms) {
        if (!out.terms_.empty() && out.terms_.back().same_pattern(t)) {
            auto& last = out.terms_.back();
            last = last.with_coefficient(last.coefficient() + t.coefficient());
        } else {
            out.terms_.push_back(t);
        }
    }
    std::erase_if(out.terms_, [](const PauliString& t) { return t.coefficient() == cx{0.0, 0.0}; });
    return out;
}

PauliSum PauliSum::scaled(cx factor) const {
    std::vector<PauliString> terms;
    terms.reserve(terms_.size());
    for (const auto& t : terms_) terms.push_back(t.with_coefficient(t.coefficient() * factor));
    return from_terms(qubit_count_, std::move(terms));
}

double PauliSum::max_imag_coefficient() const {
    double worst = 0.0;
    for (const auto& t : terms_) worst = std::max(worst, std::abs(t.coefficient().imag()));
    return worst;
}

namespace {

void check_cap(int qubit_count, int max_qubits) {
    if (qubit_count > max_qubits) {
        throw ResourceError("dense realization of " + std::to_string(qubit_count) +
                            " qubits exceeds cap of " + std::to_string(max_qubits));
    }
}

}  // namespace

DenseOperator to_dense(const PauliString& p, int max_qubits) {
    check_cap(p.qubit_count(), max_qubits);
    const int q = p.qubit_count();
    const std::int64_t dim = std::int64_t{1} << q;
    const std::uint64_t xr = reverse_bits(p.x_mask(), q);
    const std::uint64_t zr = reverse_bits(p.z_mask(), q);
    const cx base = p.coefficient() * kIPowers[std::popcount(p.x_mask() & p.z_mask()) % 4];
    DenseOperator m = DenseOperator::Zero(dim, dim);
    for (std::int64_t col = 0; col < dim; ++col) {
        const auto row = static_cast<std::int64_t>(static_cast<std::uint64_t>(col) ^ xr);
        const int sign = std::popcount(zr & static_cast<std::uint64_t>(col)) % 2 ? -1 : 1;
        m(row, col) = static_cast<double>(sign) * base;
    }
    return m;
}

DenseOperator to_dense(const PauliSum& h, int max_qubits) {
    check_cap(h.qubit_count(), max_qubits);
    const std::int64_t dim = std::int64_t{1} << h.qubit_count();
    DenseOperator m = DenseOperator::Zero(dim, dim);
    for (const auto& t : h.terms()) m += to_dense(t, max_qubits);
    return m;
}

DenseOperator exp_pauli_term(const PauliString& h, double t) {
    if (std::abs(h.coefficient().imag()) > 0.0) {
        throw NotHermitianError("exp_pauli_term requires a real coefficient, got " + h.to_string());
    }
    const double angle = h.coefficient().real() * t;
    const std::int64_t dim = std::int64_t{1} << h.qubit_count();
    DenseOperator m = to_dense(h.with_coefficient(cx{1.0, 0.0}));
    m *= cx{0.0, -std::sin(angle)};
    m += std::cos(angle) * DenseOperator::Identity(dim, dim);
    return m;
}

void apply_pauli(const PauliString& p, const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
    const int q = p.qubit_count();
    const std::int64_t dim = std::int64_t{1} << q;
    if (in.size() != dim) throw DimensionError("state length does not match qubit_count");
    const std::uint64_t xr = reverse_bits(p.x_mask(), q);
    const std::uint64_t zr = reverse_bits(p.z_mask(), q);
    const cx base = p.coefficient() * kIPowers[std::popcount(p.x_mask() & p.z_mask()) % 4];
    out.resize(dim);
    for (std::int64_t col = 0; col < dim; ++col) {
        const auto row = static_cast<std::int64_t>(static_cast<std::uint64_t>(col) ^ xr);
        const int sign = std::popcount(zr & static_cast<std::uint64_t>(col)) % 2 ? -1 : 1;
        out(row) = static_cast<double>(sign) * base * in(col);
    }
}

void apply_exp_pauli(const PauliString& h, double t, Eigen::VectorXcd& state) {
    if (std::abs(h.coefficient().imag()) > 0.0) {
        throw NotHermitianError("apply_exp_pauli requires a real coefficient");
    }
    const double angle = h.coefficient().real() * t;
    Eigen::VectorXcd rotated;
    apply_pauli(h.with_coefficient(cx{1.0, 0.0}), state, rotated);
    state = std::cos(angle) * state - cx{0.0, 1.0} * std::sin(angle) * rotated;
}

}  // namespace syk
