#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "syk/errors.hpp"

namespace syk {

using cx = std::complex<double>;
using DenseOperator = Eigen::MatrixXcd;

// Dense realizations above this many qubits are refused unless the caller
// raises the cap explicitly.
inline constexpr int kDenseQubitCap = 12;

// A multi-qubit Pauli word with a complex coefficient, encoded symplectically:
// bit i of (x_mask, z_mask) selects the factor on qubit i via
// (0,0)=I, (1,0)=X, (0,1)=Z, (1,1)=Y.  The coefficient multiplies the literal
// Hermitian word, so the operator is Hermitian iff the coefficient is real.
// Qubit 0 is the leftmost letter in text form and the most significant bit of
// dense basis indices.
class PauliString {
public:
    PauliString(int qubit_count, std::uint64_t x_mask, std::uint64_t z_mask, cx coefficient);

    static PauliString identity(int qubit_count, cx coefficient = 1.0);
    // Accepts "IXYZ" or the paper-style "0xyz" alphabet, first letter = qubit 0.
    static PauliString from_letters(std::string_view letters, cx coefficient = 1.0);

    int qubit_count() const { return qubit_count_; }
    std::uint64_t x_mask() const { return x_mask_; }
    std::uint64_t z_mask() const { return z_mask_; }
    cx coefficient() const { return coefficient_; }

    PauliString with_coefficient(cx c) const { return {qubit_count_, x_mask_, z_mask_, c}; }

    char letter(int qubit) const;        // 'I','X','Y','Z'
    std::string letters() const;
    int support_size() const;
    bool is_identity_pattern() const { return x_mask_ == 0 && z_mask_ == 0; }
    bool same_pattern(const PauliString& other) const {
        return x_mask_ == other.x_mask_ && z_mask_ == other.z_mask_;
    }

    // e.g. "(-0.25+0j) XYZI", qubit 0 leftmost.
    std::string to_string() const;

    bool operator==(const PauliString& other) const {
        return qubit_count_ == other.qubit_count_ && same_pattern(other) &&
               coefficient_ == other.coefficient_;
    }

private:
    int qubit_count_;
    std::uint64_t x_mask_;
    std::uint64_t z_mask_;
    cx coefficient_;
};

// Exact product a*b with phase tracking; masks XOR, coefficients multiply
// together with the accumulated power of i from per-qubit Pauli algebra.
PauliString pauli_mul(const PauliString& a, const PauliString& b);

// True iff the patterns commute, i.e. the symplectic inner product
// |x_a & z_b| + |z_a & x_b| is even.  Coefficients are irrelevant.
bool commutator_is_zero(const PauliString& a, const PauliString& b);

// A Hermitian-by-convention weighted sum of Pauli words sharing one register.
// Terms are kept normalized: canonically ordered by (z_mask, x_mask),
// duplicate patterns merged, exact-zero coefficients dropped.
class PauliSum {
public:
    explicit PauliSum(int qubit_count) : qubit_count_(qubit_count) {}
    static PauliSum from_terms(int qubit_count, std::vector<PauliString> terms);

    int qubit_count() const { return qubit_count_; }
    const std::vector<PauliString>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    PauliSum scaled(cx factor) const;
    // Largest deviation of any coefficient from the real axis.
    double max_imag_coefficient() const;

private:
    int qubit_count_;
    std::vector<PauliString> terms_;
};

DenseOperator to_dense(const PauliString& p, int max_qubits = kDenseQubitCap);
DenseOperator to_dense(const PauliSum& h, int max_qubits = kDenseQubitCap);

// exp(-i a P t) for a Hermitian single term h = a*P (a real):
// cos(a t) I - i sin(a t) P, exact because P^2 = I.
DenseOperator exp_pauli_term(const PauliString& h, double t);

// Matrix-free application of a Pauli word / term exponential to a state
// vector of length 2^qubit_count (basis convention as to_dense).
void apply_pauli(const PauliString& p, const Eigen::VectorXcd& in, Eigen::VectorXcd& out);
void apply_exp_pauli(const PauliString& h, double t, Eigen::VectorXcd& state);

}  // namespace syk
