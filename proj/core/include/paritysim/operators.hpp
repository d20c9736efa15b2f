#pragma once

// Dense complex-matrix Hilbert-space algebra on the fixed (qubit, resonator)
// factor order: Pauli and bosonic operators, Kronecker embeddings, parity
// operators, commutator-based parity classification.

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "paritysim/constants.hpp"

namespace paritysim::ops {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using complex = std::complex<double>;

// Ordered subsystem dimensions. Factor order is fixed as (qubit, resonator)
// everywhere; a single factor means a bare qubit or bare resonator.
struct HilbertSpace {
    std::vector<Eigen::Index> factor_dims;

    Eigen::Index total_dim() const {
        Eigen::Index d = 1;
        for (Eigen::Index f : factor_dims) d *= f;
        return d;
    }
};

struct LabeledOperator {
    HilbertSpace space;
    ComplexMatrix matrix;
    std::string name;
};

enum class Pauli { x, y, z, plus, minus, identity };

// Basis convention: sigma_z = diag(+1, -1) with the excited state first,
// so p_e = (<sigma_z> + 1) / 2. sigma_plus = |e><g|, sigma_minus = |g><e|.
LabeledOperator pauli(Pauli kind);

struct BosonOps {
    LabeledOperator annihilate;
    LabeledOperator create;
    LabeledOperator number;
};

// Truncated ladder operators on |0> ... |n_max>. Rejects n_max < 1.
BosonOps boson_ops(int n_max);

// Kronecker product in the fixed (qubit tensor resonator) factor order.
LabeledOperator tensor(const LabeledOperator& a, const LabeledOperator& b);

struct ParityOps {
    LabeledOperator qubit;     // -sigma_z: |g> even, |e> odd
    LabeledOperator resonator; // exp(i pi n): diag((-1)^n)
    LabeledOperator composite; // tensor(qubit, resonator)
};

ParityOps parity_ops(int n_max);

enum class ParityClass { even, odd, none };

// even if [pi, op] = 0, odd if {pi, op} = 0, both within operator_tol
// (max-abs-entry norm); none otherwise.
ParityClass parity_classify(const LabeledOperator& op, const LabeledOperator& pi);
ParityClass parity_classify(const ComplexMatrix& op, const ComplexMatrix& pi);

// ---- small helpers shared across modules ----

inline ComplexMatrix identity(Eigen::Index dim) {
    return ComplexMatrix::Identity(dim, dim);
}

// Kronecker product A (x) B for raw matrices.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Embed a qubit (resonator) operator into the 2 (x) (n_max+1) product space.
ComplexMatrix embed_qubit(const ComplexMatrix& op, int n_max);
ComplexMatrix embed_resonator(const ComplexMatrix& op, int n_max);

inline double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

inline bool is_hermitian(const ComplexMatrix& m, double tol = operator_tol) {
    return max_abs(m - m.adjoint()) <= tol;
}

const char* to_string(ParityClass c);

} // namespace paritysim::ops
