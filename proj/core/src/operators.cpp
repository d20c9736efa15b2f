#include "paritysim/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace paritysim::ops {

namespace {
const complex I{0.0, 1.0};
}

LabeledOperator pauli(Pauli kind) {
    HilbertSpace space{{2}};
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    std::string name;
    switch (kind) {
    case Pauli::x:
        m(0, 1) = 1.0;
        m(1, 0) = 1.0;
        name = "sigma_x";
        break;
    case Pauli::y:
        m(0, 1) = -I;
        m(1, 0) = I;
        name = "sigma_y";
        break;
    case Pauli::z:
        m(0, 0) = 1.0;
        m(1, 1) = -1.0;
        name = "sigma_z";
        break;
    case Pauli::plus:
        m(0, 1) = 1.0; // |e><g|
        name = "sigma_plus";
        break;
    case Pauli::minus:
        m(1, 0) = 1.0; // |g><e|
        name = "sigma_minus";
        break;
    case Pauli::identity:
        m.setIdentity();
        name = "identity";
        break;
    }
    return {space, std::move(m), std::move(name)};
}

BosonOps boson_ops(int n_max) {
    if (n_max < 1) throw std::invalid_argument("boson_ops: n_max must be >= 1");
    const Eigen::Index dim = n_max + 1;
    HilbertSpace space{{dim}};
    ComplexMatrix a = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
    ComplexMatrix adag = a.adjoint();
    ComplexMatrix num = adag * a;
    return {{space, std::move(a), "annihilate"},
            {space, std::move(adag), "create"},
            {space, std::move(num), "number"}};
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

LabeledOperator tensor(const LabeledOperator& a, const LabeledOperator& b) {
    if (a.matrix.rows() != a.space.total_dim() || b.matrix.rows() != b.space.total_dim())
        throw std::invalid_argument("tensor: operator dimension does not match its declared space");
    HilbertSpace space;
    space.factor_dims = a.space.factor_dims;
    space.factor_dims.insert(space.factor_dims.end(), b.space.factor_dims.begin(),
                             b.space.factor_dims.end());
    return {std::move(space), kron(a.matrix, b.matrix), a.name + " (x) " + b.name};
}

ComplexMatrix embed_qubit(const ComplexMatrix& op, int n_max) {
    return kron(op, identity(n_max + 1));
}

ComplexMatrix embed_resonator(const ComplexMatrix& op, int n_max) {
    (void)n_max;
    return kron(identity(2), op);
}

ParityOps parity_ops(int n_max) {
    if (n_max < 1) throw std::invalid_argument("parity_ops: n_max must be >= 1");
    LabeledOperator pq{{{2}}, -pauli(Pauli::z).matrix, "parity_qubit"};
    const Eigen::Index dim = n_max + 1;
    ComplexMatrix pr_m = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index n = 0; n < dim; ++n) pr_m(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
    LabeledOperator pr{{{dim}}, std::move(pr_m), "parity_resonator"};
    LabeledOperator pqr = tensor(pq, pr);
    pqr.name = "parity_composite";
    return {std::move(pq), std::move(pr), std::move(pqr)};
}

ParityClass parity_classify(const ComplexMatrix& op, const ComplexMatrix& pi) {
    if (op.rows() != pi.rows() || op.cols() != pi.cols())
        throw std::invalid_argument("parity_classify: dimension mismatch");
    const ComplexMatrix po = pi * op;
    const ComplexMatrix op_pi = op * pi;
    if (max_abs(po - op_pi) <= operator_tol) return ParityClass::even;
    if (max_abs(po + op_pi) <= operator_tol) return ParityClass::odd;
    return ParityClass::none;
}

ParityClass parity_classify(const LabeledOperator& op, const LabeledOperator& pi) {
    return parity_classify(op.matrix, pi.matrix);
}

const char* to_string(ParityClass c) {
    switch (c) {
    case ParityClass::even: return "even";
    case ParityClass::odd: return "odd";
    default: return "none";
    }
}

} // namespace paritysim::ops
