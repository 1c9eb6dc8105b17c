#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>

#include <Eigen/Dense>

#include "prmi/errors.hpp"

namespace prmi {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Relative eigenvalue threshold below which a direction counts as kernel:
/// eigenvalues below rel_tol * lambda_max are treated as exactly zero.
struct SupportCutoff {
    double rel_tol = 1e-12;

    SupportCutoff() = default;
    explicit SupportCutoff(double tol);

    /// Cutoff from the PRMI_SUPPORT_TOL environment variable, or the default.
    static SupportCutoff from_environment();
};

/// Dense self-adjoint complex matrix.
///
/// Construction from an arbitrary matrix validates squareness, finiteness and
/// Hermiticity (deviation at most 1e-12 of the largest entry) and then stores
/// the Hermitian part (X + X^dagger)/2, which removes round-off asymmetry.
class HermitianOperator {
public:
    HermitianOperator() : m_(CMatrix::Zero(1, 1)) {}
    explicit HermitianOperator(CMatrix m);

    /// (M + M^dagger)/2 without the Hermiticity check. Used for results of
    /// computations that are Hermitian in exact arithmetic.
    static HermitianOperator hermitian_part(const CMatrix& m);

    static HermitianOperator identity(Index dim);
    static HermitianOperator zero(Index dim);
    static HermitianOperator diagonal(std::span<const double> diag);
    static HermitianOperator diagonal(std::initializer_list<double> diag);
    /// |v><v| for a (not necessarily normalized) vector.
    static HermitianOperator projector(const Eigen::VectorXcd& v);

    Index dim() const noexcept { return m_.rows(); }
    const CMatrix& matrix() const noexcept { return m_; }
    Complex operator()(Index i, Index j) const { return m_(i, j); }

    double trace() const { return m_.trace().real(); }
    /// Largest absolute entry.
    double max_abs_entry() const { return m_.cwiseAbs().maxCoeff(); }

    HermitianOperator operator+(const HermitianOperator& o) const;
    HermitianOperator operator-(const HermitianOperator& o) const;
    HermitianOperator operator*(double s) const;
    friend HermitianOperator operator*(double s, const HermitianOperator& x) { return x * s; }
    HermitianOperator normalized() const;

private:
    struct Unchecked {};
    HermitianOperator(CMatrix m, Unchecked) : m_(std::move(m)) {}

    CMatrix m_;
};

/// Density operator on A (x) B in the product basis |a> (x) |b>, b fastest.
class BipartiteState {
public:
    /// Validates d_a * d_b == dim, positive semidefiniteness (min eigenvalue
    /// >= -1e-10) and unit trace (within 1e-10). Throws ValidationError.
    BipartiteState(Index d_a, Index d_b, HermitianOperator op);

    Index d_a() const noexcept { return d_a_; }
    Index d_b() const noexcept { return d_b_; }
    const HermitianOperator& op() const noexcept { return op_; }

    HermitianOperator marginal_a() const;
    HermitianOperator marginal_b() const;

private:
    Index d_a_;
    Index d_b_;
    HermitianOperator op_;
};

/// Eigenvalues in descending order with matching eigenvector columns.
struct Eigensystem {
    RVector values;
    CMatrix vectors;
};

Eigensystem eig_hermitian(const HermitianOperator& x);

/// X^p taken on the support of X; X^0 is the support projector.
HermitianOperator power_on_support(const HermitianOperator& x, double p,
                                   SupportCutoff cut = {});
/// Same as power_on_support but reusing an existing eigendecomposition.
HermitianOperator power_on_support(const Eigensystem& es, double p, SupportCutoff cut = {});

HermitianOperator support_projector(const HermitianOperator& x, SupportCutoff cut = {});

enum class Subsystem { A, B };

/// Traces out `which` from an operator on A (x) B.
HermitianOperator partial_trace(const HermitianOperator& x, Index d_a, Index d_b,
                                Subsystem which);

/// tr_A[R_AB (S_A (x) 1_B)] without forming the Kronecker product.
HermitianOperator partial_trace_a_weighted(const HermitianOperator& r_ab,
                                           const HermitianOperator& s_a, Index d_a, Index d_b);
/// tr_B[R_AB (1_A (x) T_B)] without forming the Kronecker product.
HermitianOperator partial_trace_b_weighted(const HermitianOperator& r_ab,
                                           const HermitianOperator& t_b, Index d_a, Index d_b);

HermitianOperator kron(const HermitianOperator& a, const HermitianOperator& b);

/// P X P.
HermitianOperator compress(const HermitianOperator& x, const HermitianOperator& p);

/// Schatten p-norm (quasi-norm for p in (0,1)); p = +inf gives the operator norm.
double schatten_norm(const HermitianOperator& x, double p);
double schatten_norm(const RVector& eigenvalues, double p);

/// Smallest eigenvalue above the support cutoff.
double min_nonzero_eig(const HermitianOperator& x, SupportCutoff cut = {});

enum class SupportRelation { dominated, equal_support, orthogonal, none };

/// Classifies X against Y: equal_support (X ~ Y), dominated (X << Y only),
/// orthogonal (X perp Y), or none.
SupportRelation support_relation(const HermitianOperator& x, const HermitianOperator& y,
                                 SupportCutoff cut = {});

/// X << Y, i.e. ker(Y) is contained in ker(X).
bool is_dominated(const HermitianOperator& x, const HermitianOperator& y, SupportCutoff cut = {});
/// X perp Y.
bool is_orthogonal(const HermitianOperator& x, const HermitianOperator& y,
                   SupportCutoff cut = {});

const char* to_string(SupportRelation r);

}  // namespace prmi
