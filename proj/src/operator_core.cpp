#include "prmi/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

namespace prmi {

namespace {

constexpr double kHermiticityTol = 1e-12;
constexpr double kStatePsdTol = 1e-10;
constexpr double kStateTraceTol = 1e-10;
// Floor for the relative tolerance of support relations; the kernel cutoff
// itself may be zero, relations on floating-point data can never be exact.
constexpr double kRelationTolFloor = 1e-10;

bool all_finite(const CMatrix& m) {
    for (Index j = 0; j < m.cols(); ++j)
        for (Index i = 0; i < m.rows(); ++i)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    return true;
}

double kernel_threshold(const RVector& descending, SupportCutoff cut) {
    const double lmax = descending.size() > 0 ? descending(0) : 0.0;
    return lmax > 0.0 ? cut.rel_tol * lmax : std::numeric_limits<double>::infinity();
}

}  // namespace

SupportCutoff::SupportCutoff(double tol) : rel_tol(tol) {
    if (!(tol >= 0.0 && tol < 1.0))
        throw InvalidConfig("support cutoff must lie in [0, 1), got " + std::to_string(tol));
}

SupportCutoff SupportCutoff::from_environment() {
    const char* env = std::getenv("PRMI_SUPPORT_TOL");
    if (env == nullptr || *env == '\0') return SupportCutoff{};
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0')
        throw InvalidConfig(std::string("PRMI_SUPPORT_TOL is not a number: ") + env);
    return SupportCutoff(v);
}

HermitianOperator::HermitianOperator(CMatrix m) {
    if (m.rows() < 1 || m.rows() != m.cols())
        throw InvalidOperator("operator must be square with dim >= 1");
    if (!all_finite(m)) throw InvalidOperator("operator has non-finite entries");
    const double scale = m.cwiseAbs().maxCoeff();
    const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (asym > kHermiticityTol * std::max(scale, std::numeric_limits<double>::min()))
        throw InvalidOperator("operator is not Hermitian (deviation " + std::to_string(asym) + ")");
    m_ = 0.5 * (m + m.adjoint());
}

HermitianOperator HermitianOperator::hermitian_part(const CMatrix& m) {
    if (m.rows() < 1 || m.rows() != m.cols())
        throw InvalidOperator("operator must be square with dim >= 1");
    return HermitianOperator(CMatrix(0.5 * (m + m.adjoint())), Unchecked{});
}

HermitianOperator HermitianOperator::identity(Index dim) {
    if (dim < 1) throw InvalidOperator("dim must be >= 1");
    return HermitianOperator(CMatrix::Identity(dim, dim), Unchecked{});
}

HermitianOperator HermitianOperator::zero(Index dim) {
    if (dim < 1) throw InvalidOperator("dim must be >= 1");
    return HermitianOperator(CMatrix::Zero(dim, dim), Unchecked{});
}

HermitianOperator HermitianOperator::diagonal(std::span<const double> diag) {
    if (diag.empty()) throw InvalidOperator("dim must be >= 1");
    CMatrix m = CMatrix::Zero(static_cast<Index>(diag.size()), static_cast<Index>(diag.size()));
    for (std::size_t i = 0; i < diag.size(); ++i) {
        if (!std::isfinite(diag[i])) throw InvalidOperator("operator has non-finite entries");
        m(static_cast<Index>(i), static_cast<Index>(i)) = diag[i];
    }
    return HermitianOperator(std::move(m), Unchecked{});
}

HermitianOperator HermitianOperator::diagonal(std::initializer_list<double> diag) {
    return diagonal(std::span<const double>(diag.begin(), diag.size()));
}

HermitianOperator HermitianOperator::projector(const Eigen::VectorXcd& v) {
    return hermitian_part(v * v.adjoint());
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& o) const {
    if (dim() != o.dim()) throw DimMismatch("operator sum of different dimensions");
    return HermitianOperator(CMatrix(m_ + o.m_), Unchecked{});
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& o) const {
    if (dim() != o.dim()) throw DimMismatch("operator difference of different dimensions");
    return HermitianOperator(CMatrix(m_ - o.m_), Unchecked{});
}

HermitianOperator HermitianOperator::operator*(double s) const {
    return HermitianOperator(CMatrix(m_ * s), Unchecked{});
}

HermitianOperator HermitianOperator::normalized() const {
    const double t = trace();
    if (!(t > 0.0)) throw ZeroOperator("cannot normalize an operator with nonpositive trace");
    return *this * (1.0 / t);
}

BipartiteState::BipartiteState(Index d_a, Index d_b, HermitianOperator op)
    : d_a_(d_a), d_b_(d_b), op_(std::move(op)) {
    if (d_a < 1 || d_b < 1 || d_a * d_b != op_.dim())
        throw ValidationError("dimensions", "d_a * d_b must equal the operator dimension");
    const Eigensystem es = eig_hermitian(op_);
    const double lmin = es.values(es.values.size() - 1);
    if (lmin < -kStatePsdTol)
        throw ValidationError("psd", "minimum eigenvalue " + std::to_string(lmin));
    if (std::abs(op_.trace() - 1.0) > kStateTraceTol)
        throw ValidationError("trace", "trace is " + std::to_string(op_.trace()));
}

HermitianOperator BipartiteState::marginal_a() const {
    return partial_trace(op_, d_a_, d_b_, Subsystem::B);
}

HermitianOperator BipartiteState::marginal_b() const {
    return partial_trace(op_, d_a_, d_b_, Subsystem::A);
}

Eigensystem eig_hermitian(const HermitianOperator& x) {
    if (!all_finite(x.matrix())) throw InvalidOperator("operator has non-finite entries");
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(x.matrix());
    if (solver.info() != Eigen::Success) throw InvalidOperator("eigendecomposition failed");
    // Eigen returns ascending order.
    Eigensystem es;
    es.values = solver.eigenvalues().reverse();
    es.vectors = solver.eigenvectors().rowwise().reverse();
    return es;
}

HermitianOperator power_on_support(const Eigensystem& es, double p, SupportCutoff cut) {
    const double thr = kernel_threshold(es.values, cut);
    const Index n = es.values.size();
    RVector f = RVector::Zero(n);
    bool nonzero = false;
    for (Index i = 0; i < n; ++i) {
        const double l = es.values(i);
        if (l > 0.0 && l >= thr) {
            f(i) = p == 0.0 ? 1.0 : std::pow(l, p);
            nonzero = true;
        }
    }
    if (!nonzero && p < 0.0) throw ZeroOperator("negative power of the zero operator");
    return HermitianOperator::hermitian_part(es.vectors * f.asDiagonal() * es.vectors.adjoint());
}

HermitianOperator power_on_support(const HermitianOperator& x, double p, SupportCutoff cut) {
    if (!std::isfinite(p)) throw InvalidExponent("power must be finite");
    return power_on_support(eig_hermitian(x), p, cut);
}

HermitianOperator support_projector(const HermitianOperator& x, SupportCutoff cut) {
    return power_on_support(x, 0.0, cut);
}

HermitianOperator partial_trace(const HermitianOperator& x, Index d_a, Index d_b,
                                Subsystem which) {
    if (d_a < 1 || d_b < 1 || d_a * d_b != x.dim())
        throw DimMismatch("partial trace: operator dim " + std::to_string(x.dim()) +
                          " != " + std::to_string(d_a) + "*" + std::to_string(d_b));
    const CMatrix& m = x.matrix();
    if (which == Subsystem::A) {
        CMatrix out = CMatrix::Zero(d_b, d_b);
        for (Index a = 0; a < d_a; ++a) out += m.block(a * d_b, a * d_b, d_b, d_b);
        return HermitianOperator::hermitian_part(out);
    }
    CMatrix out(d_a, d_a);
    for (Index a = 0; a < d_a; ++a)
        for (Index ap = 0; ap < d_a; ++ap) out(a, ap) = m.block(a * d_b, ap * d_b, d_b, d_b).trace();
    return HermitianOperator::hermitian_part(out);
}

HermitianOperator partial_trace_a_weighted(const HermitianOperator& r_ab,
                                           const HermitianOperator& s_a, Index d_a, Index d_b) {
    if (d_a * d_b != r_ab.dim() || s_a.dim() != d_a)
        throw DimMismatch("weighted partial trace over A: dimension mismatch");
    const CMatrix& r = r_ab.matrix();
    const CMatrix& s = s_a.matrix();
    // out(b, b') = sum_{a, a'} R[(a,b),(a',b')] S[a', a]
    CMatrix out = CMatrix::Zero(d_b, d_b);
    for (Index a = 0; a < d_a; ++a)
        for (Index ap = 0; ap < d_a; ++ap) {
            const Complex w = s(ap, a);
            if (w != Complex(0.0, 0.0)) out += w * r.block(a * d_b, ap * d_b, d_b, d_b);
        }
    return HermitianOperator::hermitian_part(out);
}

HermitianOperator partial_trace_b_weighted(const HermitianOperator& r_ab,
                                           const HermitianOperator& t_b, Index d_a, Index d_b) {
    if (d_a * d_b != r_ab.dim() || t_b.dim() != d_b)
        throw DimMismatch("weighted partial trace over B: dimension mismatch");
    const CMatrix& r = r_ab.matrix();
    const CMatrix& t = t_b.matrix();
    // out(a, a') = sum_{b, b'} R[(a,b),(a',b')] T[b', b] = tr[R_{a a'} T]
    CMatrix out(d_a, d_a);
    for (Index a = 0; a < d_a; ++a)
        for (Index ap = 0; ap < d_a; ++ap)
            out(a, ap) = r.block(a * d_b, ap * d_b, d_b, d_b).cwiseProduct(t.transpose()).sum();
    return HermitianOperator::hermitian_part(out);
}

HermitianOperator kron(const HermitianOperator& a, const HermitianOperator& b) {
    const Index da = a.dim();
    const Index db = b.dim();
    CMatrix out(da * db, da * db);
    for (Index i = 0; i < da; ++i)
        for (Index j = 0; j < da; ++j) out.block(i * db, j * db, db, db) = a(i, j) * b.matrix();
    return HermitianOperator::hermitian_part(out);
}

HermitianOperator compress(const HermitianOperator& x, const HermitianOperator& p) {
    if (x.dim() != p.dim()) throw DimMismatch("compress: dimension mismatch");
    return HermitianOperator::hermitian_part(p.matrix() * x.matrix() * p.matrix());
}

double schatten_norm(const RVector& eigenvalues, double p) {
    if (std::isnan(p) || p <= 0.0) throw InvalidExponent("Schatten exponent must be > 0");
    const RVector s = eigenvalues.cwiseAbs();
    const double smax = s.size() > 0 ? s.maxCoeff() : 0.0;
    if (std::isinf(p) || smax == 0.0) return smax;
    double acc = 0.0;
    for (Index i = 0; i < s.size(); ++i)
        if (s(i) > 0.0) acc += std::pow(s(i) / smax, p);
    return smax * std::pow(acc, 1.0 / p);
}

double schatten_norm(const HermitianOperator& x, double p) {
    if (std::isnan(p) || p <= 0.0) throw InvalidExponent("Schatten exponent must be > 0");
    return schatten_norm(eig_hermitian(x).values, p);
}

double min_nonzero_eig(const HermitianOperator& x, SupportCutoff cut) {
    const Eigensystem es = eig_hermitian(x);
    const double thr = kernel_threshold(es.values, cut);
    double best = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < es.values.size(); ++i) {
        const double l = es.values(i);
        if (l > 0.0 && l >= thr) best = std::min(best, l);
    }
    if (std::isinf(best)) throw ZeroOperator("operator has no eigenvalue above the cutoff");
    return best;
}

namespace {

double op_norm(const HermitianOperator& x) { return schatten_norm(x, std::numeric_limits<double>::infinity()); }

}  // namespace

bool is_dominated(const HermitianOperator& x, const HermitianOperator& y, SupportCutoff cut) {
    if (x.dim() != y.dim()) throw DimMismatch("support relation: dimension mismatch");
    const double xn = op_norm(x);
    if (xn == 0.0) return true;
    const double tol = std::max(cut.rel_tol, kRelationTolFloor);
    const HermitianOperator kernel_y = HermitianOperator::identity(y.dim()) - support_projector(y, cut);
    return op_norm(compress(x, kernel_y)) <= tol * xn;
}

bool is_orthogonal(const HermitianOperator& x, const HermitianOperator& y, SupportCutoff cut) {
    if (x.dim() != y.dim()) throw DimMismatch("support relation: dimension mismatch");
    const double xn = op_norm(x);
    if (xn == 0.0) return true;
    const double tol = std::max(cut.rel_tol, kRelationTolFloor);
    return op_norm(compress(x, support_projector(y, cut))) <= tol * xn;
}

SupportRelation support_relation(const HermitianOperator& x, const HermitianOperator& y,
                                 SupportCutoff cut) {
    const bool x_in_y = is_dominated(x, y, cut);
    if (x_in_y && is_dominated(y, x, cut)) return SupportRelation::equal_support;
    if (x_in_y) return SupportRelation::dominated;
    if (is_orthogonal(x, y, cut)) return SupportRelation::orthogonal;
    return SupportRelation::none;
}

const char* to_string(SupportRelation r) {
    switch (r) {
        case SupportRelation::dominated: return "dominated";
        case SupportRelation::equal_support: return "equal_support";
        case SupportRelation::orthogonal: return "orthogonal";
        case SupportRelation::none: return "none";
    }
    return "none";
}

}  // namespace prmi
