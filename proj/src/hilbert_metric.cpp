#include "prmi/hilbert_metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace prmi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_zero(const HermitianOperator& x) { return x.max_abs_entry() == 0.0; }

bool is_zero(std::span<const double> p) {
    return std::all_of(p.begin(), p.end(), [](double v) { return v == 0.0; });
}

ProjectiveDistance log_product(double m_xy, double m_yx) {
    // M(X/Y) M(Y/X) >= 1 exactly; round-off may push the product just below.
    return ProjectiveDistance(std::max(0.0, std::log(m_xy * m_yx)));
}

}  // namespace

ExtendedReal m_ratio(const HermitianOperator& x, const HermitianOperator& y, SupportCutoff cut) {
    if (x.dim() != y.dim()) throw DimMismatch("m_ratio: dimension mismatch");
    if (is_zero(y)) throw ZeroOperator("m_ratio: Y = 0");
    if (!is_dominated(x, y, cut)) return ExtendedReal::infinity();
    const Eigensystem ey = eig_hermitian(y);
    const HermitianOperator inv_sqrt = power_on_support(ey, -0.5, cut);
    const HermitianOperator xc = compress(x, power_on_support(ey, 0.0, cut));
    const HermitianOperator w =
        HermitianOperator::hermitian_part(inv_sqrt.matrix() * xc.matrix() * inv_sqrt.matrix());
    return ExtendedReal(schatten_norm(w, kInf));
}

ProjectiveDistance d_h(const HermitianOperator& x, const HermitianOperator& y, SupportCutoff cut) {
    if (x.dim() != y.dim()) throw DimMismatch("d_h: dimension mismatch");
    const bool xz = is_zero(x);
    const bool yz = is_zero(y);
    if (xz && yz) return ProjectiveDistance(0.0);
    if (xz || yz) return ProjectiveDistance::infinity();
    if (support_relation(x, y, cut) != SupportRelation::equal_support)
        return ProjectiveDistance::infinity();
    return log_product(m_ratio(x, y, cut).value(), m_ratio(y, x, cut).value());
}

ExtendedReal m_ratio(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw DimMismatch("m_ratio: length mismatch");
    if (is_zero(q)) throw ZeroOperator("m_ratio: Q = 0");
    double best = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (q[i] == 0.0) {
            if (p[i] != 0.0) return ExtendedReal::infinity();
            continue;
        }
        best = std::max(best, p[i] / q[i]);
    }
    return ExtendedReal(best);
}

ProjectiveDistance d_h(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw DimMismatch("d_h: length mismatch");
    const bool pz = is_zero(p);
    const bool qz = is_zero(q);
    if (pz && qz) return ProjectiveDistance(0.0);
    if (pz || qz) return ProjectiveDistance::infinity();
    const ExtendedReal a = m_ratio(p, q);
    const ExtendedReal b = m_ratio(q, p);
    if (a.is_infinite() || b.is_infinite()) return ProjectiveDistance::infinity();
    return log_product(a.value(), b.value());
}

double d_h_bound_from_spectra(const HermitianOperator& sigma, const HermitianOperator& tau,
                              SupportCutoff cut) {
    if (support_relation(sigma, tau, cut) != SupportRelation::equal_support)
        throw SupportMismatch("d_h_bound_from_spectra requires sigma ~ tau");
    const double m = std::min(min_nonzero_eig(sigma, cut), min_nonzero_eig(tau, cut));
    return -2.0 * std::log(m);
}

double tensor_additivity_residual(const HermitianOperator& x_a, const HermitianOperator& y_a,
                                  const HermitianOperator& x_b, const HermitianOperator& y_b,
                                  SupportCutoff cut) {
    const ProjectiveDistance joint = d_h(kron(x_a, x_b), kron(y_a, y_b), cut);
    const ProjectiveDistance da = d_h(x_a, y_a, cut);
    const ProjectiveDistance db = d_h(x_b, y_b, cut);
    const bool parts_inf = da.is_infinite() || db.is_infinite();
    if (joint.is_infinite() && parts_inf) return 0.0;
    if (joint.is_infinite() || parts_inf) return kInf;
    return std::abs(joint.value() - da.value() - db.value());
}

}  // namespace prmi
