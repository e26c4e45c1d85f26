#include "thetalab/divisor.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "thetalab/error.hpp"
#include "thetalab/kernels.hpp"

namespace thetalab {

void Thresholds::validate() const {
    if (!(on > 0.0) || !(off > on)) {
        throw InvalidInput("thresholds must satisfy 0 < on < off");
    }
    if (!(eps_req > 0.0)) throw InvalidInput("eps_req must be positive");
}

const char* to_string(Membership m) {
    switch (m) {
        case Membership::On: return "on";
        case Membership::Off: return "off";
        case Membership::Uncertain: return "uncertain";
    }
    return "?";
}

MembershipVerdict verdict_from_residual(double residual, const Thresholds& th) {
    MembershipVerdict v;
    v.residual = residual;
    if (residual < th.on) {
        v.state = Membership::On;
    } else if (residual > th.off) {
        v.state = Membership::Off;
    } else {
        v.state = Membership::Uncertain;
    }
    return v;
}

ThetaDivisor::ThetaDivisor(RiemannMatrix tau, Thresholds th) : tau_(std::move(tau)), th_(th) {
    th_.validate();
    constants_ = kernels::theta_constants_parallel(tau_, th_.eps_req);
    for (const auto& c : constants_) scale_ = std::max(scale_, std::abs(c.value));
}

namespace {

MembershipVerdict classify_point(const ThetaDivisor& divisor, const CVector& a, const TorsionPoint& x) {
    const CVector z = x.to_complex(divisor.tau()) + a;
    const ScaledTheta t = theta_scaled(z, divisor.tau(), HalfCharacteristic::zero(divisor.genus()),
                                       {divisor.thresholds().eps_req, 1.0});
    return verdict_from_residual(std::abs(t.value) / divisor.scale(), divisor.thresholds());
}

void check_translate(const ThetaDivisor& divisor, const CVector& a) {
    if (static_cast<std::size_t>(a.size()) != divisor.genus()) {
        throw InvalidInput("translate has wrong dimension");
    }
    if (!a.allFinite()) throw InvalidInput("translate has non-finite entries");
}

}  // namespace

MembershipVerdict classify(const ThetaDivisor& divisor, const CVector& a, const TorsionPoint& x) {
    check_translate(divisor, a);
    return classify_point(divisor, a, x);
}

MembershipVerdict classify(const RiemannMatrix& tau, const CVector& a, const TorsionPoint& x,
                           const Thresholds& th) {
    return classify(ThetaDivisor(tau, th), a, x);
}

MembershipVerdict classify_by_constant(const ThetaDivisor& divisor, const TorsionPoint& x) {
    const double r = std::abs(divisor.constants().at(x.index()).value) / divisor.scale();
    return verdict_from_residual(r, divisor.thresholds());
}

std::vector<TorsionPoint> CountReport::on_points() const {
    std::vector<TorsionPoint> out;
    for (std::size_t i = 0; i < verdicts.size(); ++i) {
        if (verdicts[i].state == Membership::On) {
            out.push_back(TorsionPoint::from_index(g, static_cast<std::uint32_t>(i)));
        }
    }
    return out;
}

long general_bound(std::size_t g) { return (1L << (2 * g)) - (1L << g); }

long nonsymmetric_bound(std::size_t g) {
    return (1L << (2 * g)) - static_cast<long>(g + 1) * (1L << g);
}

CountReport count_on_translate(const ThetaDivisor& divisor, const CVector& a, bool parallel) {
    check_translate(divisor, a);
    const std::size_t g = divisor.genus();
    CountReport report;
    report.g = g;
    report.tau = divisor.tau().entries();
    report.translate = a;
    report.bound_thm1 = general_bound(g);
    report.bound_thm2 = nonsymmetric_bound(g);

    const std::size_t total = std::size_t{1} << (2 * g);
    report.verdicts.resize(total);
    auto body = [&](std::size_t i) {
        report.verdicts[i] =
            classify_point(divisor, a, TorsionPoint::from_index(g, static_cast<std::uint32_t>(i)));
    };
    if (parallel) {
        kernels::parallel_for(total, body);
    } else {
        for (std::size_t i = 0; i < total; ++i) body(i);
    }

    for (const auto& v : report.verdicts) {
        switch (v.state) {
            case Membership::On: ++report.n_on; break;
            case Membership::Off: ++report.n_off; break;
            case Membership::Uncertain: ++report.n_uncertain; break;
        }
    }
    const auto on = report.on_points();
    report.hyperplane_rank = on.empty() ? 0 : numerical_rank(second_order_matrix(divisor.tau(), on,
                                                                                 divisor.thresholds().eps_req));
    if (report.n_uncertain > 0) {
        report.notes = std::to_string(report.n_uncertain) + " torsion point(s) in the uncertain band";
    }
    return report;
}

bool symmetry_crosscheck(const ThetaDivisor& divisor, const CVector& a, const TorsionPoint& x) {
    const auto plus = classify(divisor, a, x);
    const auto minus = classify(divisor, CVector(-a), x);
    if (plus.state == Membership::Uncertain || minus.state == Membership::Uncertain) return true;
    return plus.state == minus.state;
}

double singular_ratio(const CMatrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<CMatrix> svd(m);
    const auto& s = svd.singularValues();
    if (s(0) == 0.0) return 0.0;
    return s(s.size() - 1) / s(0);
}

std::size_t numerical_rank(const CMatrix& m, double rel_tol) {
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<CMatrix> svd(m);
    const auto& s = svd.singularValues();
    if (s(0) == 0.0) return 0;
    std::size_t rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) > rel_tol * s(0)) ++rank;
    }
    return rank;
}

CMatrix second_order_matrix(const RiemannMatrix& tau, std::span<const TorsionPoint> points,
                            double eps_req) {
    std::vector<CVector> zs;
    zs.reserve(points.size());
    for (const auto& p : points) zs.push_back(p.to_complex(tau));
    const auto coords = kernels::second_order_batch_parallel(zs, tau, eps_req);
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << tau.genus());
    CMatrix m(static_cast<Eigen::Index>(points.size()), dim);
    for (std::size_t r = 0; r < coords.size(); ++r) {
        double norm = 0.0;
        for (const auto& c : coords[r].values) norm += std::norm(c);
        norm = std::sqrt(norm);
        for (Eigen::Index c = 0; c < dim; ++c) {
            m(static_cast<Eigen::Index>(r), c) = coords[r].values[static_cast<std::size_t>(c)] / norm;
        }
    }
    return m;
}

SpanningResult spanning_check(const RiemannMatrix& tau, std::uint32_t b_bits, double eps_req) {
    const auto points = coset(tau.genus(), b_bits);
    SpanningResult out;
    out.min_singular_ratio = singular_ratio(second_order_matrix(tau, points, eps_req));
    out.pass = out.min_singular_ratio > 1e-6;
    return out;
}

HyperplaneResult hyperplane_check(const ThetaDivisor& divisor, const CVector& a,
                                  std::span<const TorsionPoint> on_points) {
    check_translate(divisor, a);
    HyperplaneResult out;
    if (on_points.empty()) return out;
    const double eps = divisor.thresholds().eps_req;
    // Theorem of the Square: the coefficients of the hyperplane are Θ[ε](a).
    const ScaledCoords coeff = second_order_coords_scaled(a, divisor.tau(), eps);
    const double s2 = divisor.scale() * divisor.scale();
    for (const auto& x : on_points) {
        const ScaledCoords cx = second_order_coords_scaled(x.to_complex(divisor.tau()), divisor.tau(), eps);
        cplx sum{};
        for (std::size_t e = 0; e < cx.values.size(); ++e) sum += coeff.values[e] * cx.values[e];
        out.max_violation = std::max(out.max_violation, std::abs(sum) / s2);
    }
    out.rank = numerical_rank(second_order_matrix(divisor.tau(), on_points, eps));
    return out;
}

PlaneResult plane_check(const ThetaDivisor& divisor, const CVector& a,
                        std::span<const TorsionPoint> on_points) {
    check_translate(divisor, a);
    const std::size_t g = divisor.genus();
    const double eps = divisor.thresholds().eps_req;
    const double s = divisor.scale();
    PlaneResult out;
    const HalfCharacteristic zero = HalfCharacteristic::zero(g);
    for (const auto& x : on_points) {
        const CVector xz = x.to_complex(divisor.tau());
        const ScaledThetaJet plus = theta_jet_scaled(CVector(xz + a), divisor.tau(), zero, {eps, 1.0});
        const ScaledThetaJet minus = theta_jet_scaled(CVector(xz - a), divisor.tau(), zero, {eps, 1.0});
        const cplx tp = plus.value.value;
        const cplx tm = minus.value.value;
        out.max_factor_residual = std::max({out.max_factor_residual, std::abs(tp) / s, std::abs(tm) / s});
        double worst = std::abs(tp * tm);
        for (std::size_t j = 0; j < g; ++j) {
            worst = std::max(worst, std::abs(plus.gradient[j] * tm - tp * minus.gradient[j]));
        }
        out.max_section_residual = std::max(out.max_section_residual, worst / (s * s));
    }
    out.rank = on_points.empty() ? 0 : numerical_rank(second_order_matrix(divisor.tau(), on_points, eps));
    const long limit = (1L << g) - static_cast<long>(g) - 1;
    out.pass = static_cast<long>(out.rank) <= limit;
    return out;
}

double addition_formula_residual(const RiemannMatrix& tau, const CVector& z, const CVector& w,
                                 double eps_req) {
    const HalfCharacteristic zero = HalfCharacteristic::zero(tau.genus());
    const cplx lhs = theta(CVector(z + w), tau, zero, eps_req).value * theta(CVector(z - w), tau, zero, eps_req).value;
    const auto cz = second_order_coords(z, tau, eps_req);
    const auto cw = second_order_coords(w, tau, eps_req);
    cplx rhs{};
    for (std::size_t e = 0; e < cz.size(); ++e) rhs += cz[e].value * cw[e].value;
    return std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
}

BoundsVerdict verify_bounds(const CountReport& report, bool symmetric, bool irreducible) {
    BoundsVerdict v;
    const auto on = static_cast<long>(report.n_on);
    const auto worst = static_cast<long>(report.n_on + report.n_uncertain);
    v.general_ok = on <= report.bound_thm1;
    v.nonsymmetric_applies = !symmetric && irreducible;
    bool sound = worst <= report.bound_thm1;
    if (v.nonsymmetric_applies) {
        v.nonsymmetric_ok = on <= report.bound_thm2;
        sound = sound && worst <= report.bound_thm2;
    }
    v.sound = sound && v.pass();
    return v;
}

}  // namespace thetalab
