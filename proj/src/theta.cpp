#include "thetalab/theta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "thetalab/error.hpp"

namespace thetalab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMachEps = std::numeric_limits<double>::epsilon();

void check_dims(const CVector& z, const RiemannMatrix& tau, const HalfCharacteristic& chr) {
    if (static_cast<std::size_t>(z.size()) != tau.genus() || chr.genus() != tau.genus()) {
        throw InvalidInput("dimension mismatch between z, tau and characteristic");
    }
}

double clamp_eps(double eps_req, bool& clamped) {
    if (!(eps_req > 0.0)) throw InvalidInput("eps_req must be positive");
    if (eps_req < kMinEps) {
        clamped = true;
        return kMinEps;
    }
    return eps_req;
}

// Bound on the tail of the derivative series component: |m_j| is at most
// |T(m-c)|/sqrt(λ) + |c_j|.
double gradient_tail(std::size_t g, double rho, double r, double center_norm) {
    return 2.0 * kPi *
           (gaussian_tail_bound(g, rho, r, 1) / rho + center_norm * gaussian_tail_bound(g, rho, r, 0));
}

// Smallest ellipsoid radius (in the metric of Im τ) meeting the target.
double ellipsoid_radius(const RiemannMatrix& tau, double target, bool with_gradient,
                        double center_norm) {
    const std::size_t g = tau.genus();
    const double rho = std::sqrt(tau.min_eigenvalue());
    auto bound = [&](double r) {
        double b = gaussian_tail_bound(g, rho, r, 0);
        if (with_gradient) b = std::max(b, gradient_tail(g, rho, r, center_norm));
        return b;
    };
    double lo = 1.0;
    if (bound(lo) <= target) return lo;
    const double hi_cap = kRadiusCap * rho;
    double hi = lo;
    while (bound(hi) > target) {
        hi *= 1.5;
        if (hi > hi_cap) {
            if (bound(hi_cap) > target) {
                throw IllConditioned("truncation radius exceeds cap; Im tau too small or target too fine");
            }
            hi = hi_cap;
            break;
        }
    }
    lo = hi / 1.5 < 1.0 ? 1.0 : hi / 1.5;
    for (int it = 0; it < 40 && hi - lo > 1e-3; ++it) {
        const double mid = 0.5 * (lo + hi);
        (bound(mid) <= target ? hi : lo) = mid;
    }
    return hi;
}

struct SeriesResult {
    cplx value{};
    double err = 0.0;
    double log_scale = 0.0;
    std::vector<cplx> gradient;
    std::vector<double> gradient_err;
};

// Sums the scaled series exp(iπ mᵀτm + 2iπ mᵀ(z+δ/2) - π yᵀY⁻¹y) over
// m = n + ε/2 in the ellipsoid |T(m - c)| <= R, c = -Y⁻¹y.
SeriesResult sum_series(const CVector& z, const RiemannMatrix& tau, const HalfCharacteristic& chr,
                        double eps_scaled, double radius_factor, bool with_gradient) {
    const std::size_t g = tau.genus();
    const auto gi = static_cast<Eigen::Index>(g);
    const RVector y = z.imag();
    const RVector x = z.real();
    const RVector center = -tau.imag_inverse() * y;
    const RMatrix& T = tau.cholesky_upper();
    const RMatrix X = tau.real_part();
    const double rho = std::sqrt(tau.min_eigenvalue());

    RVector half_eps(gi), half_delta(gi);
    for (std::size_t i = 0; i < g; ++i) {
        half_eps(static_cast<Eigen::Index>(i)) = 0.5 * chr.eps_bit(i);
        half_delta(static_cast<Eigen::Index>(i)) = 0.5 * chr.delta_bit(i);
    }
    const RVector shift_x = x + half_delta;
    // Lattice offset: n ranges around center - ε/2.
    const RVector n_center = center - half_eps;
    const double center_norm = center.cwiseAbs().maxCoeff();

    SeriesResult out;
    out.log_scale = kPi * y.dot(tau.imag_inverse() * y);

    double radius = ellipsoid_radius(tau, eps_scaled, with_gradient, center_norm) * radius_factor;
    if (radius / rho > kRadiusCap) {
        throw IllConditioned("truncation radius exceeds cap");
    }

    if (with_gradient) {
        out.gradient.assign(g, cplx{});
        out.gradient_err.assign(g, 0.0);
    }

    // Fincke-Pohst style enumeration from the last coordinate down: with
    // v = n - n_center, (Tv)_i = T_ii v_i + Σ_{j>i} T_ij v_j.
    std::vector<long> n(g, 0);
    std::vector<double> budget(g + 1, 0.0);  // remaining squared radius above level i
    std::vector<long> upper(g, 0);
    budget[g] = radius * radius;

    double abs_sum = 0.0;
    double rounding = 0.0;
    std::vector<double> rounding_grad(g, 0.0);
    cplx total{};
    std::vector<cplx> grad(g, cplx{});

    auto row_offset = [&](std::size_t i) {
        double s = 0.0;
        for (std::size_t j = i + 1; j < g; ++j) {
            const auto jj = static_cast<Eigen::Index>(j);
            s += T(static_cast<Eigen::Index>(i), jj) * (static_cast<double>(n[j]) - n_center(jj));
        }
        return s;
    };
    auto set_range = [&](std::size_t i) {
        const auto ii = static_cast<Eigen::Index>(i);
        const double r = std::sqrt(std::max(budget[i + 1], 0.0));
        const double s = row_offset(i);
        const double tii = T(ii, ii);
        const double lo = n_center(ii) + (-r - s) / tii;
        const double hi = n_center(ii) + (r - s) / tii;
        n[i] = static_cast<long>(std::ceil(lo));
        upper[i] = static_cast<long>(std::floor(hi));
    };
    auto level_value = [&](std::size_t i) {
        const auto ii = static_cast<Eigen::Index>(i);
        const double t = T(ii, ii) * (static_cast<double>(n[i]) - n_center(ii)) + row_offset(i);
        return t * t;
    };

    std::vector<double> xs(g * g);
    for (std::size_t i = 0; i < g; ++i) {
        for (std::size_t j = 0; j < g; ++j) {
            xs[i * g + j] = X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    std::vector<double> mv(g);

    auto accumulate = [&]() {
        for (std::size_t i = 0; i < g; ++i) {
            mv[i] = static_cast<double>(n[i]) + half_eps(static_cast<Eigen::Index>(i));
        }
        // |T(m - c)|² from the enumeration budgets.
        const double quad = budget[g] - budget[1] + level_value(0);
        double phase = 0.0;
        for (std::size_t i = 0; i < g; ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < g; ++j) row += xs[i * g + j] * mv[j];
            phase += mv[i] * (row + 2.0 * shift_x(static_cast<Eigen::Index>(i)));
        }
        phase *= kPi;
        const double mag = std::exp(-kPi * quad);
        const cplx term = mag * cplx(std::cos(phase), std::sin(phase));
        total += term;
        abs_sum += mag;
        const double term_round = mag * (4.0 + std::abs(phase)) * kMachEps;
        rounding += term_round;
        if (with_gradient) {
            for (std::size_t j = 0; j < g; ++j) {
                const double factor = 2.0 * kPi * mv[j];
                grad[j] += cplx(0.0, factor) * term;
                rounding_grad[j] += std::abs(factor) * term_round;
            }
        }
    };

    // Iterative depth-first walk over levels g-1 .. 0.
    std::size_t level = g - 1;
    set_range(level);
    while (true) {
        if (n[level] > upper[level]) {
            if (level == g - 1) break;
            ++level;
            ++n[level];
            continue;
        }
        if (level == 0) {
            accumulate();
            ++n[0];
            continue;
        }
        budget[level] = budget[level + 1] - level_value(level);
        --level;
        set_range(level);
    }

    // Accumulated summation error grows with the number of terms only
    // through abs_sum; the per-term factor covers exp/cos/sin evaluation.
    rounding += 2.0 * kMachEps * abs_sum;

    out.value = total;
    out.err = gaussian_tail_bound(g, rho, radius, 0) + rounding;
    if (with_gradient) {
        const double tail = gradient_tail(g, rho, radius, center_norm);
        out.gradient = grad;
        for (std::size_t j = 0; j < g; ++j) out.gradient_err[j] = tail + rounding_grad[j];
    }
    return out;
}

}  // namespace

double gaussian_tail_bound(std::size_t g, double rho, double r, int power) {
    // Packing: at most (1 + 2t/rho)^g lattice points lie within distance t,
    // then integrate by parts against -d/dt(t^p e^{-πt²}) <= 2π t^{p+1} e^{-πt²}.
    const double x = kPi * r * r;
    double total = 0.0;
    for (std::size_t k = 0; k <= g; ++k) {
        const double kp = static_cast<double>(k) + power;
        const double coeff = boost::math::binomial_coefficient<double>(static_cast<unsigned>(g),
                                                                       static_cast<unsigned>(k)) *
                             std::pow(2.0 / rho, static_cast<double>(k)) * std::pow(kPi, -0.5 * kp);
        total += coeff * boost::math::tgamma(0.5 * kp + 1.0, x);
    }
    return total;
}

double truncation_radius(const RiemannMatrix& tau, const RVector& shift, double eps_req) {
    if (static_cast<std::size_t>(shift.size()) != tau.genus()) {
        throw InvalidInput("shift dimension mismatch");
    }
    bool clamped = false;
    eps_req = clamp_eps(eps_req, clamped);
    const double log_scale = kPi * shift.dot(tau.imag_part() * shift);
    const double target = eps_req * std::exp(-log_scale);
    return ellipsoid_radius(tau, target, false, 0.0) / std::sqrt(tau.min_eigenvalue());
}

ThetaValue theta(const CVector& z, const RiemannMatrix& tau, const HalfCharacteristic& chr,
                 double eps_req) {
    return theta(z, tau, chr, ThetaOptions{eps_req, 1.0});
}

ThetaValue theta(const CVector& z, const RiemannMatrix& tau, const HalfCharacteristic& chr,
                 const ThetaOptions& opts) {
    check_dims(z, tau, chr);
    ThetaValue out;
    const double eps = clamp_eps(opts.eps_req, out.eps_clamped);
    const RVector y = z.imag();
    const double log_scale = kPi * y.dot(tau.imag_inverse() * y);
    const double eps_scaled = 0.5 * eps * std::exp(-log_scale);
    const SeriesResult s = sum_series(z, tau, chr, eps_scaled, opts.radius_factor, false);
    const double grow = std::exp(s.log_scale);
    out.value = s.value * grow;
    out.err = s.err * grow;
    if (out.err > eps) out.eps_clamped = true;
    return out;
}

ScaledTheta theta_scaled(const CVector& z, const RiemannMatrix& tau, const HalfCharacteristic& chr,
                         const ThetaOptions& opts) {
    check_dims(z, tau, chr);
    bool clamped = false;
    const double eps = clamp_eps(opts.eps_req, clamped);
    const SeriesResult s = sum_series(z, tau, chr, 0.5 * eps, opts.radius_factor, false);
    return {s.value, s.err, s.log_scale};
}

ScaledThetaJet theta_jet_scaled(const CVector& z, const RiemannMatrix& tau,
                                const HalfCharacteristic& chr, const ThetaOptions& opts) {
    check_dims(z, tau, chr);
    bool clamped = false;
    const double eps = clamp_eps(opts.eps_req, clamped);
    SeriesResult s = sum_series(z, tau, chr, 0.5 * eps, opts.radius_factor, true);
    return {{s.value, s.err, s.log_scale}, std::move(s.gradient), std::move(s.gradient_err)};
}

std::vector<ThetaValue> theta_gradient(const CVector& z, const RiemannMatrix& tau,
                                       const HalfCharacteristic& chr, double eps_req) {
    check_dims(z, tau, chr);
    bool clamped = false;
    const double eps = clamp_eps(eps_req, clamped);
    const RVector y = z.imag();
    const double log_scale = kPi * y.dot(tau.imag_inverse() * y);
    const SeriesResult s = sum_series(z, tau, chr, 0.5 * eps * std::exp(-log_scale), 1.0, true);
    const double grow = std::exp(s.log_scale);
    std::vector<ThetaValue> out(tau.genus());
    for (std::size_t j = 0; j < tau.genus(); ++j) {
        out[j].value = s.gradient[j] * grow;
        out[j].err = s.gradient_err[j] * grow;
        out[j].eps_clamped = clamped || out[j].err > eps;
    }
    return out;
}

std::vector<ThetaValue> second_order_coords(const CVector& z, const RiemannMatrix& tau,
                                            double eps_req) {
    const RiemannMatrix tau2 = tau.doubled();
    const CVector z2 = 2.0 * z;
    const std::size_t g = tau.genus();
    std::vector<ThetaValue> out;
    out.reserve(std::size_t{1} << g);
    for (std::uint32_t e = 0; e < (1U << g); ++e) {
        out.push_back(theta(z2, tau2, HalfCharacteristic(g, e, 0), eps_req));
    }
    return out;
}

ScaledCoords second_order_coords_scaled(const CVector& z, const RiemannMatrix& tau,
                                        double eps_req) {
    const RiemannMatrix tau2 = tau.doubled();
    const CVector z2 = 2.0 * z;
    const std::size_t g = tau.genus();
    ScaledCoords out;
    for (std::uint32_t e = 0; e < (1U << g); ++e) {
        const ScaledTheta s = theta_scaled(z2, tau2, HalfCharacteristic(g, e, 0), {eps_req, 1.0});
        out.values.push_back(s.value);
        out.errs.push_back(s.err);
        out.log_scale = s.log_scale;
    }
    return out;
}

double theta_constant_scale(const RiemannMatrix& tau, double eps_req) {
    const std::size_t g = tau.genus();
    const CVector zero = CVector::Zero(static_cast<Eigen::Index>(g));
    double best = 0.0;
    for (std::uint32_t e = 0; e < (1U << g); ++e) {
        for (std::uint32_t d = 0; d < (1U << g); ++d) {
            best = std::max(best, std::abs(theta(zero, tau, HalfCharacteristic(g, e, d), eps_req).value));
        }
    }
    return best;
}

}  // namespace thetalab
