#pragma once

#include <vector>

#include "thetalab/characteristic.hpp"
#include "thetalab/riemann_matrix.hpp"

namespace thetalab {

/// Hard cap on the truncation radius, in lattice units.
inline constexpr double kRadiusCap = 60.0;
/// Smallest accepted accuracy target; requests below are clamped.
inline constexpr double kMinEps = 1e-13;

/// A theta value with an absolute error bound covering both the omitted
/// series tail and floating-point accumulation.
struct ThetaValue {
    cplx value{};
    double err = 0.0;
    /// Set when the request was clamped to kMinEps or rounding kept err
    /// above the requested target.
    bool eps_clamped = false;
};

/// A theta value with its Gaussian growth factor split off:
/// θ = value · exp(log_scale), where log_scale = π yᵀ(Im τ)⁻¹y, y = Im z.
/// |value| is invariant under lattice translation of z.
struct ScaledTheta {
    cplx value{};
    double err = 0.0;
    double log_scale = 0.0;
};

struct ThetaOptions {
    double eps_req = 1e-12;
    /// Multiplies the ellipsoid radius chosen from the tail bound.
    double radius_factor = 1.0;
};

/// θ[ε;δ](z,τ) = Σ_n exp(iπ(n+ε/2)ᵀτ(n+ε/2) + 2iπ(n+ε/2)ᵀ(z+δ/2)).
ThetaValue theta(const CVector& z, const RiemannMatrix& tau, const HalfCharacteristic& chr,
                 double eps_req = 1e-12);
ThetaValue theta(const CVector& z, const RiemannMatrix& tau, const HalfCharacteristic& chr,
                 const ThetaOptions& opts);

/// Same series with exp(π yᵀ(Im τ)⁻¹y) factored out; eps applies to the
/// scaled value.
ScaledTheta theta_scaled(const CVector& z, const RiemannMatrix& tau,
                         const HalfCharacteristic& chr, const ThetaOptions& opts = {});

/// ∂θ/∂z_j for j = 0..g-1, by termwise differentiation.
std::vector<ThetaValue> theta_gradient(const CVector& z, const RiemannMatrix& tau,
                                       const HalfCharacteristic& chr, double eps_req = 1e-12);

/// Value and gradient sharing one summation; both scaled by exp(-log_scale).
struct ScaledThetaJet {
    ScaledTheta value;
    std::vector<cplx> gradient;
    std::vector<double> gradient_err;
};
ScaledThetaJet theta_jet_scaled(const CVector& z, const RiemannMatrix& tau,
                                const HalfCharacteristic& chr, const ThetaOptions& opts = {});

/// Second-order theta coordinates Θ[ε](z) = θ[ε;0](2z, 2τ), ε indexed by
/// its bitmask. These are homogeneous coordinates of the |2Θ| map.
std::vector<ThetaValue> second_order_coords(const CVector& z, const RiemannMatrix& tau,
                                            double eps_req = 1e-12);

/// Second-order coordinates with their common growth factor removed, i.e.
/// the same projective point with moderate magnitudes.
struct ScaledCoords {
    std::vector<cplx> values;
    std::vector<double> errs;
    double log_scale = 0.0;
};
ScaledCoords second_order_coords_scaled(const CVector& z, const RiemannMatrix& tau,
                                        double eps_req = 1e-12);

/// Truncation radius in lattice units for the series centred at -shift,
/// where shift = (Im τ)⁻¹ Im z. The full-value tail is bounded by eps_req.
/// Throws IllConditioned when the radius exceeds kRadiusCap.
double truncation_radius(const RiemannMatrix& tau, const RVector& shift, double eps_req);

/// S(τ) = max over all 4^g characteristics of |θ[ε;δ](0,τ)|.
double theta_constant_scale(const RiemannMatrix& tau, double eps_req = 1e-12);

/// Rigorous bound on Σ_{v ∈ L+s, |v| ≥ r} |v|^power · exp(-π|v|²) for a
/// shifted lattice L in R^g whose minimum distance is at least rho.
double gaussian_tail_bound(std::size_t g, double rho, double r, int power);

}  // namespace thetalab
