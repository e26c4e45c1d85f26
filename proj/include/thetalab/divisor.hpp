#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "thetalab/riemann_matrix.hpp"
#include "thetalab/theta.hpp"
#include "thetalab/torsion.hpp"

namespace thetalab {

/// Residual cut-offs for membership, relative to S(τ).
struct Thresholds {
    double on = 1e-8;
    double off = 1e-5;
    double eps_req = 1e-12;

    void validate() const;
};

enum class Membership { On, Off, Uncertain };

const char* to_string(Membership m);

struct MembershipVerdict {
    Membership state = Membership::Uncertain;
    /// |θ(x + a)| with its Gaussian growth factor removed, divided by S(τ).
    double residual = 0.0;
};

/// Maps a normalized residual to On/Off/Uncertain.
MembershipVerdict verdict_from_residual(double residual, const Thresholds& th);

/// The symmetric theta divisor of τ together with its normalizing scale S(τ).
class ThetaDivisor {
public:
    explicit ThetaDivisor(RiemannMatrix tau, Thresholds th = {});

    const RiemannMatrix& tau() const { return tau_; }
    std::size_t genus() const { return tau_.genus(); }
    const Thresholds& thresholds() const { return th_; }
    /// max over characteristics of |θ[ε;δ](0,τ)|.
    double scale() const { return scale_; }
    /// θ[ε;δ](0,τ) indexed by torsion index.
    const std::vector<ScaledTheta>& constants() const { return constants_; }

private:
    RiemannMatrix tau_;
    Thresholds th_;
    std::vector<ScaledTheta> constants_;
    double scale_ = 0.0;
};

/// Is x on t_a*Θ = {z : θ(z + a) = 0}?
MembershipVerdict classify(const ThetaDivisor& divisor, const CVector& a, const TorsionPoint& x);
MembershipVerdict classify(const RiemannMatrix& tau, const CVector& a, const TorsionPoint& x,
                           const Thresholds& th = {});

/// Classification of x(ε,δ) through the theta constant θ[ε;δ](0,τ).
MembershipVerdict classify_by_constant(const ThetaDivisor& divisor, const TorsionPoint& x);

struct CountReport {
    std::size_t g = 0;
    CMatrix tau;
    std::string family = "explicit";
    std::uint64_t seed = 0;
    CVector translate;
    std::string translate_kind = "explicit";
    long translate_index = -1;

    std::vector<MembershipVerdict> verdicts;  // by torsion index
    std::size_t n_on = 0;
    std::size_t n_off = 0;
    std::size_t n_uncertain = 0;
    long bound_thm1 = 0;  // 4^g - 2^g
    long bound_thm2 = 0;  // 4^g - (g+1) 2^g
    std::size_t hyperplane_rank = 0;
    std::string notes;

    std::vector<TorsionPoint> on_points() const;
};

long general_bound(std::size_t g);
long nonsymmetric_bound(std::size_t g);

/// Classifies all 4^g torsion points against t_a*Θ. The parallel and serial
/// paths produce identical reports.
CountReport count_on_translate(const ThetaDivisor& divisor, const CVector& a, bool parallel = true);

/// Agreement of the states for a and -a (always true when either is Uncertain).
bool symmetry_crosscheck(const ThetaDivisor& divisor, const CVector& a, const TorsionPoint& x);

/// σ_min / σ_max (0 for an empty matrix).
double singular_ratio(const CMatrix& m);
/// Number of singular values above rel_tol · σ_max.
std::size_t numerical_rank(const CMatrix& m, double rel_tol = 1e-8);

/// Rows are the unit-normalized second-order coordinates of the given points.
CMatrix second_order_matrix(const RiemannMatrix& tau, std::span<const TorsionPoint> points,
                            double eps_req = 1e-12);

struct SpanningResult {
    double min_singular_ratio = 0.0;
    bool pass = false;
};

/// Do the images of the coset H_b span P^{2^g - 1}?
SpanningResult spanning_check(const RiemannMatrix& tau, std::uint32_t b_bits, double eps_req = 1e-12);

struct HyperplaneResult {
    /// max over points of |Σ_ε Θ[ε](a)Θ[ε](x)| / S(τ)², growth factors removed.
    double max_violation = 0.0;
    std::size_t rank = 0;
};

HyperplaneResult hyperplane_check(const ThetaDivisor& divisor, const CVector& a,
                                  std::span<const TorsionPoint> on_points);

struct PlaneResult {
    /// max over points and the g+1 sections of |F_k(x)| / S(τ)².
    double max_section_residual = 0.0;
    /// max over points of |θ(x ± a)| / S(τ), growth factors removed.
    double max_factor_residual = 0.0;
    std::size_t rank = 0;
    /// rank <= 2^g - g - 1.
    bool pass = false;
};

/// Evaluates F_0 = θ(x+a)θ(x-a) and F_j = ∂_jθ(x+a)θ(x-a) - θ(x+a)∂_jθ(x-a)
/// at each point. Meaningful when Θ is irreducible and t_a*Θ is not
/// symmetric; diagnostics are returned regardless.
PlaneResult plane_check(const ThetaDivisor& divisor, const CVector& a,
                        std::span<const TorsionPoint> on_points);

/// |θ(z+w)θ(z-w) - Σ_ε Θ[ε](z)Θ[ε](w)| / (1 + |θ(z+w)θ(z-w)|).
double addition_formula_residual(const RiemannMatrix& tau, const CVector& z, const CVector& w,
                                 double eps_req = 1e-12);

struct BoundsVerdict {
    bool general_ok = false;
    bool nonsymmetric_applies = false;
    bool nonsymmetric_ok = true;
    /// Also holds with every Uncertain point counted as On.
    bool sound = false;

    bool pass() const { return general_ok && nonsymmetric_ok; }
};

BoundsVerdict verify_bounds(const CountReport& report, bool symmetric, bool irreducible);

}  // namespace thetalab
