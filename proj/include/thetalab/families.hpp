#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "thetalab/divisor.hpp"
#include "thetalab/riemann_matrix.hpp"
#include "thetalab/torsion.hpp"

namespace thetalab {

enum class FamilyKind { Random, Product, File };

struct FamilySpec {
    FamilyKind kind = FamilyKind::Random;
    std::size_t g = 2;
    std::uint64_t seed = 0;
    double min_eig = 0.2;      // Random
    std::vector<cplx> taus;    // Product
    std::string path;          // File
};

const char* to_string(FamilyKind kind);

/// τ = X + iY with X symmetric, entries uniform in [-1/2, 1/2], and
/// Y = BBᵀ/(2g) + I/2 for Gaussian B, rescaled if needed so that its
/// smallest eigenvalue is at least min_eig. Deterministic in the seed.
RiemannMatrix random_siegel(std::size_t g, std::uint64_t seed, double min_eig = 0.2);

/// diag(τ_1, ..., τ_g); each Im τ_i must be at least 0.2.
RiemannMatrix product_tau(const std::vector<cplx>& taus);

/// Elliptic factors τ_k = x_k + i y_k with x_k uniform in [-1/2,1/2] and
/// y_k uniform in [0.8, 1.6], deterministic in the seed.
std::vector<cplx> random_elliptic_factors(std::size_t g, std::uint64_t seed);

/// Torsion points lying on t_s*Θ for a product of elliptic curves, where s
/// is the torsion translate (zero when absent). x(ε,δ) + s lies on Θ iff
/// some factor carries the odd characteristic (1,1).
std::vector<TorsionPoint> product_oracle(std::size_t g,
                                         std::optional<HalfCharacteristic> shift = std::nullopt);

struct ThetaZero {
    CVector w;
    double residual = 0.0;  // |θ(w)| (growth factor removed) / S(τ)
    int iterations = 0;
    int restarts = 0;
    std::vector<double> history;  // residuals of the accepted Newton steps
};

/// A point w with |θ(w,τ)| <= 1e-10 S(τ), by damped Newton iteration along
/// a random complex line. The result is reduced into the fundamental
/// parallelogram. Throws NoConvergence after 20 restarts of 200 steps.
ThetaZero find_on_theta(const ThetaDivisor& divisor, std::uint64_t seed);

RiemannMatrix make_tau(const FamilySpec& spec);

/// {"g": int, "re": [[...]], "im": [[...]]}, row-major.
RiemannMatrix load_tau_file(const std::string& path);
RiemannMatrix parse_tau_json(const std::string& text);
std::string tau_to_json(const RiemannMatrix& tau);
void save_tau_file(const RiemannMatrix& tau, const std::string& path);

/// Reduces z modulo Z^g + τZ^g so that (Im τ)⁻¹Im z and Re z lie in [-1/2, 1/2).
CVector reduce_mod_lattice(const CVector& z, const RiemannMatrix& tau);

}  // namespace thetalab
