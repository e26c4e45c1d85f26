#include "thetalab/kernels.hpp"

namespace thetalab::kernels {

namespace {

CVector origin(const RiemannMatrix& tau) {
    return CVector::Zero(static_cast<Eigen::Index>(tau.genus()));
}

std::size_t characteristic_count(const RiemannMatrix& tau) {
    return std::size_t{1} << (2 * tau.genus());
}

HalfCharacteristic characteristic_at(const RiemannMatrix& tau, std::size_t index) {
    const std::size_t g = tau.genus();
    const auto idx = static_cast<std::uint32_t>(index);
    return {g, idx >> g, idx & ((1U << g) - 1U)};
}

}  // namespace

std::vector<ScaledTheta> theta_batch_serial(std::span<const CVector> points,
                                            const RiemannMatrix& tau,
                                            const HalfCharacteristic& chr,
                                            const ThetaOptions& opts) {
    std::vector<ScaledTheta> out(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) out[i] = theta_scaled(points[i], tau, chr, opts);
    return out;
}

std::vector<ScaledTheta> theta_batch_parallel(std::span<const CVector> points,
                                              const RiemannMatrix& tau,
                                              const HalfCharacteristic& chr,
                                              const ThetaOptions& opts) {
    std::vector<ScaledTheta> out(points.size());
    parallel_for(points.size(), [&](std::size_t i) { out[i] = theta_scaled(points[i], tau, chr, opts); });
    return out;
}

std::vector<ScaledTheta> theta_constants_serial(const RiemannMatrix& tau, double eps_req) {
    const CVector zero = origin(tau);
    std::vector<ScaledTheta> out(characteristic_count(tau));
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = theta_scaled(zero, tau, characteristic_at(tau, i), {eps_req, 1.0});
    }
    return out;
}

std::vector<ScaledTheta> theta_constants_parallel(const RiemannMatrix& tau, double eps_req) {
    const CVector zero = origin(tau);
    std::vector<ScaledTheta> out(characteristic_count(tau));
    parallel_for(out.size(), [&](std::size_t i) {
        out[i] = theta_scaled(zero, tau, characteristic_at(tau, i), {eps_req, 1.0});
    });
    return out;
}

std::vector<ScaledCoords> second_order_batch_serial(std::span<const CVector> points,
                                                    const RiemannMatrix& tau, double eps_req) {
    std::vector<ScaledCoords> out(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        out[i] = second_order_coords_scaled(points[i], tau, eps_req);
    }
    return out;
}

std::vector<ScaledCoords> second_order_batch_parallel(std::span<const CVector> points,
                                                      const RiemannMatrix& tau, double eps_req) {
    std::vector<ScaledCoords> out(points.size());
    parallel_for(points.size(),
                 [&](std::size_t i) { out[i] = second_order_coords_scaled(points[i], tau, eps_req); });
    return out;
}

}  // namespace thetalab::kernels
