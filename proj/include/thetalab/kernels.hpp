#pragma once

// Batched theta evaluation. Every batch kernel exists twice: a plain serial
// loop kept as the reference, and an OpenMP version that distributes
// independent evaluations over threads. Each element is computed by the same
// scalar routine in both, so results agree bit for bit.

#include <cstddef>
#include <exception>
#include <span>
#include <vector>

#include "thetalab/theta.hpp"

namespace thetalab::kernels {

std::vector<ScaledTheta> theta_batch_serial(std::span<const CVector> points,
                                            const RiemannMatrix& tau,
                                            const HalfCharacteristic& chr,
                                            const ThetaOptions& opts = {});
std::vector<ScaledTheta> theta_batch_parallel(std::span<const CVector> points,
                                              const RiemannMatrix& tau,
                                              const HalfCharacteristic& chr,
                                              const ThetaOptions& opts = {});

/// θ[ε;δ](0,τ) for all 4^g characteristics, indexed by torsion index (ε<<g | δ).
std::vector<ScaledTheta> theta_constants_serial(const RiemannMatrix& tau, double eps_req = 1e-12);
std::vector<ScaledTheta> theta_constants_parallel(const RiemannMatrix& tau, double eps_req = 1e-12);

std::vector<ScaledCoords> second_order_batch_serial(std::span<const CVector> points,
                                                    const RiemannMatrix& tau,
                                                    double eps_req = 1e-12);
std::vector<ScaledCoords> second_order_batch_parallel(std::span<const CVector> points,
                                                      const RiemannMatrix& tau,
                                                      double eps_req = 1e-12);

/// Runs body(i) for i in [0, n) across OpenMP threads. The first exception
/// thrown by any iteration is rethrown on the calling thread.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
    std::exception_ptr failure;
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(thetalab_parallel_for)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace thetalab::kernels
