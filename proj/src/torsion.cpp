#include "thetalab/torsion.hpp"

#include <algorithm>
#include <bit>

#include "thetalab/error.hpp"

namespace thetalab {

TorsionPoint TorsionPoint::from_index(std::size_t g, std::uint32_t index) {
    if (g == 0 || g > kMaxGenus) throw InvalidInput("genus out of range");
    if (index >= (std::uint32_t{1} << (2 * g))) {
        throw InvalidInput("torsion index " + std::to_string(index) + " out of range for g=" +
                           std::to_string(g));
    }
    const std::uint32_t mask = (1U << g) - 1U;
    return TorsionPoint(HalfCharacteristic(g, index >> g, index & mask));
}

CVector TorsionPoint::to_complex(const RiemannMatrix& tau) const {
    const std::size_t g = genus();
    if (tau.genus() != g) throw InvalidInput("torsion point and period matrix dimensions differ");
    CVector eps(static_cast<Eigen::Index>(g));
    CVector delta(static_cast<Eigen::Index>(g));
    for (std::size_t i = 0; i < g; ++i) {
        eps(static_cast<Eigen::Index>(i)) = chr_.eps_bit(i);
        delta(static_cast<Eigen::Index>(i)) = chr_.delta_bit(i);
    }
    return 0.5 * (tau.entries() * eps + delta);
}

int pairing(const TorsionPoint& x, const TorsionPoint& y) {
    if (x.genus() != y.genus()) throw InvalidInput("pairing of points with different genus");
    const auto& p = x.characteristic();
    const auto& q = y.characteristic();
    return (std::popcount(p.eps() & q.delta()) + std::popcount(q.eps() & p.delta())) & 1;
}

SymplecticBasis standard_basis(std::size_t g) {
    SymplecticBasis basis;
    for (std::size_t i = 0; i < g; ++i) {
        basis.a.emplace_back(HalfCharacteristic(g, 1U << i, 0));
        basis.b.emplace_back(HalfCharacteristic(g, 0, 1U << i));
    }
    return basis;
}

std::vector<std::vector<int>> gram_matrix(const SymplecticBasis& basis) {
    std::vector<TorsionPoint> gens = basis.a;
    gens.insert(gens.end(), basis.b.begin(), basis.b.end());
    std::vector<std::vector<int>> gram(gens.size(), std::vector<int>(gens.size(), 0));
    for (std::size_t i = 0; i < gens.size(); ++i) {
        for (std::size_t j = 0; j < gens.size(); ++j) gram[i][j] = pairing(gens[i], gens[j]);
    }
    return gram;
}

std::vector<TorsionPoint> all_torsion_points(std::size_t g) {
    if (g == 0 || g > kMaxGenus) throw InvalidInput("genus out of range");
    const std::uint32_t count = std::uint32_t{1} << (2 * g);
    std::vector<TorsionPoint> out;
    out.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) out.push_back(TorsionPoint::from_index(g, i));
    return out;
}

std::vector<TorsionPoint> coset(std::size_t g, std::uint32_t b_bits) {
    if (g == 0 || g > kMaxGenus) throw InvalidInput("genus out of range");
    if (b_bits >= (1U << g)) throw InvalidInput("coset label exceeds dimension");
    std::vector<TorsionPoint> out;
    out.reserve(std::size_t{1} << g);
    for (std::uint32_t e = 0; e < (1U << g); ++e) {
        out.emplace_back(HalfCharacteristic(g, e, b_bits));
    }
    return out;
}

std::vector<TorsionPoint> coset(std::span<const int> b_bits) {
    std::uint32_t b = 0;
    for (std::size_t i = 0; i < b_bits.size(); ++i) {
        if (b_bits[i] != 0 && b_bits[i] != 1) throw InvalidInput("coset bits must be 0 or 1");
        b |= static_cast<std::uint32_t>(b_bits[i]) << i;
    }
    return coset(b_bits.size(), b);
}

std::size_t largest_coset_intersection(std::size_t g, std::span<const TorsionPoint> subset) {
    std::vector<std::size_t> per_coset(std::size_t{1} << g, 0);
    for (const auto& x : subset) {
        if (x.genus() != g) throw InvalidInput("subset point has wrong genus");
        ++per_coset[x.characteristic().delta()];
    }
    return *std::max_element(per_coset.begin(), per_coset.end());
}

ParityCounts parity_counts(std::size_t g) {
    ParityCounts counts;
    for (const auto& x : all_torsion_points(g)) {
        (x.characteristic().is_odd() ? counts.odd : counts.even) += 1;
    }
    return counts;
}

}  // namespace thetalab
