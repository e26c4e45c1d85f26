#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "thetalab/error.hpp"
#include "thetalab/torsion.hpp"

using namespace thetalab;

TEST_CASE("pairing on the standard basis") {
    for (std::size_t g : {1, 2, 3}) {
        const auto basis = standard_basis(g);
        for (std::size_t i = 0; i < g; ++i) {
            for (std::size_t j = 0; j < g; ++j) {
                CHECK(pairing(basis.a[i], basis.b[j]) == (i == j ? 1 : 0));
                CHECK(pairing(basis.a[i], basis.a[j]) == 0);
                CHECK(pairing(basis.b[i], basis.b[j]) == 0);
            }
        }
    }
    const auto b1 = standard_basis(1);
    CHECK(b1.a[0].characteristic() == HalfCharacteristic(1, 1, 0));
    CHECK(b1.b[0].characteristic() == HalfCharacteristic(1, 0, 1));
}

TEST_CASE("gram matrix is the standard symplectic form at g = 3") {
    const auto gram = gram_matrix(standard_basis(3));
    REQUIRE(gram.size() == 6);
    for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t j = 0; j < 6; ++j) {
            const int expected = (j == i + 3 || i == j + 3) ? 1 : 0;
            CHECK(gram[i][j] == expected);
        }
    }
}

TEST_CASE("pairing is alternating, bilinear and non-degenerate") {
    for (std::size_t g : {1, 2, 3}) {
        const auto points = all_torsion_points(g);
        for (const auto& x : points) {
            CHECK(pairing(x, x) == 0);
            bool witnessed = x.index() == 0;
            for (const auto& y : points) {
                CHECK(pairing(x, y) == pairing(y, x));
                witnessed = witnessed || pairing(x, y) == 1;
            }
            CHECK(witnessed);
        }
        // Bilinearity on a sample of triples.
        std::mt19937_64 rng(g);
        for (int k = 0; k < 200; ++k) {
            const auto& x = points[rng() % points.size()];
            const auto& y = points[rng() % points.size()];
            const auto& z = points[rng() % points.size()];
            CHECK(pairing(x + y, z) == (pairing(x, z) ^ pairing(y, z)));
        }
    }
    CHECK_THROWS_AS(pairing(TorsionPoint::from_index(1, 0), TorsionPoint::from_index(2, 0)), InvalidInput);
}

TEST_CASE("torsion indexing packs delta low and eps high") {
    const auto x = TorsionPoint::from_index(2, 0b1101);
    CHECK(x.characteristic().eps() == 0b11);
    CHECK(x.characteristic().delta() == 0b01);
    CHECK(x.index() == 0b1101);
    CHECK_THROWS_AS(TorsionPoint::from_index(2, 16), InvalidInput);
}

TEST_CASE("cosets of H partition K") {
    const auto h = coset(2, 0);
    REQUIRE(h.size() == 4);
    for (std::uint32_t e = 0; e < 4; ++e) CHECK(h[e].characteristic() == HalfCharacteristic(2, e, 0));

    for (std::size_t g : {1, 2, 3}) {
        std::set<std::uint32_t> seen;
        for (std::uint32_t b = 0; b < (1U << g); ++b) {
            for (const auto& x : coset(g, b)) CHECK(seen.insert(x.index()).second);
        }
        CHECK(seen.size() == (std::size_t{1} << (2 * g)));
    }
    const std::vector<int> bits = {1, 0};
    CHECK(coset(bits).front().characteristic().delta() == 1);
    CHECK_THROWS_AS(coset(2, 4), InvalidInput);
}

TEST_CASE("pigeonhole over cosets on random subsets") {
    for (std::size_t g : {1, 2, 3}) {
        std::mt19937_64 rng(77 + g);
        const auto points = all_torsion_points(g);
        const std::size_t cosets = std::size_t{1} << g;
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<TorsionPoint> subset;
            for (const auto& x : points) {
                if (rng() % 3 != 0) subset.push_back(x);
            }
            const std::size_t need = (subset.size() + cosets - 1) / cosets;
            CHECK(largest_coset_intersection(g, subset) >= need);
        }
    }
}

TEST_CASE("parity counts") {
    CHECK(parity_counts(1).odd == 1);
    CHECK(parity_counts(1).even == 3);
    CHECK(parity_counts(2).odd == 6);
    CHECK(parity_counts(2).even == 10);
    CHECK(parity_counts(3).odd == 28);
    CHECK(parity_counts(3).even == 36);
    for (std::size_t g = 1; g <= 8; ++g) {
        const auto c = parity_counts(g);
        CHECK(c.odd + c.even == (std::uint64_t{1} << (2 * g)));
        CHECK(c.odd == (std::uint64_t{1} << (g - 1)) * ((std::uint64_t{1} << g) - 1));
    }
}

TEST_CASE("torsion points are 2-torsion in C^g / lattice") {
    CMatrix m(2, 2);
    m << cplx(0.1, 1.2), cplx(0.2, 0.3), cplx(0.2, 0.3), cplx(-0.3, 0.9);
    const RiemannMatrix tau(m);
    for (const auto& x : all_torsion_points(2)) {
        const CVector twice = 2.0 * x.to_complex(tau);
        // 2x = τε + δ: subtract the lattice vector and get zero.
        RVector eps(2), delta(2);
        for (int i = 0; i < 2; ++i) {
            eps(i) = x.characteristic().eps_bit(static_cast<std::size_t>(i));
            delta(i) = x.characteristic().delta_bit(static_cast<std::size_t>(i));
        }
        CHECK((twice - tau.entries() * eps.cast<cplx>() - delta.cast<cplx>()).norm() <= 1e-15);
    }
}
