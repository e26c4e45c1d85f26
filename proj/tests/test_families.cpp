#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cstdio>
#include <random>

#include "thetalab/error.hpp"
#include "thetalab/families.hpp"

using namespace thetalab;

namespace {

const cplx I{0.0, 1.0};

// Brute-force count of x with some factor carrying (1,1), after the shift.
std::size_t brute_product_count(std::size_t g, std::uint32_t se, std::uint32_t sd) {
    std::size_t count = 0;
    for (std::uint32_t e = 0; e < (1U << g); ++e) {
        for (std::uint32_t d = 0; d < (1U << g); ++d) {
            bool hit = false;
            for (std::size_t i = 0; i < g; ++i) {
                hit = hit || ((((e ^ se) >> i) & 1U) && (((d ^ sd) >> i) & 1U));
            }
            count += hit ? 1 : 0;
        }
    }
    return count;
}

std::size_t ipow(std::size_t b, std::size_t e) {
    std::size_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

}  // namespace

TEST_CASE("random_siegel is deterministic and valid") {
    const RiemannMatrix a = random_siegel(3, 42);
    const RiemannMatrix b = random_siegel(3, 42);
    CHECK(a.entries() == b.entries());
    CHECK(a.entries() != random_siegel(3, 43).entries());
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const RiemannMatrix t = random_siegel(3, seed);
        CHECK(t.min_eigenvalue() >= 0.2);
        CHECK(t.real_part().cwiseAbs().maxCoeff() <= 0.5);
    }
    CHECK(random_siegel(2, 1, 3.0).min_eigenvalue() >= 3.0);
}

TEST_CASE("product_tau") {
    const RiemannMatrix t = product_tau({I, 2.0 * I});
    CHECK(t.entries()(0, 0) == I);
    CHECK(t.entries()(1, 1) == 2.0 * I);
    CHECK(t.entries()(0, 1) == cplx(0.0));
    CHECK_THROWS_AS(product_tau({I, cplx(0.0, 0.1)}), InvalidInput);
}

TEST_CASE("theta factorizes over a product") {
    const std::vector<cplx> factors = {cplx(0.1, 1.1), cplx(-0.3, 0.9), cplx(0.4, 1.4)};
    const RiemannMatrix tau = product_tau(factors);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (int k = 0; k < 10; ++k) {
        CVector z(3);
        for (int i = 0; i < 3; ++i) z(i) = cplx(u(rng), 0.3 * u(rng));
        cplx prod = 1.0;
        for (int i = 0; i < 3; ++i) {
            CMatrix m(1, 1);
            m(0, 0) = factors[static_cast<std::size_t>(i)];
            CVector zi(1);
            zi(0) = z(i);
            prod *= theta(zi, RiemannMatrix(m), HalfCharacteristic(1, 0, 0)).value;
        }
        CHECK(std::abs(theta(z, tau, HalfCharacteristic(3, 0, 0)).value - prod) <= 1e-11);
    }
}

TEST_CASE("product oracle counts") {
    CHECK(product_oracle(1).size() == 1);
    CHECK(product_oracle(1).front().characteristic() == HalfCharacteristic(1, 1, 1));
    CHECK(product_oracle(2).size() == 7);
    CHECK(product_oracle(3).size() == 37);
    CHECK(product_oracle(4).size() == 175);
    for (std::size_t g = 1; g <= 6; ++g) {
        CHECK(product_oracle(g).size() == ipow(4, g) - ipow(3, g));
        CHECK(ipow(4, g) - ipow(3, g) < ipow(4, g) - ipow(2, g));
    }
    for (std::size_t g = 1; g <= 4; ++g) {
        for (std::uint32_t idx = 0; idx < (1U << (2 * g)); ++idx) {
            const auto s = TorsionPoint::from_index(g, idx).characteristic();
            CHECK(product_oracle(g, s).size() == brute_product_count(g, s.eps(), s.delta()));
        }
    }
}

TEST_CASE("g = 4 product torsion enumeration is fast") {
    const auto start = std::chrono::steady_clock::now();
    const ThetaDivisor div(product_tau({I, 1.2 * I, cplx(0.2, 0.9), cplx(-0.1, 1.5)}));
    const auto report = count_on_translate(div, CVector::Zero(4));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(report.n_on == 175);
    CHECK(report.n_uncertain == 0);
    CHECK(secs < 1.0);
}

TEST_CASE("find_on_theta") {
    CMatrix m(1, 1);
    m(0, 0) = I;
    const ThetaDivisor elliptic{RiemannMatrix(m)};
    const ThetaZero z1 = find_on_theta(elliptic, 5);
    // The only zero is (1+i)/2 modulo the lattice.
    const cplx d = z1.w(0) - 0.5 * (1.0 + I);
    const double im_part = d.imag() - std::round(d.imag());
    const double re_part = d.real() - std::round(d.real());
    CHECK(std::abs(cplx(re_part, im_part)) <= 1e-8);

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const ThetaDivisor div(random_siegel(2, seed));
        const ThetaZero z = find_on_theta(div, seed);
        CHECK(z.residual <= 1e-10);
        const auto& h = z.history;
        if (h.size() >= 3) {
            CHECK(h[h.size() - 1] < h[h.size() - 2]);
            CHECK(h[h.size() - 2] < h[h.size() - 3]);
        }
        const auto x = TorsionPoint::from_index(2, static_cast<std::uint32_t>(seed));
        const CVector a = z.w - x.to_complex(div.tau());
        CHECK(classify(div, a, x).state == Membership::On);
    }
}

TEST_CASE("period matrix JSON") {
    const RiemannMatrix tau = random_siegel(3, 9);
    const RiemannMatrix back = parse_tau_json(tau_to_json(tau));
    CHECK((back.entries() - tau.entries()).cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS_AS(parse_tau_json("{"), InvalidInput);
    CHECK_THROWS_AS(parse_tau_json(R"({"g": 2, "re": [[0,0]], "im": [[1,0],[0,1]]})"), InvalidInput);
    CHECK_THROWS_AS(parse_tau_json(R"({"g": 1, "re": [[0]], "im": [[-1]]})"), InvalidInput);
    CHECK_THROWS_AS(parse_tau_json(R"({"g": 2, "re": [[0,1],[0,0]], "im": [[1,0],[0,1]]})"), InvalidInput);
    CHECK_THROWS_AS(parse_tau_json(R"({"g": 1, "re": [["x"]], "im": [[1]]})"), InvalidInput);
    CHECK_THROWS_AS(load_tau_file("/nonexistent/tau.json"), InvalidInput);

    const std::string path = "test_families_tau.json";
    save_tau_file(tau, path);
    CHECK(load_tau_file(path).entries() == back.entries());
    std::remove(path.c_str());
}

TEST_CASE("lattice reduction") {
    const RiemannMatrix tau = random_siegel(2, 4);
    CVector z(2);
    z << cplx(0.3, 0.1), cplx(-0.2, 0.05);
    RVector m(2), n(2);
    m << 2, -3;
    n << 5, 1;
    const CVector far = z + tau.entries() * m.cast<cplx>() + n.cast<cplx>();
    CHECK((reduce_mod_lattice(far, tau) - z).norm() <= 1e-12);
}
