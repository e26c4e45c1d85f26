// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Tolerances are fixed here and not tunable from the command line.

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "thetalab/cli.hpp"
#include "thetalab/divisor.hpp"
#include "thetalab/families.hpp"
#include "thetalab/jacobian.hpp"
#include "thetalab/theta.hpp"

using namespace thetalab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Every (τ, a) experiment run by A1-A3, kept for the bound and complement checks.
struct Experiment {
    std::string label;
    const ThetaDivisor* divisor;
    CVector translate;
    CountReport report;
};

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::vector<std::unique_ptr<ThetaDivisor>> g_divisors;
std::vector<Experiment> g_experiments;

const ThetaDivisor& keep(RiemannMatrix tau) {
    g_divisors.push_back(std::make_unique<ThetaDivisor>(std::move(tau)));
    return *g_divisors.back();
}

CVector zeros(std::size_t g) { return CVector::Zero(static_cast<Eigen::Index>(g)); }

CVector random_point(const RiemannMatrix& tau, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    const auto n = static_cast<Eigen::Index>(tau.genus());
    RVector p(n), q(n);
    for (Eigen::Index i = 0; i < n; ++i) p(i) = u(rng);
    for (Eigen::Index i = 0; i < n; ++i) q(i) = u(rng);
    return tau.entries() * p.cast<cplx>() + q.cast<cplx>();
}

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

std::uint64_t ipow(std::uint64_t b, std::size_t e) {
    std::uint64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// A1: odd characteristics are exactly the torsion points on Θ for random τ.
Outcome a1_odd_count() {
    const auto start = Clock::now();
    Outcome o;
    std::size_t runs = 0;
    for (std::size_t g : {1, 2, 3}) {
        const std::uint64_t expected = ipow(2, g - 1) * (ipow(2, g) - 1);
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const ThetaDivisor& div = keep(random_siegel(g, seed));
            CountReport r = count_on_translate(div, zeros(g));
            if (r.n_on != expected || r.n_uncertain != 0) {
                o.pass = false;
                o.detail += " g=" + std::to_string(g) + "/seed=" + std::to_string(seed) +
                            ":n_on=" + std::to_string(r.n_on) + ",unc=" + std::to_string(r.n_uncertain);
            }
            g_experiments.push_back({"A1", &div, zeros(g), std::move(r)});
            ++runs;
        }
    }
    const double secs = seconds_since(start);
    o.pass = o.pass && secs < 120.0;
    o.detail = "runs=" + std::to_string(runs) + " expected n_on=1,6,28 time=" + std::to_string(secs) + "s" + o.detail;
    return o;
}

// A2: numeric classification on products equals the combinatorial oracle.
Outcome a2_product_oracle() {
    const auto start = Clock::now();
    Outcome o;
    std::size_t translates = 0;
    std::vector<std::size_t> zero_counts;
    for (std::size_t g : {1, 2, 3, 4}) {
        const ThetaDivisor& div = keep(product_tau(random_elliptic_factors(g, 1000 + g)));
        const std::uint32_t total = 1U << (2 * g);
        // a = 0 first, then every torsion translate.
        for (long t = -1; t < static_cast<long>(total); ++t) {
            std::optional<HalfCharacteristic> shift;
            CVector a = zeros(g);
            if (t >= 0) {
                const auto s = TorsionPoint::from_index(g, static_cast<std::uint32_t>(t));
                shift = s.characteristic();
                a = s.to_complex(div.tau());
            }
            CountReport r = count_on_translate(div, a);
            std::set<std::uint32_t> expected;
            for (const auto& x : product_oracle(g, shift)) expected.insert(x.index());
            std::set<std::uint32_t> got;
            for (const auto& x : r.on_points()) got.insert(x.index());
            if (got != expected || r.n_uncertain != 0) {
                o.pass = false;
                o.detail += " mismatch g=" + std::to_string(g) + " t=" + std::to_string(t);
            }
            if (t < 0) {
                zero_counts.push_back(r.n_on);
                if (r.n_on != ipow(4, g) - ipow(3, g)) o.pass = false;
            }
            g_experiments.push_back({"A2", &div, a, std::move(r)});
            ++translates;
        }
    }
    const double secs = seconds_since(start);
    o.pass = o.pass && secs < 300.0;
    std::string counts;
    for (auto c : zero_counts) counts += (counts.empty() ? "" : ",") + std::to_string(c);
    o.detail = "translates=" + std::to_string(translates) + " a=0 counts=" + counts + " (oracle 1,7,37,175) time=" +
               std::to_string(secs) + "s" + o.detail;
    return o;
}

// A3: the general bound is never exceeded.
Outcome a3_general_bound() {
    Outcome o;
    std::size_t random_runs = 0;
    std::size_t through_runs = 0;
    std::size_t strict_checked = 0;
    std::size_t strict_violations = 0;
    for (std::size_t g : {2, 3}) {
        for (std::uint64_t k = 0; k < 250; ++k) {
            const std::uint64_t seed = 5000 + 1000 * g + k;
            const ThetaDivisor& div = keep(random_siegel(g, seed));
            CVector a;
            std::string label;
            if (k % 2 == 0) {
                std::mt19937_64 rng(seed);
                a = random_point(div.tau(), rng);
                label = "A3-random";
                ++random_runs;
            } else {
                const auto idx = static_cast<std::uint32_t>(seed % (1U << (2 * g)));
                const ThetaZero zero = find_on_theta(div, seed);
                a = zero.w - TorsionPoint::from_index(g, idx).to_complex(div.tau());
                label = "A3-through";
                ++through_runs;
            }
            CountReport r = count_on_translate(div, a);
            // Random τ gives an irreducible Θ; these translates are not symmetric.
            const auto strict = verify_bounds(r, false, true);
            ++strict_checked;
            if (!strict.nonsymmetric_ok) ++strict_violations;
            g_experiments.push_back({label, &div, a, std::move(r)});
        }
    }
    std::size_t violations = 0;
    for (const auto& e : g_experiments) {
        if (!verify_bounds(e.report, true, false).general_ok) ++violations;
    }
    o.pass = violations == 0;
    o.detail = "experiments=" + std::to_string(g_experiments.size()) + " (random a=" + std::to_string(random_runs) +
               ", through-torsion=" + std::to_string(through_runs) + ") violations=" + std::to_string(violations) +
               "; nonsymmetric bound also checked on " + std::to_string(strict_checked) +
               " A3 runs, violations=" + std::to_string(strict_violations);
    return o;
}

// A4: each coset of H maps to a spanning set.
Outcome a4_spanning() {
    Outcome o;
    double worst = 1.0;
    std::size_t checks = 0;
    for (std::size_t g : {1, 2, 3}) {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const RiemannMatrix tau = random_siegel(g, 200 + seed);
            for (std::uint32_t b = 0; b < (1U << g); ++b) {
                const auto r = spanning_check(tau, b);
                worst = std::min(worst, r.min_singular_ratio);
                o.pass = o.pass && r.pass && r.min_singular_ratio > 1e-6;
                ++checks;
            }
        }
    }
    o.detail = "cosets checked=" + std::to_string(checks) + " min singular ratio=" + sci(worst) +
               " (limit 1e-6)";
    return o;
}

// A5: second-order addition formula and the hyperplane rank on products.
Outcome a5_hyperplane() {
    Outcome o;
    double worst = 0.0;
    std::size_t pairs = 0;
    for (std::size_t g : {1, 2, 3}) {
        for (std::uint64_t s = 0; s < 10; ++s) {
            const RiemannMatrix tau = random_siegel(g, 300 + 10 * g + s);
            std::mt19937_64 rng(s * 17 + g);
            for (int k = 0; k < 100; ++k) {
                const CVector z = random_point(tau, rng);
                const CVector w = random_point(tau, rng);
                worst = std::max(worst, addition_formula_residual(tau, z, w));
                ++pairs;
            }
        }
    }
    o.pass = worst <= 1e-9;
    std::string ranks;
    for (std::size_t g : {2, 3}) {
        const ThetaDivisor div(product_tau(random_elliptic_factors(g, 400 + g)));
        const auto r = count_on_translate(div, zeros(g));
        const auto h = hyperplane_check(div, zeros(g), r.on_points());
        const bool ok = h.rank <= (1U << g) - 1 && h.max_violation <= 1e-9;
        o.pass = o.pass && ok;
        ranks += " g=" + std::to_string(g) + ":|On|=" + std::to_string(r.n_on) + ",rank=" + std::to_string(h.rank) +
                 "<=" + std::to_string((1U << g) - 1);
    }
    o.detail = "pairs=" + std::to_string(pairs) + " max addition residual=" + sci(worst) +
               " (limit 1e-9);" + ranks;
    return o;
}

// A6: the g+1 sections vanish at On points; rank bound for non-symmetric translates.
Outcome a6_plane() {
    Outcome o;
    double worst = 0.0;
    std::size_t runs = 0;
    std::size_t worst_rank[4] = {0, 0, 0, 0};
    for (std::size_t g : {2, 3}) {
        for (std::uint64_t s = 0; s < 20; ++s) {
            const ThetaDivisor div(random_siegel(g, 600 + 10 * g + s));
            const auto idx = static_cast<std::uint32_t>((7 * s + g) % (1U << (2 * g)));
            const ThetaZero zero = find_on_theta(div, 700 + s);
            const CVector a = zero.w - TorsionPoint::from_index(g, idx).to_complex(div.tau());
            const auto r = count_on_translate(div, a);
            const auto on = r.on_points();
            const auto p = plane_check(div, a, on);
            worst = std::max(worst, p.max_section_residual);
            worst_rank[g] = std::max(worst_rank[g], p.rank);
            const bool ok = !on.empty() && r.verdicts[idx].state == Membership::On &&
                            p.max_section_residual <= 1e-6 && p.pass;
            o.pass = o.pass && ok;
            ++runs;
        }
    }
    o.detail = "runs=" + std::to_string(runs) + " max section residual=" + sci(worst) +
               " (limit 1e-6) max rank g=2:" + std::to_string(worst_rank[2]) + "<=1 g=3:" +
               std::to_string(worst_rank[3]) + "<=4";
    return o;
}

// A7: at least 2^g non-effective square roots in every A1-A3 run.
Outcome a7_square_roots() {
    Outcome o;
    std::size_t runs = 0;
    std::size_t failures = 0;
    std::size_t disagreements = 0;
    for (const auto& e : g_experiments) {
        const std::size_t g = e.report.g;
        const std::size_t total = std::size_t{1} << (2 * g);
        const std::size_t complement = total - e.report.n_on - e.report.n_uncertain;
        const auto direct = count_noneffective_square_roots(*e.divisor, e.translate);
        if (direct.n_noneffective != complement) ++disagreements;
        if (!(direct.pass && direct.n_noneffective >= (std::size_t{1} << g))) ++failures;
        ++runs;
    }
    o.pass = failures == 0 && disagreements == 0;
    o.detail = "runs=" + std::to_string(runs) + " below 2^g=" + std::to_string(failures) +
               " complement/direct disagreements=" + std::to_string(disagreements);
    return o;
}

// A8: translate classification at 0 agrees with the theta constants.
Outcome a8_convention() {
    Outcome o;
    std::size_t compared = 0;
    std::size_t disagreements = 0;
    for (std::size_t g : {1, 2, 3}) {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const ThetaDivisor div(random_siegel(g, 800 + seed));
            const auto r = count_on_translate(div, zeros(g));
            for (const auto& x : all_torsion_points(g)) {
                const auto by_constant = classify_by_constant(div, x);
                if (by_constant.state != r.verdicts[x.index()].state ||
                    by_constant.state == Membership::Uncertain) {
                    ++disagreements;
                }
                // Odd characteristics must be exactly the vanishing constants.
                if ((by_constant.state == Membership::On) != x.characteristic().is_odd()) ++disagreements;
                ++compared;
            }
        }
    }
    o.pass = disagreements == 0;
    o.detail = "characteristics compared=" + std::to_string(compared) + " disagreements=" + std::to_string(disagreements);
    return o;
}

// A9: gradient consistency, honest error bounds, reproducible CSV.
Outcome a9_hygiene() {
    Outcome o;
    constexpr double h = 1e-5;
    double worst_fd = 0.0;
    double worst_err_ratio = 0.0;
    std::size_t values = 0;
    for (std::size_t g : {1, 2, 3}) {
        for (std::uint64_t s = 0; s < 10; ++s) {
            const RiemannMatrix tau = random_siegel(g, 900 + 10 * g + s);
            const double scale = theta_constant_scale(tau);
            std::mt19937_64 rng(s + 31 * g);
            const CVector z = random_point(tau, rng);
            for (std::uint32_t idx = 0; idx < (1U << (2 * g)); ++idx) {
                const auto chr = TorsionPoint::from_index(g, idx).characteristic();
                for (const CVector& point : {z, zeros(g)}) {
                    const ThetaValue base = theta(point, tau, chr, ThetaOptions{1e-12, 1.0});
                    const ThetaValue wide = theta(point, tau, chr, ThetaOptions{1e-12, 2.0});
                    worst_err_ratio = std::max(worst_err_ratio, std::abs(base.value - wide.value) / base.err);
                    ++values;
                }
                const auto grad = theta_gradient(z, tau, chr);
                for (std::size_t j = 0; j < g; ++j) {
                    if (std::abs(grad[j].value) < 1e-3 * scale) continue;
                    CVector zp = z, zm = z;
                    zp(static_cast<Eigen::Index>(j)) += h;
                    zm(static_cast<Eigen::Index>(j)) -= h;
                    const cplx fd = (theta(zp, tau, chr, 1e-13).value - theta(zm, tau, chr, 1e-13).value) / (2 * h);
                    worst_fd = std::max(worst_fd, std::abs(fd - grad[j].value) / std::abs(grad[j].value));
                }
            }
        }
    }

    auto explore = [](int threads) {
        omp_set_num_threads(threads);
        const char* argv[] = {"thetalab", "explore", "--family", "random", "--g", "2,3", "--n", "10",
                              "--seed", "99", "--translate-kind", "through"};
        std::ostringstream out, err;
        const int code = cli::run(12, argv, out, err);
        return std::make_pair(code, out.str());
    };
    const int default_threads = omp_get_max_threads();
    const auto first = explore(default_threads);
    const auto second = explore(default_threads);
    const auto threaded = explore(4);
    omp_set_num_threads(default_threads);
    const bool identical = first.first == 0 && first.second == second.second && first.second == threaded.second;

    o.pass = worst_fd <= 1e-6 && worst_err_ratio < 1.0 && identical;
    o.detail = "max FD rel err=" + sci(worst_fd) + " (limit 1e-6); values=" + std::to_string(values) +
               " max |Δ(2R)|/err=" + sci(worst_err_ratio) + " (<1); CSV byte-identical=" +
               (identical ? "yes" : "no") + " (" + std::to_string(first.second.size()) + " bytes)";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"A1 odd-characteristic count", a1_odd_count},
        {"A2 product oracle equivalence", a2_product_oracle},
        {"A3 general bound 2^{2g}-2^g", a3_general_bound},
        {"A4 spanning of coset images", a4_spanning},
        {"A5 addition formula / hyperplane", a5_hyperplane},
        {"A6 g+1 sections and plane rank", a6_plane},
        {"A7 non-effective square roots >= 2^g", a7_square_roots},
        {"A8 translate vs theta-constant convention", a8_convention},
        {"A9 numerics hygiene", a9_hygiene},
    };
    int failures = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << " | " << o.detail << std::endl;
        failures += o.pass ? 0 : 1;
    }
    std::cout << (failures == 0 ? "acceptance: all criteria passed" : "acceptance: FAILURES") << std::endl;
    return failures == 0 ? 0 : 1;
}
