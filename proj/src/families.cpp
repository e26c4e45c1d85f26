#include "thetalab/families.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "thetalab/error.hpp"

namespace thetalab {

const char* to_string(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::Random: return "random";
        case FamilyKind::Product: return "product";
        case FamilyKind::File: return "file";
    }
    return "?";
}

RiemannMatrix random_siegel(std::size_t g, std::uint64_t seed, double min_eig) {
    if (g == 0 || g > kMaxGenus) throw InvalidInput("genus out of range");
    if (!(min_eig > 0.0)) throw InvalidInput("min_eig must be positive");
    const auto n = static_cast<Eigen::Index>(g);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(-0.5, 0.5);
    std::normal_distribution<double> normal(0.0, 1.0);

    RMatrix re(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) re(i, j) = re(j, i) = uniform(rng);
    }
    RMatrix b(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) b(i, j) = normal(rng);
    }
    RMatrix im = b * b.transpose() / (2.0 * static_cast<double>(g)) + 0.5 * RMatrix::Identity(n, n);
    im = (0.5 * (im + im.transpose())).eval();
    Eigen::SelfAdjointEigenSolver<RMatrix> eig(im, Eigen::EigenvaluesOnly);
    const double lowest = eig.eigenvalues().minCoeff();
    if (lowest < min_eig) im *= min_eig / lowest * (1.0 + 1e-12);

    CMatrix tau(n, n);
    tau.real() = re;
    tau.imag() = im;
    return RiemannMatrix(tau);
}

RiemannMatrix product_tau(const std::vector<cplx>& taus) {
    if (taus.empty() || taus.size() > kMaxGenus) throw InvalidInput("product needs 1..12 factors");
    const auto n = static_cast<Eigen::Index>(taus.size());
    CMatrix tau = CMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const cplx t = taus[static_cast<std::size_t>(i)];
        if (!(t.imag() >= 0.2)) {
            throw InvalidInput("elliptic factor needs Im tau >= 0.2");
        }
        tau(i, i) = t;
    }
    return RiemannMatrix(tau);
}

std::vector<cplx> random_elliptic_factors(std::size_t g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> re(-0.5, 0.5);
    std::uniform_real_distribution<double> im(0.8, 1.6);
    std::vector<cplx> out;
    for (std::size_t i = 0; i < g; ++i) {
        const double x = re(rng);
        out.emplace_back(x, im(rng));
    }
    return out;
}

std::vector<TorsionPoint> product_oracle(std::size_t g, std::optional<HalfCharacteristic> shift) {
    const HalfCharacteristic s = shift.value_or(HalfCharacteristic::zero(g));
    if (s.genus() != g) throw InvalidInput("oracle shift has wrong genus");
    std::vector<TorsionPoint> out;
    for (const auto& x : all_torsion_points(g)) {
        const HalfCharacteristic y = x.characteristic() + s;
        if ((y.eps() & y.delta()) != 0) out.push_back(x);
    }
    return out;
}

CVector reduce_mod_lattice(const CVector& z, const RiemannMatrix& tau) {
    const RVector k = (tau.imag_inverse() * RVector(z.imag())).array().round().matrix();
    CVector out = z - tau.entries() * k.cast<cplx>();
    for (Eigen::Index i = 0; i < out.size(); ++i) {
        out(i) -= std::round(out(i).real());
    }
    return out;
}

ThetaZero find_on_theta(const ThetaDivisor& divisor, std::uint64_t seed) {
    const RiemannMatrix& tau = divisor.tau();
    const std::size_t g = tau.genus();
    const auto n = static_cast<Eigen::Index>(g);
    const HalfCharacteristic zero = HalfCharacteristic::zero(g);
    const ThetaOptions opts{divisor.thresholds().eps_req, 1.0};
    const double scale = divisor.scale();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);

    constexpr int kRestarts = 20;
    constexpr int kSteps = 200;
    constexpr double kTarget = 1e-12;
    int total_steps = 0;

    for (int restart = 0; restart < kRestarts; ++restart) {
        RVector u(n), v(n);
        for (Eigen::Index i = 0; i < n; ++i) u(i) = unit(rng);
        for (Eigen::Index i = 0; i < n; ++i) v(i) = unit(rng);
        const CVector z0 = tau.entries() * u.cast<cplx>() + v.cast<cplx>();
        CVector dir(n);
        for (Eigen::Index i = 0; i < n; ++i) dir(i) = cplx(normal(rng), normal(rng));
        dir /= dir.norm();

        cplx t{};
        ScaledThetaJet jet = theta_jet_scaled(z0, tau, zero, opts);
        double residual = std::abs(jet.value.value) / scale;
        ThetaZero result;
        for (int step = 0; step < kSteps && residual > kTarget; ++step) {
            ++total_steps;
            cplx slope{};
            for (std::size_t j = 0; j < g; ++j) slope += jet.gradient[j] * dir(static_cast<Eigen::Index>(j));
            if (std::abs(slope) == 0.0) break;
            const cplx full_step = jet.value.value / slope;
            bool accepted = false;
            double damping = 1.0;
            for (int h = 0; h < 30; ++h, damping *= 0.5) {
                const cplx trial = t - damping * full_step;
                const CVector z = z0 + trial * dir;
                ScaledThetaJet next = theta_jet_scaled(z, tau, zero, opts);
                const double r = std::abs(next.value.value) / scale;
                if (r < residual) {
                    t = trial;
                    jet = std::move(next);
                    residual = r;
                    accepted = true;
                    break;
                }
            }
            if (!accepted) break;
            result.history.push_back(residual);
            if (std::abs(t) > 10.0) break;  // wandered off; restart
        }
        if (residual <= 1e-10) {
            result.w = reduce_mod_lattice(CVector(z0 + t * dir), tau);
            const ScaledTheta check = theta_scaled(result.w, tau, zero, opts);
            result.residual = std::abs(check.value) / scale;
            if (result.residual <= 1e-10) {
                result.iterations = total_steps;
                result.restarts = restart;
                return result;
            }
        }
    }
    throw NoConvergence("find_on_theta: no zero found after 20 restarts");
}

RiemannMatrix parse_tau_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("period matrix file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("g") || !doc.contains("re") || !doc.contains("im")) {
        throw InvalidInput("period matrix file needs keys g, re, im");
    }
    if (!doc["g"].is_number_integer() || doc["g"].get<long>() < 1 ||
        doc["g"].get<long>() > static_cast<long>(kMaxGenus)) {
        throw InvalidInput("period matrix file: g must be an integer in 1..12");
    }
    const auto g = static_cast<Eigen::Index>(doc["g"].get<long>());
    CMatrix tau(g, g);
    for (const char* part : {"re", "im"}) {
        const auto& rows = doc[part];
        if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != g) {
            throw InvalidInput(std::string("period matrix file: '") + part + "' must have g rows");
        }
        for (Eigen::Index i = 0; i < g; ++i) {
            const auto& row = rows[static_cast<std::size_t>(i)];
            if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != g) {
                throw InvalidInput(std::string("period matrix file: '") + part + "' rows must have g entries");
            }
            for (Eigen::Index j = 0; j < g; ++j) {
                const auto& cell = row[static_cast<std::size_t>(j)];
                if (!cell.is_number()) throw InvalidInput("period matrix file: non-numeric entry");
                const double val = cell.get<double>();
                if (part[0] == 'r') {
                    tau(i, j).real(val);
                } else {
                    tau(i, j).imag(val);
                }
            }
        }
    }
    return RiemannMatrix(tau);
}

RiemannMatrix load_tau_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open period matrix file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_tau_json(buffer.str());
}

std::string tau_to_json(const RiemannMatrix& tau) {
    const auto g = static_cast<Eigen::Index>(tau.genus());
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (Eigen::Index i = 0; i < g; ++i) {
        nlohmann::json rr = nlohmann::json::array();
        nlohmann::json ir = nlohmann::json::array();
        for (Eigen::Index j = 0; j < g; ++j) {
            rr.push_back(tau.entries()(i, j).real());
            ir.push_back(tau.entries()(i, j).imag());
        }
        re.push_back(rr);
        im.push_back(ir);
    }
    nlohmann::json doc;
    doc["g"] = g;
    doc["re"] = re;
    doc["im"] = im;
    return doc.dump(2);
}

void save_tau_file(const RiemannMatrix& tau, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write period matrix file: " + path);
    out << tau_to_json(tau) << '\n';
}

RiemannMatrix make_tau(const FamilySpec& spec) {
    switch (spec.kind) {
        case FamilyKind::Random: return random_siegel(spec.g, spec.seed, spec.min_eig);
        case FamilyKind::Product:
            return product_tau(spec.taus.empty() ? random_elliptic_factors(spec.g, spec.seed) : spec.taus);
        case FamilyKind::File: return load_tau_file(spec.path);
    }
    throw InvalidInput("unknown family kind");
}

}  // namespace thetalab
