#include "thetalab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <regex>
#include <sstream>

#include <CLI11.hpp>

#include "thetalab/error.hpp"
#include "thetalab/jacobian.hpp"
#include "thetalab/report.hpp"
#include "thetalab/theta.hpp"

namespace thetalab::cli {

cplx parse_complex(const std::string& raw) {
    std::string text;
    for (char c : raw) {
        if (!std::isspace(static_cast<unsigned char>(c))) text += c;
    }
    static const std::string num = R"(((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?))";
    static const std::regex real_only("^([+-]?)" + num + "$");
    static const std::regex imag_only("^([+-]?)" + num + "?[ij]$");
    static const std::regex both("^([+-]?)" + num + "([+-])" + num + "?[ij]$");
    std::smatch m;
    auto value = [](const std::string& sign, const std::string& digits) {
        const double v = digits.empty() ? 1.0 : std::stod(digits);
        return sign == "-" ? -v : v;
    };
    if (std::regex_match(text, m, real_only)) return {value(m[1], m[2]), 0.0};
    if (std::regex_match(text, m, imag_only)) return {0.0, value(m[1], m[2])};
    if (std::regex_match(text, m, both)) return {value(m[1], m[2]), value(m[3], m[4])};
    throw InvalidInput("cannot parse complex number '" + raw + "'");
}

std::vector<cplx> parse_complex_list(const std::string& text) {
    std::vector<cplx> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_complex(item));
    if (out.empty()) throw InvalidInput("empty complex list");
    return out;
}

const char* to_string(TranslateKind kind) {
    switch (kind) {
        case TranslateKind::Zero: return "zero";
        case TranslateKind::Torsion: return "torsion";
        case TranslateKind::Through: return "through";
        case TranslateKind::Random: return "random";
        case TranslateKind::Explicit: return "explicit";
    }
    return "?";
}

namespace {

std::uint64_t parse_u64(const std::string& s, const char* what) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        throw InvalidInput(std::string("translate: bad ") + what + " '" + s + "'");
    }
    try {
        return std::stoull(s);
    } catch (const std::exception&) {
        throw InvalidInput(std::string("translate: bad ") + what + " '" + s + "'");
    }
}

std::uint32_t parse_index(const std::string& s) {
    const std::uint64_t v = parse_u64(s, "index");
    if (v > 0xffffffffULL) throw InvalidInput("translate: index out of range");
    return static_cast<std::uint32_t>(v);
}

}  // namespace

TranslateSpec parse_translate(const std::string& text) {
    TranslateSpec spec;
    if (text == "zero") return spec;
    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    if (head == "torsion") {
        spec.kind = TranslateKind::Torsion;
        spec.index = parse_index(rest);
    } else if (head == "through") {
        const auto sep = rest.find(':');
        if (sep == std::string::npos) throw InvalidInput("translate: expected through:SEED:IDX");
        spec.kind = TranslateKind::Through;
        spec.seed = parse_u64(rest.substr(0, sep), "seed");
        spec.index = parse_index(rest.substr(sep + 1));
    } else if (head == "random") {
        spec.kind = TranslateKind::Random;
        spec.seed = parse_u64(rest, "seed");
    } else if (head == "vec") {
        spec.kind = TranslateKind::Explicit;
        spec.vec = parse_complex_list(rest);
    } else {
        throw InvalidInput("unknown translate '" + text + "'");
    }
    return spec;
}

namespace {

CVector random_point(const RiemannMatrix& tau, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-0.5, 0.5);
    const auto n = static_cast<Eigen::Index>(tau.genus());
    RVector u(n), v(n);
    for (Eigen::Index i = 0; i < n; ++i) u(i) = unit(rng);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = unit(rng);
    return tau.entries() * u.cast<cplx>() + v.cast<cplx>();
}

void check_index(std::uint32_t index, std::size_t g) {
    if (index >= (std::uint64_t{1} << (2 * g))) {
        throw InvalidInput("torsion index " + std::to_string(index) + " must be below 4^g = " +
                           std::to_string(std::uint64_t{1} << (2 * g)));
    }
}

}  // namespace

CVector resolve_translate(const TranslateSpec& spec, const ThetaDivisor& divisor) {
    const std::size_t g = divisor.genus();
    const auto n = static_cast<Eigen::Index>(g);
    switch (spec.kind) {
        case TranslateKind::Zero: return CVector::Zero(n);
        case TranslateKind::Torsion:
            check_index(spec.index, g);
            return TorsionPoint::from_index(g, spec.index).to_complex(divisor.tau());
        case TranslateKind::Through: {
            check_index(spec.index, g);
            const ThetaZero zero = find_on_theta(divisor, spec.seed);
            return zero.w - TorsionPoint::from_index(g, spec.index).to_complex(divisor.tau());
        }
        case TranslateKind::Random: return random_point(divisor.tau(), spec.seed);
        case TranslateKind::Explicit: {
            if (spec.vec.size() != g) throw InvalidInput("explicit translate must have g entries");
            CVector a(n);
            for (Eigen::Index i = 0; i < n; ++i) a(i) = spec.vec[static_cast<std::size_t>(i)];
            return a;
        }
    }
    throw InvalidInput("unknown translate kind");
}

CountOutcome run_count(const ExperimentConfig& config) {
    const auto& th = config.thresholds;
    if (!(th.eps_req >= kMinEps && th.eps_req <= 1e-3)) {
        throw InvalidInput("eps_req must lie in [1e-13, 1e-3]");
    }
    th.validate();
    const ThetaDivisor divisor(make_tau(config.family), th);
    const CVector a = resolve_translate(config.translate, divisor);

    CountOutcome out;
    out.report = count_on_translate(divisor, a);
    out.report.family = to_string(config.family.kind);
    out.report.seed = config.family.seed;
    out.report.translate_kind = to_string(config.translate.kind);
    out.report.translate_index =
        (config.translate.kind == TranslateKind::Torsion || config.translate.kind == TranslateKind::Through)
            ? static_cast<long>(config.translate.index)
            : -1;
    out.verdict = verify_bounds(out.report, config.symmetric, config.irreducible);
    if (!out.verdict.pass()) {
        out.exit_code = kExitViolation;
    } else if (out.report.n_uncertain > 0) {
        out.exit_code = kExitConditional;
    } else {
        out.exit_code = kExitOk;
    }
    return out;
}

namespace {

struct FamilyOptions {
    bool random = false;
    std::string product;
    std::string tau_file;
    std::size_t g = 2;
    std::uint64_t seed = 0;
    double min_eig = 0.2;

    void attach(CLI::App* cmd) {
        cmd->add_flag("--random", random, "Random period matrix in Siegel space (default)");
        cmd->add_option("--product", product, "Product of elliptic curves, e.g. i,2i");
        cmd->add_option("--tau-file", tau_file, "Period matrix JSON file {g, re, im}");
        cmd->add_option("--g", g, "Dimension for random matrices")->check(CLI::Range(1, 12));
        cmd->add_option("--seed", seed, "Seed for random matrices and products");
        cmd->add_option("--min-eig", min_eig, "Smallest eigenvalue of Im tau (random)");
    }

    FamilySpec spec() const {
        FamilySpec f;
        f.g = g;
        f.seed = seed;
        f.min_eig = min_eig;
        const int chosen = (random ? 1 : 0) + (product.empty() ? 0 : 1) + (tau_file.empty() ? 0 : 1);
        if (chosen > 1) throw InvalidInput("choose one of --random, --product, --tau-file");
        if (!product.empty()) {
            f.kind = FamilyKind::Product;
            f.taus = parse_complex_list(product);
            f.g = f.taus.size();
        } else if (!tau_file.empty()) {
            f.kind = FamilyKind::File;
            f.path = tau_file;
        }
        return f;
    }
};

void write_text(const std::string& path, const std::string& text, std::ostream& fallback) {
    if (path.empty() || path == "-") {
        fallback << text;
        return;
    }
    std::ofstream file(path);
    if (!file) throw InvalidInput("cannot write " + path);
    file << text;
}

std::vector<std::size_t> parse_genus_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto dots = item.find("..");
        try {
            if (dots != std::string::npos) {
                const auto lo = std::stoul(item.substr(0, dots));
                const auto hi = std::stoul(item.substr(dots + 2));
                for (auto g = lo; g <= hi; ++g) out.push_back(g);
            } else {
                out.push_back(std::stoul(item));
            }
        } catch (const std::exception&) {
            throw InvalidInput("bad genus list '" + text + "'");
        }
    }
    for (auto g : out) {
        if (g < 1 || g > 6) throw InvalidInput("genus must lie in 1..6");
    }
    if (out.empty()) throw InvalidInput("empty genus list");
    return out;
}

// ---- verify ----------------------------------------------------------------

struct CheckLine {
    std::string name;
    std::size_t g = 0;
    std::size_t cases = 0;
    double worst = 0.0;
    double limit = 0.0;
    bool pass = true;
    std::string detail;
};

void print_check(std::ostream& out, const CheckLine& c) {
    out << "check=" << c.name << " g=" << c.g << " cases=" << c.cases << std::scientific
        << std::setprecision(3) << " worst=" << c.worst << " limit=" << c.limit << std::defaultfloat
        << (c.detail.empty() ? "" : " " + c.detail) << ' ' << (c.pass ? "PASS" : "FAIL") << '\n';
}

struct VerifyOptions {
    std::string check = "all";
    std::string genera = "1..3";
    std::size_t seeds = 20;
    std::size_t n = 100;
    long coset = -1;
    std::uint64_t seed = 1;
};

CheckLine verify_addition(std::size_t g, const VerifyOptions& o) {
    CheckLine c{"addition", g, 0, 0.0, 1e-9, true, ""};
    for (std::size_t s = 0; s < std::min<std::size_t>(o.seeds, 10); ++s) {
        const RiemannMatrix tau = random_siegel(g, o.seed + s);
        for (std::size_t k = 0; k < o.n; ++k) {
            const CVector z = random_point(tau, (o.seed + s) * 1000003ULL + 2 * k);
            const CVector w = random_point(tau, (o.seed + s) * 1000003ULL + 2 * k + 1);
            c.worst = std::max(c.worst, addition_formula_residual(tau, z, w));
            ++c.cases;
        }
    }
    c.pass = c.worst <= c.limit;
    return c;
}

CheckLine verify_gradient(std::size_t g, const VerifyOptions& o) {
    CheckLine c{"gradient", g, 0, 0.0, 1e-6, true, ""};
    constexpr double h = 1e-5;
    for (std::size_t s = 0; s < o.seeds; ++s) {
        const RiemannMatrix tau = random_siegel(g, o.seed + s);
        const double scale = theta_constant_scale(tau);
        const CVector z = random_point(tau, o.seed + 7919 * s);
        const auto chr = HalfCharacteristic::zero(g);
        const auto grad = theta_gradient(z, tau, chr);
        for (std::size_t j = 0; j < g; ++j) {
            if (std::abs(grad[j].value) < 1e-3 * scale) continue;  // too close to a zero of ∂_j θ
            CVector zp = z, zm = z;
            zp(static_cast<Eigen::Index>(j)) += h;
            zm(static_cast<Eigen::Index>(j)) -= h;
            const cplx fd = (theta(zp, tau, chr, 1e-13).value - theta(zm, tau, chr, 1e-13).value) / (2.0 * h);
            c.worst = std::max(c.worst, std::abs(fd - grad[j].value) / std::abs(grad[j].value));
            ++c.cases;
        }
    }
    c.pass = c.worst <= c.limit;
    return c;
}

CheckLine verify_radius(std::size_t g, const VerifyOptions& o) {
    CheckLine c{"radius", g, 0, 0.0, 1.0, true, "worst=|change|/err"};
    for (std::size_t s = 0; s < o.seeds; ++s) {
        const RiemannMatrix tau = random_siegel(g, o.seed + s);
        const CVector z = random_point(tau, o.seed + 104729 * s);
        for (std::uint32_t idx = 0; idx < (1U << (2 * g)); ++idx) {
            const auto chr = TorsionPoint::from_index(g, idx).characteristic();
            const ThetaValue base = theta(z, tau, chr, ThetaOptions{1e-12, 1.0});
            const ThetaValue wide = theta(z, tau, chr, ThetaOptions{1e-12, 2.0});
            const double change = std::abs(base.value - wide.value);
            c.worst = std::max(c.worst, change / base.err);
            ++c.cases;
        }
    }
    c.pass = c.worst < c.limit;
    return c;
}

CheckLine verify_spanning(std::size_t g, const VerifyOptions& o) {
    CheckLine c{"spanning", g, 0, 1.0, 1e-6, true, "worst=min singular ratio"};
    for (std::size_t s = 0; s < o.seeds; ++s) {
        const RiemannMatrix tau = random_siegel(g, o.seed + s);
        for (std::uint32_t b = 0; b < (1U << g); ++b) {
            if (o.coset >= 0 && static_cast<std::uint32_t>(o.coset) != b) continue;
            const auto r = spanning_check(tau, b);
            c.worst = std::min(c.worst, r.min_singular_ratio);
            c.pass = c.pass && r.pass;
            ++c.cases;
        }
    }
    return c;
}

CheckLine verify_hyperplane(std::size_t g, const VerifyOptions& o) {
    CheckLine c{"hyperplane", g, 0, 0.0, 1e-9, true, ""};
    std::size_t worst_rank = 0;
    const long rank_limit = (1L << g) - 1;
    auto run_one = [&](const ThetaDivisor& div, const CVector& a) {
        const auto report = count_on_translate(div, a);
        const auto on = report.on_points();
        const auto h = hyperplane_check(div, a, on);
        c.worst = std::max(c.worst, h.max_violation);
        worst_rank = std::max(worst_rank, h.rank);
        c.pass = c.pass && h.max_violation <= c.limit && static_cast<long>(h.rank) <= rank_limit;
        ++c.cases;
    };
    for (std::size_t s = 0; s < o.seeds; ++s) {
        const ThetaDivisor product(product_tau(random_elliptic_factors(g, o.seed + s)));
        run_one(product, CVector::Zero(static_cast<Eigen::Index>(g)));
        const ThetaDivisor random(random_siegel(g, o.seed + s));
        run_one(random, CVector::Zero(static_cast<Eigen::Index>(g)));
    }
    c.detail = "max_rank=" + std::to_string(worst_rank) + " rank_limit=" + std::to_string(rank_limit);
    return c;
}

CheckLine verify_plane(std::size_t g, const VerifyOptions& o) {
    CheckLine c{"plane", g, 0, 0.0, 1e-6, true, ""};
    if (g < 2) {
        c.detail = "skipped: hypotheses need g >= 2";
        return c;
    }
    const long rank_limit = (1L << g) - static_cast<long>(g) - 1;
    std::size_t worst_rank = 0;
    for (std::size_t s = 0; s < o.seeds; ++s) {
        const ThetaDivisor div(random_siegel(g, o.seed + s));
        const auto idx = static_cast<std::uint32_t>((o.seed + s) % (1U << (2 * g)));
        const ThetaZero zero = find_on_theta(div, o.seed + 31 * s);
        const CVector a = zero.w - TorsionPoint::from_index(g, idx).to_complex(div.tau());
        const auto report = count_on_translate(div, a);
        const auto on = report.on_points();
        const auto p = plane_check(div, a, on);
        c.worst = std::max(c.worst, p.max_section_residual);
        worst_rank = std::max(worst_rank, p.rank);
        c.pass = c.pass && p.max_section_residual <= c.limit && p.pass && !on.empty();
        ++c.cases;
    }
    c.detail = "max_rank=" + std::to_string(worst_rank) + " rank_limit=" + std::to_string(rank_limit);
    return c;
}

CheckLine verify_parity(std::size_t g, const VerifyOptions&) {
    CheckLine c{"parity", g, 1, 0.0, 0.0, true, ""};
    const auto counts = parity_counts(g);
    const std::uint64_t odd = (std::uint64_t{1} << (g - 1)) * ((std::uint64_t{1} << g) - 1);
    c.pass = counts.odd == odd && counts.odd + counts.even == (std::uint64_t{1} << (2 * g));
    const auto gram = gram_matrix(standard_basis(g));
    for (std::size_t i = 0; i < 2 * g; ++i) {
        for (std::size_t j = 0; j < 2 * g; ++j) {
            const int expected = (i < g && j == i + g) || (j < g && i == j + g) ? 1 : 0;
            c.pass = c.pass && gram[i][j] == expected;
        }
    }
    c.detail = "odd=" + std::to_string(counts.odd) + " even=" + std::to_string(counts.even);
    return c;
}

int cmd_verify(const VerifyOptions& o, std::ostream& out) {
    using Check = CheckLine (*)(std::size_t, const VerifyOptions&);
    const std::vector<std::pair<std::string, Check>> checks = {
        {"parity", verify_parity},       {"addition", verify_addition}, {"gradient", verify_gradient},
        {"radius", verify_radius},       {"spanning", verify_spanning}, {"hyperplane", verify_hyperplane},
        {"plane", verify_plane},
    };
    bool known = o.check == "all";
    for (const auto& [name, fn] : checks) known = known || name == o.check;
    if (!known) throw InvalidInput("unknown check '" + o.check + "'");
    if (o.coset >= 0 && o.check != "spanning") throw InvalidInput("--coset applies to --check spanning");
    const auto genera = parse_genus_list(o.genera);
    for (auto g : genera) {
        if (o.coset >= (1L << g)) throw InvalidInput("--coset must be below 2^g");
    }

    bool all_pass = true;
    for (const auto& [name, fn] : checks) {
        if (o.check != "all" && o.check != name) continue;
        for (auto g : genera) {
            const CheckLine line = fn(g, o);
            print_check(out, line);
            all_pass = all_pass && line.pass;
        }
    }
    out << (all_pass ? "verify: all checks passed" : "verify: FAILURES") << '\n';
    return all_pass ? kExitOk : kExitViolation;
}

// ---- explore ---------------------------------------------------------------

struct ExploreOptions {
    std::string family = "random";
    std::string genera = "2";
    std::size_t n = 10;
    std::uint64_t seed = 1;
    std::string translate_kind = "zero";
    std::string out_path;
    Thresholds thresholds;
};

std::string explore_csv(const ExploreOptions& o) {
    if (o.family != "random" && o.family != "product") {
        throw InvalidInput("explore --family must be random or product");
    }
    static const std::vector<std::string> kinds = {"zero", "torsion", "through", "random"};
    if (std::find(kinds.begin(), kinds.end(), o.translate_kind) == kinds.end()) {
        throw InvalidInput("explore --translate-kind must be zero, torsion, through or random");
    }
    std::ostringstream csv;
    csv << csv_header() << '\n';
    for (auto g : parse_genus_list(o.genera)) {
        for (std::size_t k = 0; k < o.n; ++k) {
            const std::uint64_t sample_seed = o.seed + k;
            ExperimentConfig config;
            config.thresholds = o.thresholds;
            config.family.kind = o.family == "product" ? FamilyKind::Product : FamilyKind::Random;
            config.family.g = g;
            config.family.seed = sample_seed;

            std::mt19937_64 rng(sample_seed ^ 0x9e3779b97f4a7c15ULL);
            const auto index = static_cast<std::uint32_t>(rng() % (std::uint64_t{1} << (2 * g)));
            TranslateSpec& t = config.translate;
            if (o.translate_kind == "torsion") {
                t.kind = TranslateKind::Torsion;
                t.index = index;
            } else if (o.translate_kind == "through") {
                t.kind = TranslateKind::Through;
                t.index = index;
                t.seed = sample_seed;
            } else if (o.translate_kind == "random") {
                t.kind = TranslateKind::Random;
                t.seed = sample_seed;
            }
            // A translate through a torsion point is symmetric when g = 1.
            config.symmetric = t.kind == TranslateKind::Zero || t.kind == TranslateKind::Torsion ||
                               (t.kind == TranslateKind::Through && g == 1);
            config.irreducible = config.family.kind == FamilyKind::Random;

            const CountOutcome outcome = run_count(config);
            csv << csv_row(outcome.report, outcome.verdict) << '\n';
        }
    }
    return csv.str();
}

void attach_thresholds(CLI::App* cmd, Thresholds& th) {
    cmd->add_option("--on", th.on, "Residual below which a point is On");
    cmd->add_option("--off", th.off, "Residual above which a point is Off");
    cmd->add_option("--eps", th.eps_req, "Absolute accuracy target for theta values");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"thetalab: 2-torsion points on translated theta divisors"};
    app.require_subcommand(1);

    FamilyOptions count_family;
    std::string count_translate = "zero";
    Thresholds count_th;
    bool nonsymmetric = false;
    bool irreducible = false;
    bool square_roots = false;
    std::string count_out;
    std::string count_csv;
    auto* count = app.add_subcommand("count", "Count torsion points on a translated theta divisor");
    count_family.attach(count);
    count->add_option("--translate", count_translate,
                      "zero | torsion:IDX | through:SEED:IDX | random:SEED | vec:C1,C2,...");
    attach_thresholds(count, count_th);
    count->add_flag("--nonsymmetric", nonsymmetric, "Assert t_a*Theta is not symmetric");
    count->add_flag("--irreducible", irreducible, "Assert Theta is irreducible");
    count->add_flag("--square-roots", square_roots, "Also report non-effective square roots");
    count->add_option("--out", count_out, "JSON report path (default: stdout)");
    count->add_option("--csv", count_csv, "CSV output path (header + one row)");

    VerifyOptions verify_opts;
    auto* verify = app.add_subcommand("verify", "Run numerical property checks");
    verify->add_option("--check", verify_opts.check,
                       "all | parity | addition | gradient | radius | spanning | hyperplane | plane");
    verify->add_option("--g", verify_opts.genera, "Genus list, e.g. 2 or 1..3 or 1,3");
    verify->add_option("--seeds", verify_opts.seeds, "Random period matrices per genus");
    verify->add_option("--n", verify_opts.n, "Random (z, w) pairs per matrix (addition)");
    verify->add_option("--coset", verify_opts.coset, "Only this coset label (spanning)");
    verify->add_option("--seed", verify_opts.seed, "Base seed");

    ExploreOptions explore_opts;
    auto* explore = app.add_subcommand("explore", "Sample families and emit one CSV row per experiment");
    explore->add_option("--family", explore_opts.family, "random | product");
    explore->add_option("--g", explore_opts.genera, "Genus list, e.g. 2 or 1..4");
    explore->add_option("--n", explore_opts.n, "Samples per genus");
    explore->add_option("--seed", explore_opts.seed, "Base seed; sample k uses seed + k");
    explore->add_option("--translate-kind", explore_opts.translate_kind, "zero | torsion | through | random");
    explore->add_option("--out", explore_opts.out_path, "CSV path (default: stdout)");
    attach_thresholds(explore, explore_opts.thresholds);

    FamilyOptions tau_family;
    std::string tau_out;
    auto* tau_cmd = app.add_subcommand("tau", "Write a period matrix as JSON");
    tau_family.attach(tau_cmd);
    tau_cmd->add_option("--out", tau_out, "Output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (*count) {
            ExperimentConfig config;
            config.family = count_family.spec();
            config.translate = parse_translate(count_translate);
            config.thresholds = count_th;
            config.symmetric = !nonsymmetric;
            config.irreducible = irreducible;
            config.out_path = count_out;
            config.csv_path = count_csv;
            CountOutcome outcome = run_count(config);
            nlohmann::json doc = report_to_json(outcome.report, outcome.verdict);
            if (square_roots) {
                const std::size_t lower = std::size_t{1} << outcome.report.g;
                doc["square_roots"] = {{"n_noneffective", outcome.report.n_off},
                                       {"lower_bound", lower},
                                       {"pass", outcome.report.n_uncertain == 0 && outcome.report.n_off >= lower}};
            }
            write_text(config.out_path, doc.dump(2) + "\n", out);
            if (!config.csv_path.empty()) {
                write_text(config.csv_path, csv_header() + "\n" + csv_row(outcome.report, outcome.verdict) + "\n", out);
            }
            err << "n_on=" << outcome.report.n_on << " n_off=" << outcome.report.n_off
                << " n_uncertain=" << outcome.report.n_uncertain << " bound=" << outcome.report.bound_thm1
                << " exit=" << outcome.exit_code << '\n';
            return outcome.exit_code;
        }
        if (*verify) return cmd_verify(verify_opts, out);
        if (*explore) {
            write_text(explore_opts.out_path, explore_csv(explore_opts), out);
            return kExitOk;
        }
        if (*tau_cmd) {
            write_text(tau_out, tau_to_json(make_tau(tau_family.spec())) + "\n", out);
            return kExitOk;
        }
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IllConditioned& e) {
        err << "error: ill-conditioned input: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NoConvergence& e) {
        err << "error: " << e.what() << '\n';
        return kExitViolation;
    }
    return kExitUsage;
}

}  // namespace thetalab::cli
