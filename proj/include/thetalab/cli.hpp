#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "thetalab/divisor.hpp"
#include "thetalab/families.hpp"

namespace thetalab::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitViolation = 1,
    kExitConditional = 2,
    kExitUsage = 64,
};

/// Accepts forms like "i", "-2i", "0.5+1.2i", "3", "1e-3-2.5i".
cplx parse_complex(const std::string& text);
std::vector<cplx> parse_complex_list(const std::string& text);

enum class TranslateKind { Zero, Torsion, Through, Random, Explicit };

const char* to_string(TranslateKind kind);

/// zero | torsion:IDX | through:SEED:IDX | random:SEED | vec:C1,C2,...
struct TranslateSpec {
    TranslateKind kind = TranslateKind::Zero;
    std::uint32_t index = 0;
    std::uint64_t seed = 0;
    std::vector<cplx> vec;
};

TranslateSpec parse_translate(const std::string& text);

/// Realizes the translate for a given τ; validates indices against 4^g.
CVector resolve_translate(const TranslateSpec& spec, const ThetaDivisor& divisor);

struct ExperimentConfig {
    FamilySpec family;
    TranslateSpec translate;
    Thresholds thresholds;
    bool symmetric = true;
    bool irreducible = false;
    std::string out_path;
    std::string csv_path;
};

/// Runs count_on_translate and verify_bounds for one configuration and fills
/// the report's metadata. Throws InvalidInput on bad configuration.
struct CountOutcome {
    CountReport report;
    BoundsVerdict verdict;
    int exit_code = kExitOk;
};
CountOutcome run_count(const ExperimentConfig& config);

/// Entry point shared by the thetalab executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace thetalab::cli
