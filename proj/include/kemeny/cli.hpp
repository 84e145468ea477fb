#pragma once

#include "kemeny/chain_io.hpp"
#include "kemeny/markov_core.hpp"
#include "kemeny/mc_estimate.hpp"
#include "kemeny/torus_core.hpp"

#include "json.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace kemeny::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitTruncated = 3;
inline constexpr int kReportSchema = 1;

using Json = nlohmann::ordered_json;

/// Exact-pipeline report for a validated chain.
Json analyze_report(const ChainFile& file, const Chain& chain, const ChainInvariants& inv,
                    const ChainDiagnostics& diag);

Json mc_record(const McEstimate& est);

struct SimulateRequest {
    std::string game;  // "I" or "II"
    std::size_t state = 0;
    std::size_t episodes = 100000;
    std::uint64_t seed = 0;
};

Json simulate_report(const ChainFile& file, const Chain& chain, const ChainInvariants& inv,
                     const SimulateRequest& req, const McEstimate& est);

struct TorusRequest {
    double l1 = 1.0;
    double l2 = 1.0;
    std::optional<double> eps;
    std::size_t episodes = 20000;
    std::uint64_t seed = 0;
};

struct TorusMcRow {
    double eps;
    double step;
    McEstimate est;
    double formula;
};

Json torus_report(const FlatTorus& torus, const TorusInvariants& inv, const std::vector<TorusMcRow>& rows);

/// eps, mc_mean, mc_stderr, formula.
std::string torus_csv(const std::vector<TorusMcRow>& rows);

/// Entry point behind the kemeny_lab executable. Reports go to --out or
/// `out`; human-readable messages go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kemeny::cli
