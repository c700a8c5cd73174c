#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "adegkit/constructions.hpp"
#include "adegkit/upperbound.hpp"
#include "adegkit/witness.hpp"

namespace adk {

// Self-contained, line-oriented, deterministic record of a built object,
// the properties claimed for it, and the verdicts found. Re-verification
// recomputes everything from the payload; stored verdicts are never trusted.
struct Certificate {
    std::string kind;      // "witness" or "approximant"
    std::string funcspec;  // target function, boolfn grammar
    std::vector<std::array<std::string, 3>> params;  // key, value, provenance
    std::optional<Witness> witness;
    WitnessClaims claims;
    std::vector<ClaimResult> results;
};

std::string serialize(const Certificate& c);
Certificate parse_certificate(const std::string& text);

std::string serialize_witness(const Witness& w);

// Recomputes every claimed verdict from the payload alone.
std::vector<ClaimResult> recompute(const Certificate& c);
bool verdicts_match(const std::vector<ClaimResult>& a, const std::vector<ClaimResult>& b);

// Convenience builders used by the command-line tool.
Certificate certify_witness(const std::string& funcspec, const Witness& w,
                            const WitnessClaims& claims);
Certificate certify_approximant(const ApproximantReport& rep, const Q& error_bound);

}  // namespace adk
