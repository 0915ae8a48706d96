#ifndef EHRELAY_VALIDATE_HPP
#define EHRELAY_VALIDATE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace ehrelay::validate {

struct Options {
    bool quick = false;        // reduced trial counts, wider statistical slack
    std::uint64_t seed = 20260808;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

// Header line describing the run mode (trial counts, seed); printed before
// the per-criterion lines.
std::string report_header(const Options& opts);

// Runs the full check battery in order.  Each criterion is self-contained
// and pinned to its tolerance; quick mode only shrinks Monte-Carlo sizes.
std::vector<CriterionResult> run_all(const Options& opts);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace ehrelay::validate

#endif
