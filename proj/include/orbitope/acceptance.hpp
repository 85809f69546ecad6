#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "orbitope/rng.hpp"

namespace orbitope {

enum class AcceptanceSuite { Fast, Full };

/// Runs the verification suite, printing one PASS/FAIL line per criterion to
/// `log`. The fast suite runs the same checks at reduced Monte Carlo scale;
/// the full suite uses the reference sample counts. Returns the report with
/// per-criterion results; `all_passed` is set accordingly.
nlohmann::json run_acceptance(AcceptanceSuite suite, RngSeed seed, std::ostream& log,
                              bool* all_passed);

}  // namespace orbitope
