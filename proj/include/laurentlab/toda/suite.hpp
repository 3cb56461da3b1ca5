#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "laurentlab/checks/report.hpp"
#include "laurentlab/toda/toda.hpp"

namespace laurentlab::toda {

struct SuiteConfig {
    int max_t = 6;
    /// Largest t for sigma tilde and the U checks built on it; 0 means min(max_t, 5).
    /// Expanded sigma tilde cores grow to ~10^5 terms at t = 6.
    int sigma_max = 0;
    int c_max = 40;
    std::size_t c_bits = 1u << 16;
    int modular_points = 4;
    std::uint64_t seed = 1;
    unsigned jobs = 1;
};

/// laurent, coprime, closed-form, u-equation, roundtrip, c-sequence,
/// specializations, divisibility
const std::vector<std::string>& check_names();

/// Runs the named checks in the order given. Throws std::invalid_argument on
/// an unknown name before any computation.
checks::SuiteReport run_suite(TodaEngine& engine, const SuiteConfig& config, const std::vector<std::string>& names);

checks::SuiteReport check_laurent(TodaEngine& engine, const SuiteConfig& config);
checks::SuiteReport check_coprime(TodaEngine& engine, const SuiteConfig& config);
checks::SuiteReport check_closed_form(TodaEngine& engine, const SuiteConfig& config);
checks::SuiteReport check_u_equation(TodaEngine& engine, const SuiteConfig& config);
checks::SuiteReport check_roundtrip(TodaEngine& engine, const SuiteConfig& config);
checks::SuiteReport check_c_sequence(TodaEngine& engine, const SuiteConfig& config);
checks::SuiteReport check_specializations(TodaEngine& engine, const SuiteConfig& config);
checks::SuiteReport check_divisibility(TodaEngine& engine, const SuiteConfig& config);

/// "tau:<t>:<dn>:<dm> = <poly>" lines for every computed layer up to max_t,
/// or the all-ones integer values when ones is set.
std::vector<std::string> dump(TodaEngine& engine, int max_t, bool ones);

} // namespace laurentlab::toda
