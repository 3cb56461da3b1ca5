#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "laurentlab/checks/report.hpp"
#include "laurentlab/somos/somos.hpp"

namespace laurentlab::somos {

struct SuiteConfig {
    int max_n = 12;
    /// Largest index in the coprimeness sweep over x_n; 0 means max_n.
    int coprime_max = 0;
    /// Largest index for xi tilde and the u checks built on it; 0 means min(max_n, 10).
    int xi_max = 0;
    int c_max = 40;
    /// The integer sequence stops early once a value exceeds this many bits.
    std::size_t c_bits = 1u << 16;
    /// Oracle iteration stops once an operand core exceeds this many terms;
    /// later indices are compared modulo a prime instead.
    std::size_t oracle_budget = 8000;
    int modular_points = 8;
    std::uint64_t seed = 1;
    unsigned jobs = 1;
};

/// laurent, coprime, closed-form, u-equation, roundtrip, c-sequence,
/// specializations, divisibility
const std::vector<std::string>& check_names();

/// Runs the named checks in the order given. Throws std::invalid_argument on
/// an unknown name before any computation.
checks::SuiteReport run_suite(SomosEngine& engine, const SuiteConfig& config, const std::vector<std::string>& names);

checks::SuiteReport check_laurent(SomosEngine& engine, const SuiteConfig& config);
checks::SuiteReport check_coprime(SomosEngine& engine, const SuiteConfig& config);
checks::SuiteReport check_closed_form(SomosEngine& engine, const SuiteConfig& config);
checks::SuiteReport check_u_equation(SomosEngine& engine, const SuiteConfig& config);
checks::SuiteReport check_roundtrip(SomosEngine& engine, const SuiteConfig& config);
checks::SuiteReport check_c_sequence(SomosEngine& engine, const SuiteConfig& config);
checks::SuiteReport check_specializations(SomosEngine& engine, const SuiteConfig& config);
checks::SuiteReport check_divisibility(SomosEngine& engine, const SuiteConfig& config);

/// "x<n> = <poly>" lines for 0 <= n <= max_n, or "c<n> = <int>" for the
/// all-ones values when ones is set (n >= 4).
std::vector<std::string> dump(SomosEngine& engine, int max_n, bool ones);

} // namespace laurentlab::somos
