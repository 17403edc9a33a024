#pragma once

// JSON and CSV encodings shared by the CLI and the tests.

#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "convseq/analysis.hpp"
#include "convseq/constants.hpp"
#include "convseq/recurrence.hpp"
#include "convseq/sequences.hpp"
#include "convseq/solver.hpp"

namespace convseq {

using Json = nlohmann::json;

/// {"num": "p", "den": "q"} for rationals, {"re": x, "im": y} for complex.
Json coefficient_to_json(const Coefficient& x);

/// Accepts the two canonical objects plus JSON integers (exact), JSON
/// floats (complex) and "p/q" strings. ConfigError otherwise.
Coefficient coefficient_from_json(const Json& j);

std::vector<Coefficient> coefficients_from_json(const Json& j);
Json coefficients_to_json(std::span<const Coefficient> xs);

/// A bare array is a finite b; objects are {"kind": "finite", "values": [...]}
/// or {"kind": "catalog", "name": ..., "params": {...}}; a bare string
/// names a parameterless catalog entry.
SequenceSpec sequence_from_json(const Json& j);
Json sequence_to_json(const SequenceSpec& b);

Json alpha_to_json(const AlphaTable& alpha);
Json limit_report_to_json(const LimitReport& report);
Json solve_report_to_json(const SolveReport& report);
Json constant_run_to_json(const ConstantRun& run);

/// Header `n,alpha_0,...,alpha_{m-1}`.
std::string alpha_to_csv(const AlphaTable& alpha);
/// Header `n,a`.
std::string sequence_to_csv(std::span<const Coefficient> a, const std::string& column = "a");
std::string limit_report_to_csv(const LimitReport& report);
std::string solve_report_to_csv(const SolveReport& report);
std::string constant_run_to_csv(const ConstantRun& run);

/// Real decimal for plotting: rationals rounded to binary64, complex values
/// must have zero imaginary part (DomainError otherwise).
std::string plot_decimal(const Coefficient& x);

}  // namespace convseq
