#pragma once

#include "opuc/asymptotics.hpp"
#include "opuc/coeffseq.hpp"
#include "opuc/recursion.hpp"
#include "opuc/roots.hpp"
#include "opuc/zeros.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace opuc {

using Json = nlohmann::ordered_json;

// Fixed round-trip formatting used by every CSV writer.
std::string format_double(double x);

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

// Family spec JSON. A remainder without an explicit seed takes `default_seed`.
// Malformed input raises ErrorCode::Config.
CoefficientFamily family_from_json(const Json& j, std::uint64_t default_seed = 0);
CoefficientFamily load_family(const std::filesystem::path& path, std::uint64_t default_seed = 0);
Json family_to_json(const CoefficientFamily& family);

// Columns n, re, im for n < N.
void write_coefficients_csv(std::ostream& out, const CoefficientFamily& family, int N);

Json poly_to_json(int n, const ComplexPoly& p);
ComplexPoly poly_from_json(const Json& j);

// Columns n, index, re, im, modulus, arg, residual (+ class when given).
void write_roots_csv(std::ostream& out, int n, const RootSet& roots,
                     const std::vector<ZeroClass>* classes = nullptr);

Json report_to_json(const ZeroReport& report);
Json clock_to_json(const ClockStats& stats);
Json bound_report_to_json(const BoundReport& report);
// Columns n and the five measured/bound ratios.
void write_bound_csv(std::ostream& out, const BoundReport& report);
// Columns n, re z, im z, |s|, |interior|, |outer|, residual.
void write_decomposition_csv(std::ostream& out, const std::vector<CriticalDecomposition>& rows);

// Pretty JSON with a trailing newline.
void write_json(std::ostream& out, const Json& j);
void write_text_file(const std::filesystem::path& path, const std::string& content);

} // namespace opuc
