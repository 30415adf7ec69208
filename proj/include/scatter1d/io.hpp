#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "scatter1d/dispersion.hpp"
#include "scatter1d/inverse.hpp"
#include "scatter1d/jost.hpp"
#include "scatter1d/potential.hpp"

namespace scatter1d {

// Potential JSON: {"form":"piecewise"|"grid"|"squarewell", ...} with the
// form-specific fields breakpoints/values, x0/dx/samples, or epsilon.
// Unknown fields are rejected.
Potential potential_from_json_text(const std::string& text);
Potential load_potential(const std::filesystem::path& path);
std::string potential_to_json_text(const Potential& v);
void save_potential(const Potential& v, const std::filesystem::path& path);

// header: k,reT,imT,reL,imL,reR,imR (one row per grid point, 17
// significant digits); with_check appends a |T|^2+|L|^2-1 column
void write_scattering_csv(std::ostream& os, const ScatteringCoefficients& sc,
                          char delimiter = ',', bool with_check = false);

// header: k,reD,imD (ascending positive k; negative k by symmetry)
void write_ratio_csv(std::ostream& os, std::span<const double> kgrid,
                     std::span<const Complex> d, char delimiter = ',');
ReflectionRatio load_sampled_ratio(const std::filesystem::path& path);

// identity reports: TSV rows n, lhs, rhs, residual
void write_identity_tsv(std::ostream& os, std::span<const IdentityReport> reports);

// ladder: TSV rows N, kappas (semicolon-separated), C_N
void write_ladder_tsv(std::ostream& os, std::span<const Candidate> candidates);

// {"status":"unique"|"ambiguous"|"none","candidates":[...]}
std::string disambiguation_to_json(const Disambiguation& res);

// model spec: "squarewell:EPSILON" (EPSILON may be the literal pi^2) or
// "potential:FILE.json"
ReflectionRatio parse_model_spec(const std::string& spec);
double parse_epsilon(const std::string& text);

std::string format_full(double x);  // round-trippable %.17g

}  // namespace scatter1d
