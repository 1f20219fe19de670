#ifndef EIGENBOUND_JSON_IO_HPP
#define EIGENBOUND_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "eigenbound/bound_result.hpp"
#include "eigenbound/koiso_sakane.hpp"
#include "eigenbound/moments.hpp"
#include "eigenbound/polytope.hpp"
#include "eigenbound/rayleigh_ritz.hpp"

namespace eigenbound {

/**
 * Parses the polytope document format:
 *   {"name": string?, "dimension": int,
 *    "facets": [{"v": [int,...], "c": number|"p/q"}]}
 * Constants are parsed exactly; numbers go through their shortest decimal
 * rendering so "0.1" means 1/10. Throws InputError on malformed documents
 * and ValidationError on mathematically invalid ones.
 */
Polytope parse_polytope(const std::string& text);

nlohmann::json polytope_to_json(const Polytope& P);

// {"dimension": n, "vol": r, "m1": [r], "gram": [[r]], "t3": [[[r]]],
//  "t4": [[[[r]]]]} with r a number or rational string.
MomentTensor parse_moments(const nlohmann::json& doc);
MomentTensor parse_moments_text(const std::string& text);

nlohmann::json moments_to_json(const MomentTensor& M, int max_degree = 4);

// {"poly_correction": [{"alpha": [int,...], "coeff": number|string}],
//  "log_terms": [{"a": [number,...], "b": number, "coeff": number}]}
SymplecticPotential parse_potential(const nlohmann::json& doc, int dim);
SymplecticPotential parse_potential_text(const std::string& text, int dim);

nlohmann::json bound_result_to_json(const BoundResult& r);
nlohmann::json spectrum_to_json(const SpectrumResult& r);
nlohmann::json fano_report_to_json(const FanoReport& r);
nlohmann::json ks_integrals_to_json(const KSIntegrals& I);

// 64-bit FNV-1a over raw bytes, rendered as "fnv1a:hex".
std::string content_digest(const std::string& bytes);

}  // namespace eigenbound

#endif
