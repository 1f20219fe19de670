#include "eigenbound/json_io.hpp"

#include <cstdint>
#include <sstream>

#include "eigenbound/errors.hpp"

namespace eigenbound {

using nlohmann::json;

namespace {

Rational rational_from_json(const json& v, const std::string& where) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    if (v.is_number_float()) return parse_rational(v.dump());  // shortest decimal round-trip
    throw InputError(where + ": expected a number or rational string");
}

json rational_to_json(const Rational& r) { return rational_to_string(r); }

const json& require(const json& doc, const std::string& key, const std::string& where) {
    if (!doc.contains(key)) throw InputError(where + ": missing key '" + key + "'");
    return doc.at(key);
}

}  // namespace

Polytope parse_polytope(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw InputError(std::string("polytope document is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw InputError("polytope document must be a JSON object");

    const json& jdim = require(doc, "dimension", "polytope");
    if (!jdim.is_number_integer() || jdim.get<int>() < 1)
        throw InputError("polytope: 'dimension' must be a positive integer");
    const int dim = jdim.get<int>();

    std::string name;
    if (doc.contains("name")) {
        if (!doc["name"].is_string()) throw InputError("polytope: 'name' must be a string");
        name = doc["name"].get<std::string>();
    }

    const json& jfacets = require(doc, "facets", "polytope");
    if (!jfacets.is_array() || jfacets.empty())
        throw InputError("polytope: 'facets' must be a non-empty array");

    std::vector<Facet> facets;
    for (std::size_t k = 0; k < jfacets.size(); ++k) {
        const json& jf = jfacets[k];
        const std::string where = "facet " + std::to_string(k);
        const json& jv = require(jf, "v", where);
        if (!jv.is_array() || static_cast<int>(jv.size()) != dim)
            throw InputError(where + ": 'v' must be an integer array of length " +
                             std::to_string(dim));
        Facet f;
        f.normal = Eigen::VectorXi(dim);
        for (int j = 0; j < dim; ++j) {
            if (!jv[j].is_number_integer())
                throw InputError(where + ": normal entries must be integers");
            f.normal[j] = jv[j].get<int>();
        }
        f.constant = rational_from_json(require(jf, "c", where), where);
        facets.push_back(std::move(f));
    }
    return Polytope(dim, std::move(facets), std::move(name));
}

json polytope_to_json(const Polytope& P) {
    json doc;
    if (!P.name().empty()) doc["name"] = P.name();
    doc["dimension"] = P.dim();
    json jfacets = json::array();
    for (const auto& f : P.facets()) {
        json jf;
        jf["v"] = json::array();
        for (int j = 0; j < P.dim(); ++j) jf["v"].push_back(f.normal[j]);
        jf["c"] = rational_to_json(f.constant);
        jfacets.push_back(std::move(jf));
    }
    doc["facets"] = std::move(jfacets);
    return doc;
}

MomentTensor parse_moments(const json& doc) {
    if (!doc.is_object()) throw InputError("moments document must be a JSON object");
    const json& jdim = require(doc, "dimension", "moments");
    if (!jdim.is_number_integer() || jdim.get<int>() < 1)
        throw InputError("moments: 'dimension' must be a positive integer");
    const int n = jdim.get<int>();

    MomentTensor M;
    M.dim = n;
    M.vol = rational_from_json(require(doc, "vol", "moments"), "moments.vol");
    if (M.vol <= 0) throw ValidationError("moments: volume must be positive");

    const json& jm1 = require(doc, "m1", "moments");
    if (!jm1.is_array() || static_cast<int>(jm1.size()) != n)
        throw InputError("moments: 'm1' must have length " + std::to_string(n));
    M.m1 = RatVector(n);
    for (int i = 0; i < n; ++i) M.m1[i] = rational_from_json(jm1[i], "moments.m1");

    const json& jg = require(doc, "gram", "moments");
    if (!jg.is_array() || static_cast<int>(jg.size()) != n)
        throw InputError("moments: 'gram' must be an n x n array");
    M.gram = RatMatrix(n, n);
    for (int i = 0; i < n; ++i) {
        if (!jg[i].is_array() || static_cast<int>(jg[i].size()) != n)
            throw InputError("moments: 'gram' must be an n x n array");
        for (int j = 0; j < n; ++j) M.gram(i, j) = rational_from_json(jg[i][j], "moments.gram");
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (M.gram(i, j) != M.gram(j, i))
                throw ValidationError("moments: gram matrix is not symmetric");

    const json& jt3 = require(doc, "t3", "moments");
    M.t3 = SymTensor3<Rational>(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                M.t3(i, j, k) = rational_from_json(jt3.at(i).at(j).at(k), "moments.t3");

    const json& jt4 = require(doc, "t4", "moments");
    M.t4 = SymTensor4<Rational>(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    M.t4(i, j, k, l) =
                        rational_from_json(jt4.at(i).at(j).at(k).at(l), "moments.t4");

    // symmetry of the higher tensors
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (M.t3(i, j, k) != M.t3(j, i, k) || M.t3(i, j, k) != M.t3(i, k, j))
                    throw ValidationError("moments: t3 is not symmetric");
                for (int l = 0; l < n; ++l)
                    if (M.t4(i, j, k, l) != M.t4(j, i, k, l) ||
                        M.t4(i, j, k, l) != M.t4(i, k, j, l) ||
                        M.t4(i, j, k, l) != M.t4(i, j, l, k))
                        throw ValidationError("moments: t4 is not symmetric");
            }
    return M;
}

MomentTensor parse_moments_text(const std::string& text) {
    try {
        return parse_moments(json::parse(text));
    } catch (const json::exception& e) {
        throw InputError(std::string("moments document is not valid JSON: ") + e.what());
    }
}

json moments_to_json(const MomentTensor& M, int max_degree) {
    const int n = M.dim;
    json doc;
    doc["dimension"] = n;
    doc["vol"] = rational_to_json(M.vol);
    if (max_degree >= 1) {
        json m1 = json::array();
        for (int i = 0; i < n; ++i) m1.push_back(rational_to_json(M.m1[i]));
        doc["m1"] = std::move(m1);
    }
    if (max_degree >= 2) {
        json g = json::array();
        for (int i = 0; i < n; ++i) {
            json row = json::array();
            for (int j = 0; j < n; ++j) row.push_back(rational_to_json(M.gram(i, j)));
            g.push_back(std::move(row));
        }
        doc["gram"] = std::move(g);
    }
    if (max_degree >= 3) {
        json t3 = json::array();
        for (int i = 0; i < n; ++i) {
            json plane = json::array();
            for (int j = 0; j < n; ++j) {
                json row = json::array();
                for (int k = 0; k < n; ++k) row.push_back(rational_to_json(M.t3(i, j, k)));
                plane.push_back(std::move(row));
            }
            t3.push_back(std::move(plane));
        }
        doc["t3"] = std::move(t3);
    }
    if (max_degree >= 4) {
        json t4 = json::array();
        for (int i = 0; i < n; ++i) {
            json cube = json::array();
            for (int j = 0; j < n; ++j) {
                json plane = json::array();
                for (int k = 0; k < n; ++k) {
                    json row = json::array();
                    for (int l = 0; l < n; ++l) row.push_back(rational_to_json(M.t4(i, j, k, l)));
                    plane.push_back(std::move(row));
                }
                cube.push_back(std::move(plane));
            }
            t4.push_back(std::move(cube));
        }
        doc["t4"] = std::move(t4);
    }
    return doc;
}

SymplecticPotential parse_potential(const json& doc, int dim) {
    if (!doc.is_object()) throw InputError("potential document must be a JSON object");
    SymplecticPotential S(dim);
    if (doc.contains("poly_correction")) {
        const json& terms = doc["poly_correction"];
        if (!terms.is_array()) throw InputError("potential: 'poly_correction' must be an array");
        for (const auto& t : terms) {
            const json& ja = require(t, "alpha", "poly_correction term");
            if (!ja.is_array() || static_cast<int>(ja.size()) != dim)
                throw InputError("potential: 'alpha' must be an integer array of length " +
                                 std::to_string(dim));
            MultiIndex alpha(dim);
            for (int i = 0; i < dim; ++i) {
                if (!ja[i].is_number_integer() || ja[i].get<int>() < 0)
                    throw InputError("potential: 'alpha' entries must be non-negative integers");
                alpha[i] = ja[i].get<int>();
            }
            const Rational c =
                rational_from_json(require(t, "coeff", "poly_correction term"), "coeff");
            S.poly_correction.add_term(alpha, c);
        }
    }
    if (doc.contains("log_terms")) {
        const json& terms = doc["log_terms"];
        if (!terms.is_array()) throw InputError("potential: 'log_terms' must be an array");
        for (const auto& t : terms) {
            const json& ja = require(t, "a", "log term");
            if (!ja.is_array() || static_cast<int>(ja.size()) != dim)
                throw InputError("potential: log term 'a' must have length " +
                                 std::to_string(dim));
            LogTerm lt;
            lt.direction = Eigen::VectorXd(dim);
            for (int i = 0; i < dim; ++i) {
                if (!ja[i].is_number()) throw InputError("potential: log term 'a' must be numeric");
                lt.direction[i] = ja[i].get<double>();
            }
            lt.offset = require(t, "b", "log term").get<double>();
            lt.coeff = require(t, "coeff", "log term").get<double>();
            S.log_terms.push_back(std::move(lt));
        }
    }
    return S;
}

SymplecticPotential parse_potential_text(const std::string& text, int dim) {
    try {
        return parse_potential(json::parse(text), dim);
    } catch (const json::exception& e) {
        throw InputError(std::string("potential document is not valid JSON: ") + e.what());
    }
}

json bound_result_to_json(const BoundResult& r) {
    json doc;
    doc["bound"] = r.bound;
    if (r.bound_exact) doc["bound_exact"] = rational_to_string(*r.bound_exact);
    doc["lambda"] = rational_to_string(r.lambda);
    if (r.argmin.size() > 0) {
        json a = json::array();
        for (Eigen::Index i = 0; i < r.argmin.size(); ++i) a.push_back(r.argmin[i]);
        doc["argmin"] = std::move(a);
    }
    doc["numerator"] = r.numerator;
    doc["denominator"] = r.denominator;
    json trace;
    trace["starts"] = r.trace.starts;
    trace["evaluations"] = r.trace.evaluations;
    trace["skipped_degenerate"] = r.trace.skipped_degenerate;
    trace["iterations_best"] = r.trace.iterations_best;
    doc["optimizer"] = std::move(trace);
    if (!r.extras.empty()) {
        json extras;
        for (const auto& [k, v] : r.extras) extras[k] = v;
        doc["integrals"] = std::move(extras);
    }
    if (!r.notes.empty()) doc["notes"] = r.notes;
    return doc;
}

json spectrum_to_json(const SpectrumResult& r) {
    json doc;
    doc["eigenvalues"] = r.eigenvalues;
    json basis = json::array();
    for (const auto& alpha : r.basis) basis.push_back(alpha);
    doc["basis"] = std::move(basis);
    json q;
    q["evaluations"] = r.quadrature_report.evaluations;
    q["max_depth_reached"] = r.quadrature_report.max_depth_reached;
    q["depth_cap_hits"] = r.quadrature_report.depth_cap_hits;
    q["est_error"] = r.quadrature_report.est_error;
    if (!r.quadrature_report.warnings.empty()) q["warnings"] = r.quadrature_report.warnings;
    doc["quadrature"] = std::move(q);
    return doc;
}

json fano_report_to_json(const FanoReport& r) {
    json doc;
    doc["constants_all_equal"] = r.constants_all_equal;
    if (r.constants_all_equal) doc["constant_value"] = rational_to_string(r.constant_value);
    doc["constants_equal_one"] = r.constants_equal_one;
    json b = json::array();
    for (Eigen::Index i = 0; i < r.barycenter.size(); ++i)
        b.push_back(rational_to_string(r.barycenter[i]));
    doc["barycenter"] = std::move(b);
    doc["barycenter_zero"] = r.barycenter_zero;
    doc["delzant"] = r.delzant;
    doc["pass"] = r.pass;
    if (!r.notes.empty()) doc["notes"] = r.notes;
    return doc;
}

json ks_integrals_to_json(const KSIntegrals& I) {
    json doc;
    doc["I0"] = rational_to_string(I.I0);
    doc["I2"] = rational_to_string(I.I2);
    doc["I3"] = rational_to_string(I.I3);
    doc["I4"] = rational_to_string(I.I4);
    json b = json::array();
    for (const auto& r : I.breakpoints) b.push_back(rational_to_string(r));
    doc["breakpoints"] = std::move(b);
    return doc;
}

std::string content_digest(const std::string& bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << "fnv1a:" << std::hex << hash;
    return os.str();
}

}  // namespace eigenbound
