// Command-line front end: polytope bounds, cohomogeneity-one bounds, exact
// moments, Rayleigh-Ritz spectra, and the summary table.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "eigenbound/errors.hpp"
#include "eigenbound/json_io.hpp"
#include "eigenbound/koiso_sakane.hpp"
#include "eigenbound/presets.hpp"
#include "eigenbound/rayleigh_ritz.hpp"
#include "eigenbound/toric_bound.hpp"
#include "eigenbound/version.hpp"

using namespace eigenbound;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitValidation = 2;
constexpr int kExitConvergence = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string format_double(double x) {
    std::ostringstream os;
    os << std::setprecision(10) << x;
    return os.str();
}

std::string format_bound(const BoundResult& r) {
    if (r.bound_exact)
        return rational_to_string(*r.bound_exact) + " = " + format_double(r.bound);
    return format_double(r.bound);
}

void emit_report(const std::string& command, const std::string& digest, json result) {
    json report;
    report["command"] = command;
    report["input_digest"] = digest;
    report["version"] = std::string("eigenbound ") + kVersion;
    report["result"] = std::move(result);
    std::cout << report.dump(2) << "\n";
}

struct PolytopeInput {
    std::string file;
    std::string preset;

    void add_options(CLI::App* cmd, bool required = true) {
        cmd->add_option("polytope", file, "polytope JSON document");
        cmd->add_option("--preset", preset, "built-in polytope name");
        if (required) cmd->callback([this]() {
            if (file.empty() == preset.empty())
                throw CLI::ValidationError(
                    "input", "give exactly one of a polytope file or --preset");
        });
    }

    Polytope load(std::string& digest) const {
        if (!preset.empty()) {
            if (has_polytope_preset(preset)) {
                const Polytope P = polytope_preset(preset);
                digest = content_digest(polytope_to_json(P).dump());
                return P;
            }
            throw InputError("unknown preset '" + preset + "'");
        }
        const std::string text = read_file(file);
        digest = content_digest(text);
        return parse_polytope(text);
    }
};

int default_threads() {
    if (const char* env = std::getenv("EIGENBOUND_THREADS")) {
        try {
            return std::max(1, std::stoi(env));
        } catch (const std::exception&) {
            throw InputError("EIGENBOUND_THREADS must be an integer");
        }
    }
    return 1;
}

json table1_rows(const Rational& lambda) {
    json rows = json::array();
    const char* manifolds[4] = {"CP^1", "CP^2", "CP^1 x CP^1", "CP^2 # 3 bar(CP^2)"};
    const char* presets[4] = {"cp1", "cp2", "cp1xcp1", "dp6"};
    for (int i = 0; i < 4; ++i) {
        const BoundResult r = minimize_bound(moment_tensors(polytope_preset(presets[i])), lambda);
        json row;
        row["manifold"] = manifolds[i];
        row["preset"] = presets[i];
        row["bound"] = r.bound;
        if (r.bound_exact) row["bound_exact"] = rational_to_string(*r.bound_exact);
        rows.push_back(std::move(row));
    }
    {
        const BoundResult r = minimize_bound(moment_tensors(polytope_preset("threefold")), lambda);
        json row;
        row["manifold"] = "P(O + O(1,-1)) over CP^1 x CP^1";
        row["preset"] = "threefold";
        row["bound"] = r.bound;
        if (r.bound_exact) row["bound_exact"] = rational_to_string(*r.bound_exact);
        rows.push_back(std::move(row));
    }
    {
        KSData D;
        D.n = {0, 1, 1, 0};
        D.p = {0, 2, 2, 0};
        D.q = {1, 1, -1, 1};
        D.lambda = lambda;
        const BoundResult r = ks_bound(D);
        json row;
        row["manifold"] = "P(O + O(1,-1)) over CP^1 x CP^1";
        row["route"] = "cohomogeneity-one integrals (weaker than the toric route)";
        row["bound"] = r.bound;
        if (r.bound_exact) row["bound_exact"] = rational_to_string(*r.bound_exact);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<int> parse_int_csv(const std::string& text, const std::string& flag) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw InputError(flag + ": '" + item + "' is not an integer");
        }
    }
    if (out.empty()) throw InputError(flag + ": empty list");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"eigenbound: second-eigenvalue upper bounds for toric and cohomogeneity-one "
                 "Kahler-Einstein metrics from moment data"};
    app.set_version_flag("--version", std::string("eigenbound ") + kVersion);
    app.require_subcommand(1);

    int threads = -1;
    app.add_option("--threads", threads,
                   "worker threads for quadrature (default: serial; env EIGENBOUND_THREADS)");

    std::string command_line;
    for (int i = 0; i < argc; ++i) command_line += std::string(i ? " " : "") + argv[i];

    // ---- bound ----
    auto* bound = app.add_subcommand("bound", "second-eigenvalue upper bounds");
    bound->require_subcommand(1);

    auto* toric = bound->add_subcommand("toric", "bound from exact polytope moments");
    PolytopeInput toric_input;
    toric_input.add_options(toric, false);
    std::string toric_lambda = "1";
    std::string toric_moments_file;
    std::string emit_polytope_path;
    bool toric_recenter = false, toric_json = false;
    toric->add_option("--lambda", toric_lambda, "Einstein constant (rational or decimal)");
    toric->add_option("--moments", toric_moments_file, "raw moments JSON instead of a polytope");
    toric->add_flag("--recenter", toric_recenter, "translate to the barycenter before whitening");
    toric->add_flag("--json", toric_json, "machine-readable report");
    toric->add_option("--emit-polytope", emit_polytope_path,
                      "write the resolved polytope document to this path");

    auto* ks = bound->add_subcommand("ks", "bound from cohomogeneity-one weight integrals");
    std::string ks_n, ks_p, ks_q, ks_lambda = "1";
    bool ks_json = false;
    ks->add_option("--n", ks_n, "fiber dimensions, comma separated")->required();
    ks->add_option("--p", ks_p, "Chern indices, comma separated")->required();
    ks->add_option("--q", ks_q, "Euler-class coefficients, comma separated")->required();
    ks->add_option("--lambda", ks_lambda, "Einstein constant");
    ks->add_flag("--json", ks_json, "machine-readable report");

    auto* family = bound->add_subcommand("ks-family", "the W_{q,-q} family over CP^N x CP^N");
    int family_N = 0, family_q = 0;
    bool family_table = false, family_json = false;
    std::string family_lambda = "1";
    family->add_option("--N", family_N, "projective-space dimension");
    family->add_option("--q", family_q, "twist 0 < q <= N");
    family->add_flag("--table", family_table, "sweep the published (N, q) grid");
    family->add_option("--lambda", family_lambda, "Einstein constant");
    family->add_flag("--json", family_json, "machine-readable report");

    // ---- moments ----
    auto* moments_cmd = app.add_subcommand("moments", "exact moment tensors as JSON");
    PolytopeInput moments_input;
    moments_input.add_options(moments_cmd);
    int max_degree = 4;
    moments_cmd->add_option("--max-degree", max_degree, "highest tensor degree to emit (<= 4)")
        ->check(CLI::Range(0, 4));

    // ---- spectrum ----
    auto* spectrum_cmd = app.add_subcommand("spectrum", "Rayleigh-Ritz spectrum of a toric metric");
    PolytopeInput spectrum_input;
    spectrum_input.add_options(spectrum_cmd);
    std::string potential_arg;
    int degree = 2;
    double tol = 1e-6;
    bool spectrum_json = false;
    spectrum_cmd->add_option("--potential", potential_arg,
                             "potential JSON document or preset name (canonical if omitted)");
    spectrum_cmd->add_option("--degree", degree, "monomial basis degree (1..4)");
    spectrum_cmd->add_option("--tol", tol, "quadrature tolerance per matrix entry");
    spectrum_cmd->add_flag("--json", spectrum_json, "machine-readable report");

    // ---- check ----
    auto* check_cmd = app.add_subcommand("check", "normalization and Delzant diagnostics");
    PolytopeInput check_input;
    check_input.add_options(check_cmd);
    bool check_json = false;
    check_cmd->add_flag("--json", check_json, "machine-readable report");

    // ---- table1 ----
    auto* table_cmd = app.add_subcommand("table1", "upper bounds for the five example manifolds");
    std::string table_lambda = "1";
    bool table_json = false;
    table_cmd->add_option("--lambda", table_lambda, "Einstein constant");
    table_cmd->add_flag("--json", table_json, "machine-readable report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (threads < 0) threads = default_threads();

        if (toric->parsed()) {
            BoundResult result;
            std::string digest;
            if (!toric_moments_file.empty() ||
                (!toric_input.preset.empty() && has_moment_preset(toric_input.preset))) {
                if (toric_recenter)
                    throw InputError("--recenter applies to polytope input, not raw moments");
                MomentTensor M;
                if (!toric_moments_file.empty()) {
                    const std::string text = read_file(toric_moments_file);
                    digest = content_digest(text);
                    M = parse_moments_text(text);
                } else {
                    M = moment_preset(toric_input.preset);
                    digest = content_digest(moments_to_json(M).dump());
                }
                result = bound_from_raw_moments(M, parse_rational(toric_lambda));
            } else {
                Polytope P = toric_input.load(digest);
                if (!emit_polytope_path.empty()) {
                    std::ofstream out(emit_polytope_path);
                    if (!out) throw InputError("cannot write '" + emit_polytope_path + "'");
                    out << polytope_to_json(P).dump(2) << "\n";
                }
                if (toric_recenter) {
                    const RatVector c = barycenter(P);
                    bool moved = false;
                    for (int j = 0; j < P.dim(); ++j)
                        if (c[j] != 0) moved = true;
                    if (moved) {
                        RatVector shift = -c;
                        P = translate(P, shift);
                        std::cerr << "warning: recentered polytope by its barycenter; the Fano "
                                     "normalization (all facet constants equal) is altered\n";
                    }
                }
                result = minimize_bound(moment_tensors(P), parse_rational(toric_lambda));
            }
            if (toric_json) {
                emit_report(command_line, digest, bound_result_to_json(result));
            } else {
                std::cout << "lambda_2 upper bound: " << format_bound(result) << "\n";
                if (result.argmin.size() > 0) {
                    std::cout << "argmin direction:";
                    for (Eigen::Index i = 0; i < result.argmin.size(); ++i)
                        std::cout << " " << format_double(result.argmin[i]);
                    std::cout << "\n";
                }
                std::cout << "Einstein constant: " << rational_to_string(result.lambda) << "\n";
                for (const auto& note : result.notes) std::cout << "note: " << note << "\n";
            }
            return kExitOk;
        }

        if (ks->parsed()) {
            KSData D;
            D.n = parse_int_csv(ks_n, "--n");
            D.p = parse_int_csv(ks_p, "--p");
            D.q = parse_int_csv(ks_q, "--q");
            D.lambda = parse_rational(ks_lambda);
            const std::string digest = content_digest(ks_n + "|" + ks_p + "|" + ks_q);
            const BoundResult result = ks_bound(D);
            if (ks_json) {
                json body = bound_result_to_json(result);
                body["integrals"] = ks_integrals_to_json(ks_integrals(D));
                body["integrals"]["futaki"] = rational_to_string(futaki_integral(D));
                emit_report(command_line, digest, std::move(body));
            } else {
                const KSIntegrals I = ks_integrals(D);
                std::cout << "I0 = " << rational_to_string(I.I0)
                          << ", I2 = " << rational_to_string(I.I2)
                          << ", I3 = " << rational_to_string(I.I3)
                          << ", I4 = " << rational_to_string(I.I4) << "\n";
                std::cout << "obstruction integral: " << rational_to_string(futaki_integral(D))
                          << "\n";
                for (const auto& note : result.notes) std::cout << note << "\n";
                std::cout << "lambda_2 upper bound: " << format_bound(result) << "\n";
            }
            return kExitOk;
        }

        if (family->parsed()) {
            const Rational lambda = parse_rational(family_lambda);
            if (family_table) {
                json rows = json::array();
                for (const auto& row : ks_family_table()) {
                    json r;
                    r["N"] = row.N;
                    r["q"] = row.q;
                    r["bound_exact"] = rational_to_string(row.bound * lambda);
                    r["bound"] = to_double(row.bound * lambda);
                    rows.push_back(std::move(r));
                }
                if (family_json) {
                    emit_report(command_line, content_digest("ks-family-table"), std::move(rows));
                } else {
                    std::cout << "  N   q   bound\n";
                    for (const auto& r : rows)
                        std::cout << "  " << r["N"].get<int>() << "   " << r["q"].get<int>()
                                  << "   " << format_double(r["bound"].get<double>()) << "\n";
                }
                return kExitOk;
            }
            if (family_N <= 0) throw InputError("ks-family: --N is required (or use --table)");
            KSData D = ks_family_wq(family_N, family_q);
            D.lambda = lambda;
            const BoundResult result = ks_bound(D);
            const std::string digest =
                content_digest("ks-family:" + std::to_string(family_N) + "," +
                               std::to_string(family_q));
            if (family_json) {
                emit_report(command_line, digest, bound_result_to_json(result));
            } else {
                std::cout << "W_{q,-q} with N = " << family_N << ", q = " << family_q << "\n";
                std::cout << "lambda_2 upper bound: " << format_bound(result) << "\n";
            }
            return kExitOk;
        }

        if (moments_cmd->parsed()) {
            std::string digest;
            const Polytope P = moments_input.load(digest);
            const MomentTensor M = moment_tensors(P);
            emit_report(command_line, digest, moments_to_json(M, max_degree));
            return kExitOk;
        }

        if (spectrum_cmd->parsed()) {
            std::string digest;
            const Polytope P = spectrum_input.load(digest);
            SymplecticPotential S(P.dim());
            if (!potential_arg.empty()) {
                if (has_potential_preset(potential_arg)) {
                    S = potential_preset(potential_arg);
                } else {
                    const std::string text = read_file(potential_arg);
                    digest = content_digest(digest + text);
                    S = parse_potential_text(text, P.dim());
                }
            }
            QuadratureOptions opt;
            opt.tol = tol;
            opt.threads = threads;
            const SpectrumResult result = rayleigh_ritz_spectrum(P, S, degree, opt);
            if (spectrum_json) {
                emit_report(command_line, digest, spectrum_to_json(result));
            } else {
                std::cout << "eigenvalues:";
                for (double ev : result.eigenvalues) std::cout << " " << format_double(ev);
                std::cout << "\n";
                for (const auto& w : result.quadrature_report.warnings)
                    std::cout << "warning: " << w << "\n";
            }
            return kExitOk;
        }

        if (check_cmd->parsed()) {
            std::string digest;
            const Polytope P = check_input.load(digest);
            const FanoReport rep = check_fano_normalized(P);
            if (check_json) {
                json body = fano_report_to_json(rep);
                if (!P.warnings().empty()) body["polytope_warnings"] = P.warnings();
                emit_report(command_line, digest, std::move(body));
            } else {
                std::cout << "facet constants all equal: " << (rep.constants_all_equal ? "yes" : "no");
                if (rep.constants_all_equal)
                    std::cout << " (value " << rational_to_string(rep.constant_value) << ")";
                std::cout << "\n";
                std::cout << "barycenter: (";
                for (Eigen::Index i = 0; i < rep.barycenter.size(); ++i)
                    std::cout << (i ? ", " : "") << rational_to_string(rep.barycenter[i]);
                std::cout << ")\n";
                std::cout << "Delzant at every vertex: " << (rep.delzant ? "yes" : "no") << "\n";
                std::cout << "Fano-normalized: " << (rep.pass ? "yes" : "no") << "\n";
                for (const auto& note : rep.notes) std::cout << "note: " << note << "\n";
                for (const auto& w : P.warnings()) std::cout << "warning: " << w << "\n";
            }
            return kExitOk;
        }

        if (table_cmd->parsed()) {
            const json rows = table1_rows(parse_rational(table_lambda));
            if (table_json) {
                emit_report(command_line, content_digest("table1"), rows);
            } else {
                std::cout << std::left;
                for (const auto& r : rows) {
                    std::cout << "  " << std::setw(34) << r["manifold"].get<std::string>();
                    if (r.contains("bound_exact"))
                        std::cout << r["bound_exact"].get<std::string>() << " = ";
                    std::cout << format_double(r["bound"].get<double>());
                    if (r.contains("route")) std::cout << "   [" << r["route"].get<std::string>() << "]";
                    std::cout << "\n";
                }
            }
            return kExitOk;
        }
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ConvergenceError& e) {
        std::cerr << "convergence error: " << e.what() << "\n";
        return kExitConvergence;
    }
    return kExitOk;
}
