#include "eigenbound/rayleigh_ritz.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "eigenbound/errors.hpp"
#include "eigenbound/presets.hpp"

namespace eigenbound {

namespace {

std::string point_string(const Eigen::VectorXd& x) {
    std::ostringstream os;
    os << "(";
    for (Eigen::Index i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
    os << ")";
    return os.str();
}

}  // namespace

Eigen::MatrixXd canonical_hessian(const Polytope& P, const Eigen::VectorXd& x) {
    const int n = P.dim();
    if (x.size() != n) throw InputError("canonical_hessian: point has wrong dimension");
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
    for (const auto& f : P.facets()) {
        const double l = f.value_d(x);
        if (l <= 0)
            throw ValidationError("canonical_hessian: point " + point_string(x) +
                                  " is not strictly interior");
        const Eigen::VectorXd v = f.normal.cast<double>();
        H.noalias() += (v * v.transpose()) / l;
    }
    return H;
}

Eigen::MatrixXd potential_hessian(const SymplecticPotential& S, const Polytope& P,
                                  const Eigen::VectorXd& x) {
    const int n = P.dim();
    Eigen::MatrixXd H = canonical_hessian(P, x);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const double hij = S.poly_correction.derivative(i).derivative(j).evaluate(x);
            H(i, j) += hij;
            if (i != j) H(j, i) += hij;
        }
    for (const auto& term : S.log_terms) {
        const double l = term.direction.dot(x) + term.offset;
        if (l <= 0)
            throw ValidationError("potential_hessian: log term argument is nonpositive at " +
                                  point_string(x));
        H.noalias() += (term.coeff / l) * (term.direction * term.direction.transpose());
    }
    Eigen::LLT<Eigen::MatrixXd> llt(H);
    if (llt.info() != Eigen::Success)
        throw ValidationError("potential_hessian: invalid potential at " + point_string(x) +
                              " (Hessian not positive definite)");
    return H;
}

AssembledMatrices assemble_matrices(const Polytope& P, const SymplecticPotential& S,
                                    const std::vector<MultiPoly>& basis,
                                    const QuadratureOptions& opt) {
    const int n = P.dim();
    const int N = static_cast<int>(basis.size());
    if (N == 0) throw InputError("assemble_matrices: empty basis");
    for (const auto& f : basis)
        if (f.nvars() != n) throw InputError("assemble_matrices: basis polynomial dimension mismatch");

    const auto tri = triangulate(P);

    // mass matrix from exact moments
    Eigen::MatrixXd B(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = i; j < N; ++j) {
            const double v = to_double(integrate_polynomial(tri, basis[i] * basis[j]));
            B(i, j) = v;
            B(j, i) = v;
        }

    // precompute symbolic gradients and the polynomial-correction Hessian
    std::vector<std::vector<MultiPoly>> grads(N);
    for (int i = 0; i < N; ++i)
        for (int d = 0; d < n; ++d) grads[i].push_back(basis[i].derivative(d));
    std::vector<std::vector<MultiPoly>> hess_poly(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            hess_poly[i].push_back(S.poly_correction.derivative(i).derivative(j));

    const MatrixIntegrand integrand = [&](const Eigen::VectorXd& x, Eigen::MatrixXd& out) {
        Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
        for (const auto& f : P.facets()) {
            const double l = f.value_d(x);
            if (l <= 0)
                throw ValidationError("assemble_matrices: quadrature node " + point_string(x) +
                                      " not interior");
            const Eigen::VectorXd v = f.normal.cast<double>();
            H.noalias() += (v * v.transpose()) / l;
        }
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                const double hij = hess_poly[i][j].evaluate(x);
                H(i, j) += hij;
                if (i != j) H(j, i) += hij;
            }
        for (const auto& term : S.log_terms) {
            const double l = term.direction.dot(x) + term.offset;
            if (l <= 0)
                throw ValidationError("assemble_matrices: log term argument nonpositive at " +
                                      point_string(x));
            H.noalias() += (term.coeff / l) * (term.direction * term.direction.transpose());
        }
        Eigen::LLT<Eigen::MatrixXd> llt(H);
        if (llt.info() != Eigen::Success)
            throw ValidationError("assemble_matrices: Hessian not positive definite at node " +
                                  point_string(x));
        Eigen::MatrixXd G(n, N);
        for (int i = 0; i < N; ++i)
            for (int d = 0; d < n; ++d) G(d, i) = grads[i][d].evaluate(x);
        out.noalias() = G.transpose() * llt.solve(G);
    };

    AssembledMatrices result;
    result.B = std::move(B);
    result.A = integrate_adaptive(tri, N, integrand, opt, result.report);
    result.A = 0.5 * (result.A + result.A.transpose().eval());  // scrub quadrature roundoff

    // every node contributes a PSD term with positive weight, so A must be
    // PSD up to roundoff; treat a material violation as a numerical failure
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esA(result.A);
    const double scale = std::max(1.0, result.A.cwiseAbs().maxCoeff());
    if (esA.eigenvalues().minCoeff() < -1e-9 * scale)
        throw ConvergenceError("assemble_matrices: stiffness matrix not PSD (min eigenvalue " +
                               std::to_string(esA.eigenvalues().minCoeff()) + ")");
    Eigen::LLT<Eigen::MatrixXd> lltB(result.B);
    if (lltB.info() != Eigen::Success)
        throw ValidationError("assemble_matrices: basis linearly dependent in L^2 (mass matrix "
                              "not positive definite)");
    return result;
}

std::vector<double> generalized_eigenvalues(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
    if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows())
        throw InputError("generalized_eigenvalues: shape mismatch");
    Eigen::LLT<Eigen::MatrixXd> llt(B);
    if (llt.info() != Eigen::Success)
        throw ValidationError("generalized_eigenvalues: B not positive definite (basis linearly "
                              "dependent in L^2)");
    const Eigen::MatrixXd L = llt.matrixL();
    // C = L^{-1} A L^{-T}: reduce the pencil to a standard symmetric problem
    Eigen::MatrixXd C = L.triangularView<Eigen::Lower>().solve(A);
    C = L.triangularView<Eigen::Lower>().solve(C.transpose().eval());
    C = 0.5 * (C + C.transpose().eval());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(C);
    if (es.info() != Eigen::Success)
        throw ConvergenceError("generalized_eigenvalues: eigensolver failed");
    std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(out.begin(), out.end());
    return out;
}

SpectrumResult rayleigh_ritz_spectrum(const Polytope& P, const SymplecticPotential& S, int degree,
                                      const QuadratureOptions& opt) {
    if (degree < 1) throw InputError("rayleigh_ritz_spectrum: degree must be at least 1");
    if (degree > 4)
        throw InputError("rayleigh_ritz_spectrum: degree capped at 4 (raw monomial conditioning)");

    SpectrumResult result;
    result.basis = multiindices_up_to(P.dim(), degree);
    std::vector<MultiPoly> basis;
    basis.reserve(result.basis.size());
    for (const auto& alpha : result.basis) basis.push_back(MultiPoly::monomial(alpha, Rational(1)));

    AssembledMatrices M = assemble_matrices(P, S, basis, opt);
    result.eigenvalues = generalized_eigenvalues(M.A, M.B);
    result.quadrature_report = std::move(M.report);
    return result;
}

SymplecticPotential doran_dp6_potential() {
    SymplecticPotential S(2);

    const MultiPoly x1 = MultiPoly::variable(2, 0);
    const MultiPoly x2 = MultiPoly::variable(2, 1);
    const MultiPoly U = x1 * x1 + x1 * x2 + x2 * x2;
    const MultiPoly V = (x1 * x2 * (x1 + x2)).pow(2);

    S.poly_correction = U * parse_rational("-0.22412") + U.pow(2) * parse_rational("-0.01450") +
                        U.pow(3) * parse_rational("-0.00521") + V * parse_rational("0.00734");

    // the source metric uses the (1/2) sum l_k log l_k normalization of the
    // canonical part; subtract half of each facet term
    const Polytope hexagon = polytope_preset("dp6");
    for (const auto& f : hexagon.facets()) {
        LogTerm t;
        t.direction = f.normal.cast<double>();
        t.offset = to_double(f.constant);
        t.coeff = -0.5;
        S.log_terms.push_back(std::move(t));
    }
    return S;
}

const std::vector<std::string>& potential_preset_names() {
    static const std::vector<std::string> names = {"doran-dp6"};
    return names;
}

bool has_potential_preset(const std::string& name) { return name == "doran-dp6"; }

SymplecticPotential potential_preset(const std::string& name) {
    if (name == "doran-dp6") return doran_dp6_potential();
    throw InputError("unknown potential preset '" + name + "'");
}

}  // namespace eigenbound
