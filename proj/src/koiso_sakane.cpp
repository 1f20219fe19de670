#include "eigenbound/koiso_sakane.hpp"

#include <algorithm>

#include "eigenbound/errors.hpp"
#include "eigenbound/multipoly.hpp"

namespace eigenbound {

namespace {

// 1D polynomial helpers on top of MultiPoly with a single variable.

MultiPoly affine_1d(const Rational& a, const Rational& b) {
    // a + b*x
    MultiPoly p = MultiPoly::constant(1, a);
    p.add_term({1}, b);
    return p;
}

Rational integrate_1d(const MultiPoly& f, const Rational& lo, const Rational& hi) {
    Rational total = 0;
    for (const auto& [alpha, c] : f.terms()) {
        const int d = alpha[0];
        Rational hp = 1, lp = 1;
        for (int i = 0; i <= d; ++i) {
            hp *= hi;
            lp *= lo;
        }
        total += c * (hp - lp) / (d + 1);
    }
    return total;
}

}  // namespace

std::vector<std::string> KSData::validate() const {
    if (n.empty() || n.size() != p.size() || n.size() != q.size())
        throw InputError("KSData: n, p, q must be nonempty tuples of equal length");
    for (std::size_t i = 0; i < q.size(); ++i)
        if (q[i] == 0)
            throw InputError("KSData: q[" + std::to_string(i) + "] must be nonzero");
    for (int ni : n)
        if (ni < 0) throw InputError("KSData: fiber dimensions must be non-negative");
    if (interval_lo() >= interval_hi())
        throw InputError("KSData: empty integration interval");

    std::vector<std::string> warnings;
    // hypothesis inequalities -(n_1+1) q_i < p_i and (n_r+1) q_i < p_i for the
    // interior factors; violations undermine geometric validity, not the math
    const Rational lo = interval_lo(), hi = interval_hi();
    for (int i = 1; i + 1 < factors(); ++i) {
        if (Rational(lo * q[i]) >= p[i] || Rational(hi * q[i]) >= p[i])
            warnings.push_back("factor " + std::to_string(i) +
                               " violates the endpoint inequalities (breakpoint p_i/q_i may fall "
                               "inside the interval)");
    }
    return warnings;
}

Rational ks_integral(const KSData& D, int k) {
    if (k < 0 || k > 8) throw InputError("ks_integral: k must be between 0 and 8");
    D.validate();

    const Rational lo = D.interval_lo(), hi = D.interval_hi();

    // split the interval at the roots of the weight factors
    std::vector<Rational> cuts = {lo, hi};
    for (int i = 0; i < D.factors(); ++i) {
        if (D.n[i] == 0) continue;
        const Rational root = Rational(D.p[i]) / D.q[i];
        if (root > lo && root < hi) cuts.push_back(root);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    Rational total = 0;
    for (std::size_t piece = 0; piece + 1 < cuts.size(); ++piece) {
        const Rational a = cuts[piece], b = cuts[piece + 1];
        const Rational mid = (a + b) / 2;

        MultiIndex xk = {k};
        MultiPoly f = MultiPoly::monomial(xk, Rational(1));
        for (int i = 0; i < D.factors(); ++i) {
            if (D.n[i] == 0) continue;
            const Rational root = Rational(D.p[i]) / D.q[i];
            // |root - x| = sign * (root - x) with the sign fixed on this piece
            const int sign = (root - mid) >= 0 ? 1 : -1;
            f = f * affine_1d(root * sign, Rational(-sign)).pow(D.n[i]);
        }
        total += integrate_1d(f, a, b);
    }
    return total;
}

KSIntegrals ks_integrals(const KSData& D) {
    KSIntegrals I;
    I.I0 = ks_integral(D, 0);
    I.I2 = ks_integral(D, 2);
    I.I3 = ks_integral(D, 3);
    I.I4 = ks_integral(D, 4);
    const Rational lo = D.interval_lo(), hi = D.interval_hi();
    for (int i = 0; i < D.factors(); ++i) {
        if (D.n[i] == 0) continue;
        const Rational root = Rational(D.p[i]) / D.q[i];
        if (root > lo && root < hi) I.breakpoints.push_back(root);
    }
    std::sort(I.breakpoints.begin(), I.breakpoints.end());
    I.breakpoints.erase(std::unique(I.breakpoints.begin(), I.breakpoints.end()),
                        I.breakpoints.end());
    return I;
}

Rational futaki_integral(const KSData& D) {
    D.validate();
    MultiPoly f = MultiPoly::monomial({1}, Rational(1));  // the signed integrand, no |.|
    for (int i = 0; i < D.factors(); ++i) {
        if (D.n[i] == 0) continue;
        const Rational root = Rational(D.p[i]) / D.q[i];
        f = f * affine_1d(-root, Rational(1)).pow(D.n[i]);  // (x - p_i/q_i)^{n_i}
    }
    return integrate_1d(f, D.interval_lo(), D.interval_hi());
}

BoundResult ks_bound(const KSData& D) {
    BoundResult result;
    result.lambda = D.lambda;
    for (const auto& w : D.validate()) result.notes.push_back(w);

    const Rational fut = futaki_integral(D);
    if (fut != 0)
        result.notes.push_back(
            "warning: obstruction integral is nonzero (" + rational_to_string(fut) +
            "); the coordinate is not the first eigenfunction and the bound formula is heuristic");

    const KSIntegrals I = ks_integrals(D);
    if (I.I0 <= 0 || I.I2 <= 0)
        throw ValidationError("ks_bound: degenerate weight (nonpositive I0 or I2)");

    const Rational i2sq = I.I2 * I.I2;
    const Rational numer = I.I3 * I.I3 / i2sq + Rational(4) / I.I0;
    const Rational denom = I.I4 / i2sq - I.I3 * I.I3 / i2sq - Rational(1) / I.I0;
    if (denom <= 0)
        throw ValidationError("ks_bound: projection degenerate (nonpositive denominator)");

    const Rational exact = D.lambda * (Rational(8) + 2 * numer / denom) / 3;
    result.bound_exact = exact;
    result.bound = to_double(exact);
    result.numerator = to_double(numer);
    result.denominator = to_double(denom);
    result.extras["I0"] = rational_to_string(I.I0);
    result.extras["I2"] = rational_to_string(I.I2);
    result.extras["I3"] = rational_to_string(I.I3);
    result.extras["I4"] = rational_to_string(I.I4);
    result.extras["futaki"] = rational_to_string(fut);
    return result;
}

KSData ks_family_wq(int N, int q) {
    if (N < 1) throw InputError("ks_family_wq: N must be positive");
    if (q <= 0 || q >= N + 1) throw InputError("ks_family_wq: need 0 < q < N+1");
    KSData D;
    D.n = {0, N, N, 0};
    D.p = {0, N + 1, N + 1, 0};
    D.q = {1, q, -q, 1};
    return D;
}

std::vector<KSTableRow> ks_family_table() {
    std::vector<KSTableRow> rows;
    for (int N = 2; N <= 3; ++N) {
        for (int q = 1; q <= N; ++q) {
            const KSData D = ks_family_wq(N, q);
            KSTableRow row;
            row.N = N;
            row.q = q;
            row.bound = *ks_bound(D).bound_exact;
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace eigenbound
