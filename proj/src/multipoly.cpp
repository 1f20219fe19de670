#include "eigenbound/multipoly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "eigenbound/errors.hpp"

namespace eigenbound {

int multiindex_degree(const MultiIndex& alpha) {
    return std::accumulate(alpha.begin(), alpha.end(), 0);
}

namespace {

void enumerate_rec(int nvars, int max_degree, MultiIndex& current, int pos,
                   std::vector<MultiIndex>& out) {
    if (pos == nvars) {
        out.push_back(current);
        return;
    }
    const int used = std::accumulate(current.begin(), current.begin() + pos, 0);
    for (int d = 0; d <= max_degree - used; ++d) {
        current[pos] = d;
        enumerate_rec(nvars, max_degree, current, pos + 1, out);
    }
    current[pos] = 0;
}

}  // namespace

std::vector<MultiIndex> multiindices_up_to(int nvars, int max_degree) {
    std::vector<MultiIndex> out;
    MultiIndex current(nvars, 0);
    enumerate_rec(nvars, max_degree, current, 0, out);
    std::stable_sort(out.begin(), out.end(), [](const MultiIndex& a, const MultiIndex& b) {
        const int da = multiindex_degree(a), db = multiindex_degree(b);
        if (da != db) return da < db;
        return a < b;
    });
    return out;
}

MultiPoly::MultiPoly(int nvars) : nvars_(nvars) {
    if (nvars < 1) throw InputError("MultiPoly: nvars must be positive");
}

MultiPoly MultiPoly::constant(int nvars, const Rational& c) {
    MultiPoly p(nvars);
    p.add_term(MultiIndex(nvars, 0), c);
    return p;
}

MultiPoly MultiPoly::monomial(const MultiIndex& alpha, const Rational& c) {
    MultiPoly p(static_cast<int>(alpha.size()));
    p.add_term(alpha, c);
    return p;
}

MultiPoly MultiPoly::variable(int nvars, int i) {
    MultiIndex alpha(nvars, 0);
    alpha.at(i) = 1;
    return monomial(alpha, Rational(1));
}

int MultiPoly::total_degree() const {
    int d = 0;
    for (const auto& [alpha, c] : terms_) d = std::max(d, multiindex_degree(alpha));
    return d;
}

Rational MultiPoly::coefficient(const MultiIndex& alpha) const {
    const auto it = terms_.find(alpha);
    return it == terms_.end() ? Rational(0) : it->second;
}

void MultiPoly::add_term(const MultiIndex& alpha, const Rational& c) {
    if (static_cast<int>(alpha.size()) != nvars_)
        throw InputError("MultiPoly: multi-index length mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(alpha, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
    for (const auto& [alpha, c] : other.terms_) add_term(alpha, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) {
    for (const auto& [alpha, c] : other.terms_) add_term(alpha, -c);
    return *this;
}

MultiPoly MultiPoly::operator+(const MultiPoly& other) const {
    MultiPoly out = *this;
    out += other;
    return out;
}

MultiPoly MultiPoly::operator-(const MultiPoly& other) const {
    MultiPoly out = *this;
    out -= other;
    return out;
}

MultiPoly MultiPoly::operator*(const MultiPoly& other) const {
    MultiPoly out(nvars_);
    for (const auto& [a, ca] : terms_) {
        for (const auto& [b, cb] : other.terms_) {
            MultiIndex sum(nvars_);
            for (int i = 0; i < nvars_; ++i) sum[i] = a[i] + b[i];
            out.add_term(sum, ca * cb);
        }
    }
    return out;
}

MultiPoly MultiPoly::operator*(const Rational& scalar) const {
    MultiPoly out(nvars_);
    if (scalar == 0) return out;
    for (const auto& [alpha, c] : terms_) out.add_term(alpha, c * scalar);
    return out;
}

MultiPoly MultiPoly::pow(int k) const {
    if (k < 0) throw InputError("MultiPoly::pow: negative exponent");
    MultiPoly out = constant(nvars_, Rational(1));
    for (int i = 0; i < k; ++i) out = out * (*this);
    return out;
}

MultiPoly MultiPoly::derivative(int var) const {
    MultiPoly out(nvars_);
    for (const auto& [alpha, c] : terms_) {
        if (alpha[var] == 0) continue;
        MultiIndex beta = alpha;
        --beta[var];
        out.add_term(beta, c * alpha[var]);
    }
    return out;
}

Rational MultiPoly::evaluate(const RatVector& x) const {
    Rational total = 0;
    for (const auto& [alpha, c] : terms_) {
        Rational term = c;
        for (int i = 0; i < nvars_; ++i)
            for (int k = 0; k < alpha[i]; ++k) term *= x[i];
        total += term;
    }
    return total;
}

double MultiPoly::evaluate(const Eigen::VectorXd& x) const {
    double total = 0;
    for (const auto& [alpha, c] : terms_) {
        double term = to_double(c);
        for (int i = 0; i < nvars_; ++i) term *= std::pow(x[i], alpha[i]);
        total += term;
    }
    return total;
}

MultiPoly MultiPoly::substitute_affine(const RatMatrix& map, const RatVector& shift) const {
    const int out_vars = static_cast<int>(map.cols());
    // linear forms for each original variable
    std::vector<MultiPoly> forms;
    forms.reserve(nvars_);
    for (int i = 0; i < nvars_; ++i) {
        MultiPoly f = MultiPoly::constant(out_vars, shift[i]);
        for (int j = 0; j < out_vars; ++j) {
            if (map(i, j) == 0) continue;
            f += MultiPoly::variable(out_vars, j) * map(i, j);
        }
        forms.push_back(std::move(f));
    }
    MultiPoly out(out_vars);
    for (const auto& [alpha, c] : terms_) {
        MultiPoly term = MultiPoly::constant(out_vars, c);
        for (int i = 0; i < nvars_; ++i)
            if (alpha[i] > 0) term = term * forms[i].pow(alpha[i]);
        out += term;
    }
    return out;
}

}  // namespace eigenbound
