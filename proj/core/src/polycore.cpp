#include "polybraid/polycore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace polybraid::polycore {

namespace {

bool finite(Cx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

bool lex_less(Cx a, Cx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

} // namespace

MonicPoly::MonicPoly(std::vector<Cx> c) : coeffs(std::move(c)) {
    for (const Cx& a : coeffs)
        if (!finite(a)) throw Error("NonFiniteCoefficient", "monic polynomial coefficient is not finite");
}

Cx MonicPoly::eval(Cx z) const {
    Cx acc{1.0, 0.0};
    for (int i = degree() - 1; i >= 0; --i) acc = acc * z + coeffs[static_cast<size_t>(i)];
    return acc;
}

Cx MonicPoly::eval_derivative(Cx z) const {
    const int n = degree();
    Cx acc{static_cast<double>(n), 0.0};
    for (int i = n - 1; i >= 1; --i)
        acc = acc * z + static_cast<double>(i) * coeffs[static_cast<size_t>(i)];
    return acc;
}

double MonicPoly::sup_norm() const {
    double m = 0.0;
    for (const Cx& a : coeffs) m = std::max(m, std::abs(a));
    return m;
}

MonicPoly expand_from_roots(const std::vector<Cx>& lambdas) {
    // c[i] multiplies z^{deg - i} (descending order, leading 1).
    std::vector<Cx> c{Cx{1.0, 0.0}};
    for (Cx l : lambdas) {
        c.push_back(Cx{0.0, 0.0});
        for (int i = static_cast<int>(c.size()) - 1; i >= 1; --i)
            c[static_cast<size_t>(i)] -= l * c[static_cast<size_t>(i - 1)];
    }
    std::vector<Cx> out(lambdas.size());
    const size_t n = lambdas.size();
    for (size_t i = 0; i < n; ++i) out[i] = c[n - i];
    return MonicPoly(std::move(out));
}

namespace {

/// Max coefficient deviation between p and the expansion of the candidate roots,
/// relative to max(1, |p|).
double expansion_error(const MonicPoly& p, const std::vector<Cx>& lambdas) {
    const MonicPoly q = expand_from_roots(lambdas);
    double err = 0.0;
    for (size_t i = 0; i < p.coeffs.size(); ++i)
        err = std::max(err, std::abs(p.coeffs[i] - q.coeffs[i]));
    return err / std::max(1.0, p.sup_norm());
}

} // namespace

RootMultiset roots(const MonicPoly& p, double tol) {
    if (tol <= 0.0) throw Error("BadTolerance", "roots() requires tol > 0");
    const int n = p.degree();
    if (n == 0) return RootMultiset{{}, tol};
    if (n == 1) return RootMultiset{{-p.coeffs[0]}, tol};

    // Start on a circle of the Cauchy-bound radius; the angular offset breaks
    // the symmetry of real polynomials.
    const double radius = std::max(cauchy_bound(p.sup_norm(), 0.0), 1e-3);
    std::vector<Cx> z(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double angle = 6.283185307179586477 * (k + 0.25) / n + 0.40 / n;
        z[static_cast<size_t>(k)] = radius * Cx{std::cos(angle), std::sin(angle)};
    }

    const int max_iter = 400;
    std::vector<Cx> best = z;
    double best_err = expansion_error(p, z);
    int stalled = 0;
    for (int iter = 0; iter < max_iter; ++iter) {
        for (int k = 0; k < n; ++k) {
            const Cx zk = z[static_cast<size_t>(k)];
            const Cx pv = p.eval(zk);
            const Cx dv = p.eval_derivative(zk);
            Cx w;
            if (std::abs(dv) > 0.0) {
                w = pv / dv;
            } else {
                w = Cx{tol, tol};
            }
            Cx s{0.0, 0.0};
            for (int j = 0; j < n; ++j) {
                if (j == k) continue;
                const Cx d = zk - z[static_cast<size_t>(j)];
                if (std::abs(d) > 0.0) s += 1.0 / d;
            }
            const Cx denom = Cx{1.0, 0.0} - w * s;
            const Cx step = (std::abs(denom) > 1e-300) ? w / denom : w;
            z[static_cast<size_t>(k)] = zk - step;
        }
        const double err = expansion_error(p, z);
        if (err < best_err * 0.999999) {
            best_err = err;
            best = z;
            stalled = 0;
        } else {
            ++stalled;
        }
        // Stop at machine-level agreement, or once the iterate stops improving
        // (repeated-root clusters orbit their noise floor).
        if (best_err <= 1e-15) break;
        if (stalled >= 16) break;
    }
    if (best_err <= tol) {
        std::sort(best.begin(), best.end(), lex_less);
        return RootMultiset{std::move(best), tol};
    }
    throw Error("NonConvergence", "root iteration budget exhausted");
}

namespace {

/// Determinant of a dense complex matrix by LU with partial pivoting.
Cx lu_determinant(std::vector<std::vector<Cx>> m) {
    const size_t n = m.size();
    Cx det{1.0, 0.0};
    for (size_t col = 0; col < n; ++col) {
        size_t pivot = col;
        double best = std::abs(m[col][col]);
        for (size_t r = col + 1; r < n; ++r) {
            const double v = std::abs(m[r][col]);
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (best == 0.0) return Cx{0.0, 0.0};
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (size_t r = col + 1; r < n; ++r) {
            const Cx f = m[r][col] / m[col][col];
            if (f == Cx{0.0, 0.0}) continue;
            for (size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

} // namespace

Cx discriminant(const MonicPoly& p) {
    const int n = p.degree();
    if (n < 2) throw Error("DegreeTooSmall", "discriminant requires degree >= 2");

    // Sylvester matrix of p (degree n) and p' (degree n-1): (2n-1) x (2n-1).
    const size_t dim = static_cast<size_t>(2 * n - 1);
    std::vector<std::vector<Cx>> m(dim, std::vector<Cx>(dim, Cx{0.0, 0.0}));

    std::vector<Cx> pc(static_cast<size_t>(n) + 1);
    pc[0] = Cx{1.0, 0.0}; // leading coefficient first
    for (int i = 0; i < n; ++i) pc[static_cast<size_t>(n - i)] = p.coeffs[static_cast<size_t>(i)];

    std::vector<Cx> dc(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        dc[static_cast<size_t>(n - 1 - i)] = (i == n - 1) ? Cx{static_cast<double>(n), 0.0}
                                                          : static_cast<double>(i + 1) * p.coeffs[static_cast<size_t>(i + 1)];

    for (int r = 0; r < n - 1; ++r)
        for (int c = 0; c <= n; ++c) m[static_cast<size_t>(r)][static_cast<size_t>(r + c)] = pc[static_cast<size_t>(c)];
    for (int r = 0; r < n; ++r)
        for (int c = 0; c <= n - 1; ++c)
            m[static_cast<size_t>(n - 1 + r)][static_cast<size_t>(r + c)] = dc[static_cast<size_t>(c)];

    const Cx res = lu_determinant(std::move(m));
    const int sign_exp = (n * (n - 1)) / 2;
    return (sign_exp % 2 == 0) ? res : -res;
}

bool discriminant_is_zero(const MonicPoly& p, Cx d) {
    const int n = p.degree();
    const double scale = std::pow(std::max(1.0, p.sup_norm()), n * (n - 1));
    return std::abs(d) < 1e-12 * scale;
}

bool has_repeated_root(const MonicPoly& p) {
    return discriminant_is_zero(p, discriminant(p));
}

MonicPoly star_action(Cx mu, const MonicPoly& p) {
    if (mu == Cx{0.0, 0.0}) throw Error("ZeroScalar", "star action requires mu != 0");
    const int n = p.degree();
    std::vector<Cx> out(p.coeffs.size());
    // a_i multiplies z^i, i.e. it is the a_{n-k} with k = n - i and picks up mu^{n-i}.
    Cx power{1.0, 0.0};
    std::vector<Cx> mu_pow(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        mu_pow[static_cast<size_t>(k)] = power;
        power *= mu;
    }
    for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = mu_pow[static_cast<size_t>(n - i)] * p.coeffs[static_cast<size_t>(i)];
    return MonicPoly(std::move(out));
}

double cauchy_bound(double M, double eps) {
    if (M < 0.0 || eps < 0.0) throw Error("NegativeBound", "cauchy_bound requires M >= 0 and eps >= 0");
    return 1.0 + eps + M;
}

double perturbation_constant(double M, int n) {
    if (M < 0.0) throw Error("NegativeBound", "perturbation_constant requires M >= 0");
    if (n < 1) throw Error("DegreeTooSmall", "perturbation_constant requires n >= 1");
    return (std::pow(2.0 + M, n) - 1.0) / (1.0 + M) + 1.0;
}

double multiset_distance(Cx z, const RootMultiset& A) {
    if (A.roots.empty()) throw Error("EmptyMultiset", "distance to an empty multiset is undefined");
    double best = std::abs(z - A.roots[0]);
    for (size_t i = 1; i < A.roots.size(); ++i) best = std::min(best, std::abs(z - A.roots[i]));
    return best;
}

double min_root_gap(const MonicPoly& p) {
    if (p.degree() < 2) throw Error("DegreeTooSmall", "min_root_gap requires degree >= 2");
    // Loose tolerance: repeated-root clusters cannot satisfy tight expansion
    // bounds, and the gap is what matters here.
    const RootMultiset rs = roots(p, 1e-5);
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < rs.roots.size(); ++i)
        for (size_t j = i + 1; j < rs.roots.size(); ++j)
            best = std::min(best, std::abs(rs.roots[i] - rs.roots[j]));
    return best;
}

} // namespace polybraid::polycore
