#ifndef POLYBRAID_POLYCORE_HPP
#define POLYBRAID_POLYCORE_HPP

#include <complex>
#include <vector>

#include "polybraid/errors.hpp"

namespace polybraid::polycore {

using Cx = std::complex<double>;

/// Monic polynomial z^n + a_{n-1} z^{n-1} + ... + a_1 z + a_0 over the complex
/// numbers, stored as the coefficient vector (a_0, ..., a_{n-1}). The leading 1
/// is implicit, so degree() == coeffs.size().
struct MonicPoly {
    std::vector<Cx> coeffs;

    MonicPoly() = default;
    explicit MonicPoly(std::vector<Cx> c);

    int degree() const { return static_cast<int>(coeffs.size()); }

    Cx eval(Cx z) const;
    Cx eval_derivative(Cx z) const;

    /// Largest coefficient modulus, the M of the root bound 1 + eps + M.
    double sup_norm() const;

    bool operator==(const MonicPoly&) const = default;
};

/// Unordered roots of a monic polynomial. `tolerance` is the bound within which
/// expanding prod (z - roots[j]) reproduces the source coefficients.
struct RootMultiset {
    std::vector<Cx> roots;
    double tolerance = 0.0;

    int size() const { return static_cast<int>(roots.size()); }
};

/// Expand prod_j (z - lambda_j) back into monic coefficient form.
MonicPoly expand_from_roots(const std::vector<Cx>& lambdas);

/// All roots of p by Ehrlich-Aberth simultaneous iteration, starting from a
/// circle of radius 1 + sup_norm. The returned multiset is sorted
/// lexicographically by (re, im) and satisfies the expansion invariant at tol.
/// Throws NonConvergence if the iteration budget is exhausted.
RootMultiset roots(const MonicPoly& p, double tol = 1e-9);

/// Monic discriminant via the Sylvester resultant of p and p', with the
/// conventional sign: disc(z^2 + a1 z + a0) = a1^2 - 4 a0.
/// Throws DegreeTooSmall for degree < 2.
Cx discriminant(const MonicPoly& p);

/// Scale-aware test for "discriminant is numerically zero":
/// |d| < 1e-12 * max(1, sup_norm)^(n(n-1)).
bool discriminant_is_zero(const MonicPoly& p, Cx d);
bool has_repeated_root(const MonicPoly& p);

/// The root-scaling action: mu * (roots), i.e. a_{n-k} -> mu^k a_{n-k}.
/// Throws ZeroScalar when mu == 0.
MonicPoly star_action(Cx mu, const MonicPoly& p);

/// Root bound for eps-approximate solutions of families with coefficient
/// sup-norms at most M: every such value has modulus <= 1 + eps + M.
double cauchy_bound(double M, double eps);

/// The constant C with: every eps-approximate solution of Q is a C*eps-approximate
/// solution of P whenever ||P - Q|| < eps and P has coefficient sup-norm M.
/// C = ((2+M)^n - 1) / (1+M) + 1.
double perturbation_constant(double M, int n);

/// min over w in A of |z - w|. Throws EmptyMultiset on an empty multiset.
double multiset_distance(Cx z, const RootMultiset& A);

/// Minimum distance between two distinct roots of p (0 within numerical
/// tolerance when a root repeats). Throws DegreeTooSmall for degree < 2.
double min_root_gap(const MonicPoly& p);

} // namespace polybraid::polycore

#endif
