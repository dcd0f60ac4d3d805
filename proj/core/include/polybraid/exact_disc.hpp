#ifndef POLYBRAID_EXACT_DISC_HPP
#define POLYBRAID_EXACT_DISC_HPP

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "polybraid/errors.hpp"

namespace polybraid::polycore {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Exact complex rational a + b*i. Enough arithmetic for resultant work; not a
/// general number type.
struct GaussianRational {
    BigRational re;
    BigRational im;

    GaussianRational() = default;
    GaussianRational(long long r, long long i = 0) : re(r), im(i) {}
    GaussianRational(BigRational r, BigRational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool operator==(const GaussianRational&) const = default;

    GaussianRational operator+(const GaussianRational& o) const { return {re + o.re, im + o.im}; }
    GaussianRational operator-(const GaussianRational& o) const { return {re - o.re, im - o.im}; }
    GaussianRational operator-() const { return {-re, -im}; }
    GaussianRational operator*(const GaussianRational& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    GaussianRational operator/(const GaussianRational& o) const;

    std::string str() const;
};

/// Exact monic discriminant of z^n + c_{n-1} z^{n-1} + ... + c_0 from the
/// Sylvester matrix of p and p', eliminated fraction-free (Bareiss) after
/// clearing denominators. Same sign convention as the floating-point path.
/// Throws DegreeTooSmall for n < 2.
GaussianRational discriminant_exact(const std::vector<GaussianRational>& coeffs);

} // namespace polybraid::polycore

#endif
