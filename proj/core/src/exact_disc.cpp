#include "polybraid/exact_disc.hpp"

#include <sstream>

namespace polybraid::polycore {

GaussianRational GaussianRational::operator/(const GaussianRational& o) const {
    const BigRational norm = o.re * o.re + o.im * o.im;
    if (norm == 0) throw Error("DivisionByZero", "Gaussian rational division by zero");
    return {(re * o.re + im * o.im) / norm, (im * o.re - re * o.im) / norm};
}

std::string GaussianRational::str() const {
    std::ostringstream os;
    os << re;
    if (im != 0) os << (im > 0 ? "+" : "") << im << "i";
    return os.str();
}

namespace {

/// Gaussian integer pair; Bareiss keeps all intermediate divisions exact here.
struct GInt {
    BigInt re;
    BigInt im;

    bool is_zero() const { return re == 0 && im == 0; }

    GInt operator*(const GInt& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
    GInt operator-(const GInt& o) const { return {re - o.re, im - o.im}; }
};

GInt exact_div(const GInt& a, const GInt& b) {
    const BigInt norm = b.re * b.re + b.im * b.im;
    const BigInt num_re = a.re * b.re + a.im * b.im;
    const BigInt num_im = a.im * b.re - a.re * b.im;
    if (norm == 0 || num_re % norm != 0 || num_im % norm != 0)
        throw Error("InexactDivision", "Bareiss pivot division was not exact");
    return {num_re / norm, num_im / norm};
}

/// Fraction-free determinant (Bareiss) over the Gaussian integers, with column
/// pivot search on nonzero entries only.
GInt bareiss_determinant(std::vector<std::vector<GInt>> m) {
    const size_t n = m.size();
    GInt prev{BigInt(1), BigInt(0)};
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            size_t swap_row = k;
            for (size_t r = k + 1; r < n; ++r)
                if (!m[r][k].is_zero()) {
                    swap_row = r;
                    break;
                }
            if (swap_row == k) return {BigInt(0), BigInt(0)};
            std::swap(m[swap_row], m[k]);
            sign = -sign;
        }
        for (size_t r = k + 1; r < n; ++r) {
            for (size_t c = k + 1; c < n; ++c)
                m[r][c] = exact_div(m[k][k] * m[r][c] - m[r][k] * m[k][c], prev);
            m[r][k] = GInt{BigInt(0), BigInt(0)};
        }
        prev = m[k][k];
    }
    GInt det = m[n - 1][n - 1];
    if (sign < 0) det = GInt{BigInt(0), BigInt(0)} - det;
    return det;
}

} // namespace

GaussianRational discriminant_exact(const std::vector<GaussianRational>& coeffs) {
    const int n = static_cast<int>(coeffs.size());
    if (n < 2) throw Error("DegreeTooSmall", "discriminant requires degree >= 2");

    // Common denominator of all coefficients; scaling every coefficient to a
    // Gaussian integer multiplies each Sylvester entry except the monic ones.
    BigInt den(1);
    for (const auto& c : coeffs) {
        den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(c.re));
        den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(c.im));
    }

    auto as_gint = [&](const GaussianRational& q) {
        const BigRational r = q.re * den;
        const BigRational i = q.im * den;
        return GInt{boost::multiprecision::numerator(r), boost::multiprecision::numerator(i)};
    };

    // Scaled polynomial den*p has leading coefficient den; the resultant of the
    // scaled pair equals den^{2n-1} * Res(p, p') divided back out at the end.
    std::vector<GInt> pc(static_cast<size_t>(n) + 1);
    pc[0] = GInt{den, BigInt(0)};
    for (int i = 0; i < n; ++i) pc[static_cast<size_t>(n - i)] = as_gint(coeffs[static_cast<size_t>(i)]);

    std::vector<GInt> dc(static_cast<size_t>(n));
    dc[0] = GInt{den * n, BigInt(0)};
    for (int i = 1; i < n; ++i) {
        GInt g = as_gint(coeffs[static_cast<size_t>(i)]);
        g.re *= i;
        g.im *= i;
        dc[static_cast<size_t>(n - i)] = g;
    }

    const size_t dim = static_cast<size_t>(2 * n - 1);
    std::vector<std::vector<GInt>> m(dim, std::vector<GInt>(dim, GInt{BigInt(0), BigInt(0)}));
    for (int r = 0; r < n - 1; ++r)
        for (int c = 0; c <= n; ++c) m[static_cast<size_t>(r)][static_cast<size_t>(r + c)] = pc[static_cast<size_t>(c)];
    for (int r = 0; r < n; ++r)
        for (int c = 0; c <= n - 1; ++c)
            m[static_cast<size_t>(n - 1 + r)][static_cast<size_t>(r + c)] = dc[static_cast<size_t>(c)];

    const GInt det = bareiss_determinant(std::move(m));

    BigInt scale(1); // den^{2n-1}
    for (int i = 0; i < 2 * n - 1; ++i) scale *= den;

    GaussianRational res{BigRational(det.re) / scale, BigRational(det.im) / scale};
    const int sign_exp = (n * (n - 1)) / 2;
    return (sign_exp % 2 == 0) ? res : -res;
}

} // namespace polybraid::polycore
