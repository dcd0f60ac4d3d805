#ifndef POLYBRAID_SL2Z_HPP
#define POLYBRAID_SL2Z_HPP

#include <string>
#include <vector>

#include "polybraid/braid.hpp"

namespace polybraid::sl2z {

using braid::IntMatrix2;

inline const IntMatrix2 kS{{0, -1, 1, 0}};
inline const IntMatrix2 kQ{{1, -1, 1, 0}};
inline const IntMatrix2 kU{{0, -1, 1, 3}};
inline const IntMatrix2 kV{{-1, -5, 1, 4}};

/// Normal form in PSL_2(Z) = Z/2 * Z/3 = <S, Q | S^2 = Q^3 = 1>: an
/// alternating word in S and Q, Q^2 (no two adjacent letters from the same
/// factor). The empty word is the identity.
struct PSLWord {
    struct Letter {
        char factor;  // 'S' or 'Q'
        int exponent; // 1 for S; 1 or 2 for Q
        bool operator==(const Letter&) const = default;
    };
    std::vector<Letter> letters;

    bool empty() const { return letters.empty(); }
    std::string str() const;
    bool operator==(const PSLWord&) const = default;
};

/// Concatenate and reduce modulo S^2 = Q^3 = 1.
PSLWord psl_concat(const PSLWord& a, const PSLWord& b);

/// Evaluate in SL_2(Z); the result represents the word's class up to sign.
IntMatrix2 psl_evaluate(const PSLWord& w);

/// Normal form of M in Z/2 * Z/3 via Euclidean (continued-fraction) reduction
/// with T = QS in PSL. The word evaluates to +-M; it is empty iff M = +-id.
/// Throws NotUnimodular when det != 1.
PSLWord psl_normal_form(const IntMatrix2& M);

struct FreePairVerdict {
    bool free_up_to = false;
    int length = 0;
    std::string relation; // witness word over A, B when a relation was found
};

/// Certify that A and B generate freely up to words of the given length: every
/// nonempty reduced word in A^{+-1}, B^{+-1} of length <= L must be nontrivial
/// in PSL_2(Z). A found relation is an exact disproof.
FreePairVerdict free_pair_check(const IntMatrix2& A, const IntMatrix2& B, int length_budget);

/// Rank of the integer column span of (A - id | B - id), via Smith-style
/// integer elimination. In {0, 1, 2}.
int image_rank_sum(const IntMatrix2& A, const IntMatrix2& B);

/// Diagonal of the Smith normal form of an integer matrix (nonnegative,
/// divisibility chain d1 | d2 | ...).
std::vector<long long> smith_diagonal(std::vector<std::vector<long long>> m);

/// The alpha-images of the braid generators u, v, rederived through the braid
/// module's rewriting and pinned against the known matrices U, V.
/// Throws MismatchWithPaper if the rewriting drifts.
std::pair<IntMatrix2, IntMatrix2> derive_b4_matrices();

struct UVIdentityReport {
    bool u_identity_holds = false; // S(QS)^3 = sign_u * U
    int sign_u = 0;
    bool v_identity_holds = false; // S Q^{-1} S Q U = sign_v * V
    int sign_v = 0;
    bool s_squared_is_minus_id = false;
    PSLWord u_normal_form;
    PSLWord v_normal_form;
};

/// Check the product identities for U and V as exact integer matrices,
/// recording the sign each one realizes (they are equalities in PSL_2(Z)).
/// Throws IdentityFails if an identity holds with neither sign.
UVIdentityReport verify_uv_identities();

} // namespace polybraid::sl2z

#endif
