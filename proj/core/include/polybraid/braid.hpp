#ifndef POLYBRAID_BRAID_HPP
#define POLYBRAID_BRAID_HPP

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "polybraid/errors.hpp"
#include "polybraid/freegrp.hpp"

namespace polybraid::braid {

/// Word in the Artin generators of B_n. Letters are signed indices:
/// +i for sigma_i, -i for sigma_i^{-1}, 1 <= i <= strands-1.
struct BraidWord {
    int strands = 1;
    std::vector<int> letters;

    BraidWord() = default;
    BraidWord(int n, std::vector<int> ls);

    BraidWord inverse() const;
    BraidWord operator*(const BraidWord& o) const;

    /// Cancel adjacent sigma_i sigma_i^{-1} pairs. Normalizing, not canonical.
    BraidWord freely_reduced() const;
};

/// Permutation of {1..n}, stored 0-based: images[i] is the image of i.
struct Permutation {
    std::vector<int> images;

    Permutation() = default;
    explicit Permutation(std::vector<int> im);
    static Permutation identity(int n);
    static Permutation transposition(int n, int i, int j);

    int degree() const { return static_cast<int>(images.size()); }
    int apply(int i) const { return images[static_cast<size_t>(i)]; }
    bool is_identity() const;
    Permutation inverse() const;

    /// Composition "this first, then o".
    Permutation then(const Permutation& o) const;

    bool operator==(const Permutation&) const = default;
    bool operator<(const Permutation& o) const { return images < o.images; }

    std::vector<std::vector<int>> cycles() const; // nontrivial cycles, 0-based
    int order() const;
};

/// The strand permutation tau: B_n -> S_n; sigma_i maps to the transposition
/// (i, i+1) regardless of sign. Letters act left to right.
Permutation tau(const BraidWord& b);

/// Image under abelianization B_n -> Z, sigma_i -> 1.
long long exponent_sum(const BraidWord& b);

/// The Artin action of a braid on the free group F_n:
/// sigma_i: x_i -> x_i x_{i+1} x_i^{-1}, x_{i+1} -> x_i.
struct FreeAutomorphism {
    int rank = 0;
    std::vector<freegrp::FreeWord> images;
};

/// Images of all generators of F_n under the braid's Artin action.
/// `budget` bounds total symbols across images; exceeding it throws WordBlowup.
FreeAutomorphism artin_action(const BraidWord& b, std::size_t budget = 1000000);

/// Exact word problem: true iff the Artin action of b is the identity
/// automorphism of F_n (the representation is faithful).
bool artin_is_trivial(const BraidWord& b, std::size_t budget = 1000000);

struct StrandAnalysis {
    bool pure = false;
    std::set<int> common_fixed; // 0-based strand indices fixed by every permutation
};

/// Purity / common-fixed-strand report for a set of same-degree permutations.
/// Throws MixedDegrees when degrees differ.
StrandAnalysis strand_analysis(const std::vector<Permutation>& perms);

/// Named generators of the commutator subgroup of B_3 (u, v) or B_4
/// (u, v, a, b), all with exponent sum zero. Throws UnsupportedN otherwise.
std::map<std::string, BraidWord> b_commutator_dictionary(int n);

/// 2x2 integer matrix, row-major [[a, b], [c, d]].
struct IntMatrix2 {
    std::array<long long, 4> e{1, 0, 0, 1};

    long long det() const;
    IntMatrix2 operator*(const IntMatrix2& o) const;
    IntMatrix2 operator-() const;
    bool operator==(const IntMatrix2&) const = default;
};

/// The conjugation action of a word in u^{+-1}, v^{+-1} on Ab(T) = Z^2 in the
/// (a, b) basis, computed by rewriting conjugates through the eight B_4'
/// relations and taking exponent sums. Input letters: 'u', 'v' (positive) and
/// 'U', 'V' (inverses). Throws RewriteBudget if intermediate words blow up.
IntMatrix2 alpha_matrix(const std::string& word, std::size_t budget = 200000);

struct PermGroupAnalysis {
    std::size_t order = 0;
    std::vector<std::size_t> derived_series_orders; // |G|, |G'|, |G''|, ..., down to stable
    long long exponent = 1;
    bool is_solvable = false;
    bool is_perfect = false;
    std::vector<Permutation> elements;
};

/// Closure of the generated permutation group, its derived series (computed by
/// commutator closure until stable), exponent, and solvability.
PermGroupAnalysis perm_group_analysis(const std::vector<Permutation>& gens);

std::vector<Permutation> group_closure(const std::vector<Permutation>& gens);

} // namespace polybraid::braid

#endif
