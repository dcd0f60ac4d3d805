#ifndef POLYBRAID_EXAMPLES_HPP
#define POLYBRAID_EXAMPLES_HPP

#include <string>
#include <vector>

#include "polybraid/progroup.hpp"

namespace polybraid::examples {

using progroup::ProFreeGroup;
using progroup::StageMorphism;

/// Inverse system of circles: rank-1 stages, bonding j sends x to
/// x^multipliers[j]. `periodic` extends the last bonding forever (the honest
/// infinite solenoid); without it the system is a plain finite truncation.
ProFreeGroup solenoid(const std::vector<int>& multipliers, bool periodic = false);

/// Truncation of the universal solenoid: multipliers 1, 2, ..., k.
ProFreeGroup universal_solenoid(int k);

/// The degree-n counterexample (n >= 5): a constant system of rank-2 free
/// groups whose bonding lands in the commutator subgroup while the composite
/// onto A_n never changes, together with the braid-group morphism whose
/// tau-image is A_n at every stage.
struct CounterexampleDegN {
    ProFreeGroup system;     // constant bonding f_n, periodic tail
    StageMorphism morphism;  // x, y -> exponent-sum-zero braid words over B_n
    freegrp::FreeWord x_image; // f_n(x): commutator word with psi-image a
    freegrp::FreeWord y_image; // f_n(y): commutator word with psi-image b
    braid::Permutation a;      // psi(x), a 3-cycle
    braid::Permutation b;      // psi(y), generating A_n with a
};

CounterexampleDegN counterexample_deg_n(int n, int stages, int bfs_budget = 16);

/// The degree-4 counterexample: stages are rank-4 free carriers with
/// generators mapping to (a, b, u_k, v_k) in B_4'; the bonding rewrites
/// u_{k+1} = [u_k, v_k], v_{k+1} = u_k v_k^2 u_k^{-1} v_k^{-2} and fixes a, b.
struct CounterexampleDeg4 {
    ProFreeGroup system;
    StageMorphism morphism; // (a, b, u, v) as braid words in B_4
    ProFreeGroup uv_subsystem; // the J-part alone: rank-2 stages, commutator bondings
};

CounterexampleDeg4 counterexample_deg4(int stages);

/// The recursive acyclic-but-nonabelian construction: a nested chain of rank-2
/// free carriers, each stage contained in the previous commutator subgroup and
/// killing one enumerated braid-group morphism.
struct AcyclicStep {
    int ell = 0;         // which earlier stage's enumeration was consumed
    int occurrence = 0;  // j_n, the index consumed within that enumeration
    int braid_strands = 0;
    std::vector<braid::BraidWord> phi_images; // the enumerated morphism F_2 -> B_k
    int kernel_index = 0;                     // order of the permutation image
};

struct AcyclicNonabelian {
    ProFreeGroup system;
    std::vector<AcyclicStep> steps;
};

AcyclicNonabelian acyclic_nonabelian(int depth, int word_budget, int k_max);

/// The scheduling sequence 1,1,2,1,2,3,1,2,3,4,... (each positive integer
/// appears infinitely often; l_sequence(i) <= i). 1-based.
int l_sequence(int i);

/// Deterministic enumeration of Hom(F_2, B_k) for k <= k_max by generator
/// image words of length <= word_budget; index is 1-based.
std::vector<braid::BraidWord> enumerate_f2_braid_hom(int index, int word_budget, int k_max);

} // namespace polybraid::examples

#endif
