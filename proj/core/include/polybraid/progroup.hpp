#ifndef POLYBRAID_PROGROUP_HPP
#define POLYBRAID_PROGROUP_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "polybraid/braid.hpp"
#include "polybraid/freegrp.hpp"

namespace polybraid::progroup {

/// Finite truncation of an inverse system of finitely generated free groups
///   F_{r_1} <- F_{r_2} <- ... <- F_{r_k}
/// bondings[i] maps stage i+2 into stage i+1 (0-based list, 1-based stages).
/// A periodic tail of period p means the last p bondings repeat forever.
struct ProFreeGroup {
    std::vector<int> ranks;
    std::vector<freegrp::FreeHom> bondings;
    std::optional<int> periodic_tail;

    int stage_count() const { return static_cast<int>(ranks.size()); }
    bool has_tail() const { return periodic_tail.has_value(); }

    /// Rank of stage s >= 1, following the tail beyond the truncation.
    int rank_at(int stage) const;
    /// Bonding from stage s+1 down to stage s (1-based), following the tail.
    const freegrp::FreeHom& bonding_from(int stage) const;

    void validate() const;
};

/// Representative of a pro-group morphism at one stage: the images of the
/// stage's generators in the target.
struct StageMorphism {
    enum class Target { BraidGroup, Integers, FinitePerm };
    Target target = Target::BraidGroup;
    int stage = 1;
    int target_n = 1; // strand count / Z^k rank / permutation degree

    std::vector<braid::BraidWord> braid_images;
    std::vector<std::vector<long long>> integer_images;
    std::vector<braid::Permutation> perm_images;
};

/// Composite bonding from stage `from` down to stage `to` (identity when
/// equal). Throws IndexOutOfRange outside the truncation + tail reach.
freegrp::FreeHom compose_bondings(const ProFreeGroup& P, int from, int to);

enum class Divisibility { Divisible, NotDivisible, Unknown };

struct DualDivisibilityResult {
    Divisibility status = Divisibility::Unknown;
    int witness_stage = 0; // stage where the composed vector first vanished mod m
};

/// Is the class of phi (a morphism to Z at phi.stage) m-divisible in the dual
/// colimit? Divisible(beta) when the exponent row composed down from some
/// stage beta vanishes mod m. Exact NotDivisible for periodic tails by
/// residue-cycle detection; Unknown when a finite truncation (or the stage
/// budget) runs out first.
DualDivisibilityResult dual_m_divisible(const ProFreeGroup& P, const StageMorphism& phi, long long m,
                                        int stage_budget = 64);

struct ProDivisibilityResult {
    Divisibility status = Divisibility::Unknown;
    /// Per-stage detail within the truncation: stage where the composed
    /// abelianization matrix first vanished mod m, or 0 when not reached.
    std::vector<int> per_stage_witness;
};

/// m-divisibility of the abelianized pro-group (the hypothesis of the solvable
/// obstruction theorems): each stage must eventually compose to the zero
/// matrix mod m. Exact for periodic tails via residue cycles. On a plain
/// finite truncation the verdict is carried by the first stage (later stages
/// see only a suffix of the same window), Unknown if even that is undecided.
ProDivisibilityResult pro_m_divisible_abelianized(const ProFreeGroup& P, long long m,
                                                  int stage_budget = 64);

struct StarDecision {
    std::vector<braid::Permutation> stable_generators;
    std::size_t stable_order = 0;
    bool star_n = false;       // stable image fixes some strand
    bool star_star_n = false;  // stable image trivial
    int stabilization_stage = 1;
    std::vector<int> common_fixed;
};

/// Decide (*_n) and (**_n) for the morphism phi into a braid group: the
/// tau-image subgroups S_beta of the stages form a descending chain, which
/// stabilizes; the conditions are read off the stable image. Exact for
/// periodic tails (state cycling) and on finite truncations (last stage).
StarDecision decide_star_conditions(const ProFreeGroup& P, const StageMorphism& phi);

/// Wedge-of-circles presentation of the system: one wedge of rank_at(s)
/// circles per stage, and per bonding the edge word each circle maps across.
struct WedgeSystem {
    struct Stage {
        int circles = 0;
    };
    std::vector<Stage> stages;
    std::vector<std::vector<freegrp::FreeWord>> maps; // maps[i][j]: image word of circle j of stage i+2
    std::optional<int> periodic_tail;
};

WedgeSystem realize_as_wedge_system(const ProFreeGroup& P);

} // namespace polybraid::progroup

#endif
