#ifndef POLYBRAID_TRACKING_HPP
#define POLYBRAID_TRACKING_HPP

#include <optional>
#include <string>
#include <vector>

#include "polybraid/braid.hpp"
#include "polybraid/family.hpp"

namespace polybraid::tracking {

using family::Loop;
using family::PolyFamily;
using polycore::Cx;

/// Rouche acceptance data recorded for one accepted continuation step.
struct StepCertificate {
    double max_displacement = 0.0;
    double min_gap_at_start = 0.0;
};

/// Root system continued along one edge. Strands are indexed by the
/// lexicographic (re, im) order of the roots at the edge start; ts holds the
/// accepted parameter values (the declared samples plus any bisection
/// refinements), so strands[k][i] is strand k at parameter ts[i].
struct RootTrajectory {
    std::string edge;
    bool reversed = false;
    std::vector<double> ts;
    std::vector<std::vector<Cx>> strands;
    std::vector<StepCertificate> certificates;

    int strand_count() const { return static_cast<int>(strands.size()); }
};

/// Continue the roots of F along an edge by nearest-neighbour matching with
/// the Rouche step rule: a step is accepted when the matching is a bijection
/// and every root moved less than 0.4 * (half the minimum root gap at the step
/// start). Rejected steps bisect the parameter interval (depth <= 20).
/// Throws RepeatedRoot when the discriminant vanishes along the way and
/// StepTooCoarse when refinement bottoms out.
RootTrajectory track_edge(const PolyFamily& F, const std::string& edge_id);

RootTrajectory reverse_trajectory(const RootTrajectory& t);

/// Monodromy of one loop: braid word, and the strand permutation in the
/// basepoint root indexing (roots at the basepoint sorted lexicographically by
/// (re, im)). tau(braid) equals the permutation.
struct LoopMonodromy {
    Loop loop;
    braid::BraidWord braid_word;
    braid::Permutation permutation;
    /// Concatenated strand paths around the loop, for rendering and residual
    /// checks; strand k starts at the k-th basepoint root.
    std::vector<double> ts;
    std::vector<std::vector<Cx>> strands;
};

/// Extract the braid of a closed loop from real-part crossings of the strand
/// paths after a generic rotation of the plane; retries fresh rotation angles
/// on projection coincidences and throws DegenerateProjection when they are
/// never resolved.
LoopMonodromy loop_braid(const PolyFamily& F, const Loop& loop);

struct SolvabilityVerdict {
    std::vector<Loop> loops;
    std::vector<braid::Permutation> permutations;
    bool exact_root_exists = false;
    bool completely_solvable = false;
    std::vector<int> common_fixed; // 0-based basepoint root indices fixed by all loops
    /// Continuous root section (per edge, per declared sample) when a common
    /// fixed strand exists, built by propagating that strand over a spanning tree.
    std::optional<family::SampleFunction> witness;
};

/// Solvability of F over the 1-complex from the monodromy of the given loops
/// (they should generate the fundamental group; pass fundamental_loops(F.graph)).
SolvabilityVerdict solvability_verdict(const PolyFamily& F, const std::vector<Loop>& loops);

struct DiscriminantObstruction {
    std::string loop;
    int winding = 0;
    int required = 0;
};

struct NormalizeResult {
    bool normalized = false;
    PolyFamily family; // scaled family with discriminant 1, when normalized
    std::vector<DiscriminantObstruction> obstructions;
};

/// Scale F by a continuous n(n-1)-th root of 1/disc so the result has constant
/// discriminant 1. Succeeds iff n(n-1) divides the winding of the discriminant
/// along every generating loop; otherwise lists the offending loops.
NormalizeResult normalize_unit_discriminant(const PolyFamily& F, const std::vector<Loop>& loops);

} // namespace polybraid::tracking

#endif
