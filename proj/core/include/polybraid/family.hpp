#ifndef POLYBRAID_FAMILY_HPP
#define POLYBRAID_FAMILY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polybraid/polycore.hpp"

namespace polybraid::family {

using polycore::Cx;
using polycore::MonicPoly;

/// Finite 1-complex: vertices, edges with a per-edge sample count m >= 1
/// (parameter values t_j = j/m along the edge), and a basepoint vertex.
struct Graph1Complex {
    struct EdgeDecl {
        std::string id;
        std::string ends[2]; // ends[0] --edge--> ends[1]
        int samples = 1;     // m; the edge carries m+1 sample points
    };

    std::vector<std::string> vertices;
    std::vector<EdgeDecl> edges;
    std::string basepoint;

    int vertex_index(const std::string& id) const;
    int edge_index(const std::string& id) const;
    bool is_connected() const;
};

/// Sampled coefficient map X -> C^n over a finite 1-complex: one coefficient
/// vector per sample point per edge, constant degree.
struct PolyFamily {
    Graph1Complex graph;
    int degree = 0;
    /// samples[e][j] is the coefficient vector (a_0..a_{n-1}) at t = j/m on edge e.
    std::vector<std::vector<std::vector<Cx>>> samples;

    MonicPoly poly_at(int edge, int sample) const;
    MonicPoly poly_at_parameter(int edge, double t) const; // linear interpolation
    double sup_norm() const;
};

inline constexpr double kVertexTol = 1e-9;

struct ValidationReport {
    bool valid = false;
    double sup_norm_M = 0.0;
    std::vector<std::string> problems; // tagged "VertexMismatch(e1,e2)", "DegreeMismatch", ...
};

/// Check all PolyFamily invariants (connectivity, basepoint, endpoint
/// declarations, constant degree, vertex agreement within kVertexTol, finite
/// entries) and report the coefficient sup-norm M.
ValidationReport validate_family(const PolyFamily& F);

/// Throw the first validation problem as an Error.
void require_valid(const PolyFamily& F);

/// Directed traversal of one edge.
struct DirectedEdge {
    std::string id;
    bool reversed = false;
};

using Loop = std::vector<DirectedEdge>;

/// Loops closing at the basepoint that generate the fundamental group: one per
/// non-tree edge of a BFS spanning tree.
std::vector<Loop> fundamental_loops(const Graph1Complex& g);

/// Parse "e1,~e2,e3" (a '~' or '-' prefix reverses the edge).
Loop parse_loop(const std::string& text);
std::string loop_to_string(const Loop& loop);

/// The stability margin eps(delta) of the family: minimum of |P(x, w)| over all
/// sample points x and grid points w of pitch delta/4 in the disk |w| <= R,
/// R = 2 + M, that keep distance >= delta from the roots of P(x, .); clamped
/// to at most 1, and 1 when no grid point qualifies.
double stability_margin(const PolyFamily& F, double delta);

struct PerturbResult {
    PolyFamily family;
    double deviation = 0.0; // max coefficient change, sup over samples
    int attempts = 0;
    double min_abs_discriminant = 0.0;
};

/// Perturb F off the discriminant variety: add one random constant vector
/// drawn from a polydisk whose radius doubles per attempt (seeded, attempt
/// seeds derived from rng_seed) until min |disc| >= tol over all samples.
/// Returns F unchanged when it already clears tol. Throws BudgetExhausted.
PerturbResult perturb_off_discriminant(const PolyFamily& F, double tol, int budget,
                                       std::uint64_t rng_seed);

/// Per-sample complex values aligned with a family's sample layout.
using SampleFunction = std::vector<std::vector<Cx>>;

/// Snap an eps-approximate root to the exact nearest root at every sample.
/// alpha = half the minimum root gap over all samples; each approx value must
/// be within alpha/3 of a unique root and adjacent snapped values must stay
/// within alpha (no strand jumps), else MarginViolation. Requires min |disc| > 0.
SampleFunction snap_to_exact(const PolyFamily& F, const SampleFunction& approx, double eps);

/// Closed loop of nonzero samples f(t_0)..f(t_m) with t_m identified with t_0
/// (the last value repeats the first). Adequate sampling: consecutive ratio
/// arguments stay below pi/2.
struct ScalarLoopSamples {
    std::vector<Cx> values;
};

/// Total winding of the loop around 0, an exact integer.
/// Throws InadequateSampling when the adequacy invariant fails.
int winding_number(const ScalarLoopSamples& f);

struct MthRootResult {
    bool exists = false;
    int winding = 0;
    int m = 1;
    std::optional<ScalarLoopSamples> root;
};

/// Continuous m-th root of f along the loop when m divides the winding number;
/// otherwise reports the obstruction. g is tracked branch-continuously, so
/// adjacent ratio arguments of g stay below pi/m.
MthRootResult mth_root_on_loop(const ScalarLoopSamples& f, int m);

} // namespace polybraid::family

#endif
