#include "polybraid/tracking.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>

namespace polybraid::tracking {

using braid::BraidWord;
using braid::Permutation;
using polycore::MonicPoly;
using polycore::RootMultiset;

namespace {

constexpr int kMaxBisectionDepth = 20;
constexpr double kSafety = 0.4; // strictly below 1/2; guards float error in gap estimates

double min_pairwise_gap(const std::vector<Cx>& pts) {
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j) best = std::min(best, std::abs(pts[i] - pts[j]));
    return best;
}

std::vector<Cx> sorted_lex(std::vector<Cx> v) {
    std::sort(v.begin(), v.end(), [](Cx a, Cx b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return v;
}

void ensure_not_on_discriminant(const MonicPoly& p, const std::string& where) {
    if (polycore::has_repeated_root(p))
        throw Error("RepeatedRoot", "discriminant vanished within tolerance " + where);
}

/// Nearest-neighbour matching of current positions onto the roots of the next
/// polynomial. Returns matched positions in strand order, or nothing when the
/// assignment is not a bijection or a root moved too far.
std::optional<std::pair<std::vector<Cx>, StepCertificate>> try_step(const std::vector<Cx>& cur,
                                                                    const RootMultiset& next) {
    const size_t n = cur.size();
    StepCertificate cert;
    cert.min_gap_at_start = min_pairwise_gap(cur);
    std::vector<int> pick(n, -1);
    std::vector<bool> used(n, false);
    double maxdisp = 0.0;
    for (size_t k = 0; k < n; ++k) {
        double best = std::numeric_limits<double>::infinity();
        int arg = -1;
        for (size_t j = 0; j < n; ++j) {
            const double d = std::abs(cur[k] - next.roots[j]);
            if (d < best) {
                best = d;
                arg = static_cast<int>(j);
            }
        }
        if (used[static_cast<size_t>(arg)]) return std::nullopt;
        used[static_cast<size_t>(arg)] = true;
        pick[k] = arg;
        maxdisp = std::max(maxdisp, best);
    }
    if (!(maxdisp < kSafety * 0.5 * cert.min_gap_at_start)) return std::nullopt;
    cert.max_displacement = maxdisp;
    std::vector<Cx> matched(n);
    for (size_t k = 0; k < n; ++k) matched[k] = next.roots[static_cast<size_t>(pick[k])];
    return std::make_pair(std::move(matched), cert);
}

} // namespace

RootTrajectory track_edge(const PolyFamily& F, const std::string& edge_id) {
    family::require_valid(F);
    const int e = F.graph.edge_index(edge_id);
    if (e < 0) throw Error("UnknownEdge", "edge " + edge_id + " not declared");
    const int m = F.graph.edges[static_cast<size_t>(e)].samples;

    RootTrajectory traj;
    traj.edge = edge_id;

    const MonicPoly p0 = F.poly_at(e, 0);
    ensure_not_on_discriminant(p0, "at the start of edge " + edge_id);
    const RootMultiset r0 = polycore::roots(p0);
    std::vector<Cx> cur = sorted_lex(r0.roots);
    const int n = static_cast<int>(cur.size());
    traj.ts.push_back(0.0);
    traj.strands.assign(static_cast<size_t>(n), {});
    for (int k = 0; k < n; ++k) traj.strands[static_cast<size_t>(k)].push_back(cur[static_cast<size_t>(k)]);

    // Advance from t0 (positions cur) to t1, bisecting on rejection.
    std::function<void(double, double, int)> advance = [&](double t0, double t1, int depth) {
        const MonicPoly p = F.poly_at_parameter(e, t1);
        ensure_not_on_discriminant(p, "near t=" + std::to_string(t1) + " on edge " + edge_id);
        const RootMultiset next = polycore::roots(p);
        if (auto step = try_step(cur, next)) {
            cur = step->first;
            traj.ts.push_back(t1);
            traj.certificates.push_back(step->second);
            for (int k = 0; k < n; ++k) traj.strands[static_cast<size_t>(k)].push_back(cur[static_cast<size_t>(k)]);
            return;
        }
        if (depth >= kMaxBisectionDepth)
            throw Error("StepTooCoarse", "bisection depth exhausted near t=" + std::to_string(t1) +
                                             " on edge " + edge_id);
        const double tm = 0.5 * (t0 + t1);
        advance(t0, tm, depth + 1);
        advance(tm, t1, depth + 1);
    };

    for (int j = 1; j <= m; ++j) advance(static_cast<double>(j - 1) / m, static_cast<double>(j) / m, 0);
    return traj;
}

RootTrajectory reverse_trajectory(const RootTrajectory& t) {
    RootTrajectory out;
    out.edge = t.edge;
    out.reversed = !t.reversed;
    const size_t len = t.ts.size();
    out.ts.reserve(len);
    for (size_t i = 0; i < len; ++i) out.ts.push_back(1.0 - t.ts[len - 1 - i]);
    out.strands.resize(t.strands.size());
    for (size_t k = 0; k < t.strands.size(); ++k) {
        out.strands[k].reserve(len);
        for (size_t i = 0; i < len; ++i) out.strands[k].push_back(t.strands[k][len - 1 - i]);
    }
    out.certificates.reserve(t.certificates.size());
    for (size_t i = 0; i < t.certificates.size(); ++i)
        out.certificates.push_back(t.certificates[t.certificates.size() - 1 - i]);
    return out;
}

namespace {

struct AssembledLoop {
    std::vector<double> ts;              // global parameter, edge i spans [i, i+1]
    std::vector<std::vector<Cx>> paths;  // paths[k]: strand k, started at basepoint root k (lex)
};

/// Concatenate edge trajectories around the loop, joining strands by nearest
/// value at the junctions, then re-index so strand k starts at the k-th
/// lexicographic basepoint root.
AssembledLoop assemble_loop(const PolyFamily& F, const Loop& loop) {
    if (loop.empty()) throw Error("EmptyLoop", "loop must contain at least one edge");

    // Validate that the loop is a closed edge path at the basepoint.
    std::string at = F.graph.basepoint;
    for (const auto& de : loop) {
        const int e = F.graph.edge_index(de.id);
        if (e < 0) throw Error("UnknownEdge", "edge " + de.id + " not declared");
        const auto& decl = F.graph.edges[static_cast<size_t>(e)];
        const std::string from = de.reversed ? decl.ends[1] : decl.ends[0];
        const std::string to = de.reversed ? decl.ends[0] : decl.ends[1];
        if (from != at) throw Error("OpenLoop", "loop is not an edge path: " + de.id + " does not start at " + at);
        at = to;
    }
    if (at != F.graph.basepoint) throw Error("OpenLoop", "loop does not close at the basepoint");

    std::map<std::string, RootTrajectory> cache;
    auto forward = [&](const std::string& id) -> const RootTrajectory& {
        auto it = cache.find(id);
        if (it == cache.end()) it = cache.emplace(id, track_edge(F, id)).first;
        return it->second;
    };

    AssembledLoop out;
    int n = 0;
    double offset = 0.0;
    for (const auto& de : loop) {
        RootTrajectory t = forward(de.id);
        if (de.reversed) t = reverse_trajectory(t);
        if (out.paths.empty()) {
            n = t.strand_count();
            out.paths.assign(static_cast<size_t>(n), {});
            for (size_t i = 0; i < t.ts.size(); ++i) out.ts.push_back(t.ts[i]);
            for (int k = 0; k < n; ++k) out.paths[static_cast<size_t>(k)] = t.strands[static_cast<size_t>(k)];
        } else {
            // Match current strand ends to the starts of the next trajectory.
            std::vector<int> pick(static_cast<size_t>(n), -1);
            std::vector<bool> used(static_cast<size_t>(n), false);
            for (int k = 0; k < n; ++k) {
                const Cx end = out.paths[static_cast<size_t>(k)].back();
                double best = std::numeric_limits<double>::infinity();
                int arg = -1;
                for (int j = 0; j < n; ++j) {
                    const double d = std::abs(end - t.strands[static_cast<size_t>(j)].front());
                    if (d < best) {
                        best = d;
                        arg = j;
                    }
                }
                if (arg < 0 || used[static_cast<size_t>(arg)] || best > 1e-6)
                    throw Error("JunctionMismatch", "strand values do not agree across a vertex");
                used[static_cast<size_t>(arg)] = true;
                pick[static_cast<size_t>(k)] = arg;
            }
            for (size_t i = 1; i < t.ts.size(); ++i) out.ts.push_back(offset + t.ts[i]);
            for (int k = 0; k < n; ++k) {
                const auto& src = t.strands[static_cast<size_t>(pick[static_cast<size_t>(k)])];
                out.paths[static_cast<size_t>(k)].insert(out.paths[static_cast<size_t>(k)].end(),
                                                         src.begin() + 1, src.end());
            }
        }
        offset += 1.0;
    }

    // Re-index strands so strand k starts at the k-th lexicographic basepoint root.
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const Cx za = out.paths[static_cast<size_t>(a)].front();
        const Cx zb = out.paths[static_cast<size_t>(b)].front();
        if (za.real() != zb.real()) return za.real() < zb.real();
        return za.imag() < zb.imag();
    });
    std::vector<std::vector<Cx>> relabeled(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) relabeled[static_cast<size_t>(k)] = std::move(out.paths[static_cast<size_t>(order[static_cast<size_t>(k)])]);
    out.paths = std::move(relabeled);
    return out;
}

/// Positive braid word whose tau equals p (adjacent-transposition lift).
BraidWord permutation_lift(const Permutation& p) {
    const int n = p.degree();
    // Appending sigma_i swaps the occupants of positions i-1, i; we need the
    // final occupancy occ[pos] = p^{-1}(pos).
    std::vector<int> target = p.inverse().images;
    std::vector<int> swaps;
    std::vector<int> a = target;
    bool moved = true;
    while (moved) {
        moved = false;
        for (int i = 0; i + 1 < n; ++i) {
            if (a[static_cast<size_t>(i)] > a[static_cast<size_t>(i + 1)]) {
                std::swap(a[static_cast<size_t>(i)], a[static_cast<size_t>(i + 1)]);
                swaps.push_back(i + 1);
                moved = true;
            }
        }
    }
    std::reverse(swaps.begin(), swaps.end());
    BraidWord w(std::max(n, 1), {});
    w.letters = swaps;
    if (!(braid::tau(w) == p)) throw Error("Internal", "permutation lift failed self-check");
    return w;
}

struct ExtractionResult {
    std::vector<int> letters;
    Permutation pos_perm; // start position -> end position
    Permutation start_positions; // lex strand k -> its position in the rotated x-order at t=0
};

/// One braid-reading pass at a fixed rotation angle. Returns nothing if the
/// projection is degenerate for this angle.
std::optional<ExtractionResult> extract_at_angle(const AssembledLoop& A, double angle) {
    const int n = static_cast<int>(A.paths.size());
    const size_t len = A.ts.size();
    const Cx rot{std::cos(angle), std::sin(angle)};

    std::vector<std::vector<double>> x(static_cast<size_t>(n)), y(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        x[static_cast<size_t>(k)].resize(len);
        y[static_cast<size_t>(k)].resize(len);
        for (size_t i = 0; i < len; ++i) {
            const Cx z = rot * A.paths[static_cast<size_t>(k)][i];
            x[static_cast<size_t>(k)][i] = z.real();
            y[static_cast<size_t>(k)][i] = z.imag();
        }
    }

    double scale = 1e-12;
    for (int k = 0; k < n; ++k)
        for (size_t i = 0; i < len; ++i) scale = std::max(scale, std::abs(x[static_cast<size_t>(k)][i]));
    const double tie_eps = 1e-11 * scale;

    auto order_at = [&](size_t i) -> std::optional<std::vector<int>> {
        std::vector<int> ord(static_cast<size_t>(n));
        std::iota(ord.begin(), ord.end(), 0);
        std::sort(ord.begin(), ord.end(),
                  [&](int a, int b) { return x[static_cast<size_t>(a)][i] < x[static_cast<size_t>(b)][i]; });
        for (int p = 0; p + 1 < n; ++p)
            if (std::abs(x[static_cast<size_t>(ord[static_cast<size_t>(p)])][i] -
                         x[static_cast<size_t>(ord[static_cast<size_t>(p + 1)])][i]) < tie_eps)
                return std::nullopt;
        return ord;
    };

    const auto ord0_opt = order_at(0);
    if (!ord0_opt) return std::nullopt;
    std::vector<int> ord = *ord0_opt;              // ord[pos] = strand
    std::vector<int> pos(static_cast<size_t>(n)); // pos[strand] = position
    for (int p = 0; p < n; ++p) pos[static_cast<size_t>(ord[static_cast<size_t>(p)])] = p;
    const std::vector<int> pos_start = pos;

    std::vector<int> letters;

    struct Event {
        double s;
        int a, b;
    };

    for (size_t i = 0; i + 1 < len; ++i) {
        std::vector<Event> events;
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                const double d0 = x[static_cast<size_t>(a)][i] - x[static_cast<size_t>(b)][i];
                const double d1 = x[static_cast<size_t>(a)][i + 1] - x[static_cast<size_t>(b)][i + 1];
                // Grazing contact at a sample point: retry with a fresh rotation.
                if (std::abs(d0) < tie_eps || std::abs(d1) < tie_eps) return std::nullopt;
                if ((d0 > 0) != (d1 > 0)) events.push_back({d0 / (d0 - d1), a, b});
            }
        }
        std::sort(events.begin(), events.end(), [](const Event& u, const Event& v) { return u.s < v.s; });
        for (size_t q = 0; q + 1 < events.size(); ++q) {
            const Event& u = events[q];
            const Event& v = events[q + 1];
            const bool share = (u.a == v.a || u.a == v.b || u.b == v.a || u.b == v.b);
            if (share && std::abs(u.s - v.s) < 1e-12) return std::nullopt;
        }
        for (const Event& ev : events) {
            const int pa = pos[static_cast<size_t>(ev.a)];
            const int pb = pos[static_cast<size_t>(ev.b)];
            if (std::abs(pa - pb) != 1) return std::nullopt; // non-adjacent crossing: projection too coarse
            const int left_pos = std::min(pa, pb);
            const int left = ord[static_cast<size_t>(left_pos)];
            const int right = ord[static_cast<size_t>(left_pos + 1)];
            const double yl = y[static_cast<size_t>(left)][i] +
                              ev.s * (y[static_cast<size_t>(left)][i + 1] - y[static_cast<size_t>(left)][i]);
            const double yr = y[static_cast<size_t>(right)][i] +
                              ev.s * (y[static_cast<size_t>(right)][i + 1] - y[static_cast<size_t>(right)][i]);
            // Sign convention: positive crossing when the strand arriving from the
            // right passes over (larger rotated imaginary part). Calibrated so that
            // the braid exponent sum equals the winding of the discriminant.
            const int letter = (yr > yl) ? (left_pos + 1) : -(left_pos + 1);
            letters.push_back(letter);
            std::swap(ord[static_cast<size_t>(left_pos)], ord[static_cast<size_t>(left_pos + 1)]);
            pos[static_cast<size_t>(ord[static_cast<size_t>(left_pos)])] = left_pos;
            pos[static_cast<size_t>(ord[static_cast<size_t>(left_pos + 1)])] = left_pos + 1;
        }
        const auto check = order_at(i + 1);
        if (!check || *check != ord) return std::nullopt;
    }

    ExtractionResult res;
    res.letters = std::move(letters);
    std::vector<int> pp(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) pp[static_cast<size_t>(pos_start[static_cast<size_t>(k)])] = pos[static_cast<size_t>(k)];
    res.pos_perm = Permutation(std::move(pp));
    res.start_positions = Permutation(pos_start);
    return res;
}

} // namespace

LoopMonodromy loop_braid(const PolyFamily& F, const Loop& loop) {
    AssembledLoop A = assemble_loop(F, loop);
    const int n = static_cast<int>(A.paths.size());

    // Lexicographic index of each strand's end value among the basepoint roots
    // (the loop is closed, so end values revisit the start configuration).
    std::vector<Cx> starts(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) starts[static_cast<size_t>(k)] = A.paths[static_cast<size_t>(k)].front();
    std::vector<int> perm_images(static_cast<size_t>(n), -1);
    std::vector<bool> used(static_cast<size_t>(n), false);
    for (int k = 0; k < n; ++k) {
        const Cx end = A.paths[static_cast<size_t>(k)].back();
        double best = std::numeric_limits<double>::infinity();
        int arg = -1;
        for (int j = 0; j < n; ++j) {
            const double d = std::abs(end - starts[static_cast<size_t>(j)]);
            if (d < best) {
                best = d;
                arg = j;
            }
        }
        if (arg < 0 || used[static_cast<size_t>(arg)] || best > 1e-6)
            throw Error("JunctionMismatch", "loop endpoints do not match the basepoint configuration");
        used[static_cast<size_t>(arg)] = true;
        perm_images[static_cast<size_t>(k)] = arg;
    }
    const Permutation perm_lex{perm_images};

    // Golden-angle rotations: deterministic, and retried on projection degeneracy.
    const double golden_step = 2.399963229728653; // 2*pi*(1 - 1/phi)
    std::optional<ExtractionResult> ex;
    for (int attempt = 0; attempt < 32 && !ex; ++attempt)
        ex = extract_at_angle(A, 0.5377 + golden_step * attempt);
    if (!ex) throw Error("DegenerateProjection", "crossing coincidences not resolved by generic rotations");

    if (!(braid::tau(BraidWord(n, ex->letters)) == ex->pos_perm))
        throw Error("Internal", "extracted word disagrees with the positional permutation");

    // Conjugate into the basepoint-lex indexing: with P0 = start_positions,
    // tau(lift(P0) * w_pos * lift(P0)^{-1}) = P0 then pos_perm then P0^{-1} = perm_lex.
    const BraidWord lift = permutation_lift(ex->start_positions);
    BraidWord w = (lift * BraidWord(n, ex->letters) * lift.inverse()).freely_reduced();

    if (!(braid::tau(w) == perm_lex))
        throw Error("Internal", "monodromy braid does not project to the strand permutation");

    LoopMonodromy out;
    out.loop = loop;
    out.braid_word = std::move(w);
    out.permutation = perm_lex;
    out.ts = std::move(A.ts);
    out.strands = std::move(A.paths);
    return out;
}

SolvabilityVerdict solvability_verdict(const PolyFamily& F, const std::vector<Loop>& loops) {
    SolvabilityVerdict v;
    v.loops = loops;
    for (const Loop& l : loops) v.permutations.push_back(loop_braid(F, l).permutation);

    if (v.permutations.empty()) {
        // No loops: the graph is a tree and any strand extends.
        v.completely_solvable = true;
        v.exact_root_exists = true;
        const int n = F.degree;
        for (int i = 0; i < n; ++i) v.common_fixed.push_back(i);
    } else {
        const braid::StrandAnalysis sa = braid::strand_analysis(v.permutations);
        v.completely_solvable = sa.pure;
        v.exact_root_exists = !sa.common_fixed.empty();
        v.common_fixed.assign(sa.common_fixed.begin(), sa.common_fixed.end());
    }
    if (!v.exact_root_exists) return v;

    // Build the witness section by transporting the first common fixed strand
    // over a BFS spanning tree.
    const int fixed = v.common_fixed.front();
    const MonicPoly base_poly = [&] {
        for (size_t e = 0; e < F.graph.edges.size(); ++e) {
            if (F.graph.edges[e].ends[0] == F.graph.basepoint) return F.poly_at(static_cast<int>(e), 0);
            if (F.graph.edges[e].ends[1] == F.graph.basepoint)
                return F.poly_at(static_cast<int>(e), F.graph.edges[e].samples);
        }
        throw Error("Disconnected", "basepoint has no incident edge");
    }();
    const std::vector<Cx> base_roots = sorted_lex(polycore::roots(base_poly).roots);

    std::map<std::string, Cx> vertex_value{{F.graph.basepoint, base_roots[static_cast<size_t>(fixed)]}};
    std::map<std::string, RootTrajectory> trajectories;
    for (const auto& decl : F.graph.edges) trajectories.emplace(decl.id, track_edge(F, decl.id));

    // BFS over vertices along edges, assigning the transported root value.
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& decl : F.graph.edges) {
            const RootTrajectory& tr = trajectories.at(decl.id);
            for (int dir = 0; dir < 2; ++dir) {
                const std::string& from = decl.ends[dir];
                const std::string& to = decl.ends[1 - dir];
                if (!vertex_value.count(from) || vertex_value.count(to)) continue;
                const Cx v0 = vertex_value.at(from);
                int strand = -1;
                double best = std::numeric_limits<double>::infinity();
                for (int k = 0; k < tr.strand_count(); ++k) {
                    const Cx s = (dir == 0) ? tr.strands[static_cast<size_t>(k)].front()
                                            : tr.strands[static_cast<size_t>(k)].back();
                    const double d = std::abs(s - v0);
                    if (d < best) {
                        best = d;
                        strand = k;
                    }
                }
                if (strand < 0 || best > 1e-6)
                    throw Error("JunctionMismatch", "witness transport lost the strand at " + from);
                vertex_value[to] = (dir == 0) ? tr.strands[static_cast<size_t>(strand)].back()
                                              : tr.strands[static_cast<size_t>(strand)].front();
                grew = true;
            }
        }
    }

    family::SampleFunction witness(F.graph.edges.size());
    for (size_t e = 0; e < F.graph.edges.size(); ++e) {
        const auto& decl = F.graph.edges[e];
        const RootTrajectory& tr = trajectories.at(decl.id);
        const Cx v0 = vertex_value.at(decl.ends[0]);
        int strand = -1;
        double best = std::numeric_limits<double>::infinity();
        for (int k = 0; k < tr.strand_count(); ++k) {
            const double d = std::abs(tr.strands[static_cast<size_t>(k)].front() - v0);
            if (d < best) {
                best = d;
                strand = k;
            }
        }
        if (strand < 0 || best > 1e-6) throw Error("JunctionMismatch", "witness strand missing on " + decl.id);
        if (std::abs(tr.strands[static_cast<size_t>(strand)].back() - vertex_value.at(decl.ends[1])) > 1e-6)
            throw Error("Internal", "witness transport is inconsistent on edge " + decl.id);

        // Sample the strand at the declared parameters j/m (refinements only add points).
        const int msamples = decl.samples;
        witness[e].resize(static_cast<size_t>(msamples) + 1);
        for (int j = 0; j <= msamples; ++j) {
            const double t = static_cast<double>(j) / msamples;
            size_t idx = 0;
            double err = std::numeric_limits<double>::infinity();
            for (size_t i = 0; i < tr.ts.size(); ++i) {
                const double d = std::abs(tr.ts[i] - t);
                if (d < err) {
                    err = d;
                    idx = i;
                }
            }
            if (err > 1e-9) throw Error("Internal", "declared sample parameter missing from trajectory");
            witness[e][static_cast<size_t>(j)] = tr.strands[static_cast<size_t>(strand)][idx];
        }
    }
    v.witness = std::move(witness);
    return v;
}

namespace {

/// Discriminant path along one directed edge, refined until consecutive ratio
/// arguments stay below pi/2; records values at refined parameters.
struct DiscPath {
    std::vector<double> ts;
    std::vector<Cx> values;
};

DiscPath discriminant_path(const PolyFamily& F, int e, bool reversed) {
    const int m = F.graph.edges[static_cast<size_t>(e)].samples;
    auto disc_at = [&](double t_oriented) {
        const double t = reversed ? 1.0 - t_oriented : t_oriented;
        const MonicPoly p = F.poly_at_parameter(e, t);
        const Cx d = polycore::discriminant(p);
        if (polycore::discriminant_is_zero(p, d))
            throw Error("RepeatedRoot", "discriminant vanished on edge " + F.graph.edges[static_cast<size_t>(e)].id);
        return d;
    };

    DiscPath path;
    path.ts.push_back(0.0);
    path.values.push_back(disc_at(0.0));
    std::function<void(double, double, Cx, Cx, int)> refine = [&](double t0, double t1, Cx d0, Cx d1, int depth) {
        if (std::abs(std::arg(d1 * std::conj(d0))) < 1.5707963267948966 * 0.95) {
            path.ts.push_back(t1);
            path.values.push_back(d1);
            return;
        }
        if (depth >= 24)
            throw Error("RepeatedRoot", "discriminant winds too fast; it must pass near zero");
        const double tm = 0.5 * (t0 + t1);
        const Cx dm = disc_at(tm);
        refine(t0, tm, d0, dm, depth + 1);
        refine(tm, t1, dm, d1, depth + 1);
    };
    for (int j = 1; j <= m; ++j) {
        const double t0 = static_cast<double>(j - 1) / m;
        const double t1 = static_cast<double>(j) / m;
        refine(t0, t1, path.values.back(), disc_at(t1), 0);
    }
    return path;
}

} // namespace

NormalizeResult normalize_unit_discriminant(const PolyFamily& F, const std::vector<Loop>& loops) {
    family::require_valid(F);
    const int n = F.degree;
    const int N = n * (n - 1);
    if (N == 0) throw Error("DegreeTooSmall", "normalization needs degree >= 2");

    // Winding of the discriminant along each generating loop.
    NormalizeResult res;
    for (const Loop& loop : loops) {
        family::ScalarLoopSamples samples;
        for (const auto& de : loop) {
            const DiscPath p = discriminant_path(F, F.graph.edge_index(de.id), de.reversed);
            const size_t from = samples.values.empty() ? 0 : 1;
            samples.values.insert(samples.values.end(), p.values.begin() + static_cast<long>(from), p.values.end());
        }
        const int w = family::winding_number(samples);
        if (w % N != 0) res.obstructions.push_back({family::loop_to_string(loop), w, N});
    }
    if (!res.obstructions.empty()) {
        res.normalized = false;
        return res;
    }

    // f = disc^{-1/N}, branch-tracked over a spanning tree from the basepoint.
    auto nth_inverse_root_step = [&](Cx f_prev, Cx d_prev, Cx d_next) {
        const Cx ratio = d_next / d_prev;
        return f_prev * std::exp(-std::log(ratio) / static_cast<double>(N));
    };

    std::map<std::string, Cx> vertex_f;
    std::map<std::string, Cx> vertex_disc;
    // Basepoint value: principal branch.
    {
        // Any edge end at the basepoint provides the discriminant there.
        for (size_t e = 0; e < F.graph.edges.size(); ++e) {
            if (F.graph.edges[e].ends[0] == F.graph.basepoint) {
                vertex_disc[F.graph.basepoint] = polycore::discriminant(F.poly_at(static_cast<int>(e), 0));
                break;
            }
            if (F.graph.edges[e].ends[1] == F.graph.basepoint) {
                vertex_disc[F.graph.basepoint] =
                    polycore::discriminant(F.poly_at(static_cast<int>(e), F.graph.edges[e].samples));
                break;
            }
        }
        if (!vertex_disc.count(F.graph.basepoint)) throw Error("Disconnected", "basepoint has no incident edge");
        vertex_f[F.graph.basepoint] = std::exp(-std::log(vertex_disc.at(F.graph.basepoint)) / static_cast<double>(N));
    }

    // Propagate f along edges until every vertex has a value, then evaluate f at
    // every declared sample of every edge.
    std::map<std::string, DiscPath> disc_paths;
    for (size_t e = 0; e < F.graph.edges.size(); ++e)
        disc_paths.emplace(F.graph.edges[e].id, discriminant_path(F, static_cast<int>(e), false));

    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& decl : F.graph.edges) {
            const DiscPath& path = disc_paths.at(decl.id);
            for (int dir = 0; dir < 2; ++dir) {
                const std::string& from = decl.ends[dir];
                const std::string& to = decl.ends[1 - dir];
                if (!vertex_f.count(from) || vertex_f.count(to)) continue;
                Cx f = vertex_f.at(from);
                if (dir == 0) {
                    for (size_t i = 1; i < path.values.size(); ++i)
                        f = nth_inverse_root_step(f, path.values[i - 1], path.values[i]);
                } else {
                    for (size_t i = path.values.size(); i-- > 1;)
                        f = nth_inverse_root_step(f, path.values[i], path.values[i - 1]);
                }
                vertex_f[to] = f;
                grew = true;
            }
        }
    }

    PolyFamily G = F;
    for (size_t e = 0; e < F.graph.edges.size(); ++e) {
        const auto& decl = F.graph.edges[e];
        const DiscPath& path = disc_paths.at(decl.id);
        Cx f = vertex_f.at(decl.ends[0]);
        // March through the refined path, recording f at declared samples.
        size_t next_declared = 0;
        const int m = decl.samples;
        for (size_t i = 0; i < path.ts.size(); ++i) {
            if (i > 0) f = nth_inverse_root_step(f, path.values[i - 1], path.values[i]);
            const double target = static_cast<double>(next_declared) / m;
            if (std::abs(path.ts[i] - target) < 1e-12) {
                const MonicPoly scaled = polycore::star_action(f, F.poly_at(static_cast<int>(e), static_cast<int>(next_declared)));
                G.samples[e][next_declared] = scaled.coeffs;
                ++next_declared;
            }
        }
        if (next_declared != static_cast<size_t>(m) + 1)
            throw Error("Internal", "refined discriminant path skipped a declared sample");
        // Arrival value must agree with the far vertex (guaranteed by divisibility).
        if (std::abs(f - vertex_f.at(decl.ends[1])) > 1e-6 * std::abs(f))
            throw Error("Internal", "branch tracking of disc^{-1/N} is inconsistent; winding obstruction missed");
    }

    // The scaled family has discriminant f^N * disc = 1 at every sample.
    for (size_t e = 0; e < G.samples.size(); ++e)
        for (size_t j = 0; j < G.samples[e].size(); ++j) {
            const Cx d = polycore::discriminant(G.poly_at(static_cast<int>(e), static_cast<int>(j)));
            if (std::abs(d - Cx{1.0, 0.0}) > 1e-6)
                throw Error("Internal", "normalized discriminant drifted from 1");
        }

    res.normalized = true;
    res.family = std::move(G);
    return res;
}

} // namespace polybraid::tracking
