#include "polybraid/family.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <set>
#include <sstream>

#include "polybraid/rng.hpp"

namespace polybraid::family {

using polycore::RootMultiset;

int Graph1Complex::vertex_index(const std::string& id) const {
    for (size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == id) return static_cast<int>(i);
    return -1;
}

int Graph1Complex::edge_index(const std::string& id) const {
    for (size_t i = 0; i < edges.size(); ++i)
        if (edges[i].id == id) return static_cast<int>(i);
    return -1;
}

bool Graph1Complex::is_connected() const {
    if (vertices.empty() || edges.empty()) return false;
    const int start = vertex_index(basepoint);
    if (start < 0) return false;
    std::set<std::string> seen{basepoint};
    std::deque<std::string> queue{basepoint};
    while (!queue.empty()) {
        const std::string v = queue.front();
        queue.pop_front();
        for (const auto& e : edges) {
            for (int side = 0; side < 2; ++side) {
                if (e.ends[side] == v && !seen.count(e.ends[1 - side])) {
                    seen.insert(e.ends[1 - side]);
                    queue.push_back(e.ends[1 - side]);
                }
            }
        }
    }
    return seen.size() == vertices.size();
}

MonicPoly PolyFamily::poly_at(int edge, int sample) const {
    return MonicPoly(samples[static_cast<size_t>(edge)][static_cast<size_t>(sample)]);
}

MonicPoly PolyFamily::poly_at_parameter(int edge, double t) const {
    const auto& row = samples[static_cast<size_t>(edge)];
    const int m = static_cast<int>(row.size()) - 1;
    const double s = std::clamp(t, 0.0, 1.0) * m;
    const int j = std::min(static_cast<int>(s), m - 1);
    const double frac = s - j;
    std::vector<Cx> c(static_cast<size_t>(degree));
    for (int i = 0; i < degree; ++i)
        c[static_cast<size_t>(i)] = (1.0 - frac) * row[static_cast<size_t>(j)][static_cast<size_t>(i)] +
                                    frac * row[static_cast<size_t>(j + 1)][static_cast<size_t>(i)];
    return MonicPoly(std::move(c));
}

double PolyFamily::sup_norm() const {
    double m = 0.0;
    for (const auto& edge : samples)
        for (const auto& vec : edge)
            for (const Cx& a : vec) m = std::max(m, std::abs(a));
    return m;
}

ValidationReport validate_family(const PolyFamily& F) {
    ValidationReport rep;
    const auto& g = F.graph;

    if (g.edges.empty()) rep.problems.push_back("Disconnected: empty edge list");
    if (g.vertex_index(g.basepoint) < 0) rep.problems.push_back("MissingBasepoint: " + g.basepoint);
    for (const auto& e : g.edges)
        for (int side = 0; side < 2; ++side)
            if (g.vertex_index(e.ends[side]) < 0)
                rep.problems.push_back("UndeclaredVertex: edge " + e.id + " end " + e.ends[side]);
    if (!g.edges.empty() && g.vertex_index(g.basepoint) >= 0 && !g.is_connected())
        rep.problems.push_back("Disconnected: not all vertices reachable from basepoint");

    if (F.samples.size() != g.edges.size()) {
        rep.problems.push_back("DegreeMismatch: sample rows do not match edge list");
        return rep;
    }
    for (size_t e = 0; e < g.edges.size(); ++e) {
        if (g.edges[e].samples < 1) rep.problems.push_back("BadSampleCount: edge " + g.edges[e].id);
        if (static_cast<int>(F.samples[e].size()) != g.edges[e].samples + 1) {
            rep.problems.push_back("BadSampleCount: edge " + g.edges[e].id + " row length");
            continue;
        }
        for (const auto& vec : F.samples[e]) {
            if (static_cast<int>(vec.size()) != F.degree) {
                rep.problems.push_back("DegreeMismatch: edge " + g.edges[e].id);
                break;
            }
            for (const Cx& a : vec) {
                if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
                    rep.problems.push_back("NonFiniteCoefficient: edge " + g.edges[e].id);
                    break;
                }
                rep.sup_norm_M = std::max(rep.sup_norm_M, std::abs(a));
            }
        }
    }

    // Vertex agreement: all edge-ends incident to one vertex carry the same vector.
    for (const auto& v : g.vertices) {
        std::vector<std::pair<std::string, const std::vector<Cx>*>> incident;
        for (size_t e = 0; e < g.edges.size(); ++e) {
            if (F.samples[e].empty()) continue;
            if (g.edges[e].ends[0] == v) incident.push_back({g.edges[e].id, &F.samples[e].front()});
            if (g.edges[e].ends[1] == v) incident.push_back({g.edges[e].id, &F.samples[e].back()});
        }
        for (size_t i = 1; i < incident.size(); ++i) {
            const auto& a = *incident[0].second;
            const auto& b = *incident[i].second;
            if (a.size() != b.size()) continue; // degree mismatch already reported
            double dev = 0.0;
            for (size_t k = 0; k < a.size(); ++k) dev = std::max(dev, std::abs(a[k] - b[k]));
            if (dev > kVertexTol)
                rep.problems.push_back("VertexMismatch(" + incident[0].first + "," + incident[i].first +
                                       ") at vertex " + v);
        }
    }

    rep.valid = rep.problems.empty();
    return rep;
}

void require_valid(const PolyFamily& F) {
    const ValidationReport rep = validate_family(F);
    if (!rep.valid) {
        const std::string& p = rep.problems.front();
        const auto colon = p.find(':');
        const auto paren = p.find('(');
        const auto cut = std::min(colon == std::string::npos ? p.size() : colon,
                                  paren == std::string::npos ? p.size() : paren);
        throw Error(p.substr(0, cut), p);
    }
}

std::vector<Loop> fundamental_loops(const Graph1Complex& g) {
    if (!g.is_connected()) throw Error("Disconnected", "fundamental loops require a connected graph");

    // BFS spanning tree: tree_path[v] = directed edge list from basepoint to v.
    std::map<std::string, Loop> tree_path;
    tree_path[g.basepoint] = {};
    std::deque<std::string> queue{g.basepoint};
    std::set<std::string> tree_edges;
    while (!queue.empty()) {
        const std::string v = queue.front();
        queue.pop_front();
        for (const auto& e : g.edges) {
            if (e.ends[0] == v && !tree_path.count(e.ends[1])) {
                tree_path[e.ends[1]] = tree_path[v];
                tree_path[e.ends[1]].push_back({e.id, false});
                tree_edges.insert(e.id);
                queue.push_back(e.ends[1]);
            } else if (e.ends[1] == v && !tree_path.count(e.ends[0])) {
                tree_path[e.ends[0]] = tree_path[v];
                tree_path[e.ends[0]].push_back({e.id, true});
                tree_edges.insert(e.id);
                queue.push_back(e.ends[0]);
            }
        }
    }

    std::vector<Loop> loops;
    for (const auto& e : g.edges) {
        if (tree_edges.count(e.id)) continue;
        Loop loop = tree_path.at(e.ends[0]);
        loop.push_back({e.id, false});
        const Loop& back = tree_path.at(e.ends[1]);
        for (auto it = back.rbegin(); it != back.rend(); ++it) loop.push_back({it->id, !it->reversed});
        loops.push_back(std::move(loop));
    }
    return loops;
}

Loop parse_loop(const std::string& text) {
    Loop loop;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        bool reversed = false;
        if (item[0] == '~' || item[0] == '-') {
            reversed = true;
            item = item.substr(1);
        }
        loop.push_back({item, reversed});
    }
    return loop;
}

std::string loop_to_string(const Loop& loop) {
    std::string out;
    for (size_t i = 0; i < loop.size(); ++i) {
        if (i) out += ",";
        if (loop[i].reversed) out += "~";
        out += loop[i].id;
    }
    return out;
}

double stability_margin(const PolyFamily& F, double delta) {
    if (delta <= 0.0) throw Error("BadTolerance", "stability_margin requires delta > 0");
    require_valid(F);
    const double R = 2.0 + F.sup_norm();
    const double pitch = delta / 4.0;
    const int half = static_cast<int>(std::floor(R / pitch));

    double eps = 1.0;
    for (size_t e = 0; e < F.samples.size(); ++e) {
        for (size_t j = 0; j < F.samples[e].size(); ++j) {
            const MonicPoly p = F.poly_at(static_cast<int>(e), static_cast<int>(j));
            const RootMultiset rs = polycore::roots(p);
            for (int iy = -half; iy <= half; ++iy) {
                for (int ix = -half; ix <= half; ++ix) {
                    const Cx w{ix * pitch, iy * pitch};
                    if (std::abs(w) > R) continue;
                    if (polycore::multiset_distance(w, rs) < delta) continue;
                    eps = std::min(eps, std::abs(p.eval(w)));
                }
            }
        }
    }
    return eps;
}

PerturbResult perturb_off_discriminant(const PolyFamily& F, double tol, int budget,
                                       std::uint64_t rng_seed) {
    if (tol <= 0.0) throw Error("BadTolerance", "perturb_off_discriminant requires tol > 0");
    require_valid(F);

    auto min_abs_disc = [&](const PolyFamily& G) {
        double m = std::numeric_limits<double>::infinity();
        for (size_t e = 0; e < G.samples.size(); ++e)
            for (size_t j = 0; j < G.samples[e].size(); ++j)
                m = std::min(m, std::abs(polycore::discriminant(G.poly_at(static_cast<int>(e), static_cast<int>(j)))));
        return m;
    };

    PerturbResult res;
    res.min_abs_discriminant = min_abs_disc(F);
    if (res.min_abs_discriminant >= tol) {
        res.family = F;
        res.deviation = 0.0;
        res.attempts = 0;
        return res;
    }

    for (int attempt = 0; attempt < budget; ++attempt) {
        const double radius = tol * std::pow(2.0, attempt);
        Rng rng(Rng::derive(rng_seed, static_cast<std::uint64_t>(attempt)));
        std::vector<Cx> shift(static_cast<size_t>(F.degree));
        double dev = 0.0;
        for (int i = 0; i < F.degree; ++i) {
            shift[static_cast<size_t>(i)] = rng.disk(radius);
            dev = std::max(dev, std::abs(shift[static_cast<size_t>(i)]));
        }

        PolyFamily G = F;
        for (auto& edge : G.samples)
            for (auto& vec : edge)
                for (int i = 0; i < F.degree; ++i) vec[static_cast<size_t>(i)] += shift[static_cast<size_t>(i)];

        const double m = min_abs_disc(G);
        if (m >= tol) {
            res.family = std::move(G);
            res.deviation = dev;
            res.attempts = attempt + 1;
            res.min_abs_discriminant = m;
            return res;
        }
    }
    throw Error("BudgetExhausted", "perturbation budget exhausted; tol too aggressive for this sampling");
}

SampleFunction snap_to_exact(const PolyFamily& F, const SampleFunction& approx, double eps) {
    require_valid(F);
    if (approx.size() != F.samples.size())
        throw Error("ShapeMismatch", "approximate root layout does not match the family");

    // alpha = half the minimum root gap over all samples; also rejects repeated roots.
    double min_gap = std::numeric_limits<double>::infinity();
    std::vector<std::vector<RootMultiset>> all_roots(F.samples.size());
    for (size_t e = 0; e < F.samples.size(); ++e) {
        for (size_t j = 0; j < F.samples[e].size(); ++j) {
            const MonicPoly p = F.poly_at(static_cast<int>(e), static_cast<int>(j));
            const Cx d = polycore::discriminant(p);
            if (polycore::discriminant_is_zero(p, d))
                throw Error("RepeatedRoot", "family touches the discriminant variety at a sample");
            all_roots[e].push_back(polycore::roots(p));
            min_gap = std::min(min_gap, polycore::min_root_gap(p));
        }
        if (approx[e].size() != F.samples[e].size())
            throw Error("ShapeMismatch", "approximate root layout does not match the family");
    }
    const double alpha = 0.5 * min_gap;

    SampleFunction g(F.samples.size());
    for (size_t e = 0; e < F.samples.size(); ++e) {
        g[e].resize(F.samples[e].size());
        for (size_t j = 0; j < F.samples[e].size(); ++j) {
            const RootMultiset& rs = all_roots[e][j];
            const Cx f = approx[e][j];
            double best = std::numeric_limits<double>::infinity();
            Cx chosen{};
            for (const Cx& r : rs.roots) {
                const double d = std::abs(f - r);
                if (d < best) {
                    best = d;
                    chosen = r;
                }
            }
            if (!(best < alpha / 3.0))
                throw Error("MarginViolation",
                            "approximate value is not within alpha/3 of a unique root (eps too large "
                            "or sampling too coarse)");
            const MonicPoly p = F.poly_at(static_cast<int>(e), static_cast<int>(j));
            if (eps > 0.0 && std::abs(p.eval(f)) > eps)
                throw Error("MarginViolation", "input is not an eps-approximate root");
            g[e][j] = chosen;
        }
        // Continuity along the edge: the snapped root never jumps strands.
        for (size_t j = 1; j < g[e].size(); ++j)
            if (std::abs(g[e][j] - g[e][j - 1]) >= alpha)
                throw Error("MarginViolation", "snapped section jumps strands between adjacent samples");
    }
    return g;
}

namespace {

double arg_of_ratio(Cx a, Cx b) {
    // arg(a / b), stable near the cut.
    return std::arg(a * std::conj(b));
}

void check_loop(const ScalarLoopSamples& f) {
    if (f.values.size() < 2) throw Error("InadequateSampling", "loop needs at least two samples");
    double scale = 0.0;
    for (const Cx& v : f.values) scale = std::max(scale, std::abs(v));
    for (const Cx& v : f.values)
        if (std::abs(v) == 0.0) throw Error("NonVanishing", "loop samples must be nonzero");
    if (std::abs(f.values.front() - f.values.back()) > 1e-6 * scale)
        throw Error("InadequateSampling", "loop is not closed: last sample must repeat the first");
    for (size_t j = 0; j + 1 < f.values.size(); ++j)
        if (std::abs(arg_of_ratio(f.values[j + 1], f.values[j])) >= 1.5707963267948966)
            throw Error("InadequateSampling", "consecutive ratio argument reaches pi/2");
}

} // namespace

int winding_number(const ScalarLoopSamples& f) {
    check_loop(f);
    double total = 0.0;
    for (size_t j = 0; j + 1 < f.values.size(); ++j) total += arg_of_ratio(f.values[j + 1], f.values[j]);
    const double w = total / 6.283185307179586477;
    const long long rounded = std::llround(w);
    if (std::abs(w - static_cast<double>(rounded)) > 0.01)
        throw Error("InadequateSampling", "winding sum is not close to an integer");
    return static_cast<int>(rounded);
}

MthRootResult mth_root_on_loop(const ScalarLoopSamples& f, int m) {
    if (m < 1) throw Error("BadTolerance", "mth_root_on_loop requires m >= 1");
    MthRootResult res;
    res.m = m;
    res.winding = winding_number(f);
    if (m == 1) {
        res.exists = true;
        res.root = f;
        return res;
    }
    if (res.winding % m != 0) {
        res.exists = false;
        return res;
    }
    ScalarLoopSamples g;
    g.values.resize(f.values.size());
    g.values[0] = std::exp(std::log(f.values[0]) / static_cast<double>(m));
    for (size_t j = 1; j < f.values.size(); ++j) {
        const Cx ratio = f.values[j] / f.values[j - 1];
        g.values[j] = g.values[j - 1] * std::exp(std::log(ratio) / static_cast<double>(m));
    }
    res.exists = true;
    res.root = std::move(g);
    return res;
}

} // namespace polybraid::family
