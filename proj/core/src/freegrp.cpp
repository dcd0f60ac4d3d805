#include "polybraid/freegrp.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace polybraid::freegrp {

FreeWord::FreeWord(int r, std::vector<int> ls) : rank(r), letters(std::move(ls)) {
    for (int l : letters)
        if (l == 0 || l > rank || -l > rank)
            throw Error("LetterOutOfRange", "free word letter outside generator range");
    *this = reduce(*this);
}

FreeWord reduce(const FreeWord& w) {
    FreeWord out;
    out.rank = w.rank;
    out.letters.reserve(w.letters.size());
    for (int l : w.letters) {
        if (!out.letters.empty() && out.letters.back() == -l)
            out.letters.pop_back();
        else
            out.letters.push_back(l);
    }
    return out;
}

FreeWord FreeWord::inverse() const {
    FreeWord out;
    out.rank = rank;
    out.letters.reserve(letters.size());
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) out.letters.push_back(-*it);
    return out;
}

FreeWord FreeWord::operator*(const FreeWord& o) const {
    FreeWord out;
    out.rank = std::max(rank, o.rank);
    out.letters = letters;
    for (int l : o.letters) {
        if (!out.letters.empty() && out.letters.back() == -l)
            out.letters.pop_back();
        else
            out.letters.push_back(l);
    }
    return out;
}

FreeHom FreeHom::identity(int rank) {
    FreeHom h;
    h.domain_rank = rank;
    h.codomain_rank = rank;
    for (int j = 1; j <= rank; ++j) h.images.push_back(FreeWord(rank, {j}));
    return h;
}

FreeWord apply_hom(const FreeHom& h, const FreeWord& w) {
    if (w.rank != h.domain_rank)
        throw Error("RankMismatch", "word rank does not match homomorphism domain");
    FreeWord out;
    out.rank = h.codomain_rank;
    for (int l : w.letters) {
        const FreeWord& img = h.images[static_cast<size_t>(std::abs(l) - 1)];
        if (l > 0) {
            for (int m : img.letters) {
                if (!out.letters.empty() && out.letters.back() == -m)
                    out.letters.pop_back();
                else
                    out.letters.push_back(m);
            }
        } else {
            for (auto it = img.letters.rbegin(); it != img.letters.rend(); ++it) {
                const int m = -*it;
                if (!out.letters.empty() && out.letters.back() == -m)
                    out.letters.pop_back();
                else
                    out.letters.push_back(m);
            }
        }
    }
    return out;
}

FreeHom compose(const FreeHom& g, const FreeHom& f) {
    if (f.codomain_rank != g.domain_rank)
        throw Error("RankMismatch", "homomorphisms not composable");
    FreeHom out;
    out.domain_rank = f.domain_rank;
    out.codomain_rank = g.codomain_rank;
    for (const FreeWord& w : f.images) out.images.push_back(apply_hom(g, w));
    return out;
}

std::vector<long long> exponent_vector(const FreeWord& w) {
    std::vector<long long> v(static_cast<size_t>(w.rank), 0);
    for (int l : w.letters) v[static_cast<size_t>(std::abs(l) - 1)] += (l > 0) ? 1 : -1;
    return v;
}

std::vector<std::vector<long long>> abelianization_matrix(const FreeHom& h) {
    std::vector<std::vector<long long>> m(static_cast<size_t>(h.codomain_rank),
                                          std::vector<long long>(static_cast<size_t>(h.domain_rank), 0));
    for (int j = 0; j < h.domain_rank; ++j) {
        const auto col = exponent_vector(h.images[static_cast<size_t>(j)]);
        for (int i = 0; i < h.codomain_rank; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(j)] = col[static_cast<size_t>(i)];
    }
    return m;
}

int SubgroupGraph::edge_count() const {
    int e = 0;
    for (const auto& row : out)
        for (int t : row)
            if (t >= 0) ++e;
    return e;
}

int SubgroupGraph::read_word(const FreeWord& w) const {
    int v = base;
    for (int l : w.letters) {
        const size_t j = static_cast<size_t>(std::abs(l) - 1);
        v = (l > 0) ? out[static_cast<size_t>(v)][j] : in[static_cast<size_t>(v)][j];
        if (v < 0) return -1;
    }
    return v;
}

bool SubgroupGraph::reads_closed_loop(const FreeWord& w) const { return read_word(w) == base; }

bool SubgroupGraph::is_folded() const {
    // Folded means the edge relation is a partial function in both directions,
    // which the out/in arrays encode by construction; verify consistency.
    for (int v = 0; v < vertex_count(); ++v)
        for (int j = 0; j < rank; ++j) {
            const int t = out[static_cast<size_t>(v)][static_cast<size_t>(j)];
            if (t >= 0 && in[static_cast<size_t>(t)][static_cast<size_t>(j)] != v) return false;
            const int s = in[static_cast<size_t>(v)][static_cast<size_t>(j)];
            if (s >= 0 && out[static_cast<size_t>(s)][static_cast<size_t>(j)] != v) return false;
        }
    return true;
}

namespace {

std::vector<int> compose_perm(const std::vector<int>& p, const std::vector<int>& q) {
    // apply p first, then q
    std::vector<int> r(p.size());
    for (size_t i = 0; i < p.size(); ++i) r[i] = q[static_cast<size_t>(p[i])];
    return r;
}

} // namespace

SubgroupGraph schreier_kernel(const std::vector<std::vector<int>>& images, int degree) {
    const int r = static_cast<int>(images.size());
    for (const auto& p : images) {
        if (static_cast<int>(p.size()) != degree)
            throw Error("DegreeMismatch", "permutation image has wrong degree");
        std::vector<bool> seen(static_cast<size_t>(degree), false);
        for (int v : p) {
            if (v < 0 || v >= degree || seen[static_cast<size_t>(v)])
                throw Error("NotAPermutation", "generator image is not a permutation");
            seen[static_cast<size_t>(v)] = true;
        }
    }

    std::vector<int> id(static_cast<size_t>(degree));
    std::iota(id.begin(), id.end(), 0);

    std::map<std::vector<int>, int> index;
    std::vector<std::vector<int>> elems;
    index[id] = 0;
    elems.push_back(id);

    SubgroupGraph g;
    g.rank = r;
    g.base = 0;

    std::deque<int> queue{0};
    std::vector<std::vector<int>> out_edges{std::vector<int>(static_cast<size_t>(r), -1)};
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (int j = 0; j < r; ++j) {
            const auto target = compose_perm(elems[static_cast<size_t>(v)], images[static_cast<size_t>(j)]);
            auto it = index.find(target);
            int t;
            if (it == index.end()) {
                t = static_cast<int>(elems.size());
                index[target] = t;
                elems.push_back(target);
                out_edges.emplace_back(static_cast<size_t>(r), -1);
                queue.push_back(t);
            } else {
                t = it->second;
            }
            out_edges[static_cast<size_t>(v)][static_cast<size_t>(j)] = t;
        }
    }

    g.out = std::move(out_edges);
    g.in.assign(g.out.size(), std::vector<int>(static_cast<size_t>(r), -1));
    for (size_t v = 0; v < g.out.size(); ++v)
        for (int j = 0; j < r; ++j) g.in[static_cast<size_t>(g.out[v][static_cast<size_t>(j)])][static_cast<size_t>(j)] = static_cast<int>(v);
    return g;
}

SubgroupGraph stallings_graph(int rank, const std::vector<FreeWord>& generators) {
    // Build the bouquet of generator loops, then fold with union-find.
    struct RawEdge {
        int from, to, label; // label 1-based positive
    };
    std::vector<RawEdge> edges;
    int vertices = 1; // 0 = base
    for (const FreeWord& w0 : generators) {
        const FreeWord w = reduce(w0);
        if (w.rank != rank) throw Error("RankMismatch", "generator word rank mismatch");
        if (w.empty()) continue;
        int prev = 0;
        for (size_t i = 0; i < w.letters.size(); ++i) {
            const int next = (i + 1 == w.letters.size()) ? 0 : vertices++;
            const int l = w.letters[i];
            if (l > 0)
                edges.push_back({prev, next, l});
            else
                edges.push_back({next, prev, -l});
            prev = next;
        }
    }

    std::vector<int> parent(static_cast<size_t>(vertices));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    };
    auto unite = [&](int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); };

    // Fold: two equal-label edges sharing a source (or a target) force their
    // other endpoints equal. Iterate to a fixed point.
    bool changed = true;
    while (changed) {
        changed = false;
        std::map<std::pair<int, int>, int> by_source, by_target;
        for (const RawEdge& e : edges) {
            const int f = find(e.from), t = find(e.to);
            auto [it1, fresh1] = by_source.try_emplace({f, e.label}, t);
            if (!fresh1 && find(it1->second) != t) {
                unite(it1->second, t);
                changed = true;
            }
            auto [it2, fresh2] = by_target.try_emplace({t, e.label}, f);
            if (!fresh2 && find(it2->second) != f) {
                unite(it2->second, f);
                changed = true;
            }
        }
    }

    // Collapse vertices and dedupe edges.
    std::map<int, int> remap;
    auto vertex_id = [&](int x) {
        const int root = find(x);
        auto it = remap.find(root);
        if (it != remap.end()) return it->second;
        const int id = static_cast<int>(remap.size());
        remap[root] = id;
        return id;
    };
    const int base = vertex_id(0);
    std::set<std::array<int, 3>> dedup;
    for (const RawEdge& e : edges) dedup.insert({vertex_id(e.from), vertex_id(e.to), e.label});

    SubgroupGraph g;
    g.rank = rank;
    g.base = base;
    g.out.assign(remap.size(), std::vector<int>(static_cast<size_t>(rank), -1));
    g.in.assign(remap.size(), std::vector<int>(static_cast<size_t>(rank), -1));
    for (const auto& [f, t, l] : dedup) {
        g.out[static_cast<size_t>(f)][static_cast<size_t>(l - 1)] = t;
        g.in[static_cast<size_t>(t)][static_cast<size_t>(l - 1)] = f;
    }

    // Trim to the core: repeatedly drop non-base vertices of total degree 1.
    bool trimmed = true;
    std::vector<bool> alive(remap.size(), true);
    while (trimmed) {
        trimmed = false;
        for (size_t v = 0; v < g.out.size(); ++v) {
            if (!alive[v] || static_cast<int>(v) == g.base) continue;
            int deg = 0;
            for (int j = 0; j < rank; ++j) {
                if (g.out[v][static_cast<size_t>(j)] >= 0) ++deg;
                if (g.in[v][static_cast<size_t>(j)] >= 0) ++deg;
            }
            if (deg <= 1) {
                alive[v] = false;
                trimmed = true;
                for (int j = 0; j < rank; ++j) {
                    if (const int t = g.out[v][static_cast<size_t>(j)]; t >= 0) g.in[static_cast<size_t>(t)][static_cast<size_t>(j)] = -1;
                    if (const int s = g.in[v][static_cast<size_t>(j)]; s >= 0) g.out[static_cast<size_t>(s)][static_cast<size_t>(j)] = -1;
                    g.out[v][static_cast<size_t>(j)] = -1;
                    g.in[v][static_cast<size_t>(j)] = -1;
                }
            }
        }
    }

    // Re-index compactly.
    std::vector<int> new_id(remap.size(), -1);
    int count = 0;
    for (size_t v = 0; v < alive.size(); ++v)
        if (alive[v]) new_id[v] = count++;
    SubgroupGraph h;
    h.rank = rank;
    h.base = new_id[static_cast<size_t>(g.base)];
    h.out.assign(static_cast<size_t>(count), std::vector<int>(static_cast<size_t>(rank), -1));
    h.in.assign(static_cast<size_t>(count), std::vector<int>(static_cast<size_t>(rank), -1));
    for (size_t v = 0; v < alive.size(); ++v) {
        if (!alive[v]) continue;
        for (int j = 0; j < rank; ++j) {
            const int t = g.out[v][static_cast<size_t>(j)];
            if (t >= 0) {
                h.out[static_cast<size_t>(new_id[v])][static_cast<size_t>(j)] = new_id[static_cast<size_t>(t)];
                h.in[static_cast<size_t>(new_id[static_cast<size_t>(t)])][static_cast<size_t>(j)] = new_id[v];
            }
        }
    }
    return h;
}

FreeBasis free_basis_and_rank(const SubgroupGraph& g) {
    if (!g.is_folded()) throw Error("NotFolded", "basis extraction requires a folded graph");
    const int V = g.vertex_count();

    // BFS spanning tree from base; explore x_1 forward, x_1 backward, x_2 ...
    std::vector<int> parent_vertex(static_cast<size_t>(V), -1);
    std::vector<int> parent_letter(static_cast<size_t>(V), 0); // signed letter read from parent to vertex
    std::vector<int> bfs_order;
    std::vector<bool> visited(static_cast<size_t>(V), false);
    std::deque<int> queue{g.base};
    visited[static_cast<size_t>(g.base)] = true;
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        bfs_order.push_back(v);
        for (int j = 1; j <= g.rank; ++j) {
            const int t = g.out[static_cast<size_t>(v)][static_cast<size_t>(j - 1)];
            if (t >= 0 && !visited[static_cast<size_t>(t)]) {
                visited[static_cast<size_t>(t)] = true;
                parent_vertex[static_cast<size_t>(t)] = v;
                parent_letter[static_cast<size_t>(t)] = j;
                queue.push_back(t);
            }
            const int s = g.in[static_cast<size_t>(v)][static_cast<size_t>(j - 1)];
            if (s >= 0 && !visited[static_cast<size_t>(s)]) {
                visited[static_cast<size_t>(s)] = true;
                parent_vertex[static_cast<size_t>(s)] = v;
                parent_letter[static_cast<size_t>(s)] = -j;
                queue.push_back(s);
            }
        }
    }
    for (bool b : visited)
        if (!b) throw Error("Disconnected", "subgroup graph is not connected");

    auto path_from_base = [&](int v) {
        std::vector<int> letters;
        while (v != g.base) {
            letters.push_back(parent_letter[static_cast<size_t>(v)]);
            v = parent_vertex[static_cast<size_t>(v)];
        }
        std::reverse(letters.begin(), letters.end());
        return letters;
    };

    // Tree edges as unordered (source, label) pairs for quick lookup.
    std::set<std::pair<int, int>> tree_edges; // (source vertex, positive label)
    for (int v = 0; v < V; ++v) {
        if (v == g.base) continue;
        const int l = parent_letter[static_cast<size_t>(v)];
        if (l > 0)
            tree_edges.insert({parent_vertex[static_cast<size_t>(v)], l});
        else
            tree_edges.insert({v, -l});
    }

    FreeBasis out;
    for (int v : bfs_order) {
        for (int j = 1; j <= g.rank; ++j) {
            const int t = g.out[static_cast<size_t>(v)][static_cast<size_t>(j - 1)];
            if (t < 0 || tree_edges.count({v, j})) continue;
            std::vector<int> letters = path_from_base(v);
            letters.push_back(j);
            const auto back = path_from_base(t);
            for (auto it = back.rbegin(); it != back.rend(); ++it) letters.push_back(-*it);
            out.basis.push_back(FreeWord(g.rank, std::move(letters)));
        }
    }
    out.rank = g.edge_count() - V + 1;
    if (static_cast<int>(out.basis.size()) != out.rank)
        throw Error("RankMismatch", "basis count disagrees with E - V + 1");
    return out;
}

} // namespace polybraid::freegrp
