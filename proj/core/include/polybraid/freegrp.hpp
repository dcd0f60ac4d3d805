#ifndef POLYBRAID_FREEGRP_HPP
#define POLYBRAID_FREEGRP_HPP

#include <cstdint>
#include <vector>

#include "polybraid/errors.hpp"

namespace polybraid::freegrp {

/// Word in the free group F_rank. Letters are signed 1-based generator
/// indices: +j for x_j, -j for x_j^{-1}.
struct FreeWord {
    int rank = 0;
    std::vector<int> letters;

    FreeWord() = default;
    FreeWord(int r, std::vector<int> ls);

    bool empty() const { return letters.empty(); }
    std::size_t length() const { return letters.size(); }
    FreeWord inverse() const;
    FreeWord operator*(const FreeWord& o) const; // concatenate and reduce

    bool operator==(const FreeWord&) const = default;
};

/// Freely reduce: cancel adjacent inverse pairs.
FreeWord reduce(const FreeWord& w);

/// Homomorphism F_domain_rank -> F_codomain_rank given on generators.
struct FreeHom {
    int domain_rank = 0;
    int codomain_rank = 0;
    std::vector<FreeWord> images; // images[j-1] = image of x_j

    static FreeHom identity(int rank);
};

/// Substitute generator images and reduce. Throws RankMismatch when w does not
/// live in the domain.
FreeWord apply_hom(const FreeHom& h, const FreeWord& w);

/// g after f (apply f first). Functorial: matrix(compose) = matrix(g)*matrix(f).
FreeHom compose(const FreeHom& g, const FreeHom& f);

/// Per-generator signed letter counts; w lies in the commutator subgroup iff
/// this vanishes.
std::vector<long long> exponent_vector(const FreeWord& w);

/// Column j-1 is exponent_vector(h(x_j)); shape codomain_rank x domain_rank.
std::vector<std::vector<long long>> abelianization_matrix(const FreeHom& h);

/// Folded labeled digraph over generators 1..rank with a base vertex.
/// Complete coset graphs and Stallings core graphs both live here; absent
/// edges are -1.
struct SubgroupGraph {
    int rank = 0;
    int base = 0;
    std::vector<std::vector<int>> out; // out[v][j-1]: target of x_j     edge from v
    std::vector<std::vector<int>> in;  // in[v][j-1]:  source of x_j edge into v

    int vertex_count() const { return static_cast<int>(out.size()); }
    int edge_count() const; // positive-label edges

    /// Follow w from base; returns final vertex or -1 if the path leaves the graph.
    int read_word(const FreeWord& w) const;

    /// Membership certificate for folded core graphs: w reads a closed path at base.
    bool reads_closed_loop(const FreeWord& w) const;

    bool is_folded() const;
};

/// Coset (Schreier) graph of the kernel of F_r -> <images> <= S_k, where
/// generator x_j maps to images[j-1] (0-based image vectors, degree k).
/// Vertices are the elements of the image subgroup; base is the identity.
SubgroupGraph schreier_kernel(const std::vector<std::vector<int>>& images, int degree);

/// Stallings graph of the subgroup generated by the given words: bouquet of
/// loops at the base, folded, then trimmed to the core.
SubgroupGraph stallings_graph(int rank, const std::vector<FreeWord>& generators);

struct FreeBasis {
    int rank = 0;
    std::vector<FreeWord> basis;
};

/// Nielsen-Schreier basis from a BFS spanning tree (generator-index
/// tie-breaking): one word per non-tree positive edge, rank = E - V + 1.
/// Throws NotFolded on unfolded input.
FreeBasis free_basis_and_rank(const SubgroupGraph& g);

} // namespace polybraid::freegrp

#endif
