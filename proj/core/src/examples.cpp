#include "polybraid/examples.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

namespace polybraid::examples {

using braid::BraidWord;
using braid::Permutation;
using freegrp::FreeHom;
using freegrp::FreeWord;

ProFreeGroup solenoid(const std::vector<int>& multipliers, bool periodic) {
    if (multipliers.empty()) throw Error("EmptyInput", "solenoid needs at least one multiplier");
    ProFreeGroup P;
    P.ranks.assign(multipliers.size() + 1, 1);
    for (int m : multipliers) {
        if (m < 1) throw Error("BadMultiplier", "solenoid multipliers must be >= 1");
        FreeHom h;
        h.domain_rank = 1;
        h.codomain_rank = 1;
        h.images.push_back(FreeWord(1, std::vector<int>(static_cast<size_t>(m), 1)));
        P.bondings.push_back(std::move(h));
    }
    if (periodic) P.periodic_tail = 1;
    P.validate();
    return P;
}

ProFreeGroup universal_solenoid(int k) {
    if (k < 1) throw Error("EmptyInput", "universal solenoid needs k >= 1");
    std::vector<int> ms(static_cast<size_t>(k));
    std::iota(ms.begin(), ms.end(), 1);
    return solenoid(ms, false);
}

namespace {

/// Standard two-element generating pair of A_n: (1 2 3) together with the full
/// cycle for odd n, or the (n-1)-cycle (2 3 ... n) for even n.
std::pair<Permutation, Permutation> alternating_generators(int n) {
    std::vector<int> a_im(static_cast<size_t>(n));
    std::iota(a_im.begin(), a_im.end(), 0);
    a_im[0] = 1;
    a_im[1] = 2;
    a_im[2] = 0;
    std::vector<int> b_im(static_cast<size_t>(n));
    std::iota(b_im.begin(), b_im.end(), 0);
    if (n % 2 == 1) {
        for (int i = 0; i < n; ++i) b_im[static_cast<size_t>(i)] = (i + 1) % n;
    } else {
        for (int i = 1; i < n; ++i) b_im[static_cast<size_t>(i)] = 1 + (i % (n - 1));
    }
    return {Permutation(a_im), Permutation(b_im)};
}

/// Shortest word w in x^{+-1}, y^{+-1} with zero exponent vector and
/// psi(w) = target, where psi sends x, y to the given permutations.
/// BFS over (permutation, exponent vector) states with |entries| <= budget.
FreeWord commutator_word_with_image(const Permutation& x, const Permutation& y,
                                    const Permutation& target, int budget) {
    struct State {
        std::vector<int> perm;
        int ex, ey;
        bool operator<(const State& o) const {
            if (perm != o.perm) return perm < o.perm;
            if (ex != o.ex) return ex < o.ex;
            return ey < o.ey;
        }
    };
    const Permutation gens[4] = {x, x.inverse(), y, y.inverse()};
    const int dex[4] = {1, -1, 0, 0};
    const int dey[4] = {0, 0, 1, -1};
    const int letters[4] = {1, -1, 2, -2};

    std::map<State, std::pair<State, int>> parent; // state -> (previous, letter)
    const State start{Permutation::identity(x.degree()).images, 0, 0};
    std::deque<State> queue{start};
    std::set<State> seen{start};
    while (!queue.empty()) {
        const State s = queue.front();
        queue.pop_front();
        if (s.perm == target.images && s.ex == 0 && s.ey == 0 && !(s.ex == 0 && s.ey == 0 && s.perm == start.perm)) {
            // reconstruct
            std::vector<int> ls;
            State cur = s;
            while (!(cur.perm == start.perm && cur.ex == 0 && cur.ey == 0 && parent.count(cur) == 0)) {
                const auto& [prev, letter] = parent.at(cur);
                ls.push_back(letter);
                cur = prev;
            }
            std::reverse(ls.begin(), ls.end());
            return FreeWord(2, std::move(ls));
        }
        for (int g = 0; g < 4; ++g) {
            State ns;
            ns.perm = Permutation(s.perm).then(gens[g]).images;
            ns.ex = s.ex + dex[g];
            ns.ey = s.ey + dey[g];
            if (std::abs(ns.ex) > budget || std::abs(ns.ey) > budget) continue;
            if (seen.insert(ns).second) {
                parent[ns] = {s, letters[g]};
                queue.push_back(ns);
            }
        }
    }
    throw Error("BFSBudget", "no commutator word reaches the target within the budget");
}

/// Exponent-sum-zero braid word with tau equal to p: decompose p into an even
/// number of adjacent transpositions (p must be even) and alternate the signs.
BraidWord braid_lift_zero_sum(const Permutation& p, int strands) {
    // Adjacent-swap decomposition via the same occupancy bubble sort used for
    // positive lifts.
    std::vector<int> target = p.inverse().images;
    std::vector<int> swaps;
    std::vector<int> a = target;
    bool moved = true;
    while (moved) {
        moved = false;
        for (int i = 0; i + 1 < strands; ++i) {
            if (a[static_cast<size_t>(i)] > a[static_cast<size_t>(i + 1)]) {
                std::swap(a[static_cast<size_t>(i)], a[static_cast<size_t>(i + 1)]);
                swaps.push_back(i + 1);
                moved = true;
            }
        }
    }
    std::reverse(swaps.begin(), swaps.end());
    if (swaps.size() % 2 != 0)
        throw Error("OddPermutation", "zero-sum braid lift needs an even permutation");
    std::vector<int> letters;
    letters.reserve(swaps.size());
    for (size_t i = 0; i < swaps.size(); ++i) letters.push_back(i % 2 == 0 ? swaps[i] : -swaps[i]);
    BraidWord w(strands, std::move(letters));
    if (!(braid::tau(w) == p)) throw Error("Internal", "braid lift failed self-check");
    if (braid::exponent_sum(w) != 0) throw Error("Internal", "braid lift has nonzero exponent sum");
    return w;
}

} // namespace

CounterexampleDegN counterexample_deg_n(int n, int stages, int bfs_budget) {
    if (n < 5) throw Error("UnsupportedN", "the degree-n counterexample needs n >= 5");
    if (stages < 1) throw Error("EmptyInput", "need at least one stage");

    CounterexampleDegN out;
    auto [a, b] = alternating_generators(n);
    out.a = a;
    out.b = b;

    // The generated subgroup must be all of A_n.
    const auto closure = braid::group_closure({a, b});
    std::size_t expected = 1;
    for (int i = 2; i <= n; ++i) expected *= static_cast<std::size_t>(i);
    if (closure.size() * 2 != expected)
        throw Error("Internal", "generating pair does not span the alternating group");

    // f_n sends x, y to commutator words that psi maps back onto a, b.
    out.x_image = commutator_word_with_image(a, b, a, bfs_budget);
    out.y_image = commutator_word_with_image(a, b, b, bfs_budget);

    FreeHom f;
    f.domain_rank = 2;
    f.codomain_rank = 2;
    f.images = {out.x_image, out.y_image};

    ProFreeGroup P;
    P.ranks.assign(static_cast<size_t>(stages) + 1, 2);
    for (int s = 0; s < stages; ++s) P.bondings.push_back(f);
    P.periodic_tail = 1;
    P.validate();
    out.system = std::move(P);

    StageMorphism phi;
    phi.target = StageMorphism::Target::BraidGroup;
    phi.stage = 1;
    phi.target_n = n;
    phi.braid_images = {braid_lift_zero_sum(a, n), braid_lift_zero_sum(b, n)};
    out.morphism = std::move(phi);

    // psi o f_n = psi on the generators, and the bonding abelianizes to zero.
    const auto check = [&](const FreeWord& w, const Permutation& expect) {
        Permutation p = Permutation::identity(n);
        for (int l : w.letters) {
            const Permutation& g = (std::abs(l) == 1) ? a : b;
            p = p.then(l > 0 ? g : g.inverse());
        }
        if (!(p == expect)) throw Error("Internal", "psi o f_n drifted from psi");
    };
    check(out.x_image, a);
    check(out.y_image, b);
    for (const auto v : freegrp::exponent_vector(out.x_image))
        if (v != 0) throw Error("Internal", "f_n(x) is not in the commutator subgroup");
    for (const auto v : freegrp::exponent_vector(out.y_image))
        if (v != 0) throw Error("Internal", "f_n(y) is not in the commutator subgroup");
    return out;
}

CounterexampleDeg4 counterexample_deg4(int stages) {
    if (stages < 1) throw Error("EmptyInput", "need at least one stage");
    CounterexampleDeg4 out;

    // Carrier bonding: a, b fixed; u -> [u, v], v -> u v^2 u^{-1} v^{-2}.
    FreeHom h;
    h.domain_rank = 4;
    h.codomain_rank = 4;
    h.images = {FreeWord(4, {1}), FreeWord(4, {2}), FreeWord(4, {3, 4, -3, -4}),
                FreeWord(4, {3, 4, 4, -3, -4, -4})};

    ProFreeGroup P;
    P.ranks.assign(static_cast<size_t>(stages) + 1, 4);
    for (int s = 0; s < stages; ++s) P.bondings.push_back(h);
    P.periodic_tail = 1;
    P.validate();
    out.system = std::move(P);

    const auto dict = braid::b_commutator_dictionary(4);
    StageMorphism phi;
    phi.target = StageMorphism::Target::BraidGroup;
    phi.stage = 1;
    phi.target_n = 4;
    phi.braid_images = {dict.at("a"), dict.at("b"), dict.at("u"), dict.at("v")};
    for (const auto& w : phi.braid_images)
        if (braid::exponent_sum(w) != 0)
            throw Error("Internal", "a stage image left the commutator subgroup of B_4");
    out.morphism = std::move(phi);

    // The u, v part alone: rank-2 carriers with the commutator bonding.
    FreeHom huv;
    huv.domain_rank = 2;
    huv.codomain_rank = 2;
    huv.images = {FreeWord(2, {1, 2, -1, -2}), FreeWord(2, {1, 2, 2, -1, -2, -2})};
    ProFreeGroup J;
    J.ranks.assign(static_cast<size_t>(stages) + 1, 2);
    for (int s = 0; s < stages; ++s) J.bondings.push_back(huv);
    J.periodic_tail = 1;
    J.validate();
    out.uv_subsystem = std::move(J);
    return out;
}

int l_sequence(int i) {
    if (i < 1) throw Error("IndexOutOfRange", "l_sequence is 1-based");
    // Blocks 1 | 1 2 | 1 2 3 | ...: find the block, then the offset.
    int block = 1;
    int pos = i;
    while (pos > block) {
        pos -= block;
        ++block;
    }
    return pos;
}

std::vector<BraidWord> enumerate_f2_braid_hom(int index, int word_budget, int k_max) {
    if (index < 1) throw Error("IndexOutOfRange", "enumeration is 1-based");
    // Deterministic order: strand count k ascending; total image length
    // ascending; then lexicographic over the two image words with letter order
    // sigma_1 < sigma_1^{-1} < sigma_2 < ...
    int count = 0;
    for (int k = 1; k <= k_max; ++k) {
        const int letter_count = 2 * (k - 1);
        std::vector<int> alphabet;
        for (int i = 1; i < k; ++i) {
            alphabet.push_back(i);
            alphabet.push_back(-i);
        }
        // Words of length L over the alphabet, by L then lexicographic rank.
        auto nth_word = [&](int length, long long rank) {
            std::vector<int> w(static_cast<size_t>(length));
            for (int pos = length - 1; pos >= 0; --pos) {
                w[static_cast<size_t>(pos)] = alphabet[static_cast<size_t>(rank % letter_count)];
                rank /= letter_count;
            }
            return w;
        };
        auto words_of_length = [&](int length) -> long long {
            if (length == 0) return 1;
            if (letter_count == 0) return 0;
            long long total = 1;
            for (int i = 0; i < length; ++i) total *= letter_count;
            return total;
        };
        for (int total_len = 0; total_len <= 2 * word_budget; ++total_len) {
            for (int lx = std::max(0, total_len - word_budget); lx <= std::min(word_budget, total_len); ++lx) {
                const int ly = total_len - lx;
                const long long cx = words_of_length(lx);
                const long long cy = words_of_length(ly);
                if (cx == 0 || cy == 0) continue;
                for (long long rx = 0; rx < cx; ++rx) {
                    for (long long ry = 0; ry < cy; ++ry) {
                        ++count;
                        if (count == index)
                            return {BraidWord(k, nth_word(lx, rx)), BraidWord(k, nth_word(ly, ry))};
                    }
                }
            }
        }
    }
    throw Error("BudgetExhausted", "morphism enumeration exhausted; raise word_budget or k_max");
}

AcyclicNonabelian acyclic_nonabelian(int depth, int word_budget, int k_max) {
    if (depth < 1) throw Error("EmptyInput", "need depth >= 1");

    AcyclicNonabelian out;
    ProFreeGroup P;
    P.ranks.assign(1, 2);

    std::map<int, int> occurrences; // ell -> how many of its morphisms were consumed

    for (int step = 1; step <= depth; ++step) {
        const int ell = l_sequence(step);
        const int j = ++occurrences[ell];

        AcyclicStep rec;
        rec.ell = ell;
        rec.occurrence = j;
        rec.phi_images = enumerate_f2_braid_hom(j, word_budget, k_max);
        rec.braid_strands = rec.phi_images[0].strands;
        const int k = rec.braid_strands;

        // tau o phi on the generators of stage ell, then pushed through the
        // bondings up to the current stage.
        std::vector<Permutation> images{braid::tau(rec.phi_images[0]), braid::tau(rec.phi_images[1])};
        for (int s = ell; s < step; ++s) {
            const FreeHom& hs = P.bondings[static_cast<size_t>(s - 1)];
            std::vector<Permutation> next;
            for (const FreeWord& w : hs.images) {
                Permutation p = Permutation::identity(k);
                for (int l : w.letters) {
                    const Permutation& g = images[static_cast<size_t>(std::abs(l) - 1)];
                    p = p.then(l > 0 ? g : g.inverse());
                }
                next.push_back(std::move(p));
            }
            images = std::move(next);
        }

        // Schreier kernel of the permutation image of the current stage; its
        // first two BFS basis words seed the next carrier via commutators
        // (commutators of kernel elements lie in both the kernel and the
        // commutator subgroup, which is what the construction requires).
        std::vector<std::vector<int>> perm_images{images[0].images, images[1].images};
        const freegrp::SubgroupGraph kernel = freegrp::schreier_kernel(perm_images, k);
        rec.kernel_index = kernel.vertex_count();
        const freegrp::FreeBasis basis = freegrp::free_basis_and_rank(kernel);
        if (basis.rank < 2) throw Error("Internal", "Schreier kernel has rank below two");
        const FreeWord& w1 = basis.basis[0];
        const FreeWord& w2 = basis.basis[1];
        const FreeWord c1 = w1 * w2 * w1.inverse() * w2.inverse();
        const FreeWord c2 = w1 * (w2 * w2) * w1.inverse() * (w2 * w2).inverse();

        // The pair must generate a rank-2 free subgroup.
        const auto graph = freegrp::stallings_graph(2, {c1, c2});
        if (freegrp::free_basis_and_rank(graph).rank != 2)
            throw Error("Internal", "carrier words do not generate a rank-2 subgroup");

        FreeHom bonding;
        bonding.domain_rank = 2;
        bonding.codomain_rank = 2;
        bonding.images = {c1, c2};
        for (const auto& row : freegrp::abelianization_matrix(bonding))
            for (long long v : row)
                if (v != 0) throw Error("Internal", "bonding does not abelianize to zero");

        P.ranks.push_back(2);
        P.bondings.push_back(std::move(bonding));
        out.steps.push_back(std::move(rec));
    }

    P.validate();
    out.system = std::move(P);
    return out;
}

} // namespace polybraid::examples
