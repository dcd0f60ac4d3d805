#include "polybraid/progroup.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace polybraid::progroup {

using braid::Permutation;
using freegrp::FreeHom;
using freegrp::FreeWord;

int ProFreeGroup::rank_at(int stage) const {
    if (stage < 1) throw Error("IndexOutOfRange", "stages are 1-based");
    if (stage <= stage_count()) return ranks[static_cast<size_t>(stage - 1)];
    if (!has_tail()) throw Error("IndexOutOfRange", "stage beyond a finite truncation");
    // Beyond the truncation the stage is the domain of the bonding before it.
    return bonding_from(stage - 1).domain_rank;
}

const FreeHom& ProFreeGroup::bonding_from(int stage) const {
    // bonding_from(s) maps stage s+1 -> stage s; stored bondings cover s = 1..k-1.
    if (stage < 1) throw Error("IndexOutOfRange", "stages are 1-based");
    if (stage <= stage_count() - 1) return bondings[static_cast<size_t>(stage - 1)];
    if (!has_tail()) throw Error("IndexOutOfRange", "bonding beyond a finite truncation");
    const int p = *periodic_tail;
    const int k = stage_count();
    const int base = k - 1 - p; // first bonding of the repeating block
    const int idx = base + (stage - (k - 1) - 1) % p;
    return bondings[static_cast<size_t>(idx)];
}

void ProFreeGroup::validate() const {
    if (ranks.empty()) throw Error("EmptySystem", "pro-group needs at least one stage");
    if (bondings.size() + 1 != ranks.size())
        throw Error("RankMismatch", "bonding count must be stage count - 1");
    for (size_t i = 0; i < bondings.size(); ++i) {
        if (bondings[i].domain_rank != ranks[i + 1] || bondings[i].codomain_rank != ranks[i])
            throw Error("RankMismatch", "bonding " + std::to_string(i + 1) + " has inconsistent ranks");
    }
    if (has_tail()) {
        const int p = *periodic_tail;
        if (p < 1 || p > static_cast<int>(bondings.size()))
            throw Error("BadPeriod", "periodic tail period out of range");
        // The repeating block must chain with itself: walk two periods.
        for (int s = stage_count(); s < stage_count() + 2 * p; ++s) {
            const FreeHom& h = bonding_from(s);
            if (h.codomain_rank != rank_at(s))
                throw Error("RankMismatch", "periodic tail does not chain consistently");
        }
    }
}

FreeHom compose_bondings(const ProFreeGroup& P, int from, int to) {
    if (to < 1 || from < to) throw Error("IndexOutOfRange", "need from >= to >= 1");
    if (!P.has_tail() && from > P.stage_count())
        throw Error("IndexOutOfRange", "stage beyond a finite truncation");
    FreeHom h = FreeHom::identity(P.rank_at(to));
    // h accumulates stage `s` -> stage `to`; extend one bonding at a time.
    for (int s = to; s < from; ++s) h = freegrp::compose(h, P.bonding_from(s));
    return h;
}

namespace {

std::vector<std::vector<long long>> hom_matrix(const FreeHom& h) { return freegrp::abelianization_matrix(h); }

/// v * M with v a row over Z (1 x r), M r x s.
std::vector<long long> row_times(const std::vector<long long>& v,
                                 const std::vector<std::vector<long long>>& M) {
    const size_t r = M.size();
    const size_t s = r == 0 ? 0 : M[0].size();
    std::vector<long long> out(s, 0);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < s; ++j) out[j] += v[i] * M[i][j];
    return out;
}

std::vector<std::vector<long long>> mat_times(const std::vector<std::vector<long long>>& A,
                                              const std::vector<std::vector<long long>>& B) {
    const size_t n = A.size();
    const size_t k = B.size();
    const size_t m = k == 0 ? 0 : B[0].size();
    std::vector<std::vector<long long>> C(n, std::vector<long long>(m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (A[i][l] == 0) continue;
            for (size_t j = 0; j < m; ++j) C[i][j] += A[i][l] * B[l][j];
        }
    return C;
}

void reduce_cell(long long& x, long long m) { x = ((x % m) + m) % m; }
void reduce_cell(std::vector<long long>& row, long long m) {
    for (auto& x : row) reduce_cell(x, m);
}

bool all_zero(const std::vector<long long>& v) {
    return std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; });
}
bool all_zero(const std::vector<std::vector<long long>>& M) {
    return std::all_of(M.begin(), M.end(), [](const auto& r) { return all_zero(r); });
}

/// Phase of a stage within the periodic tail (0..p-1), or -1 before the tail.
int tail_phase(const ProFreeGroup& P, int stage) {
    if (!P.has_tail()) return -1;
    const int p = *P.periodic_tail;
    const int first_tail_source = P.stage_count() - p; // bonding_from(s) for s >= this uses the block
    if (stage < first_tail_source) return -1;
    return (stage - first_tail_source) % p;
}

} // namespace

DualDivisibilityResult dual_m_divisible(const ProFreeGroup& P, const StageMorphism& phi, long long m,
                                        int stage_budget) {
    P.validate();
    if (m < 1) throw Error("BadModulus", "dual_m_divisible needs m >= 1");
    if (phi.target != StageMorphism::Target::Integers || phi.target_n != 1)
        throw Error("TargetMismatch", "dual divisibility consumes a morphism to Z");
    if (static_cast<int>(phi.integer_images.size()) != P.rank_at(phi.stage))
        throw Error("RankMismatch", "morphism image count does not match the stage rank");

    DualDivisibilityResult res;
    if (P.rank_at(phi.stage) == 0) {
        // Trivial group: the zero row is divisible at its own stage.
        res.status = Divisibility::Divisible;
        res.witness_stage = phi.stage;
        return res;
    }

    std::vector<long long> v;
    for (const auto& img : phi.integer_images) v.push_back(img.at(0));

    std::set<std::pair<std::vector<long long>, int>> seen;
    int stage = phi.stage;
    int steps = 0;
    while (true) {
        std::vector<long long> vm = v;
        reduce_cell(vm, m);
        if (all_zero(vm)) {
            res.status = Divisibility::Divisible;
            res.witness_stage = stage;
            return res;
        }
        const int phase = tail_phase(P, stage);
        if (phase >= 0) {
            if (!seen.insert({vm, phase}).second) {
                // Residues revisit a tail state without ever vanishing: exact refusal.
                res.status = Divisibility::NotDivisible;
                res.witness_stage = stage;
                return res;
            }
        } else {
            const bool can_advance = P.has_tail() || stage < P.stage_count();
            if (!can_advance || steps >= stage_budget) {
                res.status = Divisibility::Unknown;
                res.witness_stage = stage;
                return res;
            }
        }
        v = row_times(v, hom_matrix(P.bonding_from(stage)));
        reduce_cell(v, m); // residues are all that matter from here on
        ++stage;
        ++steps;
        if (steps > 100000) throw Error("Internal", "divisibility scan failed to terminate");
    }
}

ProDivisibilityResult pro_m_divisible_abelianized(const ProFreeGroup& P, long long m, int stage_budget) {
    P.validate();
    if (m < 1) throw Error("BadModulus", "pro_m_divisible_abelianized needs m >= 1");

    // Decide one stage: walk the composed matrix mod m until it vanishes, the
    // truncation (and budget) runs out, or a periodic-tail state repeats.
    enum class StageStatus { Achieved, Failed, Unknown };
    auto decide_stage = [&](int alpha, int& witness) {
        const int r = P.rank_at(alpha);
        if (r == 0) {
            witness = alpha;
            return StageStatus::Achieved;
        }
        std::vector<std::vector<long long>> M(static_cast<size_t>(r),
                                              std::vector<long long>(static_cast<size_t>(r), 0));
        for (int i = 0; i < r; ++i) M[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1 % m;
        std::set<std::pair<std::vector<std::vector<long long>>, int>> seen;
        int stage = alpha;
        int steps = 0;
        while (true) {
            if (all_zero(M)) {
                witness = stage;
                return StageStatus::Achieved;
            }
            const int phase = tail_phase(P, stage);
            if (phase >= 0) {
                if (!seen.insert({M, phase}).second) return StageStatus::Failed;
            } else if ((!P.has_tail() && stage >= P.stage_count()) || steps >= stage_budget) {
                return StageStatus::Unknown;
            }
            auto B = hom_matrix(P.bonding_from(stage));
            M = mat_times(M, B);
            for (auto& row : M) reduce_cell(row, m);
            ++stage;
            ++steps;
            if (steps > 100000) throw Error("Internal", "divisibility scan failed to terminate");
        }
    };

    ProDivisibilityResult res;
    res.per_stage_witness.assign(static_cast<size_t>(P.stage_count()), 0);

    if (P.has_tail()) {
        // Every stage is decidable: pre-tail stages individually, tail stages by phase.
        bool all_achieved = true;
        for (int alpha = 1; alpha <= P.stage_count(); ++alpha) {
            int w = 0;
            const auto st = decide_stage(alpha, w);
            res.per_stage_witness[static_cast<size_t>(alpha - 1)] = w;
            if (st == StageStatus::Failed) {
                res.status = Divisibility::NotDivisible;
                return res;
            }
            if (st != StageStatus::Achieved) all_achieved = false;
        }
        // Tail stages beyond the truncation repeat the phases already covered by
        // the last p stages above.
        res.status = all_achieved ? Divisibility::Divisible : Divisibility::Unknown;
        return res;
    }

    // Plain finite truncation: nothing is refutable, and stages near the end
    // only see a suffix of stage 1's window. The verdict is stage 1's.
    int w = 0;
    const auto st = decide_stage(1, w);
    res.per_stage_witness[0] = w;
    for (int alpha = 2; alpha <= P.stage_count(); ++alpha) {
        int wa = 0;
        if (decide_stage(alpha, wa) == StageStatus::Achieved)
            res.per_stage_witness[static_cast<size_t>(alpha - 1)] = wa;
    }
    res.status = (st == StageStatus::Achieved) ? Divisibility::Divisible : Divisibility::Unknown;
    return res;
}

StarDecision decide_star_conditions(const ProFreeGroup& P, const StageMorphism& phi) {
    P.validate();
    if (phi.target != StageMorphism::Target::BraidGroup)
        throw Error("TargetMismatch", "star conditions consume a morphism into a braid group");
    if (static_cast<int>(phi.braid_images.size()) != P.rank_at(phi.stage))
        throw Error("RankMismatch", "morphism image count does not match the stage rank");
    const int n = phi.target_n;

    // tau of the generator images at phi's stage; later stages push words through.
    std::vector<Permutation> gens;
    for (const auto& b : phi.braid_images) {
        if (b.strands != n) throw Error("TargetMismatch", "braid image has wrong strand count");
        gens.push_back(braid::tau(b));
    }

    auto subgroup_of = [&](const std::vector<Permutation>& g) {
        std::set<std::vector<int>> elems;
        for (const auto& p : braid::group_closure(g.empty() ? std::vector<Permutation>{Permutation::identity(n)} : g))
            elems.insert(p.images);
        return elems;
    };

    auto evaluate_word = [&](const FreeWord& w, const std::vector<Permutation>& images) {
        Permutation p = Permutation::identity(n);
        for (int l : w.letters) {
            const Permutation& g = images[static_cast<size_t>(std::abs(l) - 1)];
            p = p.then(l > 0 ? g : g.inverse());
        }
        return p;
    };

    StarDecision out;
    std::vector<Permutation> current = gens;
    std::set<std::vector<int>> current_group = subgroup_of(current);
    out.stabilization_stage = phi.stage;
    std::vector<Permutation> stable = current;
    std::set<std::vector<int>> stable_group = current_group;

    std::set<std::pair<std::vector<std::vector<int>>, int>> seen_states;
    int stage = phi.stage;
    while (true) {
        const bool in_tail = tail_phase(P, stage) >= 0;
        if (!P.has_tail() && stage >= P.stage_count()) break; // finite: last stage is the stable report
        if (in_tail) {
            std::vector<std::vector<int>> key;
            for (const auto& p : current) key.push_back(p.images);
            if (!seen_states.insert({key, tail_phase(P, stage)}).second) break; // state cycle: stabilized
        }
        // Generators of the next stage, pushed down through this bonding.
        const FreeHom& h = P.bonding_from(stage);
        std::vector<Permutation> next;
        for (const FreeWord& w : h.images) next.push_back(evaluate_word(w, current));
        std::set<std::vector<int>> next_group = subgroup_of(next);
        // Descending chain: each next generator is a word in the current ones.
        for (const auto& img : next_group)
            if (!current_group.count(img)) throw Error("Internal", "image chain failed to descend");
        if (next_group.size() < stable_group.size()) {
            stable_group = next_group;
            stable = next;
            out.stabilization_stage = stage + 1;
        }
        current = std::move(next);
        current_group = std::move(next_group);
        ++stage;
        if (stage - phi.stage > 100000) throw Error("Internal", "image chain failed to stabilize");
    }

    out.stable_generators = stable;
    out.stable_order = stable_group.size();
    std::vector<Permutation> stable_elems;
    for (const auto& im : stable_group) stable_elems.push_back(Permutation(im));
    const braid::StrandAnalysis sa = braid::strand_analysis(stable_elems);
    out.star_star_n = (stable_group.size() == 1);
    out.star_n = !sa.common_fixed.empty();
    out.common_fixed.assign(sa.common_fixed.begin(), sa.common_fixed.end());
    return out;
}

WedgeSystem realize_as_wedge_system(const ProFreeGroup& P) {
    P.validate();
    WedgeSystem w;
    for (int r : P.ranks) w.stages.push_back({r});
    for (const auto& h : P.bondings) w.maps.push_back(h.images);
    w.periodic_tail = P.periodic_tail;
    return w;
}

} // namespace polybraid::progroup
