#include "doctest.h"

#include "polybraid/examples.hpp"

using namespace polybraid;
using namespace polybraid::examples;
using freegrp::FreeWord;
using progroup::Divisibility;

TEST_CASE("solenoid constructions") {
    const auto dyadic = solenoid({2, 2, 2}, true);
    CHECK(dyadic.ranks == std::vector<int>{1, 1, 1, 1});
    CHECK(dyadic.bondings[0].images[0] == FreeWord(1, {1, 1}));
    CHECK(dyadic.periodic_tail == 1);

    const auto circle = solenoid({1});
    CHECK(circle.ranks == std::vector<int>{1, 1});
    CHECK(circle.bondings[0].images[0] == FreeWord(1, {1}));

    const auto universal = universal_solenoid(12);
    for (int m = 1; m <= 12; ++m)
        CHECK(progroup::pro_m_divisible_abelianized(universal, m).status == Divisibility::Divisible);
}

TEST_CASE("the degree-5 counterexample") {
    const CounterexampleDegN ce = counterexample_deg_n(5, 3);

    const auto d = progroup::decide_star_conditions(ce.system, ce.morphism);
    CHECK(d.stable_order == 60);
    CHECK(!d.star_n);
    CHECK(!d.star_star_n);

    std::vector<braid::Permutation> stable_elems;
    {
        const auto analysis = braid::perm_group_analysis(d.stable_generators);
        CHECK(analysis.order == 60);
        CHECK(!analysis.is_solvable);
        CHECK(analysis.is_perfect);
    }

    // Bondings abelianize to zero.
    for (const auto& h : ce.system.bondings)
        for (const auto& row : freegrp::abelianization_matrix(h))
            for (long long v : row) CHECK(v == 0);

    // The braid images have exponent sum zero and project onto the generators.
    CHECK(braid::exponent_sum(ce.morphism.braid_images[0]) == 0);
    CHECK(braid::exponent_sum(ce.morphism.braid_images[1]) == 0);
    CHECK(braid::tau(ce.morphism.braid_images[0]) == ce.a);
    CHECK(braid::tau(ce.morphism.braid_images[1]) == ce.b);
}

TEST_CASE("the degree-6 counterexample uses the even-case generating pair") {
    const CounterexampleDegN ce = counterexample_deg_n(6, 2);
    const auto d = progroup::decide_star_conditions(ce.system, ce.morphism);
    CHECK(d.stable_order == 360);
    CHECK(!d.star_n);
}

TEST_CASE("the degree-4 counterexample") {
    for (int depth = 1; depth <= 5; ++depth) {
        const CounterexampleDeg4 ce = counterexample_deg4(depth);
        const auto d = progroup::decide_star_conditions(ce.system, ce.morphism);
        CHECK(!d.star_n);
        CHECK(!d.star_star_n);
        CHECK(d.stable_order >= 4); // contains the Klein four-group
    }

    const CounterexampleDeg4 ce = counterexample_deg4(5);

    // Stage images stay in the commutator subgroup at every depth: composing
    // generator words keeps exponent sums at zero.
    for (int stage = 1; stage <= 5; ++stage) {
        const auto comp = progroup::compose_bondings(ce.system, stage, 1);
        for (const FreeWord& w : comp.images) {
            long long total = 0;
            for (int l : w.letters)
                total += braid::exponent_sum(l > 0 ? ce.morphism.braid_images[static_cast<size_t>(l - 1)]
                                                   : ce.morphism.braid_images[static_cast<size_t>(-l - 1)]) *
                         (l > 0 ? 1 : -1);
            CHECK(total == 0);
        }
    }

    // The u, v part has a trivial dual: any morphism to Z dies after one bonding.
    for (long long m : {2, 3, 4, 5, 6, 7}) {
        progroup::StageMorphism phi;
        phi.target = progroup::StageMorphism::Target::Integers;
        phi.stage = 1;
        phi.target_n = 1;
        phi.integer_images = {{3}, {-7}};
        const auto r = progroup::dual_m_divisible(ce.uv_subsystem, phi, m);
        CHECK(r.status == Divisibility::Divisible);
        CHECK(r.witness_stage <= 2);
    }

    // tau images of a and b in the documented strand convention.
    CHECK(braid::tau(ce.morphism.braid_images[0]) == braid::Permutation({1, 0, 3, 2}));
    CHECK(braid::tau(ce.morphism.braid_images[1]) == braid::Permutation({2, 3, 0, 1}));
}

TEST_CASE("the universal solenoid with a pure-braid morphism satisfies star-star") {
    const auto universal = universal_solenoid(6);
    progroup::StageMorphism phi;
    phi.target = progroup::StageMorphism::Target::BraidGroup;
    phi.stage = 1;
    phi.target_n = 3;
    phi.braid_images = {braid::BraidWord(3, {1, 1})}; // a pure braid
    const auto d = progroup::decide_star_conditions(universal, phi);
    CHECK(d.star_star_n);
    CHECK(d.star_n);
}

TEST_CASE("the scheduling sequence") {
    const std::vector<int> expect{1, 1, 2, 1, 2, 3, 1, 2, 3, 4};
    for (size_t i = 0; i < expect.size(); ++i) CHECK(l_sequence(static_cast<int>(i) + 1) == expect[i]);
}

TEST_CASE("the morphism enumeration is deterministic and 1-based") {
    // Index 1 is the trivial morphism into B_1.
    const auto first = enumerate_f2_braid_hom(1, 2, 3);
    CHECK(first[0].strands == 1);
    CHECK(first[0].letters.empty());
    CHECK(first[1].letters.empty());

    // Index 3 with budget 1, k_max 2: x -> empty, y -> sigma_1.
    const auto third = enumerate_f2_braid_hom(3, 1, 2);
    CHECK(third[0].strands == 2);
    CHECK(third[0].letters.empty());
    CHECK(third[1].letters == std::vector<int>{1});

    CHECK_THROWS_AS(enumerate_f2_braid_hom(100000, 1, 2), Error);
}

TEST_CASE("the acyclic non-abelian construction") {
    const AcyclicNonabelian out = acyclic_nonabelian(4, 1, 2);
    REQUIRE(out.steps.size() == 4);
    REQUIRE(out.system.ranks.size() == 5);

    // Every bonding abelianizes to zero (property 2: G_{n+1} inside G_n').
    for (const auto& h : out.system.bondings)
        for (const auto& row : freegrp::abelianization_matrix(h))
            for (long long v : row) CHECK(v == 0);

    // Scheduling: steps consumed (ell, j) = (1,1), (1,2), (2,1), (1,3).
    CHECK(out.steps[0].ell == 1);
    CHECK(out.steps[0].occurrence == 1);
    CHECK(out.steps[1].ell == 1);
    CHECK(out.steps[1].occurrence == 2);
    CHECK(out.steps[2].ell == 2);
    CHECK(out.steps[2].occurrence == 1);
    CHECK(out.steps[3].ell == 1);
    CHECK(out.steps[3].occurrence == 3);

    // Property 3 for the consumed morphisms: each enumerated phi_{ell, j} dies
    // once the recursion has passed its step — the generators of the next stage
    // map into ker(tau o phi).
    for (size_t step = 0; step < out.steps.size(); ++step) {
        const auto& rec = out.steps[step];
        const int k = rec.braid_strands;
        std::vector<braid::Permutation> images{braid::tau(rec.phi_images[0]),
                                               braid::tau(rec.phi_images[1])};
        // Push from stage rec.ell to the stage the step acted on, then one more
        // bonding into the killed stage.
        const int acted_stage = static_cast<int>(step) + 1;
        for (int s = rec.ell; s <= acted_stage; ++s) {
            const auto& h = out.system.bondings[static_cast<size_t>(s - 1)];
            std::vector<braid::Permutation> next;
            for (const FreeWord& w : h.images) {
                braid::Permutation p = braid::Permutation::identity(k);
                for (int l : w.letters) {
                    const braid::Permutation& g = images[static_cast<size_t>(std::abs(l) - 1)];
                    p = p.then(l > 0 ? g : g.inverse());
                }
                next.push_back(std::move(p));
            }
            images = std::move(next);
        }
        for (const auto& p : images) CHECK(p.is_identity());
    }

    // Step 4 consumes the first nontrivial enumerated morphism ((1,3):
    // y -> sigma_1 in B_2), but the stage it acts on already sits inside two
    // layers of commutators, so its permutation image there is trivial and the
    // kernel is the whole carrier.
    CHECK(out.steps[3].phi_images[1].letters == std::vector<int>{1});
    CHECK(out.steps[3].kernel_index == 1);
}
