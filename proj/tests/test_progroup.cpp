#include "doctest.h"

#include "polybraid/examples.hpp"
#include "polybraid/progroup.hpp"

using namespace polybraid;
using namespace polybraid::progroup;
using freegrp::FreeHom;
using freegrp::FreeWord;

namespace {

StageMorphism identity_on_z(int stage = 1) {
    StageMorphism phi;
    phi.target = StageMorphism::Target::Integers;
    phi.stage = stage;
    phi.target_n = 1;
    phi.integer_images = {{1}};
    return phi;
}

ProFreeGroup constant_solenoid(int multiplier, int stages) {
    return examples::solenoid(std::vector<int>(static_cast<size_t>(stages), multiplier), true);
}

} // namespace

TEST_CASE("compose_bondings composes and defaults to the identity") {
    const ProFreeGroup P = constant_solenoid(2, 3);
    const FreeHom id = compose_bondings(P, 2, 2);
    CHECK(id.images[0] == FreeWord(1, {1}));

    const FreeHom twice = compose_bondings(P, 3, 1); // x -> x^4
    CHECK(twice.images[0] == FreeWord(1, {1, 1, 1, 1}));

    // Beyond the truncation through the periodic tail.
    const FreeHom deep = compose_bondings(P, 6, 1); // x -> x^{32}
    CHECK(deep.images[0].length() == 32);

    CHECK_THROWS_AS(compose_bondings(examples::universal_solenoid(3), 9, 1), Error);
}

TEST_CASE("compose_bondings is associative after abelianization") {
    const ProFreeGroup P = examples::universal_solenoid(5);
    const auto m31 = freegrp::abelianization_matrix(compose_bondings(P, 3, 1));
    const auto m53 = freegrp::abelianization_matrix(compose_bondings(P, 5, 3));
    const auto m51 = freegrp::abelianization_matrix(compose_bondings(P, 5, 1));
    CHECK(m51[0][0] == m31[0][0] * m53[0][0]);
}

TEST_CASE("dual divisibility of the dyadic solenoid") {
    const ProFreeGroup dyadic = constant_solenoid(2, 3);
    const auto r2 = dual_m_divisible(dyadic, identity_on_z(), 2);
    CHECK(r2.status == Divisibility::Divisible);
    CHECK(r2.witness_stage == 2);

    const auto r3 = dual_m_divisible(dyadic, identity_on_z(), 3);
    CHECK(r3.status == Divisibility::NotDivisible);
}

TEST_CASE("dual divisibility is Unknown when a finite truncation runs out") {
    const ProFreeGroup finite = examples::solenoid({2, 2}, false);
    const auto r = dual_m_divisible(finite, identity_on_z(), 3);
    CHECK(r.status == Divisibility::Unknown);
}

TEST_CASE("dual divisibility of the trivial pro-group") {
    ProFreeGroup trivial;
    trivial.ranks = {0};
    StageMorphism phi;
    phi.target = StageMorphism::Target::Integers;
    phi.stage = 1;
    phi.target_n = 1;
    const auto r = dual_m_divisible(trivial, phi, 5);
    CHECK(r.status == Divisibility::Divisible);
}

TEST_CASE("abelianized pro-divisibility of solenoids") {
    const ProFreeGroup dyadic = constant_solenoid(2, 3);
    CHECK(pro_m_divisible_abelianized(dyadic, 2).status == Divisibility::Divisible);
    CHECK(pro_m_divisible_abelianized(dyadic, 6).status == Divisibility::NotDivisible);

    const ProFreeGroup universal = examples::universal_solenoid(12);
    for (int m = 1; m <= 12; ++m)
        CHECK(pro_m_divisible_abelianized(universal, m).status == Divisibility::Divisible);
}

TEST_CASE("zero-matrix bondings are m-divisible for every m") {
    FreeHom comm;
    comm.domain_rank = 2;
    comm.codomain_rank = 2;
    comm.images = {FreeWord(2, {1, 2, -1, -2}), FreeWord(2, {1, 2, 2, -1, -2, -2})};
    ProFreeGroup P;
    P.ranks = {2, 2, 2};
    P.bondings = {comm, comm};
    P.periodic_tail = 1;
    for (int m : {2, 3, 5, 12, 97})
        CHECK(pro_m_divisible_abelianized(P, m).status == Divisibility::Divisible);
}

TEST_CASE("dual and abelianized divisibility agree on rank-1 systems") {
    for (int mult : {2, 3, 6}) {
        const ProFreeGroup P = constant_solenoid(mult, 4);
        for (int m = 2; m <= 9; ++m) {
            const auto dual = dual_m_divisible(P, identity_on_z(), m);
            const auto pro = pro_m_divisible_abelianized(P, m);
            CHECK((dual.status == Divisibility::Divisible) == (pro.status == Divisibility::Divisible));
        }
    }
}

TEST_CASE("star conditions for a surjection onto S_3") {
    // x -> sigma_1, y -> sigma_2 in B_3, identity bondings.
    ProFreeGroup P;
    P.ranks = {2, 2, 2};
    P.bondings = {FreeHom::identity(2), FreeHom::identity(2)};

    StageMorphism phi;
    phi.target = StageMorphism::Target::BraidGroup;
    phi.stage = 1;
    phi.target_n = 3;
    phi.braid_images = {braid::BraidWord(3, {1}), braid::BraidWord(3, {2})};

    const StarDecision d = decide_star_conditions(P, phi);
    CHECK(d.stable_order == 6);
    CHECK(!d.star_n);
    CHECK(!d.star_star_n);
}

TEST_CASE("pure braid images with identity bondings satisfy both conditions") {
    ProFreeGroup P;
    P.ranks = {2, 2};
    P.bondings = {FreeHom::identity(2)};
    P.periodic_tail = 1;

    StageMorphism phi;
    phi.target = StageMorphism::Target::BraidGroup;
    phi.stage = 1;
    phi.target_n = 3;
    phi.braid_images = {braid::BraidWord(3, {1, 1}), braid::BraidWord(3, {2, 2})};

    const StarDecision d = decide_star_conditions(P, phi);
    CHECK(d.star_star_n);
    CHECK(d.star_n);
    CHECK(d.stable_order == 1);
}

TEST_CASE("star chain drops to the stable image through commutator bondings") {
    // Bondings send both generators into the commutator subgroup, so the
    // tau-image chain descends S_3 -> A_3 -> 1 and stabilizes.
    FreeHom comm;
    comm.domain_rank = 2;
    comm.codomain_rank = 2;
    comm.images = {FreeWord(2, {1, 2, -1, -2}), FreeWord(2, {2, 1, -2, -1})};
    ProFreeGroup P;
    P.ranks = {2, 2, 2, 2};
    P.bondings = {comm, comm, comm};
    P.periodic_tail = 1;

    StageMorphism phi;
    phi.target = StageMorphism::Target::BraidGroup;
    phi.stage = 1;
    phi.target_n = 3;
    phi.braid_images = {braid::BraidWord(3, {1}), braid::BraidWord(3, {2})};

    const StarDecision d = decide_star_conditions(P, phi);
    CHECK(d.star_star_n);
    CHECK(d.stable_order == 1);
    CHECK(d.stabilization_stage >= 2);
}

TEST_CASE("wedge realizations") {
    const ProFreeGroup dyadic = constant_solenoid(2, 2);
    const WedgeSystem w = realize_as_wedge_system(dyadic);
    REQUIRE(w.stages.size() == 3);
    CHECK(w.stages[0].circles == 1);
    REQUIRE(w.maps.size() == 2);
    CHECK(w.maps[0][0] == FreeWord(1, {1, 1}));

    ProFreeGroup point;
    point.ranks = {0};
    const WedgeSystem wp = realize_as_wedge_system(point);
    CHECK(wp.stages[0].circles == 0);
}
