#include "doctest.h"

#include "polybraid/rng.hpp"
#include "polybraid/sl2z.hpp"

using namespace polybraid;
using namespace polybraid::sl2z;
using braid::IntMatrix2;

TEST_CASE("normal forms of the identity and the involution") {
    CHECK(psl_normal_form(IntMatrix2{}).empty());
    CHECK(psl_normal_form(-IntMatrix2{}).empty());

    const PSLWord s = psl_normal_form(kS);
    REQUIRE(s.letters.size() == 1);
    CHECK(s.letters[0].factor == 'S');
}

TEST_CASE("normal form of U is the alternating word S(QS)^3") {
    const PSLWord u = psl_normal_form(kU);
    // S Q S Q S Q S: seven letters, alternating, all Q exponents 1.
    REQUIRE(u.letters.size() == 7);
    for (size_t i = 0; i < u.letters.size(); ++i) {
        CHECK(u.letters[i].factor == (i % 2 == 0 ? 'S' : 'Q'));
        if (u.letters[i].factor == 'Q') CHECK(u.letters[i].exponent == 1);
    }
    const IntMatrix2 val = psl_evaluate(u);
    CHECK((val == kU || val == -kU));
}

TEST_CASE("normal form rejects non-unimodular matrices") {
    CHECK_THROWS_AS(psl_normal_form(IntMatrix2{{2, 0, 0, 1}}), Error);
}

TEST_CASE("normal form is multiplicative via concatenation") {
    Rng rng(77);
    auto random_unimodular = [&] {
        IntMatrix2 m;
        const IntMatrix2 T{{1, 1, 0, 1}};
        const IntMatrix2 Tinv{{1, -1, 0, 1}};
        for (int i = 0; i < 12; ++i) {
            switch (rng.integer(0, 2)) {
                case 0: m = m * kS; break;
                case 1: m = m * T; break;
                default: m = m * Tinv; break;
            }
        }
        return m;
    };
    for (int trial = 0; trial < 40; ++trial) {
        const IntMatrix2 A = random_unimodular();
        const IntMatrix2 B = random_unimodular();
        CHECK(psl_normal_form(A * B) == psl_concat(psl_normal_form(A), psl_normal_form(B)));
        // Identity word exactly when the matrix is +-id.
        const IntMatrix2 Ainv{{A.e[3], -A.e[1], -A.e[2], A.e[0]}};
        CHECK(psl_normal_form(A * Ainv).empty());
        if (!(A == IntMatrix2{} || A == -IntMatrix2{})) CHECK(!psl_normal_form(A).empty());
    }
}

TEST_CASE("free pair certification") {
    const auto uv = free_pair_check(kU, kV, 6);
    CHECK(uv.free_up_to);

    const auto commuting = free_pair_check(IntMatrix2{{1, 1, 0, 1}}, IntMatrix2{{1, 2, 0, 1}}, 4);
    CHECK(!commuting.free_up_to);
    CHECK(!commuting.relation.empty());

    const auto ss = free_pair_check(kS, kS, 2);
    CHECK(!ss.free_up_to);
}

TEST_CASE("rank of the summed images") {
    CHECK(image_rank_sum(kU, kV) == 2);
    CHECK(image_rank_sum(IntMatrix2{}, IntMatrix2{}) == 0);
    CHECK(image_rank_sum(IntMatrix2{{1, 1, 0, 1}}, IntMatrix2{{1, 3, 0, 1}}) == 1);
}

TEST_CASE("smith diagonal") {
    CHECK(smith_diagonal({{2, 0}, {0, 3}}) == std::vector<long long>{1, 6});
    CHECK(smith_diagonal({{1, 0, 0}, {0, 0, 0}}) == std::vector<long long>{1});
    CHECK(smith_diagonal({{4, 6}, {2, 8}}) == std::vector<long long>{2, 10});
}

TEST_CASE("derived B4 matrices match the pinned values") {
    const auto [U, V] = derive_b4_matrices();
    CHECK(U == kU);
    CHECK(V == kV);
}

TEST_CASE("UV product identities hold up to the recorded sign") {
    const UVIdentityReport rep = verify_uv_identities();
    CHECK(rep.u_identity_holds);
    CHECK(rep.sign_u == -1);
    CHECK(rep.v_identity_holds);
    CHECK(rep.sign_v == -1);
    CHECK(rep.s_squared_is_minus_id);
}

TEST_CASE("U and V normal forms sit in the commutator subgroup detector") {
    for (const IntMatrix2& m : {kU, kV}) {
        const PSLWord w = psl_normal_form(m);
        int s_count = 0;
        int q_exponent = 0;
        for (const auto& l : w.letters) {
            if (l.factor == 'S') ++s_count;
            else q_exponent += l.exponent;
        }
        CHECK(s_count % 2 == 0);
        CHECK(q_exponent % 3 == 0);
    }
}
