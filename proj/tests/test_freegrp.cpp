#include "doctest.h"

#include "polybraid/freegrp.hpp"
#include "polybraid/rng.hpp"

using namespace polybraid;
using namespace polybraid::freegrp;

TEST_CASE("free reduction") {
    CHECK(FreeWord(2, {1, -1}).empty());
    CHECK(FreeWord(2, {1, 2, -2}) == FreeWord(2, {1}));
    const FreeWord w(2, {1, 2, -1});
    CHECK(reduce(w) == w);
}

TEST_CASE("homomorphism application") {
    const FreeHom id = FreeHom::identity(2);
    const FreeWord w(2, {1, 2, -1});
    CHECK(apply_hom(id, w) == w);

    FreeHom h;
    h.domain_rank = 2;
    h.codomain_rank = 2;
    h.images = {FreeWord(2, {1, 2}), FreeWord(2, {2})}; // x -> xy, y -> y
    CHECK(apply_hom(h, FreeWord(2, {1, 1})) == FreeWord(2, {1, 2, 1, 2}));

    FreeHom comm;
    comm.domain_rank = 1;
    comm.codomain_rank = 2;
    comm.images = {FreeWord(2, {1, 2, -1, -2})};
    CHECK(apply_hom(comm, FreeWord(1, {1})) == FreeWord(2, {1, 2, -1, -2}));

    CHECK_THROWS_AS(apply_hom(h, FreeWord(3, {3})), Error);
}

TEST_CASE("exponent vectors") {
    CHECK(exponent_vector(FreeWord(2, {1, 2, -1, -2})) == std::vector<long long>{0, 0});
    CHECK(exponent_vector(FreeWord(2, {1, 1, -2})) == std::vector<long long>{2, -1});
    CHECK(exponent_vector(FreeWord(2, {})) == std::vector<long long>{0, 0});
}

TEST_CASE("abelianization matrices") {
    CHECK(abelianization_matrix(FreeHom::identity(2)) ==
          std::vector<std::vector<long long>>{{1, 0}, {0, 1}});

    FreeHom zero;
    zero.domain_rank = 2;
    zero.codomain_rank = 2;
    zero.images = {FreeWord(2, {1, 2, -1, -2}), FreeWord(2, {1, 2, 2, -1, -2, -2})};
    CHECK(abelianization_matrix(zero) == std::vector<std::vector<long long>>{{0, 0}, {0, 0}});

    FreeHom diag;
    diag.domain_rank = 2;
    diag.codomain_rank = 2;
    diag.images = {FreeWord(2, {1, 1}), FreeWord(2, {2, 2, 2})};
    CHECK(abelianization_matrix(diag) == std::vector<std::vector<long long>>{{2, 0}, {0, 3}});
}

TEST_CASE("abelianization is functorial under composition") {
    Rng rng(3);
    auto random_hom = [&](int r, int s) {
        FreeHom h;
        h.domain_rank = r;
        h.codomain_rank = s;
        for (int j = 0; j < r; ++j) {
            std::vector<int> letters;
            const int len = static_cast<int>(rng.integer(0, 5));
            for (int i = 0; i < len; ++i) {
                const int g = static_cast<int>(rng.integer(1, s));
                letters.push_back(rng.next_double() < 0.5 ? g : -g);
            }
            h.images.push_back(FreeWord(s, std::move(letters)));
        }
        return h;
    };
    for (int trial = 0; trial < 20; ++trial) {
        const FreeHom f = random_hom(2, 3);
        const FreeHom g = random_hom(3, 2);
        const auto lhs = abelianization_matrix(compose(g, f));
        const auto mg = abelianization_matrix(g);
        const auto mf = abelianization_matrix(f);
        std::vector<std::vector<long long>> rhs(2, std::vector<long long>(2, 0));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 3; ++k) rhs[i][j] += mg[i][k] * mf[k][j];
        CHECK(lhs == rhs);
    }
}

TEST_CASE("Schreier kernel graphs") {
    // F_2 -> S_2, both generators the transposition: index 2.
    const SubgroupGraph g2 = schreier_kernel({{1, 0}, {1, 0}}, 2);
    CHECK(g2.vertex_count() == 2);
    CHECK(free_basis_and_rank(g2).rank == 3);

    // F_2 onto S_3: x -> (1 2), y -> (1 2 3): index 6, rank 7.
    const SubgroupGraph g6 = schreier_kernel({{1, 0, 2}, {1, 2, 0}}, 3);
    CHECK(g6.vertex_count() == 6);
    const FreeBasis basis = free_basis_and_rank(g6);
    CHECK(basis.rank == 7);
    for (const FreeWord& w : basis.basis) CHECK(g6.reads_closed_loop(w));

    // Trivial images: kernel is everything, one vertex.
    const SubgroupGraph g1 = schreier_kernel({{0, 1, 2}, {0, 1, 2}}, 3);
    CHECK(g1.vertex_count() == 1);
    CHECK(free_basis_and_rank(g1).rank == 2);
}

TEST_CASE("Nielsen-Schreier rank formula on random finite quotients") {
    Rng rng(17);
    for (int trial = 0; trial < 15; ++trial) {
        const int k = static_cast<int>(rng.integer(2, 4));
        auto random_perm = [&] {
            std::vector<int> im(static_cast<size_t>(k));
            for (int i = 0; i < k; ++i) im[static_cast<size_t>(i)] = i;
            for (int i = k - 1; i > 0; --i)
                std::swap(im[static_cast<size_t>(i)], im[static_cast<size_t>(rng.integer(0, i))]);
            return im;
        };
        const std::vector<std::vector<int>> images{random_perm(), random_perm()};
        const SubgroupGraph g = schreier_kernel(images, k);
        const int index = g.vertex_count();
        CHECK(free_basis_and_rank(g).rank == 1 + index * (2 - 1));
    }
}

TEST_CASE("Stallings graphs of finitely generated subgroups") {
    // The whole group: basis {x, y}.
    const SubgroupGraph whole = stallings_graph(2, {FreeWord(2, {1}), FreeWord(2, {2})});
    CHECK(whole.vertex_count() == 1);
    CHECK(free_basis_and_rank(whole).rank == 2);

    // <x^2, xy>: rank 2, membership distinguishes x^2 from x.
    const SubgroupGraph h = stallings_graph(2, {FreeWord(2, {1, 1}), FreeWord(2, {1, 2})});
    CHECK(free_basis_and_rank(h).rank == 2);
    CHECK(h.reads_closed_loop(FreeWord(2, {1, 1})));
    CHECK(h.reads_closed_loop(FreeWord(2, {1, 2})));
    CHECK(!h.reads_closed_loop(FreeWord(2, {1})));

    // The paper's commutator pair generates a rank-2 subgroup.
    const SubgroupGraph comm = stallings_graph(
        2, {FreeWord(2, {1, 2, -1, -2}), FreeWord(2, {1, 2, 2, -1, -2, -2})});
    CHECK(free_basis_and_rank(comm).rank == 2);
}

TEST_CASE("exponent vector of an image equals matrix times exponent vector") {
    Rng rng(23);
    FreeHom h;
    h.domain_rank = 2;
    h.codomain_rank = 2;
    h.images = {FreeWord(2, {1, 2}), FreeWord(2, {2, -1, 2})};
    const auto M = abelianization_matrix(h);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<int> letters;
        for (int i = 0; i < 8; ++i) {
            const int g = static_cast<int>(rng.integer(1, 2));
            letters.push_back(rng.next_double() < 0.5 ? g : -g);
        }
        const FreeWord w(2, letters);
        const auto lhs = exponent_vector(apply_hom(h, w));
        const auto v = exponent_vector(w);
        for (int i = 0; i < 2; ++i) CHECK(lhs[static_cast<size_t>(i)] == M[static_cast<size_t>(i)][0] * v[0] + M[static_cast<size_t>(i)][1] * v[1]);
    }
}
