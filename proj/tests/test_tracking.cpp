#include "doctest.h"

#include <cmath>

#include "family_fixtures.hpp"
#include "polybraid/tracking.hpp"

using namespace polybraid;
using namespace polybraid::tracking;
using polycore::Cx;
using polycore::MonicPoly;

namespace {

constexpr double kTau = 6.283185307179586477;

Cx circle(double turns, double t) { return std::exp(Cx{0, kTau * turns * t}); }

/// z^n - e^{2 pi i t} over the full circle.
family::PolyFamily root_of_unity_family(int n, int m) {
    return fixtures::circle_family(n, m, [n](double t) {
        std::vector<Cx> c(static_cast<size_t>(n), Cx{0, 0});
        c[0] = -circle(1.0, t);
        return c;
    });
}

} // namespace

TEST_CASE("tracking a constant family gives constant strands") {
    const auto F = fixtures::circle_family(2, 8, fixtures::constant_z2_minus_1);
    const RootTrajectory t = track_edge(F, "e0");
    REQUIRE(t.strand_count() == 2);
    for (const auto& strand : t.strands)
        for (const Cx& z : strand) CHECK(std::abs(std::abs(z) - 1.0) < 1e-9);
    CHECK(std::abs(t.strands[0].front() - Cx{-1, 0}) < 1e-9);
    CHECK(std::abs(t.strands[1].front() - Cx{1, 0}) < 1e-9);
}

TEST_CASE("tracking the square-root arc matches the closed form") {
    // z^2 - e^{2 pi i t} for t in [0, 1/2]: strands +-e^{pi i t}.
    const auto F = fixtures::arc_family(2, 32, [](double t) {
        return std::vector<Cx>{-circle(0.5, t), Cx{0, 0}};
    });
    const RootTrajectory t = track_edge(F, "e0");
    REQUIRE(t.strand_count() == 2);
    for (size_t i = 0; i < t.ts.size(); ++i) {
        const Cx plus = circle(0.25, t.ts[i]);
        const double d0 = std::abs(t.strands[0][i] + plus);
        const double d1 = std::abs(t.strands[1][i] - plus);
        const double e0 = std::abs(t.strands[0][i] - plus);
        const double e1 = std::abs(t.strands[1][i] + plus);
        CHECK(std::min(d0 + d1, e0 + e1) < 1e-8);
    }
    for (const auto& cert : t.certificates)
        CHECK(cert.max_displacement < 0.5 * cert.min_gap_at_start);
}

TEST_CASE("tracking across the discriminant reports RepeatedRoot") {
    const auto F = fixtures::arc_family(2, 8, [](double t) {
        return std::vector<Cx>{Cx{1.0 - 2.0 * t, 0}, Cx{0, 0}};
    });
    CHECK_THROWS_WITH_AS(track_edge(F, "e0"), doctest::Contains("discriminant"), Error);
}

TEST_CASE("trivial loop monodromy") {
    const auto F = fixtures::circle_family(2, 8, fixtures::constant_z2_minus_1);
    const LoopMonodromy mono = loop_braid(F, {{"e0", false}});
    CHECK(mono.braid_word.letters.empty());
    CHECK(mono.permutation.is_identity());
}

TEST_CASE("square root loop gives a half twist") {
    const auto F = root_of_unity_family(2, 64);
    const LoopMonodromy mono = loop_braid(F, {{"e0", false}});
    CHECK(mono.permutation == braid::Permutation({1, 0}));
    CHECK(braid::tau(mono.braid_word) == mono.permutation);
    // The braid is sigma_1^{+-1}; with the calibrated sign convention the
    // exponent sum equals the winding of the discriminant, which is +1.
    CHECK(braid::exponent_sum(mono.braid_word) == 1);
    CHECK(braid::artin_is_trivial(mono.braid_word * braid::BraidWord(2, {-1})));
}

TEST_CASE("cube root loop gives a 3-cycle with exponent sum 2") {
    const auto F = root_of_unity_family(3, 96);
    const LoopMonodromy mono = loop_braid(F, {{"e0", false}});
    const auto cyc = mono.permutation.cycles();
    REQUIRE(cyc.size() == 1);
    CHECK(cyc[0].size() == 3);
    CHECK(braid::tau(mono.braid_word) == mono.permutation);
    // Winding of disc(z^3 + a_0) = -27 a_0^2 along the loop is 2.
    CHECK(braid::exponent_sum(mono.braid_word) == 2);
}

TEST_CASE("braid exponent sum equals the discriminant winding") {
    for (int n = 2; n <= 5; ++n) {
        const auto F = root_of_unity_family(n, 48 * n);
        const LoopMonodromy mono = loop_braid(F, {{"e0", false}});

        family::ScalarLoopSamples disc;
        for (size_t j = 0; j < F.samples[0].size(); ++j)
            disc.values.push_back(polycore::discriminant(F.poly_at(0, static_cast<int>(j))));
        CHECK(braid::exponent_sum(mono.braid_word) == family::winding_number(disc));
    }
}

TEST_CASE("reversed loops invert the monodromy") {
    const auto F = root_of_unity_family(3, 96);
    const LoopMonodromy fwd = loop_braid(F, {{"e0", false}});
    const LoopMonodromy bwd = loop_braid(F, {{"e0", true}});
    CHECK(fwd.permutation.then(bwd.permutation).is_identity());
    CHECK(braid::artin_is_trivial(fwd.braid_word * bwd.braid_word));
}

TEST_CASE("a loop concatenated with its reverse is trivial") {
    const auto F = root_of_unity_family(3, 96);
    const LoopMonodromy round = loop_braid(F, {{"e0", false}, {"e0", true}});
    CHECK(round.permutation.is_identity());
    CHECK(braid::artin_is_trivial(round.braid_word));
}

TEST_CASE("loop monodromy residuals stay small") {
    const auto F = root_of_unity_family(4, 128);
    const LoopMonodromy mono = loop_braid(F, {{"e0", false}});
    for (size_t i = 0; i < mono.ts.size(); ++i) {
        const double t = mono.ts[i]; // one edge: global parameter is the edge parameter
        const MonicPoly p = F.poly_at_parameter(0, t);
        for (const auto& strand : mono.strands)
            CHECK(std::abs(p.eval(strand[i])) <= 1e-8);
    }
}

TEST_CASE("solvability of the constant family on a wedge of circles") {
    const auto F = fixtures::wedge2_family(2, 8, fixtures::constant_z2_minus_1,
                                           fixtures::constant_z2_minus_1);
    const auto verdict = solvability_verdict(F, family::fundamental_loops(F.graph));
    CHECK(verdict.completely_solvable);
    CHECK(verdict.exact_root_exists);
    REQUIRE(verdict.witness.has_value());
    const double M = F.sup_norm();
    for (size_t e = 0; e < verdict.witness->size(); ++e)
        for (size_t j = 0; j < (*verdict.witness)[e].size(); ++j) {
            const Cx w = (*verdict.witness)[e][j];
            CHECK(std::abs(F.poly_at(static_cast<int>(e), static_cast<int>(j)).eval(w)) <=
                  1e-8 * std::pow(1.0 + M, F.degree));
            CHECK(std::abs(std::abs(w) - 1.0) < 1e-9); // a constant square root of 1
        }
}

TEST_CASE("the square root family is unsolvable over the circle") {
    const auto F = root_of_unity_family(2, 64);
    const auto verdict = solvability_verdict(F, family::fundamental_loops(F.graph));
    CHECK(!verdict.exact_root_exists);
    CHECK(!verdict.completely_solvable);
    CHECK(!verdict.witness.has_value());
}

TEST_CASE("a fixed third strand yields a witness without complete solvability") {
    // Edge A: (z^2 - e^{2 pi i t})(z - 3); edge B: constant (z^2 - 1)(z - 3).
    const auto monodromy_coeffs = [](double t) {
        const Cx e = circle(1.0, t);
        return std::vector<Cx>{3.0 * e, -e, Cx{-3, 0}};
    };
    const auto constant_coeffs = [](double) {
        return std::vector<Cx>{Cx{3, 0}, Cx{-1, 0}, Cx{-3, 0}};
    };
    const auto F = fixtures::wedge2_family(3, 96, monodromy_coeffs, constant_coeffs);
    REQUIRE(family::validate_family(F).valid);
    const auto verdict = solvability_verdict(F, family::fundamental_loops(F.graph));
    CHECK(verdict.exact_root_exists);
    CHECK(!verdict.completely_solvable);
    REQUIRE(verdict.witness.has_value());
    for (size_t e = 0; e < verdict.witness->size(); ++e)
        for (const Cx& w : (*verdict.witness)[e]) CHECK(std::abs(w - Cx{3, 0}) < 1e-6);
}

TEST_CASE("normalizing the constant z^2 - 4 family") {
    const auto F = fixtures::circle_family(2, 4, [](double) {
        return std::vector<Cx>{Cx{-4, 0}, Cx{0, 0}};
    });
    const NormalizeResult res = normalize_unit_discriminant(F, family::fundamental_loops(F.graph));
    REQUIRE(res.normalized);
    for (size_t j = 0; j < res.family.samples[0].size(); ++j) {
        CHECK(std::abs(res.family.samples[0][j][0] - Cx{-0.25, 0}) < 1e-9);
        CHECK(std::abs(res.family.samples[0][j][1]) < 1e-12);
        const Cx d = polycore::discriminant(res.family.poly_at(0, static_cast<int>(j)));
        CHECK(std::abs(d - Cx{1, 0}) < 1e-6);
    }
}

TEST_CASE("normalization obstruction for the square-root loop") {
    const auto F = root_of_unity_family(2, 64);
    const NormalizeResult res = normalize_unit_discriminant(F, family::fundamental_loops(F.graph));
    CHECK(!res.normalized);
    REQUIRE(res.obstructions.size() == 1);
    CHECK(res.obstructions[0].winding == 1);
    CHECK(res.obstructions[0].required == 2);
}

TEST_CASE("a family with discriminant one is unchanged by normalization") {
    const auto F = fixtures::circle_family(2, 4, [](double) {
        return std::vector<Cx>{Cx{-0.25, 0}, Cx{0, 0}};
    });
    const NormalizeResult res = normalize_unit_discriminant(F, family::fundamental_loops(F.graph));
    REQUIRE(res.normalized);
    for (size_t j = 0; j < res.family.samples[0].size(); ++j)
        for (int i = 0; i < 2; ++i)
            CHECK(std::abs(res.family.samples[0][j][static_cast<size_t>(i)] -
                           F.samples[0][j][static_cast<size_t>(i)]) < 1e-9);
}
