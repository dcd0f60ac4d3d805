#include "polybraid/acceptance.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <sstream>

#include "polybraid/examples.hpp"
#include "polybraid/rng.hpp"
#include "polybraid/sl2z.hpp"
#include "polybraid/tracking.hpp"

namespace polybraid::acceptance {

using braid::BraidWord;
using braid::Permutation;
using family::PolyFamily;
using polycore::Cx;
using polycore::MonicPoly;

namespace {

constexpr double kTau = 6.283185307179586477;

Cx circle(double turns, double t) { return std::exp(Cx{0, kTau * turns * t}); }

PolyFamily circle_family(int degree, int m, const std::function<std::vector<Cx>(double)>& coeffs) {
    PolyFamily F;
    F.degree = degree;
    F.graph.vertices = {"v0"};
    F.graph.basepoint = "v0";
    F.graph.edges.push_back({"e0", {"v0", "v0"}, m});
    std::vector<std::vector<Cx>> row;
    for (int j = 0; j <= m; ++j) row.push_back(coeffs(static_cast<double>(j) / m));
    F.samples.push_back(std::move(row));
    return F;
}

PolyFamily root_of_unity_family(int n, int m) {
    return circle_family(n, m, [n](double t) {
        std::vector<Cx> c(static_cast<size_t>(n), Cx{0, 0});
        c[0] = -circle(1.0, t);
        return c;
    });
}

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void require(bool condition, const std::string& message) {
        if (!condition) {
            ok = false;
            if (!detail.str().empty()) detail << "; ";
            detail << message;
        }
    }
};

CriterionResult criterion_1_homogeneity() {
    Check c;
    Rng rng(101);
    int done = 0;
    while (done < 200) {
        const int n = 2 + static_cast<int>(rng.integer(0, 4));
        std::vector<Cx> coeffs(static_cast<size_t>(n));
        for (auto& a : coeffs) a = rng.disk(2.0);
        const MonicPoly p(coeffs);
        const Cx dp = polycore::discriminant(p);
        if (polycore::discriminant_is_zero(p, dp)) continue;
        const Cx mu = Cx{rng.uniform(0.4, 1.8), 0} * std::exp(Cx{0, rng.uniform(0.0, kTau)});
        Cx mu_pow{1, 0};
        for (int k = 0; k < n * (n - 1); ++k) mu_pow *= mu;
        const Cx lhs = polycore::discriminant(polycore::star_action(mu, p));
        c.require(std::abs(lhs - mu_pow * dp) <= 1e-9 * std::abs(dp) * std::abs(mu_pow),
                  "homogeneity violated at trial " + std::to_string(done));
        ++done;
    }
    return {1, "discriminant homogeneity (200 random pairs, n in 2..6, rel. err <= 1e-9)", c.ok,
            c.detail.str()};
}

CriterionResult criterion_2_cauchy_bound() {
    Check c;
    Rng rng(202);
    int done = 0;
    int attempts = 0;
    while (done < 100 && attempts < 400) {
        ++attempts;
        const int n = 2 + static_cast<int>(rng.integer(0, 3));
        std::vector<Cx> centers(static_cast<size_t>(n)), amps(static_cast<size_t>(n));
        for (auto& v : centers) v = rng.disk(1.0);
        for (auto& v : amps) v = rng.disk(0.8);
        const PolyFamily F = circle_family(n, 48, [&](double t) {
            std::vector<Cx> coeffs(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i)
                coeffs[static_cast<size_t>(i)] =
                    centers[static_cast<size_t>(i)] + amps[static_cast<size_t>(i)] * circle(1.0, t);
            return coeffs;
        });
        try {
            const auto traj = tracking::track_edge(F, "e0");
            const double bound = polycore::cauchy_bound(F.sup_norm(), 0.0);
            for (const auto& strand : traj.strands)
                for (const Cx& z : strand)
                    c.require(std::abs(z) <= bound, "tracked root escaped the Cauchy bound");
            ++done;
        } catch (const Error&) {
            // Family brushed the discriminant variety; draw another one.
        }
    }
    c.require(done == 100, "only completed " + std::to_string(done) + " families");
    return {2, "Cauchy bound (100 tracked families, |root| <= 1 + M, exact)", c.ok, c.detail.str()};
}

CriterionResult criterion_3_perturbation_constant() {
    Check c;
    const PolyFamily F = circle_family(2, 8, [](double) {
        return std::vector<Cx>{Cx{0, 0}, Cx{0, 0}}; // the z^2 double-root family
    });
    const auto pert = family::perturb_off_discriminant(F, 1e-4, 12, 424242);
    const double delta0 = pert.deviation;
    c.require(delta0 > 0.0 && delta0 <= 1e-3, "perturbation deviation not within (0, 1e-3]");

    // An exact root section of Q, obtained by snapping the tracked strand.
    const auto traj = tracking::track_edge(pert.family, "e0");
    family::SampleFunction approx(1);
    for (size_t i = 0; i < traj.ts.size(); ++i) {
        const double t = traj.ts[i];
        if (std::abs(t * 8 - std::round(t * 8)) < 1e-12) approx[0].push_back(traj.strands[0][i]);
    }
    c.require(approx[0].size() == 9, "tracked strand missing declared samples");
    const auto g = family::snap_to_exact(pert.family, approx, 1e-6);

    const double C = polycore::perturbation_constant(0.0, 2);
    c.require(C == 4.0, "perturbation constant C(0, 2) must be 4");
    for (size_t j = 0; j < g[0].size(); ++j) {
        const MonicPoly p = F.poly_at(0, static_cast<int>(j));
        c.require(std::abs(p.eval(g[0][j])) <= C * delta0, "residual against P exceeded C * delta0");
    }
    return {3, "perturbation constant pipeline (residual <= C*delta0, C = 4, exact)", c.ok, c.detail.str()};
}

CriterionResult criterion_4_monodromy() {
    Check c;
    for (int n = 2; n <= 5; ++n) {
        const PolyFamily F = root_of_unity_family(n, 48 * n);
        const auto loops = family::fundamental_loops(F.graph);
        const auto mono = tracking::loop_braid(F, loops.front());
        const auto cycles = mono.permutation.cycles();
        c.require(cycles.size() == 1 && static_cast<int>(cycles[0].size()) == n,
                  "monodromy of z^" + std::to_string(n) + " - e^{2 pi i t} is not an n-cycle");
        for (size_t i = 0; i < mono.ts.size(); ++i) {
            const MonicPoly p = F.poly_at_parameter(0, mono.ts[i]);
            for (const auto& strand : mono.strands)
                c.require(std::abs(p.eval(strand[i])) <= 1e-8, "tracked residual above 1e-8");
        }
        const auto verdict = tracking::solvability_verdict(F, loops);
        c.require(!verdict.exact_root_exists, "root-of-unity family must be unsolvable");
    }
    const PolyFamily constant = circle_family(2, 16, [](double) {
        return std::vector<Cx>{Cx{-1, 0}, Cx{0, 0}};
    });
    const auto verdict = tracking::solvability_verdict(constant, family::fundamental_loops(constant.graph));
    c.require(verdict.completely_solvable && verdict.exact_root_exists,
              "constant family must be solvable on the trivial loop");
    c.require(verdict.permutations.front().is_identity(), "trivial loop permutation must be the identity");
    return {4, "monodromy of z^n - e^{2 pi i t} (n-cycles, unsolvable; trivial loop solvable)", c.ok,
            c.detail.str()};
}

CriterionResult criterion_5_word_problem() {
    Check c;
    for (int n = 2; n <= 6; ++n) {
        for (int i = 1; i + 1 <= n - 1; ++i)
            c.require(braid::artin_is_trivial(BraidWord(n, {i, i + 1, i, -(i + 1), -i, -(i + 1)})),
                      "braid relation failed at n=" + std::to_string(n));
        for (int i = 1; i <= n - 1; ++i)
            for (int j = i + 2; j <= n - 1; ++j)
                c.require(braid::artin_is_trivial(BraidWord(n, {i, j, -i, -j})),
                          "far commutation failed at n=" + std::to_string(n));
    }
    Rng rng(505);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 2 + static_cast<int>(rng.integer(0, 4));
        std::vector<int> letters;
        const int len = 1 + static_cast<int>(rng.integer(0, 39));
        for (int i = 0; i < len; ++i) {
            const int g = static_cast<int>(rng.integer(1, n - 1));
            letters.push_back(rng.next_double() < 0.5 ? g : -g);
        }
        const BraidWord b(n, letters);
        c.require(braid::artin_is_trivial(b * b.inverse()), "b * b^{-1} not trivial");
    }
    return {5, "Artin word problem (both relation families n <= 6; 500 random b*b^{-1}, exact)", c.ok,
            c.detail.str()};
}

CriterionResult criterion_6_b4_dictionary() {
    Check c;
    const auto [U, V] = sl2z::derive_b4_matrices();
    c.require(U == braid::IntMatrix2{{0, -1, 1, 3}}, "alpha(u) mismatch");
    c.require(V == braid::IntMatrix2{{-1, -5, 1, 4}}, "alpha(v) mismatch");

    const auto d = braid::b_commutator_dictionary(4);
    const BraidWord u = d.at("u"), v = d.at("v"), a = d.at("a"), b = d.at("b");
    auto conj = [](const BraidWord& g, const BraidWord& x) { return g * x * g.inverse(); };
    auto rel = [&](const BraidWord& lhs, const BraidWord& rhs, const char* name) {
        c.require(braid::artin_is_trivial(lhs * rhs.inverse()), std::string("relation failed: ") + name);
    };
    rel(conj(u, a), b, "u a u^-1 = b");
    rel(conj(u, b), b * b * a.inverse() * b, "u b u^-1 = b^2 a^-1 b");
    rel(conj(v, a), a.inverse() * b, "v a v^-1 = a^-1 b");
    const BraidWord ab = a.inverse() * b;
    rel(conj(v, b), ab * ab * ab * a.inverse() * a.inverse() * b, "v b v^-1 = (a^-1 b)^3 a^-2 b");
    rel(conj(u.inverse(), a), a * b.inverse() * a * a, "u^-1 a u = a b^-1 a^2");
    rel(conj(u.inverse(), b), a, "u^-1 b u = a");
    rel(conj(v.inverse(), a), a * b.inverse() * a * a * a, "v^-1 a v = a b^-1 a^3");
    rel(conj(v.inverse(), b), a * b.inverse() * a * a * a * a, "v^-1 b v = a b^-1 a^4");
    return {6, "B4' dictionary (alpha matrices pinned; all eight relations, exact)", c.ok, c.detail.str()};
}

CriterionResult criterion_7_sl2z() {
    Check c;
    const auto rep = sl2z::verify_uv_identities();
    c.require(rep.u_identity_holds && rep.sign_u == -1, "S(QS)^3 must equal -U");
    c.require(rep.v_identity_holds && rep.sign_v == -1, "S Q^{-1} S Q U must equal -V");
    const auto fp = sl2z::free_pair_check(sl2z::kU, sl2z::kV, 10);
    c.require(fp.free_up_to, "U, V must be free up to length 10");
    c.require(sl2z::image_rank_sum(sl2z::kU, sl2z::kV) == 2, "rank of summed images must be 2");
    return {7, "SL2/PSL2 identities (signs -1; FreeUpTo(10); image rank 2, exact)", c.ok, c.detail.str()};
}

CriterionResult criterion_8_solenoids() {
    Check c;
    using progroup::Divisibility;
    const auto dyadic = examples::solenoid({2, 2, 2}, true);
    progroup::StageMorphism phi;
    phi.target = progroup::StageMorphism::Target::Integers;
    phi.stage = 1;
    phi.target_n = 1;
    phi.integer_images = {{1}};
    c.require(progroup::dual_m_divisible(dyadic, phi, 2).status == Divisibility::Divisible,
              "dyadic solenoid dual must be 2-divisible");
    c.require(progroup::dual_m_divisible(dyadic, phi, 3).status == Divisibility::NotDivisible,
              "dyadic solenoid dual must not be 3-divisible");

    const auto universal = examples::universal_solenoid(12);
    for (int m = 1; m <= 12; ++m) {
        c.require(progroup::dual_m_divisible(universal, phi, m, 16).status == Divisibility::Divisible,
                  "universal truncation must be " + std::to_string(m) + "-divisible");
        c.require(progroup::pro_m_divisible_abelianized(universal, m, 16).status == Divisibility::Divisible,
                  "universal truncation (abelianized) must be " + std::to_string(m) + "-divisible");
    }
    return {8, "solenoid divisibility (dyadic 2 yes / 3 no via residue cycles; universal(12) all m <= 12)",
            c.ok, c.detail.str()};
}

CriterionResult criterion_9_mth_roots() {
    Check c;
    auto samples = [&](double turns) {
        family::ScalarLoopSamples f;
        for (int j = 0; j <= 64; ++j) f.values.push_back(circle(turns, static_cast<double>(j) / 64));
        return f;
    };
    const auto winding2 = samples(2.0);
    const auto sqrt2 = family::mth_root_on_loop(winding2, 2);
    c.require(sqrt2.exists, "winding-2 loop must have a square root");
    if (sqrt2.exists)
        for (size_t j = 0; j < winding2.values.size(); ++j) {
            const Cx g = sqrt2.root->values[j];
            c.require(std::abs(g * g - winding2.values[j]) <= 1e-9 * std::abs(winding2.values[j]),
                      "square-root residual above 1e-9");
        }
    c.require(!family::mth_root_on_loop(winding2, 3).exists, "winding-2 loop must have no cube root");
    c.require(!family::mth_root_on_loop(samples(1.0), 2).exists, "winding-1 loop must have no square root");
    return {9, "m-th roots on loops (sqrt of winding 2 at 1e-9; no cube root; no sqrt of winding 1)", c.ok,
            c.detail.str()};
}

CriterionResult criterion_10_counterexamples() {
    Check c;
    const auto deg5 = examples::counterexample_deg_n(5, 3);
    const auto star5 = progroup::decide_star_conditions(deg5.system, deg5.morphism);
    c.require(star5.stable_order == 60, "stable image of the degree-5 counterexample must have order 60");
    c.require(!star5.star_n, "(*_5) must fail");
    const auto analysis = braid::perm_group_analysis(star5.stable_generators);
    c.require(!analysis.is_solvable, "stable image must be unsolvable");
    for (const auto& h : deg5.system.bondings)
        for (const auto& row : freegrp::abelianization_matrix(h))
            for (long long v : row) c.require(v == 0, "degree-5 bonding must abelianize to zero");

    for (int depth = 1; depth <= 5; ++depth) {
        const auto deg4 = examples::counterexample_deg4(depth);
        const auto star4 = progroup::decide_star_conditions(deg4.system, deg4.morphism);
        c.require(!star4.star_n, "(*_4) must fail at depth " + std::to_string(depth));
        for (int stage = 1; stage <= depth + 1; ++stage) {
            const auto comp = progroup::compose_bondings(deg4.system, stage, 1);
            for (const auto& w : comp.images) {
                long long total = 0;
                for (int l : w.letters) {
                    const auto& img = deg4.morphism.braid_images[static_cast<size_t>(std::abs(l) - 1)];
                    total += braid::exponent_sum(img) * (l > 0 ? 1 : -1);
                }
                c.require(total == 0, "a stage image left B_4'");
            }
        }
    }
    return {10, "counterexamples (deg-5: A5 image, star fails, zero abelianization; deg-4: depths 1..5)",
            c.ok, c.detail.str()};
}

CriterionResult criterion_11_schreier() {
    Check c;
    // x -> (1 2), y -> (1 2 3) generate S_3.
    const auto g = freegrp::schreier_kernel({{1, 0, 2}, {1, 2, 0}}, 3);
    c.require(g.vertex_count() == 6, "kernel coset graph must have 6 vertices");
    const auto basis = freegrp::free_basis_and_rank(g);
    c.require(basis.rank == 7, "kernel rank must be 7 = 1 + 6*(2-1)");
    for (const auto& w : basis.basis)
        c.require(g.reads_closed_loop(w), "every basis word must read a closed loop");
    return {11, "Schreier machinery (kernel of F_2 onto S_3: 6 vertices, rank 7, closed loops)", c.ok,
            c.detail.str()};
}

CriterionResult criterion_12_stability() {
    Check c;
    // z^2 - e^{pi i t} over an arc: no repeated roots, gap 2 everywhere.
    PolyFamily F;
    F.degree = 2;
    F.graph.vertices = {"v0", "v1"};
    F.graph.basepoint = "v0";
    F.graph.edges.push_back({"e0", {"v0", "v1"}, 64});
    std::vector<std::vector<Cx>> row;
    for (int j = 0; j <= 64; ++j)
        row.push_back({-circle(0.5, static_cast<double>(j) / 64), Cx{0, 0}});
    F.samples.push_back(std::move(row));

    const auto traj = tracking::track_edge(F, "e0");
    family::SampleFunction exact(1), shifted(1);
    for (size_t i = 0; i < traj.ts.size(); ++i) {
        const double t = traj.ts[i];
        if (std::abs(t * 64 - std::round(t * 64)) > 1e-12) continue;
        exact[0].push_back(traj.strands[0][i]);
        shifted[0].push_back(traj.strands[0][i] + 0.1 * std::exp(Cx{0, 0.7}));
    }
    c.require(exact[0].size() == 65, "strand missing declared samples");

    // alpha = 1 here, so the shift is 0.3 * alpha/3 and snapping must return the
    // identical strand at every sample.
    const auto snapped = family::snap_to_exact(F, shifted, 0.5);
    for (size_t j = 0; j < snapped[0].size(); ++j) {
        c.require(std::abs(snapped[0][j] - exact[0][j]) < 1e-12, "snap left the strand");
        c.require(std::abs(snapped[0][j] + exact[0][j]) > 1.0, "snap crossed to the opposite strand");
    }
    return {12, "stability (perturb an exact root by 0.3*alpha/3; snap recovers the same strand)", c.ok,
            c.detail.str()};
}

} // namespace

std::vector<CriterionResult> run_all() {
    using Fn = CriterionResult (*)();
    const Fn criteria[] = {
        criterion_1_homogeneity,  criterion_2_cauchy_bound,    criterion_3_perturbation_constant,
        criterion_4_monodromy,    criterion_5_word_problem,    criterion_6_b4_dictionary,
        criterion_7_sl2z,         criterion_8_solenoids,       criterion_9_mth_roots,
        criterion_10_counterexamples, criterion_11_schreier,   criterion_12_stability,
    };
    std::vector<CriterionResult> out;
    int index = 1;
    for (Fn fn : criteria) {
        try {
            out.push_back(fn());
        } catch (const std::exception& e) {
            out.push_back({index, "criterion " + std::to_string(index), false,
                           std::string("exception: ") + e.what()});
        }
        out.back().index = index;
        ++index;
    }
    return out;
}

bool all_passed(const std::vector<CriterionResult>& results) {
    for (const auto& r : results)
        if (!r.passed) return false;
    return true;
}

} // namespace polybraid::acceptance
