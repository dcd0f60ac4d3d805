// polybraid: JSON in, JSON/SVG out, for root tracking, braid monodromy,
// solvability verdicts, pro-group divisibility, and the SL2(Z) checks.
//
// Exit status: 0 success, 2 computation succeeded but the mathematical verdict
// is negative (no root, not divisible, star condition fails), 1 error.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "polybraid/acceptance.hpp"
#include "polybraid/examples.hpp"
#include "polybraid/json_io.hpp"
#include "polybraid/sl2z.hpp"
#include "polybraid/svg.hpp"
#include "polybraid/tracking.hpp"

namespace {

using namespace polybraid;
using io::json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNegative = 2;

/// Inputs may be inline JSON ('[' or '{') or a file path.
json load_input(const std::string& arg) {
    if (!arg.empty() && (arg[0] == '[' || arg[0] == '{')) return io::parse_text(arg);
    return io::load_file(arg);
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty())
        std::cout << j.dump(2) << "\n";
    else
        io::save_file(out_path, j);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("ParseError", "cannot write " + path);
    out << text;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("POLYBRAID_SEED")) return std::strtoull(env, nullptr, 10);
    return 20240001ULL;
}

/// CLI coefficient arrays read the way the polynomial is written: descending,
/// [a_{n-1}, ..., a_1, a_0] for z^n + a_{n-1} z^{n-1} + ... + a_0. So
/// '[0,-1]' is z^2 - 1. (Family files store vectors ascending, a_0 first.)
polycore::MonicPoly poly_from_arg(const std::string& arg) {
    const json j = load_input(arg);
    if (!j.is_array()) throw Error("SchemaError", "expected a coefficient array [a_{n-1}, ..., a_0]");
    std::vector<polycore::Cx> coeffs;
    for (const auto& a : j) coeffs.push_back(io::complex_from_json(a));
    std::reverse(coeffs.begin(), coeffs.end());
    return polycore::MonicPoly(std::move(coeffs));
}

std::vector<family::Loop> resolve_loops(const family::PolyFamily& F, const std::string& spec) {
    if (spec == "auto" || spec.empty()) return family::fundamental_loops(F.graph);
    std::vector<family::Loop> loops;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ';'))
        if (!item.empty()) loops.push_back(family::parse_loop(item));
    return loops;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"polybraid: continuous roots of polynomial families over 1-complexes"};
    app.require_subcommand(1);

    std::string input, out_path, svg_path, edge_id, loop_spec = "auto", phi_path, name;
    double tol = 1e-9;
    int m_value = 2, budget = 16, stage_budget = 64, n_value = 5, stages = 3;
    int depth = 3, word_budget = 1, k_max = 2, k_value = 12;
    bool abelianized = false, periodic = false;
    std::string multipliers = "2,2,2";
    std::uint64_t seed = default_seed();

    auto* roots_cmd = app.add_subcommand("roots", "roots of one monic polynomial");
    roots_cmd->add_option("coeffs", input, "coefficients [a_{n-1}..a0] (descending), numbers or [re,im]")->required();
    roots_cmd->add_option("--tol", tol, "expansion tolerance");
    roots_cmd->add_option("--out", out_path, "output file (stdout otherwise)");

    auto* disc_cmd = app.add_subcommand("disc", "monic discriminant of one polynomial");
    disc_cmd->add_option("coeffs", input, "coefficients [a_{n-1}..a0] (descending)")->required();
    disc_cmd->add_option("--out", out_path, "output file");

    auto* track_cmd = app.add_subcommand("track", "continue the root system along one edge");
    track_cmd->add_option("family", input, "family JSON (file or inline)")->required();
    track_cmd->add_option("--edge", edge_id, "edge id")->required();
    track_cmd->add_option("--out", out_path, "output file");
    track_cmd->add_option("--svg", svg_path, "also render the strand plot");

    auto* braid_cmd = app.add_subcommand("braid", "braid monodromy of one loop");
    braid_cmd->add_option("family", input, "family JSON")->required();
    braid_cmd->add_option("--loop", loop_spec, "comma-separated edge word, ~ reverses")->required();
    braid_cmd->add_option("--out", out_path, "output file");
    braid_cmd->add_option("--svg", svg_path, "also render the braid diagram");

    auto* solve_cmd = app.add_subcommand("solve", "solvability verdict over generating loops");
    solve_cmd->add_option("family", input, "family JSON")->required();
    solve_cmd->add_option("--loops", loop_spec, "'auto' or semicolon-separated loops");
    solve_cmd->add_option("--out", out_path, "output file");

    auto* perturb_cmd = app.add_subcommand("perturb", "push the family off the discriminant variety");
    perturb_cmd->add_option("family", input, "family JSON")->required();
    perturb_cmd->add_option("--tol", tol, "minimum |disc| to reach")->required();
    perturb_cmd->add_option("--budget", budget, "radius-doubling attempts");
    perturb_cmd->add_option("--seed", seed, "rng seed (POLYBRAID_SEED otherwise)");
    perturb_cmd->add_option("--out", out_path, "perturbed family file");

    auto* mthroot_cmd = app.add_subcommand("mthroot", "continuous m-th root of a nonvanishing loop");
    mthroot_cmd->add_option("loop", input, "loop samples JSON {values: [[re,im]...]}")->required();
    mthroot_cmd->add_option("--m", m_value, "root order")->required();
    mthroot_cmd->add_option("--out", out_path, "output file");

    auto* prodiv_cmd = app.add_subcommand("pro-divisible", "m-divisibility of a pro-group dual");
    prodiv_cmd->add_option("system", input, "pro-group JSON")->required();
    prodiv_cmd->add_option("--m", m_value, "divisor")->required();
    prodiv_cmd->add_option("--phi", phi_path, "stage morphism JSON (default: all-ones on stage 1)");
    prodiv_cmd->add_flag("--abelianized", abelianized, "decide the abelianized pro-group instead");
    prodiv_cmd->add_option("--budget", stage_budget, "stage budget");
    prodiv_cmd->add_option("--out", out_path, "output file");

    auto* prostar_cmd = app.add_subcommand("pro-star", "(*_n) and (**_n) for a braid-group morphism");
    prostar_cmd->add_option("system", input, "pro-group JSON")->required();
    prostar_cmd->add_option("--phi", phi_path, "stage morphism JSON")->required();
    prostar_cmd->add_option("--out", out_path, "output file");

    auto* sl2z_cmd = app.add_subcommand("sl2z-verify", "verify the SL2(Z)/PSL2(Z) computations");
    sl2z_cmd->add_option("--out", out_path, "output file");

    auto* examples_cmd = app.add_subcommand("examples", "generate a named construction");
    examples_cmd->add_option("name", name,
                             "solenoid | universal-solenoid | counterexample-deg-n | "
                             "counterexample-deg4 | acyclic | wedge")
        ->required();
    examples_cmd->add_option("--multipliers", multipliers, "solenoid multipliers, comma separated");
    examples_cmd->add_flag("--periodic", periodic, "repeat the last bonding forever");
    examples_cmd->add_option("--k", k_value, "universal solenoid depth");
    examples_cmd->add_option("--n", n_value, "degree for counterexample-deg-n");
    examples_cmd->add_option("--stages", stages, "stage count");
    examples_cmd->add_option("--depth", depth, "acyclic recursion depth");
    examples_cmd->add_option("--word-budget", word_budget, "acyclic enumeration word budget");
    examples_cmd->add_option("--k-max", k_max, "acyclic enumeration strand cap");
    examples_cmd->add_option("--of", input, "pro-group JSON for 'wedge'");
    examples_cmd->add_option("--out", out_path, "output file");

    auto* report_cmd = app.add_subcommand("report", "run the full acceptance suite");
    report_cmd->add_option("--out", out_path, "also write the JSON report");

    CLI11_PARSE(app, argc, argv);

    try {
        if (roots_cmd->parsed()) {
            const auto rs = polycore::roots(poly_from_arg(input), tol);
            json roots = json::array();
            for (const auto& z : rs.roots) roots.push_back(io::complex_to_json(z));
            emit(json{{"roots", roots}, {"tolerance", rs.tolerance}}, out_path);
            return kExitOk;
        }

        if (disc_cmd->parsed()) {
            const auto p = poly_from_arg(input);
            const auto d = polycore::discriminant(p);
            emit(json{{"discriminant", io::complex_to_json(d)},
                      {"is_zero", polycore::discriminant_is_zero(p, d)}},
                 out_path);
            return kExitOk;
        }

        if (track_cmd->parsed()) {
            const auto F = io::family_from_json(load_input(input));
            const auto traj = tracking::track_edge(F, edge_id);
            if (!svg_path.empty()) write_text(svg_path, svg::render_trajectory(traj));
            emit(io::trajectory_to_json(traj), out_path);
            return kExitOk;
        }

        if (braid_cmd->parsed()) {
            const auto F = io::family_from_json(load_input(input));
            const auto mono = tracking::loop_braid(F, family::parse_loop(loop_spec));
            if (!svg_path.empty()) write_text(svg_path, svg::render_braid(mono.braid_word));
            emit(io::monodromy_to_json(mono), out_path);
            return kExitOk;
        }

        if (solve_cmd->parsed()) {
            const auto F = io::family_from_json(load_input(input));
            const auto verdict = tracking::solvability_verdict(F, resolve_loops(F, loop_spec));
            emit(io::verdict_to_json(verdict), out_path);
            return verdict.exact_root_exists ? kExitOk : kExitNegative;
        }

        if (perturb_cmd->parsed()) {
            const auto F = io::family_from_json(load_input(input));
            const auto res = family::perturb_off_discriminant(F, tol, budget, seed);
            json report{{"deviation", res.deviation},
                        {"attempts", res.attempts},
                        {"min_abs_discriminant", res.min_abs_discriminant},
                        {"family", io::family_to_json(res.family)}};
            emit(report, out_path);
            return kExitOk;
        }

        if (mthroot_cmd->parsed()) {
            const auto f = io::loop_samples_from_json(load_input(input));
            const auto res = family::mth_root_on_loop(f, m_value);
            json report{{"exists", res.exists}, {"winding", res.winding}, {"m", res.m}};
            report["root"] = res.exists ? io::loop_samples_to_json(*res.root) : json(nullptr);
            emit(report, out_path);
            return res.exists ? kExitOk : kExitNegative;
        }

        if (prodiv_cmd->parsed()) {
            const auto P = io::progroup_from_json(load_input(input));
            progroup::DualDivisibilityResult dual;
            progroup::Divisibility status;
            json report;
            if (abelianized) {
                const auto res = progroup::pro_m_divisible_abelianized(P, m_value, stage_budget);
                status = res.status;
                report["per_stage_witness"] = res.per_stage_witness;
            } else {
                progroup::StageMorphism phi;
                if (!phi_path.empty()) {
                    phi = io::morphism_from_json(load_input(phi_path));
                } else {
                    phi.target = progroup::StageMorphism::Target::Integers;
                    phi.stage = 1;
                    phi.target_n = 1;
                    phi.integer_images.assign(static_cast<size_t>(P.rank_at(1)), {1});
                }
                dual = progroup::dual_m_divisible(P, phi, m_value, stage_budget);
                status = dual.status;
                report["witness_stage"] = dual.witness_stage;
            }
            report["m"] = m_value;
            report["status"] = status == progroup::Divisibility::Divisible      ? "divisible"
                               : status == progroup::Divisibility::NotDivisible ? "not-divisible"
                                                                                : "unknown";
            emit(report, out_path);
            return status == progroup::Divisibility::Divisible ? kExitOk : kExitNegative;
        }

        if (prostar_cmd->parsed()) {
            const auto P = io::progroup_from_json(load_input(input));
            const auto phi = io::morphism_from_json(load_input(phi_path));
            const auto d = progroup::decide_star_conditions(P, phi);
            json fixed = json::array();
            for (int i : d.common_fixed) fixed.push_back(i + 1);
            json gens = json::array();
            for (const auto& p : d.stable_generators) gens.push_back(io::permutation_to_json(p));
            emit(json{{"stable_order", d.stable_order},
                      {"stable_generators", gens},
                      {"star", d.star_n},
                      {"star_star", d.star_star_n},
                      {"stabilization_stage", d.stabilization_stage},
                      {"common_fixed_strands", fixed}},
                 out_path);
            return d.star_n ? kExitOk : kExitNegative;
        }

        if (sl2z_cmd->parsed()) {
            const auto rep = sl2z::verify_uv_identities();
            const auto fp = sl2z::free_pair_check(sl2z::kU, sl2z::kV, 10);
            emit(json{{"u_identity", {{"holds_in_psl", rep.u_identity_holds}, {"sign", rep.sign_u}}},
                      {"v_identity", {{"holds_in_psl", rep.v_identity_holds}, {"sign", rep.sign_v}}},
                      {"s_squared_is_minus_id", rep.s_squared_is_minus_id},
                      {"u_normal_form", rep.u_normal_form.str()},
                      {"v_normal_form", rep.v_normal_form.str()},
                      {"free_pair", {{"free_up_to", fp.free_up_to}, {"length", fp.length}}},
                      {"image_rank_sum", sl2z::image_rank_sum(sl2z::kU, sl2z::kV)}},
                 out_path);
            return kExitOk;
        }

        if (examples_cmd->parsed()) {
            json out;
            if (name == "solenoid") {
                std::vector<int> ms;
                std::stringstream ss(multipliers);
                std::string item;
                while (std::getline(ss, item, ',')) ms.push_back(std::stoi(item));
                out = json{{"system", io::progroup_to_json(examples::solenoid(ms, periodic))}};
            } else if (name == "universal-solenoid") {
                out = json{{"system", io::progroup_to_json(examples::universal_solenoid(k_value))}};
            } else if (name == "counterexample-deg-n") {
                const auto ce = examples::counterexample_deg_n(n_value, stages);
                out = json{{"system", io::progroup_to_json(ce.system)},
                           {"morphism", io::morphism_to_json(ce.morphism)},
                           {"psi_images",
                            {{"a", io::permutation_to_json(ce.a)}, {"b", io::permutation_to_json(ce.b)}}},
                           {"bonding_images",
                            {{"x", io::word_to_json(ce.x_image)}, {"y", io::word_to_json(ce.y_image)}}}};
            } else if (name == "counterexample-deg4") {
                const auto ce = examples::counterexample_deg4(stages);
                out = json{{"system", io::progroup_to_json(ce.system)},
                           {"morphism", io::morphism_to_json(ce.morphism)},
                           {"uv_subsystem", io::progroup_to_json(ce.uv_subsystem)}};
            } else if (name == "acyclic") {
                const auto res = examples::acyclic_nonabelian(depth, word_budget, k_max);
                json steps = json::array();
                for (const auto& s : res.steps) {
                    json phis = json::array();
                    for (const auto& b : s.phi_images) phis.push_back(io::braid_to_json(b));
                    steps.push_back(json{{"ell", s.ell},
                                         {"occurrence", s.occurrence},
                                         {"strands", s.braid_strands},
                                         {"phi_images", phis},
                                         {"kernel_index", s.kernel_index}});
                }
                out = json{{"system", io::progroup_to_json(res.system)}, {"steps", steps}};
            } else if (name == "wedge") {
                const auto P = io::progroup_from_json(load_input(input));
                out = json{{"wedge", io::wedge_to_json(progroup::realize_as_wedge_system(P))}};
            } else {
                throw Error("UnknownExample", "no construction named '" + name + "'");
            }
            emit(out, out_path);
            return kExitOk;
        }

        if (report_cmd->parsed()) {
            const auto results = acceptance::run_all();
            json items = json::array();
            for (const auto& r : results) {
                std::printf("[%s] %2d  %s\n", r.passed ? "PASS" : "FAIL", r.index, r.name.c_str());
                if (!r.passed && !r.detail.empty()) std::printf("        %s\n", r.detail.c_str());
                items.push_back(json{{"index", r.index},
                                     {"name", r.name},
                                     {"passed", r.passed},
                                     {"detail", r.detail}});
            }
            const bool ok = acceptance::all_passed(results);
            if (!out_path.empty()) io::save_file(out_path, json{{"passed", ok}, {"criteria", items}});
            return ok ? kExitOk : kExitError;
        }
    } catch (const Error& e) {
        std::cerr << json{{"error", e.code()}, {"message", e.what()}}.dump() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "Internal"}, {"message", e.what()}}.dump() << "\n";
        return kExitError;
    }
    return kExitError;
}
