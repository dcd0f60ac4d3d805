#include "doctest.h"

#include "family_fixtures.hpp"
#include "polybraid/examples.hpp"
#include "polybraid/json_io.hpp"
#include "polybraid/svg.hpp"
#include "polybraid/tracking.hpp"

using namespace polybraid;
using io::json;

TEST_CASE("family JSON round-trips") {
    const auto F = fixtures::wedge2_family(2, 6, fixtures::constant_z2_minus_1,
                                           fixtures::constant_z2_minus_1);
    const json j = io::family_to_json(F);
    const auto back = io::family_from_json(j);
    CHECK(back.degree == F.degree);
    CHECK(back.graph.vertices == F.graph.vertices);
    CHECK(back.graph.basepoint == F.graph.basepoint);
    CHECK(back.samples == F.samples);
    CHECK(io::family_to_json(back) == j);
}

TEST_CASE("pro-group JSON round-trips for every generated example") {
    std::vector<progroup::ProFreeGroup> systems;
    systems.push_back(examples::solenoid({2, 2, 2}, true));
    systems.push_back(examples::universal_solenoid(5));
    systems.push_back(examples::counterexample_deg_n(5, 2).system);
    systems.push_back(examples::counterexample_deg4(3).system);
    systems.push_back(examples::acyclic_nonabelian(2, 1, 2).system);
    for (const auto& P : systems) {
        const json j = io::progroup_to_json(P);
        const auto back = io::progroup_from_json(j);
        CHECK(back.ranks == P.ranks);
        CHECK(back.periodic_tail == P.periodic_tail);
        REQUIRE(back.bondings.size() == P.bondings.size());
        for (size_t i = 0; i < P.bondings.size(); ++i)
            CHECK(back.bondings[i].images == P.bondings[i].images);
        CHECK(io::progroup_to_json(back) == j);
    }
}

TEST_CASE("morphism JSON round-trips") {
    const auto ce = examples::counterexample_deg4(2);
    const json j = io::morphism_to_json(ce.morphism);
    const auto back = io::morphism_from_json(j);
    CHECK(back.stage == ce.morphism.stage);
    CHECK(back.target_n == ce.morphism.target_n);
    REQUIRE(back.braid_images.size() == ce.morphism.braid_images.size());
    for (size_t i = 0; i < back.braid_images.size(); ++i)
        CHECK(back.braid_images[i].letters == ce.morphism.braid_images[i].letters);
    CHECK(io::morphism_to_json(back) == j);

    progroup::StageMorphism zphi;
    zphi.target = progroup::StageMorphism::Target::Integers;
    zphi.stage = 2;
    zphi.target_n = 1;
    zphi.integer_images = {{3}, {-1}};
    const auto zback = io::morphism_from_json(io::morphism_to_json(zphi));
    CHECK(zback.integer_images == zphi.integer_images);
}

TEST_CASE("wedge system JSON round-trips") {
    const auto w = progroup::realize_as_wedge_system(examples::solenoid({2, 3}, false));
    const json j = io::wedge_to_json(w);
    const auto back = io::wedge_from_json(j);
    CHECK(back.stages.size() == w.stages.size());
    CHECK(back.maps.size() == w.maps.size());
    CHECK(io::wedge_to_json(back) == j);
}

TEST_CASE("schema violations raise SchemaError") {
    CHECK_THROWS_AS(io::family_from_json(io::parse_text("{\"degree\": 2}")), Error);
    CHECK_THROWS_AS(io::complex_from_json(io::parse_text("[1, 2, 3]")), Error);
    CHECK_THROWS_AS(io::progroup_from_json(io::parse_text("{\"ranks\": [1, 1], \"bondings\": []}")),
                    Error);
    CHECK_THROWS_AS(io::parse_text("not json"), Error);
}

TEST_CASE("SVG output is deterministic and well formed") {
    const auto F = fixtures::circle_family(2, 32, [](double t) {
        return std::vector<polycore::Cx>{-std::exp(polycore::Cx{0, 6.283185307179586 * t}),
                                         polycore::Cx{0, 0}};
    });
    const auto traj = tracking::track_edge(F, "e0");
    const std::string one = svg::render_trajectory(traj);
    const std::string two = svg::render_trajectory(tracking::track_edge(F, "e0"));
    CHECK(one == two);
    CHECK(one.rfind("<svg", 0) == 0);
    CHECK(one.find("</svg>") != std::string::npos);

    const std::string empty_braid = svg::render_braid(braid::BraidWord(3, {}));
    CHECK(empty_braid.find("<line") != std::string::npos);
    const std::string one_crossing = svg::render_braid(braid::BraidWord(2, {1}));
    CHECK(one_crossing.find("<line") != std::string::npos);
    CHECK(svg::render_braid(braid::BraidWord(2, {1})) == one_crossing);
}
