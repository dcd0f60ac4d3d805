#include "polybraid/json_io.hpp"

#include <cstdio>
#include <fstream>

namespace polybraid::io {

namespace {

const json& need(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw Error("SchemaError", std::string("missing field '") + key + "'");
    return j.at(key);
}

void expect_array(const json& j, const char* what) {
    if (!j.is_array()) throw Error("SchemaError", std::string(what) + " must be an array");
}

} // namespace

json complex_to_json(polycore::Cx z) { return json::array({z.real(), z.imag()}); }

polycore::Cx complex_from_json(const json& j) {
    if (j.is_number()) return polycore::Cx{j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw Error("SchemaError", "complex numbers are [re, im] pairs");
    return polycore::Cx{j[0].get<double>(), j[1].get<double>()};
}

json family_to_json(const family::PolyFamily& F) {
    json edges = json::array();
    for (size_t e = 0; e < F.graph.edges.size(); ++e) {
        const auto& decl = F.graph.edges[e];
        json samples = json::array();
        for (const auto& vec : F.samples[e]) {
            json row = json::array();
            for (const auto& a : vec) row.push_back(complex_to_json(a));
            samples.push_back(std::move(row));
        }
        edges.push_back(json{{"id", decl.id},
                             {"ends", json::array({decl.ends[0], decl.ends[1]})},
                             {"samples", std::move(samples)}});
    }
    return json{{"degree", F.degree},
                {"vertices", F.graph.vertices},
                {"basepoint", F.graph.basepoint},
                {"edges", std::move(edges)}};
}

family::PolyFamily family_from_json(const json& j) {
    family::PolyFamily F;
    F.degree = need(j, "degree").get<int>();
    for (const auto& v : need(j, "vertices")) F.graph.vertices.push_back(v.get<std::string>());
    F.graph.basepoint = need(j, "basepoint").get<std::string>();
    const json& edges = need(j, "edges");
    expect_array(edges, "edges");
    for (const auto& e : edges) {
        family::Graph1Complex::EdgeDecl decl;
        decl.id = need(e, "id").get<std::string>();
        const json& ends = need(e, "ends");
        if (!ends.is_array() || ends.size() != 2) throw Error("SchemaError", "edge ends must be a pair");
        decl.ends[0] = ends[0].get<std::string>();
        decl.ends[1] = ends[1].get<std::string>();
        const json& samples = need(e, "samples");
        expect_array(samples, "edge samples");
        if (samples.size() < 2) throw Error("SchemaError", "edges need at least two samples");
        decl.samples = static_cast<int>(samples.size()) - 1;
        std::vector<std::vector<polycore::Cx>> row;
        for (const auto& vec : samples) {
            expect_array(vec, "coefficient vector");
            std::vector<polycore::Cx> coeffs;
            for (const auto& a : vec) coeffs.push_back(complex_from_json(a));
            row.push_back(std::move(coeffs));
        }
        F.graph.edges.push_back(std::move(decl));
        F.samples.push_back(std::move(row));
    }
    return F;
}

json braid_to_json(const braid::BraidWord& b) { return json(b.letters); }

braid::BraidWord braid_from_json(const json& j, int strands) {
    expect_array(j, "braid word");
    std::vector<int> letters;
    for (const auto& l : j) {
        if (!l.is_number_integer()) throw Error("SchemaError", "braid letters are signed integers");
        letters.push_back(l.get<int>());
    }
    try {
        return braid::BraidWord(strands, std::move(letters));
    } catch (const Error& e) {
        throw Error("SchemaError", e.what());
    }
}

json permutation_to_json(const braid::Permutation& p) {
    json out = json::array();
    for (int v : p.images) out.push_back(v + 1);
    return out;
}

braid::Permutation permutation_from_json(const json& j) {
    expect_array(j, "permutation");
    std::vector<int> im;
    for (const auto& v : j) im.push_back(v.get<int>() - 1);
    try {
        return braid::Permutation(std::move(im));
    } catch (const Error& e) {
        throw Error("SchemaError", e.what());
    }
}

json word_to_json(const freegrp::FreeWord& w) { return json(w.letters); }

freegrp::FreeWord word_from_json(const json& j, int rank) {
    expect_array(j, "free word");
    std::vector<int> letters;
    for (const auto& l : j) letters.push_back(l.get<int>());
    try {
        return freegrp::FreeWord(rank, std::move(letters));
    } catch (const Error& e) {
        throw Error("SchemaError", e.what());
    }
}

json progroup_to_json(const progroup::ProFreeGroup& P) {
    json bondings = json::array();
    for (const auto& h : P.bondings) {
        json words = json::array();
        for (const auto& w : h.images) words.push_back(word_to_json(w));
        bondings.push_back(std::move(words));
    }
    json extension;
    if (P.periodic_tail)
        extension = json{{"periodic_tail", *P.periodic_tail}};
    else
        extension = nullptr;
    return json{{"ranks", P.ranks}, {"bondings", std::move(bondings)}, {"extension", extension}};
}

progroup::ProFreeGroup progroup_from_json(const json& j) {
    progroup::ProFreeGroup P;
    for (const auto& r : need(j, "ranks")) P.ranks.push_back(r.get<int>());
    const json& bondings = need(j, "bondings");
    expect_array(bondings, "bondings");
    if (bondings.size() + 1 != P.ranks.size())
        throw Error("SchemaError", "bonding count must be one less than the stage count");
    for (size_t i = 0; i < bondings.size(); ++i) {
        freegrp::FreeHom h;
        h.domain_rank = P.ranks[i + 1];
        h.codomain_rank = P.ranks[i];
        expect_array(bondings[i], "bonding image list");
        for (const auto& w : bondings[i]) h.images.push_back(word_from_json(w, h.codomain_rank));
        if (static_cast<int>(h.images.size()) != h.domain_rank)
            throw Error("SchemaError", "bonding image count must match the upper stage rank");
        P.bondings.push_back(std::move(h));
    }
    if (j.contains("extension") && !j.at("extension").is_null())
        P.periodic_tail = need(j.at("extension"), "periodic_tail").get<int>();
    try {
        P.validate();
    } catch (const Error& e) {
        throw Error("SchemaError", e.what());
    }
    return P;
}

json morphism_to_json(const progroup::StageMorphism& phi) {
    using Target = progroup::StageMorphism::Target;
    json target;
    json images = json::array();
    switch (phi.target) {
        case Target::BraidGroup:
            target = json{{"kind", "braid"}, {"n", phi.target_n}};
            for (const auto& b : phi.braid_images) images.push_back(braid_to_json(b));
            break;
        case Target::Integers:
            target = json{{"kind", "integers"}, {"k", phi.target_n}};
            for (const auto& v : phi.integer_images) images.push_back(json(v));
            break;
        case Target::FinitePerm:
            target = json{{"kind", "perm"}, {"k", phi.target_n}};
            for (const auto& p : phi.perm_images) images.push_back(permutation_to_json(p));
            break;
    }
    return json{{"stage", phi.stage}, {"target", target}, {"images", images}};
}

progroup::StageMorphism morphism_from_json(const json& j) {
    using Target = progroup::StageMorphism::Target;
    progroup::StageMorphism phi;
    phi.stage = need(j, "stage").get<int>();
    const json& target = need(j, "target");
    const std::string kind = need(target, "kind").get<std::string>();
    const json& images = need(j, "images");
    expect_array(images, "images");
    if (kind == "braid") {
        phi.target = Target::BraidGroup;
        phi.target_n = need(target, "n").get<int>();
        for (const auto& b : images) phi.braid_images.push_back(braid_from_json(b, phi.target_n));
    } else if (kind == "integers") {
        phi.target = Target::Integers;
        phi.target_n = need(target, "k").get<int>();
        for (const auto& v : images) {
            expect_array(v, "integer image");
            std::vector<long long> row;
            for (const auto& x : v) row.push_back(x.get<long long>());
            if (static_cast<int>(row.size()) != phi.target_n)
                throw Error("SchemaError", "integer image has wrong length");
            phi.integer_images.push_back(std::move(row));
        }
    } else if (kind == "perm") {
        phi.target = Target::FinitePerm;
        phi.target_n = need(target, "k").get<int>();
        for (const auto& p : images) phi.perm_images.push_back(permutation_from_json(p));
    } else {
        throw Error("SchemaError", "unknown morphism target kind: " + kind);
    }
    return phi;
}

json loop_samples_to_json(const family::ScalarLoopSamples& f) {
    json values = json::array();
    for (const auto& v : f.values) values.push_back(complex_to_json(v));
    return json{{"values", std::move(values)}};
}

family::ScalarLoopSamples loop_samples_from_json(const json& j) {
    family::ScalarLoopSamples f;
    const json& values = need(j, "values");
    expect_array(values, "values");
    for (const auto& v : values) f.values.push_back(complex_from_json(v));
    return f;
}

json trajectory_to_json(const tracking::RootTrajectory& t) {
    json strands = json::array();
    for (const auto& strand : t.strands) {
        json row = json::array();
        for (const auto& z : strand) row.push_back(complex_to_json(z));
        strands.push_back(std::move(row));
    }
    json certs = json::array();
    for (const auto& c : t.certificates)
        certs.push_back(json{{"max_displacement", c.max_displacement}, {"min_gap", c.min_gap_at_start}});
    return json{{"edge", t.edge},
                {"reversed", t.reversed},
                {"t", t.ts},
                {"strands", std::move(strands)},
                {"certificates", std::move(certs)}};
}

json monodromy_to_json(const tracking::LoopMonodromy& m) {
    return json{{"loop", family::loop_to_string(m.loop)},
                {"strands", m.braid_word.strands},
                {"braid", braid_to_json(m.braid_word)},
                {"permutation", permutation_to_json(m.permutation)},
                {"exponent_sum", braid::exponent_sum(m.braid_word)}};
}

json verdict_to_json(const tracking::SolvabilityVerdict& v) {
    json loops = json::array();
    for (const auto& l : v.loops) loops.push_back(family::loop_to_string(l));
    json perms = json::array();
    for (const auto& p : v.permutations) perms.push_back(permutation_to_json(p));
    json fixed = json::array();
    for (int i : v.common_fixed) fixed.push_back(i + 1);
    json witness;
    if (v.witness) {
        witness = json::array();
        for (const auto& edge : *v.witness) {
            json row = json::array();
            for (const auto& z : edge) row.push_back(complex_to_json(z));
            witness.push_back(std::move(row));
        }
    } else {
        witness = nullptr;
    }
    return json{{"loops", std::move(loops)},
                {"permutations", std::move(perms)},
                {"exact_root_exists", v.exact_root_exists},
                {"completely_solvable", v.completely_solvable},
                {"common_fixed_strands", std::move(fixed)},
                {"witness", std::move(witness)}};
}

json wedge_to_json(const progroup::WedgeSystem& w) {
    json stages = json::array();
    for (const auto& s : w.stages)
        stages.push_back(json{{"circles", s.circles}, {"basepoint", "w0"}});
    json maps = json::array();
    for (const auto& stage_maps : w.maps) {
        json row = json::array();
        for (const auto& word : stage_maps) row.push_back(word_to_json(word));
        maps.push_back(std::move(row));
    }
    json extension;
    if (w.periodic_tail)
        extension = json{{"periodic_tail", *w.periodic_tail}};
    else
        extension = nullptr;
    return json{{"stages", std::move(stages)}, {"maps", std::move(maps)}, {"extension", extension}};
}

progroup::WedgeSystem wedge_from_json(const json& j) {
    progroup::WedgeSystem w;
    for (const auto& s : need(j, "stages")) w.stages.push_back({need(s, "circles").get<int>()});
    const json& maps = need(j, "maps");
    expect_array(maps, "maps");
    for (size_t i = 0; i < maps.size(); ++i) {
        std::vector<freegrp::FreeWord> row;
        for (const auto& word : maps[i]) row.push_back(word_from_json(word, w.stages[i].circles));
        w.maps.push_back(std::move(row));
    }
    if (j.contains("extension") && !j.at("extension").is_null())
        w.periodic_tail = need(j.at("extension"), "periodic_tail").get<int>();
    return w;
}

json parse_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw Error("ParseError", "invalid JSON");
    return j;
}

json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("ParseError", "cannot open " + path);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw Error("ParseError", "invalid JSON in " + path);
    return j;
}

void save_file(const std::string& path, const json& j) {
    // Write to a sibling temp file, then rename: readers never see a torn file.
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw Error("ParseError", "cannot write " + tmp);
        out << j.dump(2) << "\n";
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw Error("ParseError", "cannot move " + tmp + " into place");
}

} // namespace polybraid::io
