#ifndef POLYBRAID_JSON_IO_HPP
#define POLYBRAID_JSON_IO_HPP

#include <string>

#include "json.hpp"
#include "polybraid/examples.hpp"
#include "polybraid/family.hpp"
#include "polybraid/progroup.hpp"
#include "polybraid/tracking.hpp"

namespace polybraid::io {

using nlohmann::json;

// Complex numbers serialize as [re, im]; braid and free-group words as signed
// integer arrays. Parsers throw Error("SchemaError", ...) on shape violations
// and Error("ParseError", ...) on invalid JSON text.

json complex_to_json(polycore::Cx z);
polycore::Cx complex_from_json(const json& j);

json family_to_json(const family::PolyFamily& F);
family::PolyFamily family_from_json(const json& j);

json braid_to_json(const braid::BraidWord& b);
braid::BraidWord braid_from_json(const json& j, int strands);

json permutation_to_json(const braid::Permutation& p); // 1-based image list
braid::Permutation permutation_from_json(const json& j);

json word_to_json(const freegrp::FreeWord& w);
freegrp::FreeWord word_from_json(const json& j, int rank);

json progroup_to_json(const progroup::ProFreeGroup& P);
progroup::ProFreeGroup progroup_from_json(const json& j);

json morphism_to_json(const progroup::StageMorphism& phi);
progroup::StageMorphism morphism_from_json(const json& j);

json loop_samples_to_json(const family::ScalarLoopSamples& f);
family::ScalarLoopSamples loop_samples_from_json(const json& j);

json trajectory_to_json(const tracking::RootTrajectory& t);
json monodromy_to_json(const tracking::LoopMonodromy& m);
json verdict_to_json(const tracking::SolvabilityVerdict& v);
json wedge_to_json(const progroup::WedgeSystem& w);
progroup::WedgeSystem wedge_from_json(const json& j);

json parse_text(const std::string& text);
json load_file(const std::string& path);
void save_file(const std::string& path, const json& j);

} // namespace polybraid::io

#endif
