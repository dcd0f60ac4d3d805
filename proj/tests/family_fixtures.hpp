#ifndef POLYBRAID_TESTS_FAMILY_FIXTURES_HPP
#define POLYBRAID_TESTS_FAMILY_FIXTURES_HPP

#include <functional>

#include "polybraid/family.hpp"

namespace fixtures {

using polybraid::family::Graph1Complex;
using polybraid::family::PolyFamily;
using polybraid::polycore::Cx;

using CoeffMap = std::function<std::vector<Cx>(double)>;

/// One loop edge at a single vertex; coeffs(t) for t in [0, 1] with
/// coeffs(0) == coeffs(1).
inline PolyFamily circle_family(int degree, int m, const CoeffMap& coeffs) {
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

/// One edge between two vertices.
inline PolyFamily arc_family(int degree, int m, const CoeffMap& coeffs) {
    PolyFamily F;
    F.degree = degree;
    F.graph.vertices = {"v0", "v1"};
    F.graph.basepoint = "v0";
    F.graph.edges.push_back({"e0", {"v0", "v1"}, m});
    std::vector<std::vector<Cx>> row;
    for (int j = 0; j <= m; ++j) row.push_back(coeffs(static_cast<double>(j) / m));
    F.samples.push_back(std::move(row));
    return F;
}

/// Wedge of two circles at one vertex, separate coefficient loops per edge.
inline PolyFamily wedge2_family(int degree, int m, const CoeffMap& first, const CoeffMap& second) {
    PolyFamily F;
    F.degree = degree;
    F.graph.vertices = {"v0"};
    F.graph.basepoint = "v0";
    F.graph.edges.push_back({"eA", {"v0", "v0"}, m});
    F.graph.edges.push_back({"eB", {"v0", "v0"}, m});
    for (const CoeffMap* f : {&first, &second}) {
        std::vector<std::vector<Cx>> row;
        for (int j = 0; j <= m; ++j) row.push_back((*f)(static_cast<double>(j) / m));
        F.samples.push_back(std::move(row));
    }
    return F;
}

inline std::vector<Cx> constant_z2_minus_1(double) { return {Cx{-1, 0}, Cx{0, 0}}; }

} // namespace fixtures

#endif
