#ifndef POLYBRAID_SVG_HPP
#define POLYBRAID_SVG_HPP

#include <string>

#include "polybraid/braid.hpp"
#include "polybraid/tracking.hpp"

namespace polybraid::svg {

/// Strand plot of a tracked trajectory: parameter along x, real part along y,
/// imaginary part coloring the stroke. Byte-stable for fixed input.
std::string render_trajectory(const tracking::RootTrajectory& t);

/// Strand plot of a whole loop's concatenated paths.
std::string render_loop(const tracking::LoopMonodromy& m);

/// Braid diagram: strands run left to right, one crossing block per letter,
/// the under-strand broken at each crossing. Throws EmptyInput for n < 1.
std::string render_braid(const braid::BraidWord& b);

} // namespace polybraid::svg

#endif
