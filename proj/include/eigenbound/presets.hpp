#ifndef EIGENBOUND_PRESETS_HPP
#define EIGENBOUND_PRESETS_HPP

#include <string>
#include <vector>

#include "eigenbound/moments.hpp"
#include "eigenbound/polytope.hpp"

namespace eigenbound {

// Built-in moment polytopes of the standard low-dimensional Fano examples,
// normalized so all facet constants are 1 and the barycenter is the origin.
//   cp1       segment [-1,1]
//   cp2       triangle with vertices (-1,-1), (2,-1), (-1,2)
//   cp1xcp1   square [-1,1]^2
//   dp6       hexagon (del Pezzo degree 6; blowup of the plane at 3 points)
//   threefold P(O + O(1,-1)) over cp1 x cp1
const std::vector<std::string>& polytope_preset_names();
bool has_polytope_preset(const std::string& name);
Polytope polytope_preset(const std::string& name);

// Raw moments of the unit disc with the common factor pi removed; the bound
// is invariant under simultaneous scaling of all moments, so this is exact.
MomentTensor disc_moments();

const std::vector<std::string>& moment_preset_names();
bool has_moment_preset(const std::string& name);
MomentTensor moment_preset(const std::string& name);

}  // namespace eigenbound

#endif
