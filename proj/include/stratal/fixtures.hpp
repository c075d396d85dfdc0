#ifndef STRATAL_FIXTURES_HPP
#define STRATAL_FIXTURES_HPP

#include "stratal/perverse.hpp"

namespace stratal {
namespace fixtures {

/// The fixture library every suite references: a point, a segment, the
/// minimal circle model, and the disk cone over it.
Poset point();
Poset segment();                        // x < y
Poset circle();                         // {a,b,c,d}; a<c, a<d, b<c, b<d
Poset disk();                           // circle plus bottom element s

/// Disk stratified by S = {s}, X0 = circle, d = 0, c = 1.
StratifiedSpace strat_disk();

/// K = {s,a}: the standard perverse closed set of the disk fixture.
Subspace k_good(const Poset& disk_poset);

/// Rank-1 local system on the circle model with holonomy lambda carried by
/// the single edge b<d.
Sheaf circle_system(long lambda);
/// Rank-n version twisting b<d by the given invertible matrix.
Sheaf circle_system(const Matrix& holonomy);

/// The same systems as perverse objects in degree -1.
PerverseOnX0 perverse_circle_system(long lambda);
PerverseOnX0 perverse_circle_system(const Matrix& holonomy);

/// Intersection complex of the disk: tau^{<=-1} Rj_* L_1[1].
SheafComplex ic1();

/// Rj_* L_lambda[1] on the disk.
SheafComplex rj_shifted_system(long lambda);

}  // namespace fixtures
}  // namespace stratal

#endif
