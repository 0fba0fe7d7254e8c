#ifndef ICG_PROBLEMS_HPP
#define ICG_PROBLEMS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "icg/ivm.hpp"

namespace icg {

/// A registered benchmark problem: the objective map, a sampling box for
/// random starts, optional analytically known critical points, and a
/// convexity flag (convex problems must terminate at a critical point from
/// any start).
struct ProblemSpec {
    std::string name;
    MultiObjective mo;
    Vector box_lo;
    Vector box_hi;
    std::vector<Vector> known_critical;
    bool convex = false;

    int dim() const { return mo.dim(); }
    int objectives() const { return mo.size(); }
};

/// The built-in suite. Immutable after first construction; safe to share.
const std::vector<ProblemSpec>& registry();

/// Lookup by name; throws UnknownProblem.
const ProblemSpec& lookup(const std::string& name);

/// Uniform draw from the problem's box. Counter-based and keyed on the
/// problem name, so a (problem, seed) pair maps to the same point on every
/// platform and thread.
Vector sample_start(const ProblemSpec& spec, std::uint64_t seed);

}  // namespace icg

#endif
