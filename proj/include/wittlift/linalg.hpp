#pragma once

#include <cstdint>
#include <vector>

#include "wittlift/error.hpp"

namespace wittlift {

// Dense F_p linear algebra, sized for desk-scale solves (a few thousand
// unknowns at most). Row-major matrix; solves A x = b.
struct FpSolveResult {
    bool consistent = false;
    std::vector<int64_t> solution;               // one solution, free unknowns = 0
    std::vector<std::vector<int64_t>> kernel;    // basis of homogeneous solutions
};

FpSolveResult solve_linear_fp(int64_t p, std::vector<std::vector<int64_t>> A,
                              std::vector<int64_t> b, bool want_kernel = false);

} // namespace wittlift
