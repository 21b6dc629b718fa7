#pragma once

#include "nifem/io.hpp"
#include "nifem/solver.hpp"

namespace nifem {

struct RunConfig {
    double beta1 = 1.0;   // coefficient inside the interface (phi < 0)
    double beta2 = 100.0; // coefficient outside
    std::vector<int> levels = {16, 32, 64, 128, 256};
    double snap_tol = 1e-12;
    double solver_tol = 1e-12;
    std::string output_dir = ".";
    bool emit_vtk = false;
};

// One refinement sweep of the manufactured circle-interface problem: for
// each n build the background mesh, fit it to the interface, assemble,
// solve, and measure the errors. When emit_vtk is set, a solution file
// solution_n<level>.vtk is written per level into output_dir. Errors from a
// level are rethrown with the failing level in the message.
ConvergenceTable run_convergence(const RunConfig& cfg);

} // namespace nifem
