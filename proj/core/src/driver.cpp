#include "nifem/driver.hpp"

#include <filesystem>
#include <string>

namespace nifem {

ConvergenceTable run_convergence(const RunConfig& cfg) {
    if (cfg.levels.empty()) throw Error("run_convergence: no levels given");
    for (size_t i = 1; i < cfg.levels.size(); ++i)
        if (cfg.levels[i] <= cfg.levels[i - 1])
            throw Error("run_convergence: levels must be strictly increasing");
    if (!(cfg.snap_tol > 0.0) || !(cfg.solver_tol > 0.0))
        throw Error("run_convergence: tolerances must be positive");

    const ManufacturedProblem prob = example1(cfg.beta1, cfg.beta2);
    ConvergenceTable table;
    for (int n : cfg.levels) {
        try {
            const BackgroundMesh bg = build_background(n);
            const FittedMesh fm = generate_fitted(bg, prob.levelset, cfg.snap_tol);
            const DofMap dm = build_dofmap(fm);
            const SparseSystem sys =
                assemble_system(fm, dm, prob.beta_on(SideTag::Omega1),
                                prob.beta_on(SideTag::Omega2), prob.f);
            // High-contrast coefficients need far more Jacobi-PCG iterations
            // than the library default, so pass an explicit per-level budget.
            const int max_iter = 2000 + 400 * n;
            auto [x, stats] = solve_spd(sys.A, sys.rhs, cfg.solver_tol, max_iter);
            (void)stats;
            auto [e0, e1] = error_norms(fm, x, dm, prob.u, prob.grad_u);
            ErrorReport rep;
            rep.h = fm.h;
            rep.err_L2 = e0;
            rep.err_H1 = e1;
            if (!table.rows.empty()) {
                const ErrorReport& prev = table.rows.back();
                rep.order_L2 = std::log(prev.err_L2 / e0) / std::log(prev.h / rep.h);
                rep.order_H1 = std::log(prev.err_H1 / e1) / std::log(prev.h / rep.h);
            }
            table.levels.push_back(n);
            table.rows.push_back(rep);
            if (cfg.emit_vtk) {
                std::filesystem::create_directories(cfg.output_dir);
                export_vtk(fm, x, dm,
                           cfg.output_dir + "/solution_n" + std::to_string(n) + ".vtk");
            }
        } catch (const std::exception& e) {
            throw Error("level n=" + std::to_string(n) + ": " + e.what());
        }
    }
    return table;
}

} // namespace nifem
