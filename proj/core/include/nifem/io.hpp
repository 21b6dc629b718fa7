#pragma once

#include <string>
#include <vector>

#include "nifem/analysis.hpp"

namespace nifem {

struct ConvergenceTable {
    std::vector<int> levels;        // n per row
    std::vector<ErrorReport> rows;  // ordered by decreasing h
};

// CSV schema: header "n,h,L2,L2_order,H1,H1_order"; errors with six
// significant digits and a bare exponent (e.g. 2.39000e-3); order cells
// empty where no coarser row exists. Throws IoError on an empty table or
// when the file cannot be written.
void export_csv(const ConvergenceTable& table, const std::string& path);
std::string csv_string(const ConvergenceTable& table);

// VTK legacy ASCII unstructured grid. Every sub-cell is written with its own
// points so the discontinuous field can be attached as point data "u_h"
// (only when coefficients are given). Plain triangles and the triangular
// part of macro cells are VTK triangles (type 5), the quadrilateral parts
// VTK quads (type 9). Cell data: "subdomain" (1 or 2) and "cell_kind"
// (0 plain, 1 macro triangle, 2 macro quad).
void export_vtk(const FittedMesh& fm, const std::string& path);
void export_vtk(const FittedMesh& fm, const Eigen::VectorXd& coeffs, const DofMap& dm,
                const std::string& path);

} // namespace nifem
