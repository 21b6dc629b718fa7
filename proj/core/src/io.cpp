#include "nifem/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace nifem {

namespace {

std::string fmt_sci(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.5e", v);
    const std::string s = buf;
    const size_t epos = s.find('e');
    const int exp = std::atoi(s.c_str() + epos + 1);
    return s.substr(0, epos) + "e" + std::to_string(exp);
}

std::string fmt_g(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace

std::string csv_string(const ConvergenceTable& table) {
    std::ostringstream out;
    out << "n,h,L2,L2_order,H1,H1_order\n";
    for (size_t i = 0; i < table.rows.size(); ++i) {
        const ErrorReport& r = table.rows[i];
        out << table.levels[i] << ',' << fmt_g(r.h) << ',' << fmt_sci(r.err_L2) << ','
            << (r.order_L2 ? fmt_g(*r.order_L2) : "") << ',' << fmt_sci(r.err_H1) << ','
            << (r.order_H1 ? fmt_g(*r.order_H1) : "") << '\n';
    }
    return out.str();
}

void export_csv(const ConvergenceTable& table, const std::string& path) {
    if (table.rows.empty()) throw IoError("export_csv: empty table");
    if (table.rows.size() != table.levels.size())
        throw IoError("export_csv: level/row count mismatch");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("export_csv: cannot open " + path);
    out << csv_string(table);
    if (!out) throw IoError("export_csv: write failed for " + path);
}

namespace {

struct VtkCell {
    std::vector<Vec2> pts;
    int vtk_type;   // 5 triangle, 9 quad
    int subdomain;  // 1 or 2
    int kind;       // 0 plain, 1 macro triangle, 2 macro quad
    std::vector<double> values;
};

int subdomain_of(SideTag s) { return s == SideTag::Omega1 ? 1 : 2; }

std::vector<VtkCell> collect_cells(const FittedMesh& fm, const Eigen::VectorXd* coeffs,
                                   const DofMap* dm) {
    std::vector<VtkCell> out;
    out.reserve(fm.cells.size() * 2);
    for (const auto& cell : fm.cells) {
        if (const auto* pt = std::get_if<PlainTri>(&cell)) {
            VtkCell vc;
            vc.pts = {fm.vertex(pt->v[0]), fm.vertex(pt->v[1]), fm.vertex(pt->v[2])};
            vc.vtk_type = 5;
            vc.subdomain = subdomain_of(pt->side);
            vc.kind = 0;
            if (coeffs) {
                const auto c = local_coeffs(*pt, *dm, *coeffs);
                for (int k = 0; k < 3; ++k) {
                    // psi_i at vertex k is 1 - 2 delta_ik
                    double v = 0.0;
                    for (int i = 0; i < 3; ++i) v += c[size_t(i)] * (i == k ? -1.0 : 1.0);
                    vc.values.push_back(v);
                }
            }
            out.push_back(std::move(vc));
        } else {
            const auto& mc = std::get<MacroCell>(cell);
            const ReferenceMacro rm = reference_macro(mc.s, mc.t);
            std::array<double, 5> c{};
            if (coeffs) c = local_coeffs(mc, *dm, *coeffs);
            auto emit = [&](std::initializer_list<int> corners, Subcell sc, int vtk_type,
                            int kind, SideTag side) {
                VtkCell vc;
                vc.vtk_type = vtk_type;
                vc.subdomain = subdomain_of(side);
                vc.kind = kind;
                for (int ci : corners) {
                    vc.pts.push_back(fm.vertex(mc.a[size_t(ci)]));
                    if (coeffs) {
                        const Vec2 ref = rm.corner[size_t(ci)];
                        double v = 0.0;
                        for (int i = 0; i < 5; ++i) v += c[size_t(i)] * rm.piece(i, sc)(ref);
                        vc.values.push_back(v);
                    }
                }
                out.push_back(std::move(vc));
            };
            emit({0, 1, 2, 4}, Subcell::Qhat, 9, 2, mc.quad_side);
            emit({2, 3, 4}, Subcell::That, 5, 1, mc.tri_side);
        }
    }
    return out;
}

} // namespace

static void write_vtk(const FittedMesh& fm, const Eigen::VectorXd* coeffs, const DofMap* dm,
                      const std::string& path) {
    const auto cells = collect_cells(fm, coeffs, dm);
    size_t n_points = 0;
    for (const auto& c : cells) n_points += c.pts.size();

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("export_vtk: cannot open " + path);
    out << "# vtk DataFile Version 3.0\n";
    out << "interface-fitted hybrid mesh\n";
    out << "ASCII\n";
    out << "DATASET UNSTRUCTURED_GRID\n";
    out << "POINTS " << n_points << " double\n";
    char buf[96];
    for (const auto& c : cells)
        for (const Vec2& p : c.pts) {
            std::snprintf(buf, sizeof buf, "%.12g %.12g 0\n", p.x, p.y);
            out << buf;
        }
    size_t list_len = 0;
    for (const auto& c : cells) list_len += 1 + c.pts.size();
    out << "CELLS " << cells.size() << ' ' << list_len << '\n';
    size_t base = 0;
    for (const auto& c : cells) {
        out << c.pts.size();
        for (size_t k = 0; k < c.pts.size(); ++k) out << ' ' << base + k;
        out << '\n';
        base += c.pts.size();
    }
    out << "CELL_TYPES " << cells.size() << '\n';
    for (const auto& c : cells) out << c.vtk_type << '\n';
    out << "CELL_DATA " << cells.size() << '\n';
    out << "SCALARS subdomain int 1\nLOOKUP_TABLE default\n";
    for (const auto& c : cells) out << c.subdomain << '\n';
    out << "SCALARS cell_kind int 1\nLOOKUP_TABLE default\n";
    for (const auto& c : cells) out << c.kind << '\n';
    if (coeffs) {
        out << "POINT_DATA " << n_points << '\n';
        out << "SCALARS u_h double 1\nLOOKUP_TABLE default\n";
        for (const auto& c : cells)
            for (double v : c.values) {
                std::snprintf(buf, sizeof buf, "%.12g\n", v);
                out << buf;
            }
    }
    if (!out) throw IoError("export_vtk: write failed for " + path);
}

void export_vtk(const FittedMesh& fm, const std::string& path) { write_vtk(fm, nullptr, nullptr, path); }

void export_vtk(const FittedMesh& fm, const Eigen::VectorXd& coeffs, const DofMap& dm,
                const std::string& path) {
    write_vtk(fm, &coeffs, &dm, path);
}

} // namespace nifem
