#include "jumpfem/study.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "jumpfem/fem.hpp"
#include "jumpfem/mesh_io.hpp"
#include "jumpfem/problems.hpp"

namespace jumpfem {

namespace {

using json = nlohmann::json;

std::string g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string fixed(double v, int digits) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4e", v);
    return buf;
}

struct ColumnDef {
    const char* name;
    double (*get)(const StudyRow&);
};

const std::vector<ColumnDef>& fitted_columns() {
    static const std::vector<ColumnDef> cols = {
        {"l2_uh", [](const StudyRow& r) { return r.err_uh.l2; }},
        {"h1_uh", [](const StudyRow& r) { return r.err_uh.h1; }},
        {"h1_uh_regular", [](const StudyRow& r) { return r.err_uh.h1_regular; }},
        {"h1_uh_irregular", [](const StudyRow& r) { return r.err_uh.h1_irregular; }},
        {"l2_uI", [](const StudyRow& r) { return r.err_uI.l2; }},
        {"h1_uI", [](const StudyRow& r) { return r.err_uI.h1; }},
        {"h1_uI_regular", [](const StudyRow& r) { return r.err_uI.h1_regular; }},
        {"h1_uI_irregular", [](const StudyRow& r) { return r.err_uI.h1_irregular; }},
    };
    return cols;
}

std::vector<std::pair<double, double>> column_pairs(const ConvergenceTable& table, const ColumnDef& col) {
    std::vector<std::pair<double, double>> pairs;
    for (const auto& row : table.rows)
        pairs.emplace_back(row.err_uh.h, col.get(row));
    return pairs;
}

void fit_columns(ConvergenceTable& table) {
    if (table.rows.size() < 3)
        return;
    for (const auto& col : fitted_columns()) {
        const auto pairs = column_pairs(table, col);
        // Columns with an exactly vanishing entry (no irregular elements) have no rate.
        try {
            table.fits.push_back({col.name, fit_rate(pairs)});
        } catch (const std::invalid_argument&) {
        }
    }
}

Preconditioner parse_preconditioner(const std::string& name) {
    if (name == "jacobi")
        return Preconditioner::jacobi;
    if (name == "none")
        return Preconditioner::none;
    throw std::invalid_argument("unknown preconditioner '" + name + "'");
}

}  // namespace

const RateFit& ConvergenceTable::fit(const std::string& column) const {
    for (const auto& f : fits)
        if (f.column == column)
            return f.fit;
    throw std::out_of_range("no rate fit for column '" + column + "'");
}

ProblemKind parse_problem_kind(const std::string& name) {
    if (name == "radial")
        return ProblemKind::radial;
    if (name == "line")
        return ProblemKind::line;
    if (name == "smooth")
        return ProblemKind::smooth;
    if (name == "radial_unfitted")
        return ProblemKind::radial_unfitted;
    throw std::invalid_argument("unknown problem '" + name + "' (radial, line, smooth, radial_unfitted)");
}

std::string to_string(ProblemKind kind) {
    switch (kind) {
        case ProblemKind::radial:
            return "radial";
        case ProblemKind::line:
            return "line";
        case ProblemKind::smooth:
            return "smooth";
        case ProblemKind::radial_unfitted:
            return "radial_unfitted";
    }
    return "?";
}

ProblemSpec make_problem(const ProblemChoice& choice) {
    switch (choice.kind) {
        case ProblemKind::radial:
            return radial_problem(choice.B1, choice.B2, choice.param);
        case ProblemKind::line:
            return line_problem(choice.B1, choice.B2, choice.param);
        case ProblemKind::smooth:
            return smooth_problem();
        case ProblemKind::radial_unfitted:
            return radial_unfitted_problem(choice.B1, choice.B2, choice.param);
    }
    throw std::logic_error("make_problem: unhandled kind");
}

Mesh build_mesh(const ProblemChoice& choice, const ProblemSpec& problem, double target_h) {
    switch (choice.kind) {
        case ProblemKind::radial:
        case ProblemKind::smooth:
            return build_disk_polar_mesh(problem.domain, target_h);
        case ProblemKind::line:
            return build_square_line_mesh(problem.domain, target_h);
        case ProblemKind::radial_unfitted:
            return build_unfitted_square_mesh(problem.domain, target_h);
    }
    throw std::logic_error("build_mesh: unhandled kind");
}

void validate(const StudyConfig& config) {
    if (config.h_values.empty())
        throw std::invalid_argument("h_values must not be empty");
    for (std::size_t i = 0; i < config.h_values.size(); ++i) {
        const double h = config.h_values[i];
        if (!(h > 0.0 && h < 1.0))
            throw std::invalid_argument("h_values must lie in (0, 1), got " + g12(h));
        if (i > 0 && !(h < config.h_values[i - 1]))
            throw std::invalid_argument("h_values must be strictly decreasing");
    }
    if (!(config.solver.rel_tol > 0.0 && config.solver.rel_tol < 1.0))
        throw std::invalid_argument("solver.rel_tol must lie in (0, 1)");
    if (config.solver.max_iters && *config.solver.max_iters < 1)
        throw std::invalid_argument("solver.max_iters must be at least 1");
}

StudyConfig parse_study_config(const std::string& json_text) {
    const json j = json::parse(json_text);
    StudyConfig cfg;

    const json& p = j.at("problem");
    if (p.is_string()) {
        cfg.problem.kind = parse_problem_kind(p.get<std::string>());
    } else {
        cfg.problem.kind = parse_problem_kind(p.at("kind").get<std::string>());
        cfg.problem.B1 = p.value("B1", cfg.problem.B1);
        cfg.problem.B2 = p.value("B2", cfg.problem.B2);
        const char* key = cfg.problem.kind == ProblemKind::line ? "x0" : "r0";
        cfg.problem.param = p.value(key, cfg.problem.param);
    }

    cfg.h_values = j.at("h_values").get<std::vector<double>>();
    if (j.contains("solver")) {
        const json& s = j.at("solver");
        cfg.solver.rel_tol = s.value("rel_tol", cfg.solver.rel_tol);
        if (s.contains("max_iters") && !s.at("max_iters").is_null())
            cfg.solver.max_iters = s.at("max_iters").get<std::size_t>();
        if (s.contains("preconditioner"))
            cfg.solver.preconditioner = parse_preconditioner(s.at("preconditioner").get<std::string>());
    }
    cfg.output_dir = j.value("output_dir", cfg.output_dir.string());
    cfg.emit_mesh = j.value("emit_mesh", cfg.emit_mesh);
    validate(cfg);
    return cfg;
}

StudyConfig load_study_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in)
        throw std::runtime_error("cannot open config " + file.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_study_config(ss.str());
}

StudyRow run_level(const ProblemChoice& choice, const ProblemSpec& problem, double target_h, const SolveConfig& solver,
                   Mesh* mesh_out) {
    if (!problem.exact)
        throw std::invalid_argument("run_level: problem has no exact solution");
    const double tol = classification_tol(problem.domain);
    Mesh mesh = build_mesh(choice, problem, target_h);

    StudyRow row;
    row.target_h = target_h;
    row.quality = quality_report(mesh);

    const LinearSystem full = assemble(mesh, problem);
    const LinearSystem reduced = apply_dirichlet(full, mesh, problem.dirichlet);
    const SolveResult sol = cg_solve(reduced, solver);
    if (sol.stats.breakdown)
        throw std::runtime_error("conjugate gradients broke down: system is not positive definite");
    row.solve = sol.stats;

    const std::vector<double> uh = expand_solution(reduced, sol.x);
    const std::vector<double> uI = nodal_interpolant(mesh, *problem.exact, problem.domain.interface, tol);
    row.err_uh = error_norms(mesh, uh, *problem.exact, problem.domain.interface, tol);
    row.err_uI = error_norms(mesh, uI, *problem.exact, problem.domain.interface, tol);
    row.err_uh.dof_count = row.err_uI.dof_count = reduced.free_dofs.size();
    row.cea = cea_ratio(row.err_uh, row.err_uI);

    if (mesh_out != nullptr)
        *mesh_out = std::move(mesh);
    return row;
}

namespace {

ConvergenceTable compute(const StudyConfig& config, std::vector<Mesh>* meshes) {
    validate(config);
    const ProblemSpec problem = make_problem(config.problem);
    ConvergenceTable table;
    for (double h : config.h_values) {
        try {
            Mesh mesh;
            table.rows.push_back(run_level(config.problem, problem, h, config.solver, meshes ? &mesh : nullptr));
            if (meshes)
                meshes->push_back(std::move(mesh));
        } catch (const std::exception& e) {
            throw std::runtime_error("level h = " + g12(h) + ": " + e.what());
        }
    }
    fit_columns(table);
    return table;
}

}  // namespace

ConvergenceTable compute_study(const StudyConfig& config) { return compute(config, nullptr); }

ConvergenceTable run_study(const StudyConfig& config) {
    std::vector<Mesh> meshes;
    ConvergenceTable table = compute(config, config.emit_mesh ? &meshes : nullptr);

    std::filesystem::create_directories(config.output_dir);
    {
        std::ofstream csv(config.output_dir / "study.csv", std::ios::binary);
        if (!csv)
            throw std::runtime_error("cannot write " + (config.output_dir / "study.csv").string());
        write_csv(csv, table);
    }
    {
        std::ofstream md(config.output_dir / "study.md", std::ios::binary);
        if (!md)
            throw std::runtime_error("cannot write " + (config.output_dir / "study.md").string());
        write_markdown(md, table, config);
    }
    for (std::size_t k = 0; k < meshes.size(); ++k)
        write_triangle_files(meshes[k], config.output_dir, "mesh_" + std::to_string(k));
    return table;
}

void write_csv(std::ostream& os, const ConvergenceTable& table) {
    os << kCsvHeader << '\n';
    for (const auto& r : table.rows) {
        os << g12(r.err_uh.h) << ',' << r.err_uh.dof_count << ',' << g12(r.err_uh.l2) << ',' << g12(r.err_uh.h1)
           << ',' << g12(r.err_uh.h1_regular) << ',' << g12(r.err_uh.h1_irregular) << ',' << g12(r.err_uI.l2) << ','
           << g12(r.err_uI.h1) << ',' << g12(r.cea) << ',' << r.solve.iterations << '\n';
    }
}

void write_markdown(std::ostream& os, const ConvergenceTable& table, const StudyConfig& config) {
    const auto& c = config.problem;
    os << "# Convergence study: " << to_string(c.kind);
    if (c.kind != ProblemKind::smooth)
        os << " (B1 = " << g12(c.B1) << ", B2 = " << g12(c.B2) << ", " << (c.kind == ProblemKind::line ? "x0" : "r0")
           << " = " << g12(c.param) << ")";
    os << "\n\n";

    os << "| h | dofs | L2(u-u_h) | H1(u-u_h) | H1 regular | H1 irregular | L2(u-u_I) | H1(u-u_I) | cea ratio | CG its "
          "| H1 rate |\n";
    os << "|---|---|---|---|---|---|---|---|---|---|---|\n";
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& r = table.rows[i];
        std::string rate = "-";
        if (i > 0) {
            const auto& prev = table.rows[i - 1];
            rate = fixed(std::log(prev.err_uh.h1 / r.err_uh.h1) / std::log(prev.err_uh.h / r.err_uh.h), 3);
        }
        os << "| " << sci(r.err_uh.h) << " | " << r.err_uh.dof_count << " | " << sci(r.err_uh.l2) << " | "
           << sci(r.err_uh.h1) << " | " << sci(r.err_uh.h1_regular) << " | " << sci(r.err_uh.h1_irregular) << " | "
           << sci(r.err_uI.l2) << " | " << sci(r.err_uI.h1) << " | " << fixed(r.cea, 4) << " | "
           << r.solve.iterations << " | " << rate << " |\n";
    }

    os << "\n## Fitted slopes\n\n";
    if (table.fits.empty()) {
        os << "Fewer than three usable levels; no rates fitted.\n";
        return;
    }
    os << "| column | slope | residual | slope after dividing by sqrt(abs(ln h)) | residual |\n";
    os << "|---|---|---|---|---|\n";
    for (const auto& f : table.fits) {
        os << "| " << f.column << " | " << fixed(f.fit.slope, 4) << " | " << sci(f.fit.residual_pure) << " | "
           << fixed(f.fit.slope_with_log, 4) << " | " << sci(f.fit.residual_log) << " |\n";
    }
}

}  // namespace jumpfem
