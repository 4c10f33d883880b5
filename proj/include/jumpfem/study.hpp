#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "jumpfem/analysis.hpp"
#include "jumpfem/meshgen.hpp"
#include "jumpfem/problem_spec.hpp"
#include "jumpfem/solver.hpp"

namespace jumpfem {

enum class ProblemKind { radial, line, smooth, radial_unfitted };

/// Problem selection. `param` is r0 for the radial kinds and x0 for line.
struct ProblemChoice {
    ProblemKind kind = ProblemKind::radial;
    double B1 = 1.0;
    double B2 = 100.0;
    double param = 0.5;
};

struct StudyConfig {
    ProblemChoice problem;
    std::vector<double> h_values;
    SolveConfig solver;
    std::filesystem::path output_dir = "study_out";
    bool emit_mesh = false;
};

struct StudyRow {
    double target_h = 0.0;
    ErrorReport err_uh;
    ErrorReport err_uI;
    double cea = 0.0;
    SolveStats solve;
    MeshQualityReport quality;
};

struct ColumnFit {
    std::string column;
    RateFit fit;
};

struct ConvergenceTable {
    std::vector<StudyRow> rows;
    std::vector<ColumnFit> fits;

    /// Fit for a named column ("h1_uh", "h1_uI_regular", ...); throws if absent.
    const RateFit& fit(const std::string& column) const;
};

ProblemKind parse_problem_kind(const std::string& name);
std::string to_string(ProblemKind kind);

ProblemSpec make_problem(const ProblemChoice& choice);

/// Polar mesh for the disk problems, line-fitted grid for `line`, plain grid for `radial_unfitted`.
Mesh build_mesh(const ProblemChoice& choice, const ProblemSpec& problem, double target_h);

/// Throws std::invalid_argument on an empty or non-decreasing h list, or h outside (0, 1).
void validate(const StudyConfig& config);

/// JSON with the StudyConfig field names; see README for the schema.
StudyConfig parse_study_config(const std::string& json_text);
StudyConfig load_study_config(const std::filesystem::path& file);

/// Solves one refinement level.
StudyRow run_level(const ProblemChoice& choice, const ProblemSpec& problem, double target_h, const SolveConfig& solver,
                   Mesh* mesh_out = nullptr);

/// Runs every level, fits rates, and writes study.csv and study.md (plus meshes
/// when emit_mesh) into output_dir.
ConvergenceTable run_study(const StudyConfig& config);

/// Same computation without touching the filesystem.
ConvergenceTable compute_study(const StudyConfig& config);

inline constexpr const char* kCsvHeader =
    "h,dofs,l2_uh,h1_uh,h1_uh_regular,h1_uh_irregular,l2_uI,h1_uI,cea_ratio,cg_iters";

void write_csv(std::ostream& os, const ConvergenceTable& table);
void write_markdown(std::ostream& os, const ConvergenceTable& table, const StudyConfig& config);

}  // namespace jumpfem
