#pragma once

#include <optional>
#include <vector>

#include "newtonflow/problem.hpp"

namespace newtonflow {

/// Provenance of a registry entry: formula fixed by the benchmark definition
/// itself versus reconstructed from the numerical-testing literature.
enum class SourceTag {
    InPaper,
    StandardReference,
};

const char* to_string(SourceTag tag);

struct ManifestEntry {
    int exam = 0;
    std::string name;
    int dimension = 0;  ///< unknown count at the default (paper) scale
    bool has_analytic_jacobian = false;
    SourceTag source_tag = SourceTag::InPaper;
    bool has_conservation = false;
    bool has_known_solution = false;
    bool scalable = false;
};

/// Build a registered test problem.
///
/// Without an override the problem comes at its published dimension; the
/// override (allowed only for scalable entries) replaces the size parameter,
/// which for the eigenvalue problems 25/26 is the matrix order (the problem
/// then has order+1 unknowns). Throws UnknownProblemError and
/// IncompatibleDimensionError.
Problem get_problem(int exam, std::optional<int> n_override = std::nullopt);

/// Deterministic listing of all registered problems.
std::vector<ManifestEntry> registry_manifest();

/// The always-present benchmark core: exams whose formulas are fixed by the
/// benchmark table itself or are universally standardized.
const std::vector<int>& core_exams();

/// Size parameter used at desk scale when it differs from the published one
/// (large scalable problems are shrunk so the suite stays seconds-fast).
std::optional<int> desk_dimension(int exam);

}  // namespace newtonflow
