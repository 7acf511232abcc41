#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "cqed/runner.hpp"

namespace cqed {

inline constexpr int kSchemaVersion = 1;

// Shortest round-trip decimal form.
std::string format_number(double x);

std::string spectrum_csv(const SweepResult& r);
// Photon-number column is "nan" when observables were not requested.
std::string dispersion_csv(const SweepResult& r);
// Coupling sweep with the observable columns appended.
std::string observables_csv(const SweepResult& r);
std::string matter_energies_csv(const MatterSolution& sol);
std::string dipoles_csv(const MatterSolution& sol);
std::string convergence_csv(const ConvergenceTable& t);

nlohmann::json to_json(const SweepResult& r, bool with_vectors = false);
nlohmann::json to_json(const ConvergenceTable& t);
nlohmann::json to_json(const MatterSolution& sol, bool with_wavefunctions);

// Result envelope {schema_version, config, axis, eigenvalues, observables, convergence, timings}.
nlohmann::json result_envelope(const nlohmann::json& config, const SweepResult* sweep, const ConvergenceTable* conv,
                               bool with_vectors);

// Writes through a temporary file; failures raise Io naming the path.
void write_text(const std::filesystem::path& path, const std::string& body);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace cqed
