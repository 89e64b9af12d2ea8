#pragma once

// Rendering of clone reports and numeric formatting shared by the CLI
// outputs (12 significant digits everywhere).

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "cloneq/format.hpp"
#include "cloneq/optimal.hpp"
#include "cloneq/qubit.hpp"

namespace cloneq {

nlohmann::json clone_report_to_json(const CloneReport& report);
nlohmann::json mub_optimum_to_json(const MubCloneOptimum& optimum);
nlohmann::json qubit_solution_to_json(const QubitCloneSolution& solution);

void print_clone_report(std::ostream& out, const CloneReport& report);
void print_mub_optimum(std::ostream& out, const MubCloneOptimum& optimum);
void print_qubit_solution(std::ostream& out, const QubitCloneSolution& solution);

}  // namespace cloneq
