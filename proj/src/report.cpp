#include "cloneq/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>

namespace cloneq {

std::string fmt12(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

double round12(double value) {
  if (!std::isfinite(value)) {
    return value;
  }
  return std::strtod(fmt12(value).c_str(), nullptr);
}

namespace {

// JSON numbers cannot carry infinities; fall back to a string marker.
nlohmann::json json_number(double value) {
  if (std::isinf(value)) {
    return value > 0 ? "inf" : "-inf";
  }
  return round12(value);
}

nlohmann::json kets_to_json(const ComplexMatrix& kets) {
  nlohmann::json cols = nlohmann::json::array();
  for (Eigen::Index j = 0; j < kets.cols(); ++j) {
    nlohmann::json ket = nlohmann::json::array();
    for (Eigen::Index i = 0; i < kets.rows(); ++i) {
      ket.push_back({round12(kets(i, j).real()), round12(kets(i, j).imag())});
    }
    cols.push_back(std::move(ket));
  }
  return cols;
}

nlohmann::json diagnostics_to_json(const OptimizerDiagnostics& diag) {
  nlohmann::json restarts = nlohmann::json::array();
  for (const RestartRecord& rec : diag.restarts) {
    restarts.push_back({{"start", rec.start},
                        {"a", json_number(rec.a_value)},
                        {"iterations", rec.iterations},
                        {"converged", rec.converged}});
  }
  return {{"converged", diag.converged},
          {"q_clamped", diag.q_clamped},
          {"best_restart", diag.best_restart},
          {"restarts", std::move(restarts)}};
}

void print_row(std::ostream& out, const char* name, const std::string& value) {
  out << "  " << name;
  for (std::size_t i = std::char_traits<char>::length(name); i < 14; ++i) {
    out << ' ';
  }
  out << ": " << value << '\n';
}

}  // namespace

nlohmann::json clone_report_to_json(const CloneReport& report) {
  return {{"dim", report.dim},
          {"num_observables", report.num_observables},
          {"num_states", report.num_states},
          {"a_opt", json_number(report.a_opt)},
          {"q_opt", json_number(report.params_opt.q)},
          {"p_opt", json_number(report.params_opt.p)},
          {"f_opt", json_number(report.f_opt)},
          {"q_c", json_number(report.q_c)},
          {"g", json_number(report.g)},
          {"bound_qc", json_number(report.bound_qc)},
          {"bound_q", json_number(report.bound_q)},
          {"basis_opt", kets_to_json(report.basis_opt.kets())},
          {"diagnostics", diagnostics_to_json(report.diagnostics)}};
}

nlohmann::json mub_optimum_to_json(const MubCloneOptimum& optimum) {
  return {{"n", optimum.num_bases},
          {"dim", optimum.dim},
          {"a_opt", json_number(optimum.a_opt)},
          {"q_opt", json_number(optimum.params.q)},
          {"p_opt", json_number(optimum.params.p)},
          {"f_opt", json_number(optimum.f_opt)},
          {"q_c", json_number(optimum.q_c)},
          {"bound_qc", json_number(qc_upper_bound(optimum.num_bases, optimum.dim))},
          {"bound_q", json_number(mr_fidelity_bounds(optimum.num_bases, optimum.dim).q_bound)}};
}

nlohmann::json qubit_solution_to_json(const QubitCloneSolution& solution) {
  nlohmann::json doc = {
      {"a_opt", json_number(solution.a_opt)},
      {"q_opt", json_number(solution.params.q)},
      {"p_opt", json_number(solution.params.p)},
      {"f_opt", json_number(solution.f_opt)},
      {"q_c", json_number(solution.q_c)},
      {"degenerate_direction", solution.degenerate_direction},
      {"r_plus", {round12(solution.r_plus.x()), round12(solution.r_plus.y()),
                  round12(solution.r_plus.z())}}};
  if (solution.r_minus) {
    doc["r_minus"] = {round12(solution.r_minus->x()),
                      round12(solution.r_minus->y()),
                      round12(solution.r_minus->z())};
  } else {
    doc["r_minus"] = nullptr;
  }
  return doc;
}

void print_clone_report(std::ostream& out, const CloneReport& report) {
  out << "clone report\n";
  print_row(out, "dim", std::to_string(report.dim));
  print_row(out, "observables", std::to_string(report.num_observables));
  print_row(out, "states", std::to_string(report.num_states));
  print_row(out, "A_opt", fmt12(report.a_opt));
  print_row(out, "q_opt", fmt12(report.params_opt.q));
  print_row(out, "p_opt", fmt12(report.params_opt.p));
  print_row(out, "F_opt", fmt12(report.f_opt));
  print_row(out, "Q_c", fmt12(report.q_c));
  print_row(out, "G", fmt12(report.g));
  print_row(out, "bound_Qc", fmt12(report.bound_qc));
  print_row(out, "bound_Q", fmt12(report.bound_q));
  const OptimizerDiagnostics& diag = report.diagnostics;
  print_row(out, "converged", diag.converged ? "yes" : "no");
  print_row(out, "q_clamped", diag.q_clamped ? "yes" : "no");
  std::string best = "-";
  if (diag.best_restart >= 0 &&
      diag.best_restart < static_cast<int>(diag.restarts.size())) {
    const RestartRecord& rec = diag.restarts[diag.best_restart];
    best = rec.start + " (" + std::to_string(rec.iterations) + " iterations)";
  }
  print_row(out, "best_start", best);
  print_row(out, "starts", std::to_string(diag.restarts.size()));
}

void print_mub_optimum(std::ostream& out, const MubCloneOptimum& optimum) {
  out << "mub closed form\n";
  print_row(out, "N", std::to_string(optimum.num_bases));
  print_row(out, "dim", std::to_string(optimum.dim));
  print_row(out, "A_opt", fmt12(optimum.a_opt));
  print_row(out, "q_opt", fmt12(optimum.params.q));
  print_row(out, "p_opt", fmt12(optimum.params.p));
  print_row(out, "F_opt", fmt12(optimum.f_opt));
  print_row(out, "Q_c", fmt12(optimum.q_c));
  print_row(out, "bound_Qc",
            fmt12(qc_upper_bound(optimum.num_bases, optimum.dim)));
  print_row(out, "bound_Q",
            fmt12(mr_fidelity_bounds(optimum.num_bases, optimum.dim).q_bound));
}

void print_qubit_solution(std::ostream& out,
                          const QubitCloneSolution& solution) {
  out << "qubit closed form\n";
  print_row(out, "A_opt", fmt12(solution.a_opt));
  print_row(out, "q_opt", fmt12(solution.params.q));
  print_row(out, "p_opt", fmt12(solution.params.p));
  print_row(out, "F_opt", fmt12(solution.f_opt));
  print_row(out, "Q_c", fmt12(solution.q_c));
  print_row(out, "r_plus", fmt12(solution.r_plus.x()) + "," +
                               fmt12(solution.r_plus.y()) + "," +
                               fmt12(solution.r_plus.z()));
  if (solution.r_minus) {
    print_row(out, "r_minus", fmt12(solution.r_minus->x()) + "," +
                                  fmt12(solution.r_minus->y()) + "," +
                                  fmt12(solution.r_minus->z()));
  } else {
    print_row(out, "r_minus", "undefined");
  }
  print_row(out, "degenerate", solution.degenerate_direction ? "yes" : "no");
}

}  // namespace cloneq
