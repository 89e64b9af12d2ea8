#include "cloneq/ensembles.hpp"

#include <cmath>
#include <istream>
#include <numbers>
#include <utility>

namespace cloneq {

void ObservableSet::validate(double tolerance) const {
  if (dim < 1) {
    throw DimensionMismatch("observable set needs dim >= 1");
  }
  if (observables.empty()) {
    throw CloneqError("observable set needs at least one observable");
  }
  if (!labels.empty() && labels.size() != observables.size()) {
    throw CloneqError("label count does not match observable count");
  }
  for (std::size_t i = 0; i < observables.size(); ++i) {
    const ComplexMatrix& obs = observables[i];
    if (obs.rows() != dim || obs.cols() != dim) {
      throw DimensionMismatch("observable " + std::to_string(i) +
                              " is not dim x dim");
    }
    if (!obs.allFinite()) {
      throw CloneqError("observable " + std::to_string(i) +
                        " has non-finite entries");
    }
    if (hermiticity_defect(obs) > tolerance) {
      throw NotHermitian("observable " + std::to_string(i) +
                         " is not Hermitian within tolerance");
    }
  }
}

EigenstateEnsemble::EigenstateEnsemble(int dim, ComplexMatrix states,
                                       int num_groups, double tolerance)
    : dim_(dim), num_groups_(num_groups), states_(std::move(states)) {
  if (dim < 1 || num_groups < 1) {
    throw DimensionMismatch("ensemble needs dim >= 1 and N >= 1");
  }
  if (states_.rows() != dim ||
      states_.cols() != static_cast<Eigen::Index>(num_groups) * dim) {
    throw DimensionMismatch("ensemble must hold N groups of d states");
  }
  for (int l = 0; l < num_groups; ++l) {
    // per-group orthonormality check
    OrthonormalBasis(states_.middleCols(static_cast<Eigen::Index>(l) * dim, dim),
                     tolerance);
  }
}

ComplexMatrix EigenstateEnsemble::group(int l) const {
  if (l < 0 || l >= num_groups_) {
    throw DimensionMismatch("group index out of range");
  }
  return states_.middleCols(static_cast<Eigen::Index>(l) * dim_, dim_);
}

EigenstateEnsemble eigenstate_ensemble(const ObservableSet& set,
                                       double tolerance) {
  set.validate(tolerance);
  const int d = set.dim;
  const int n = set.num_observables();
  ComplexMatrix states(d, static_cast<Eigen::Index>(n) * d);
  for (int l = 0; l < n; ++l) {
    const EigenSystem sys = hermitian_eigensystem(set.observables[l], tolerance);
    states.middleCols(static_cast<Eigen::Index>(l) * d, d) = sys.basis.kets();
  }
  return EigenstateEnsemble(d, std::move(states), n);
}

bool is_prime(int n) {
  if (n < 2) {
    return false;
  }
  for (int k = 2; k * k <= n; ++k) {
    if (n % k == 0) {
      return false;
    }
  }
  return true;
}

namespace {

// Observable whose eigenbasis is the given one, with spectrum (d, ..., 1).
ComplexMatrix basis_observable(const ComplexMatrix& basis) {
  const Eigen::Index d = basis.cols();
  RealVector spectrum(d);
  for (Eigen::Index m = 0; m < d; ++m) {
    spectrum[m] = static_cast<double>(d - m);
  }
  ComplexMatrix obs = basis * spectrum.asDiagonal() * basis.adjoint();
  return 0.5 * (obs + obs.adjoint());
}

}  // namespace

ObservableSet mub_family(int dim, int num_bases) {
  if (!is_prime(dim)) {
    throw NotPrime("MUB construction needs a prime dimension");
  }
  if (num_bases < 1 || num_bases > dim + 1) {
    throw TooManyBases("at most d+1 mutually unbiased bases exist");
  }

  std::vector<ComplexMatrix> bases;
  bases.reserve(num_bases);
  bases.push_back(ComplexMatrix::Identity(dim, dim));

  if (dim == 2) {
    const double s = 1.0 / std::numbers::sqrt2;
    ComplexMatrix x(2, 2), y(2, 2);
    x << s, s, s, -s;
    y << s, s, Complex(0, s), Complex(0, -s);
    bases.push_back(x);
    bases.push_back(y);
  } else {
    // Odd prime: ket b of family a has components w^(a j^2 + b j)/sqrt(d).
    const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(dim));
    for (int a = 0; a < dim; ++a) {
      ComplexMatrix basis(dim, dim);
      for (int b = 0; b < dim; ++b) {
        for (int j = 0; j < dim; ++j) {
          const int exponent = (a * j % dim * j + b * j) % dim;
          const double angle =
              2.0 * std::numbers::pi * static_cast<double>(exponent) / dim;
          basis(j, b) = inv_sqrt_d * Complex(std::cos(angle), std::sin(angle));
        }
      }
      bases.push_back(std::move(basis));
    }
  }

  ObservableSet set;
  set.dim = dim;
  for (int l = 0; l < num_bases; ++l) {
    set.observables.push_back(basis_observable(bases[l]));
    set.labels.push_back("MUB" + std::to_string(l));
  }
  set.validate();
  return set;
}

bool is_mutually_unbiased(const ObservableSet& set, double tolerance) {
  set.validate(tolerance);
  const int d = set.dim;
  const int n = set.num_observables();
  std::vector<ComplexMatrix> eigenbases;
  eigenbases.reserve(n);
  for (const ComplexMatrix& obs : set.observables) {
    eigenbases.push_back(hermitian_eigensystem(obs, tolerance).basis.kets());
  }
  const double target = 1.0 / d;
  for (int l = 0; l < n; ++l) {
    // intra-basis: Gram must be the identity
    const ComplexMatrix gram = eigenbases[l].adjoint() * eigenbases[l];
    if ((gram - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff() >
        tolerance) {
      return false;
    }
    for (int k = l + 1; k < n; ++k) {
      const ComplexMatrix overlaps = eigenbases[l].adjoint() * eigenbases[k];
      if ((overlaps.cwiseAbs2().array() - target).abs().maxCoeff() >
          tolerance) {
        return false;
      }
    }
  }
  return true;
}

ParticipationReport participation(const EigenstateEnsemble& ensemble,
                                  const OrthonormalBasis& basis) {
  if (basis.dim() != ensemble.dim()) {
    throw DimensionMismatch("basis and ensemble dimensions differ");
  }
  const ComplexMatrix overlaps = basis.kets().adjoint() * ensemble.states();
  ParticipationReport report;
  const int m = ensemble.num_states();
  report.per_state_a.resize(m);
  report.per_state_b.resize(m);
  for (int j = 0; j < m; ++j) {
    const double a = overlaps.col(j).cwiseAbs2().cwiseAbs2().sum();
    report.per_state_a[j] = a;
    report.per_state_b[j] = 1.0 - a;
    report.a_total += a;
  }
  report.b_total = static_cast<double>(m) - report.a_total;
  return report;
}

namespace {

[[noreturn]] void input_error(const std::string& path, const std::string& what) {
  throw InputError(path + ": " + what);
}

double json_real(const nlohmann::json& node, const std::string& path) {
  if (!node.is_number()) {
    input_error(path, "expected a number");
  }
  const double value = node.get<double>();
  if (!std::isfinite(value)) {
    input_error(path, "non-finite value");
  }
  return value;
}

}  // namespace

ObservableSet observable_set_from_json(const nlohmann::json& doc,
                                       double tolerance) {
  if (!doc.is_object()) {
    input_error("$", "expected a JSON object");
  }
  if (!doc.contains("dim")) {
    input_error("dim", "missing field");
  }
  if (!doc["dim"].is_number_integer()) {
    input_error("dim", "expected an integer");
  }
  const int d = doc["dim"].get<int>();
  if (d < 1) {
    input_error("dim", "must be >= 1");
  }
  if (!doc.contains("observables") || !doc["observables"].is_array() ||
      doc["observables"].empty()) {
    input_error("observables", "expected a non-empty array");
  }

  ObservableSet set;
  set.dim = d;
  const auto& list = doc["observables"];
  for (std::size_t k = 0; k < list.size(); ++k) {
    const std::string base = "observables[" + std::to_string(k) + "]";
    const auto& rows = list[k];
    if (!rows.is_array() || rows.size() != static_cast<std::size_t>(d)) {
      input_error(base, "expected " + std::to_string(d) + " rows");
    }
    ComplexMatrix obs(d, d);
    for (int i = 0; i < d; ++i) {
      const auto& row = rows[i];
      const std::string rpath = base + "[" + std::to_string(i) + "]";
      if (!row.is_array() || row.size() != static_cast<std::size_t>(d)) {
        input_error(rpath, "expected " + std::to_string(d) + " entries");
      }
      for (int j = 0; j < d; ++j) {
        const auto& entry = row[j];
        const std::string epath = rpath + "[" + std::to_string(j) + "]";
        if (!entry.is_array() || entry.size() != 2) {
          input_error(epath, "expected a [re, im] pair");
        }
        obs(i, j) = Complex(json_real(entry[0], epath + "[0]"),
                            json_real(entry[1], epath + "[1]"));
      }
    }
    set.observables.push_back(std::move(obs));
  }

  if (doc.contains("labels")) {
    const auto& labels = doc["labels"];
    if (!labels.is_array() || labels.size() != list.size()) {
      input_error("labels", "expected one label per observable");
    }
    for (std::size_t k = 0; k < labels.size(); ++k) {
      if (!labels[k].is_string()) {
        input_error("labels[" + std::to_string(k) + "]", "expected a string");
      }
      set.labels.push_back(labels[k].get<std::string>());
    }
  }

  try {
    set.validate(tolerance);
  } catch (const CloneqError& err) {
    throw InputError(err.what());
  }
  return set;
}

ObservableSet load_observable_set(std::istream& in, double tolerance) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& err) {
    throw InputError(err.what());
  }
  return observable_set_from_json(doc, tolerance);
}

nlohmann::json observable_set_to_json(const ObservableSet& set) {
  nlohmann::json doc;
  doc["dim"] = set.dim;
  nlohmann::json list = nlohmann::json::array();
  for (const ComplexMatrix& obs : set.observables) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < obs.rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index j = 0; j < obs.cols(); ++j) {
        row.push_back({obs(i, j).real(), obs(i, j).imag()});
      }
      rows.push_back(std::move(row));
    }
    list.push_back(std::move(rows));
  }
  doc["observables"] = std::move(list);
  if (!set.labels.empty()) {
    doc["labels"] = set.labels;
  }
  return doc;
}

}  // namespace cloneq
