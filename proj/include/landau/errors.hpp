#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace landau {

/// Invalid argument or violated precondition.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A closed-form evaluator produced a non-finite sample.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, int i, int j)
      : std::runtime_error(what), i_(i), j_(j) {}
  int i() const { return i_; }
  int j() const { return j_; }

 private:
  int i_, j_;
};

/// A field does not decay at the grid boundary, so stencil results near the
/// edge would be polluted by the zero extension.
class ContaminationError : public std::runtime_error {
 public:
  ContaminationError(const std::string& what, int i, int j, double ratio)
      : std::runtime_error(what), i_(i), j_(j), ratio_(ratio) {}
  int i() const { return i_; }
  int j() const { return j_; }
  double ratio() const { return ratio_; }

 private:
  int i_, j_;
  double ratio_;
};

class AccuracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative eigensolver hit its iteration cap.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, std::vector<double> residuals)
      : std::runtime_error(what), residuals_(std::move(residuals)) {}
  const std::vector<double>& residuals() const { return residuals_; }

 private:
  std::vector<double> residuals_;
};

/// Regularized quadrature failed to converge monotonically along its schedule.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, std::vector<std::complex<double>> sequence)
      : std::runtime_error(what), sequence_(std::move(sequence)) {}
  const std::vector<std::complex<double>>& sequence() const { return sequence_; }

 private:
  std::vector<std::complex<double>> sequence_;
};

}  // namespace landau
