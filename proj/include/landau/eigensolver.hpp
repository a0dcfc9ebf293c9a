#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "landau/physcore.hpp"

namespace landau {

struct SpectrumOptions {
  int n_eigs = 12;
  /// Converged when ||H x - lambda x|| < tolerance for unit x, for each of
  /// the n_eigs lowest Ritz pairs.  This also bounds each eigenvalue error.
  double tolerance = 1e-8;
  /// Extra search vectors beyond n_eigs; 0 picks max(16, n_eigs / 2).
  int guard = 0;
  /// Chebyshev filter degree per outer iteration.
  int degree = 32;
  int max_iterations = 300;
  std::uint64_t seed = 1;
  int order = 4;
};

/// Applies a Hermitian operator to every column of `in`.
using BlockOperator = std::function<void(const Eigen::MatrixXcd& in, Eigen::MatrixXcd& out)>;

struct EigenpairResult {
  Eigen::VectorXd values;     // ascending, first n_eigs only
  Eigen::MatrixXcd vectors;   // orthonormal columns
  Eigen::VectorXd residuals;  // ||A x - lambda x||
  int iterations = 0;
  long matvecs = 0;
};

/// Lowest eigenpairs of a Hermitian operator by Chebyshev-filtered subspace
/// iteration.  `upper_bound` must be >= the largest eigenvalue.  The start
/// block is drawn from `options.seed`, and all reductions run in fixed order,
/// so equal inputs give bitwise-equal results.  Throws SolverError with the
/// attained residuals after options.max_iterations.
EigenpairResult lowest_eigenpairs(const BlockOperator& op, Eigen::Index dim, double upper_bound,
                                  const SpectrumOptions& options);

struct EigenCluster {
  double center = 0.0;
  int multiplicity = 0;
  int first_index = 0;
};

struct SpectrumResult {
  explicit SpectrumResult(Grid2D g) : grid(g) {}

  std::vector<double> eigenvalues;
  std::vector<double> residuals;
  std::vector<int> cluster_ids;
  std::vector<EigenCluster> clusters;
  Grid2D grid;
  PhysicalParams params;
  Gauge gauge = Gauge::LandauX;
  SpectrumOptions options;
  int iterations = 0;
  long matvecs = 0;
  std::vector<std::string> warnings;
};

/// Groups ascending values: neighbours closer than `width` share a cluster.
std::vector<int> cluster_ids(const std::vector<double>& ascending, double width);
std::vector<EigenCluster> make_clusters(const std::vector<double>& ascending,
                                        const std::vector<int>& ids);

/// n_eigs lowest eigenvalues of the discretized Hamiltonian with hard walls
/// on the grid boundary.  Eigenvalues closer than 10 * tolerance are reported
/// as one cluster.
SpectrumResult spectrum(const PhysicalParams& params, Gauge gauge, const Grid2D& grid,
                        const SpectrumOptions& options);

}  // namespace landau
