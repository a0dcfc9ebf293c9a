#include "landau/eigensolver.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>
#include <sstream>

#include "landau/operators.hpp"

namespace landau {

namespace {

using Eigen::Index;
using Eigen::MatrixXcd;

MatrixXcd orthonormalize(const MatrixXcd& y) {
  Eigen::HouseholderQR<MatrixXcd> qr(y);
  return qr.householderQ() * MatrixXcd::Identity(y.rows(), y.cols());
}

struct RitzState {
  MatrixXcd x;
  MatrixXcd hx;
  Eigen::VectorXd values;
};

RitzState rayleigh_ritz(const BlockOperator& op, const MatrixXcd& basis, long& matvecs) {
  RitzState s;
  MatrixXcd hy(basis.rows(), basis.cols());
  op(basis, hy);
  matvecs += basis.cols();
  MatrixXcd g = basis.adjoint() * hy;
  g = 0.5 * (g + g.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(g);
  s.values = eig.eigenvalues();
  s.x = basis * eig.eigenvectors();
  s.hx = hy * eig.eigenvectors();
  return s;
}

// Scaled Chebyshev filter (Zhou & Saad) damping [cut, upper] and amplifying
// everything below `cut`; `lowest` keeps the iterates O(1).
MatrixXcd chebyshev_filter(const BlockOperator& op, const MatrixXcd& x, int degree, double cut,
                           double upper, double lowest, long& matvecs) {
  const double e = 0.5 * (upper - cut);
  const double c = 0.5 * (upper + cut);
  double sigma = e / (lowest - c);
  const double sigma1 = sigma;

  MatrixXcd prev = x;
  MatrixXcd hy(x.rows(), x.cols());
  op(x, hy);
  matvecs += x.cols();
  MatrixXcd cur = (hy - c * x) * (sigma1 / e);
  for (int k = 2; k <= degree; ++k) {
    const double sigma2 = 1.0 / (2.0 / sigma1 - sigma);
    op(cur, hy);
    matvecs += x.cols();
    // prev <- next, in place.
    prev = (hy - c * cur) * (2.0 * sigma2 / e) - (sigma * sigma2) * prev;
    prev.swap(cur);
    sigma = sigma2;
  }
  return cur;
}

}  // namespace

EigenpairResult lowest_eigenpairs(const BlockOperator& op, Index dim, double upper_bound,
                                  const SpectrumOptions& options) {
  if (options.n_eigs < 1) throw DomainError("n_eigs must be >= 1");
  if (!(options.tolerance > 0.0)) throw DomainError("solver tolerance must be positive");
  if (options.degree < 2) throw DomainError("filter degree must be >= 2");
  const int guard = options.guard > 0 ? options.guard : std::max(16, options.n_eigs / 2);
  const Index block = std::min<Index>(dim, options.n_eigs + guard);
  if (options.n_eigs > dim) throw DomainError("n_eigs exceeds the problem dimension");

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  MatrixXcd start(dim, block);
  for (Index c = 0; c < block; ++c) {
    for (Index r = 0; r < dim; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      start(r, c) = {re, im};
    }
  }

  EigenpairResult result;
  long matvecs = 0;
  RitzState state = rayleigh_ritz(op, orthonormalize(start), matvecs);

  const Index n = options.n_eigs;
  Eigen::VectorXd residuals(block);
  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    const double cut = state.values(block - 1);
    const double lowest = state.values(0);
    if (!(cut < upper_bound)) {
      throw SolverError("Ritz values reached the spectral upper bound; bound is invalid", {});
    }
    MatrixXcd filtered =
        chebyshev_filter(op, state.x, options.degree, cut, upper_bound, lowest, matvecs);
    state = rayleigh_ritz(op, orthonormalize(filtered), matvecs);

    for (Index c = 0; c < block; ++c) {
      residuals(c) = (state.hx.col(c) - state.values(c) * state.x.col(c)).norm();
    }
    if (residuals.head(n).maxCoeff() < options.tolerance) {
      result.values = state.values.head(n);
      result.vectors = state.x.leftCols(n);
      result.residuals = residuals.head(n);
      result.iterations = iter;
      result.matvecs = matvecs;
      return result;
    }
  }
  std::vector<double> attained(residuals.data(), residuals.data() + n);
  std::ostringstream msg;
  msg << "eigensolver did not converge in " << options.max_iterations
      << " iterations; worst residual " << residuals.head(n).maxCoeff() << " vs tolerance "
      << options.tolerance;
  throw SolverError(msg.str(), std::move(attained));
}

std::vector<int> cluster_ids(const std::vector<double>& ascending, double width) {
  std::vector<int> ids(ascending.size(), 0);
  for (std::size_t k = 1; k < ascending.size(); ++k) {
    ids[k] = ids[k - 1] + (ascending[k] - ascending[k - 1] > width ? 1 : 0);
  }
  return ids;
}

std::vector<EigenCluster> make_clusters(const std::vector<double>& ascending,
                                        const std::vector<int>& ids) {
  std::vector<EigenCluster> clusters;
  for (std::size_t k = 0; k < ascending.size(); ++k) {
    if (clusters.empty() || ids[k] != ids[k - 1]) {
      clusters.push_back({0.0, 0, static_cast<int>(k)});
    }
    auto& c = clusters.back();
    c.center += ascending[k];
    ++c.multiplicity;
  }
  for (auto& c : clusters) c.center /= c.multiplicity;
  return clusters;
}

SpectrumResult spectrum(const PhysicalParams& params, Gauge gauge, const Grid2D& grid,
                        const SpectrumOptions& options) {
  // Hard walls: the boundary nodes are pinned to zero, the unknowns live on
  // the interior nodes, and the stencil reads zero beyond them.
  const Grid2D inner = grid.interior();
  const auto stencil =
      build_stencil(make_operator(OperatorKind::Hamiltonian, params, gauge, options.order), inner);
  const Index dim = static_cast<Index>(inner.size());

  BlockOperator op = [&stencil](const MatrixXcd& in, MatrixXcd& out) {
    out.resize(in.rows(), in.cols());
    for (Index c = 0; c < in.cols(); ++c) {
      stencil.apply(std::span<const cdouble>(in.col(c).data(), in.rows()),
                    std::span<cdouble>(out.col(c).data(), out.rows()));
    }
  };

  SpectrumResult result(grid);
  result.params = params;
  result.gauge = gauge;
  result.options = options;
  const auto& b = grid.bounds();
  const double half_width =
      0.5 * std::min(b.x_max - b.x_min, b.y_max - b.y_min);
  if (half_width < 8.0 * params.mag_length) {
    std::ostringstream msg;
    msg << "domain half-width " << half_width << " is below 8 magnetic lengths ("
        << 8.0 * params.mag_length << "); hard walls will shift low levels";
    result.warnings.push_back(msg.str());
  }

  const EigenpairResult eig = lowest_eigenpairs(op, dim, stencil.gershgorin_bound(), options);
  result.eigenvalues.assign(eig.values.data(), eig.values.data() + eig.values.size());
  result.residuals.assign(eig.residuals.data(), eig.residuals.data() + eig.residuals.size());
  result.cluster_ids = cluster_ids(result.eigenvalues, 10.0 * options.tolerance);
  result.clusters = make_clusters(result.eigenvalues, result.cluster_ids);
  result.iterations = eig.iterations;
  result.matvecs = eig.matvecs;
  return result;
}

}  // namespace landau
