#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "expander/edge_list.hpp"
#include "expander/rotation_graph.hpp"

namespace expander {

enum class SpectralMethod { automatic, dense, power_iteration };

struct SpectralReport {
  double lambda_max = 0.0;
  double lambda2 = 0.0;  // second largest signed eigenvalue of the normalized adjacency
  double sigma2 = 0.0;   // second largest singular value (normalized biadjacency for bipartite)
  bool bipartite = false;
  std::string method;  // "dense" | "power-iteration" | "disconnected"
  double residual = 0.0;

  std::string to_json() const;
};

// Adjacency counts scaled by 1/d. Loops contribute their dart count, so rows
// sum to 1 and the matrix is symmetric with spectral radius 1 when connected.
Eigen::MatrixXd normalized_adjacency(const RotationGraph& g);
// Full symmetric (N+M) x (N+M) matrix with biadjacency blocks scaled by 1/sqrt(cd).
Eigen::MatrixXd normalized_adjacency(const BipartiteGraph& g);
// Left-to-right block alone, scaled by 1/sqrt(cd).
Eigen::MatrixXd normalized_biadjacency(const BipartiteGraph& g);
// Symmetric scaling 1/sqrt(deg_i deg_j) for graphs with unequal degrees.
Eigen::MatrixXd normalized_irregular(const EdgeList& el);

// Second-eigenvalue computation. Dense path for <= 4096 vertices, otherwise
// power iteration with the known top eigenvector deflated (10000 iteration
// budget, tolerance 1e-8). Throws Disconnected / NoConvergence.
SpectralReport lambda2(const RotationGraph& g, SpectralMethod m = SpectralMethod::automatic,
                       std::uint64_t seed = 1);
// For bipartite graphs lambda2 is the symmetric-spectrum value sigma2; the
// ±1 pair of the two-sided spectrum is excluded by construction.
SpectralReport lambda2(const BipartiteGraph& g, SpectralMethod m = SpectralMethod::automatic,
                       std::uint64_t seed = 1);

// Non-throwing variants for certificates: a disconnected graph reports
// lambda2 = sigma2 = 1 instead of failing.
SpectralReport measure_spectrum(const RotationGraph& g,
                                SpectralMethod m = SpectralMethod::automatic,
                                std::uint64_t seed = 1);
SpectralReport measure_spectrum(const BipartiteGraph& g,
                                SpectralMethod m = SpectralMethod::automatic,
                                std::uint64_t seed = 1);

// Second largest |eigenvalue|; the quantity squaring/product bounds act on.
double lambda_abs2(const RotationGraph& g, SpectralMethod m = SpectralMethod::automatic,
                   std::uint64_t seed = 1);

// True iff report.lambda2 < kappa (strict), kappa in (0,1).
bool is_expander_certificate(const SpectralReport& report, double kappa);

}  // namespace expander
