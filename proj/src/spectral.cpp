#include "expander/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "expander/error.hpp"
#include "expander/rng.hpp"
#include "json.hpp"

namespace expander {

namespace {

constexpr std::uint64_t kDenseLimit = 4096;
constexpr int kPowerBudget = 10000;
constexpr double kPowerTol = 1e-8;

using Matvec = std::function<void(const std::vector<double>&, std::vector<double>&)>;

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

struct PowerResult {
  double rho = 0.0;
  double residual = 0.0;
};

// Largest eigenvalue of a symmetric PSD-shifted operator restricted to the
// complement of the deflated directions. Deflation vectors must be
// orthonormal.
PowerResult power_top(const Matvec& mv, std::size_t n,
                      const std::vector<std::vector<double>>& deflate, std::uint64_t seed) {
  Rng rng(Rng::derive(seed, 0x90e1));
  std::vector<double> v(n), w(n);
  for (auto& x : v) x = rng.unit() - 0.5;
  for (const auto& u : deflate) axpy(-dot(u, v), u, v);
  const double nv = norm(v);
  if (nv < 1e-300) return {0.0, 0.0};
  for (auto& x : v) x /= nv;
  PowerResult out;
  for (int it = 0; it < kPowerBudget; ++it) {
    mv(v, w);
    for (const auto& u : deflate) axpy(-dot(u, w), u, w);
    const double rho = dot(v, w);
    double res = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = w[i] - rho * v[i];
      res += r * r;
    }
    res = std::sqrt(res);
    out.rho = rho;
    out.residual = res;
    if (res < kPowerTol) return out;
    const double nw = norm(w);
    if (nw < 1e-300) return {0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / nw;
  }
  throw Error(Errc::no_convergence, "power iteration exceeded its budget");
}

Matvec regular_matvec(const RotationGraph& g) {
  return [&g](const std::vector<double>& x, std::vector<double>& y) {
    const std::uint64_t n = g.num_vertices();
    const std::uint32_t d = g.degree();
    const double inv = 1.0 / double(d);
    for (std::uint64_t v = 0; v < n; ++v) {
      double s = 0;
      for (std::uint32_t i = 0; i < d; ++i) s += x[g.head(v, i)];
      y[v] = s * inv;
    }
  };
}

SpectralReport dense_regular(const RotationGraph& g) {
  const Eigen::MatrixXd a = normalized_adjacency(g);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();  // ascending
  const Eigen::Index n = ev.size();
  SpectralReport r;
  r.method = "dense";
  r.lambda_max = ev[n - 1];
  r.lambda2 = n >= 2 ? ev[n - 2] : ev[n - 1];
  std::vector<double> av(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) av[std::size_t(i)] = std::abs(ev[i]);
  std::sort(av.rbegin(), av.rend());
  r.sigma2 = av.size() >= 2 ? av[1] : 0.0;  // second largest |eigenvalue|
  r.residual = 0.0;
  return r;
}

SpectralReport power_regular(const RotationGraph& g, std::uint64_t seed) {
  const std::size_t n = std::size_t(g.num_vertices());
  const Matvec base = regular_matvec(g);
  // Shifted operator (A+I)/2 has spectrum in [0,1] with order preserved.
  const Matvec up = [&base](const std::vector<double>& x, std::vector<double>& y) {
    base(x, y);
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = 0.5 * (y[i] + x[i]);
  };
  // (I-A)/2 exposes the smallest eigenvalue as its top one.
  const Matvec down = [&base](const std::vector<double>& x, std::vector<double>& y) {
    base(x, y);
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = 0.5 * (x[i] - y[i]);
  };
  std::vector<double> ones(n, 1.0 / std::sqrt(double(n)));
  const PowerResult second = power_top(up, n, {ones}, seed);
  const PowerResult bottom = power_top(down, n, {}, seed + 1);
  SpectralReport r;
  r.method = "power-iteration";
  r.lambda_max = 1.0;  // rows sum to 1; the all-ones vector is exact
  r.lambda2 = 2.0 * second.rho - 1.0;
  const double lambda_min = 1.0 - 2.0 * bottom.rho;
  r.sigma2 = std::max(std::abs(r.lambda2), std::abs(lambda_min));
  r.residual = std::max(second.residual, bottom.residual);
  return r;
}

SpectralReport dense_bipartite(const BipartiteGraph& g) {
  const Eigen::MatrixXd a = normalized_adjacency(g);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const Eigen::Index n = ev.size();
  SpectralReport r;
  r.bipartite = true;
  r.method = "dense";
  r.lambda_max = ev[n - 1];
  std::vector<double> av(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) av[std::size_t(i)] = std::abs(ev[i]);
  std::sort(av.rbegin(), av.rend());
  // The two-sided spectrum is symmetric: |values| come in pairs, so the
  // third entry is the second singular value of the biadjacency.
  r.sigma2 = av.size() >= 3 ? av[2] : 0.0;
  r.lambda2 = r.sigma2;  // the ±1 pair is structural, not an expansion defect
  r.residual = 0.0;
  return r;
}

SpectralReport power_bipartite(const BipartiteGraph& g, std::uint64_t seed) {
  const std::size_t n = std::size_t(g.num_left());
  const double scale = 1.0 / double(std::uint64_t(g.left_degree()) * g.right_degree());
  // K = Bn * Bn^T on the left side; eigenvalues are squared singular values.
  std::vector<double> right(g.num_right());
  const Matvec k = [&g, &right, scale](const std::vector<double>& x, std::vector<double>& y) {
    std::fill(right.begin(), right.end(), 0.0);
    for (std::uint64_t v = 0; v < g.num_left(); ++v)
      for (std::uint32_t i = 0; i < g.left_degree(); ++i) right[g.rot(v, i).first] += x[v];
    std::fill(y.begin(), y.end(), 0.0);
    for (std::uint64_t w = 0; w < g.num_right(); ++w)
      for (std::uint32_t j = 0; j < g.right_degree(); ++j)
        y[g.rinv(w, j).first] += right[w] * scale;
  };
  std::vector<double> ones(n, 1.0 / std::sqrt(double(n)));
  const PowerResult second = power_top(k, n, {ones}, seed);
  SpectralReport r;
  r.bipartite = true;
  r.method = "power-iteration";
  r.lambda_max = 1.0;
  r.sigma2 = std::sqrt(std::max(0.0, second.rho));
  r.lambda2 = r.sigma2;  // symmetric two-sided spectrum
  r.residual = second.residual;
  return r;
}

}  // namespace

Eigen::MatrixXd normalized_adjacency(const RotationGraph& g) {
  if (g.num_vertices() == 0) throw Error(Errc::empty_graph, "empty graph");
  if (g.num_vertices() > kDenseLimit)
    throw Error(Errc::too_large, "dense matrix capped at 4096 vertices");
  const std::uint64_t n = g.num_vertices();
  const std::uint32_t d = g.degree();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(Eigen::Index(n), Eigen::Index(n));
  for (std::uint64_t v = 0; v < n; ++v)
    for (std::uint32_t i = 0; i < d; ++i) a(Eigen::Index(v), Eigen::Index(g.head(v, i))) += 1.0;
  a /= double(d);
  return a;
}

Eigen::MatrixXd normalized_biadjacency(const BipartiteGraph& g) {
  if (g.num_left() == 0) throw Error(Errc::empty_graph, "empty graph");
  if (g.num_left() + g.num_right() > kDenseLimit)
    throw Error(Errc::too_large, "dense matrix capped at 4096 vertices");
  Eigen::MatrixXd b =
      Eigen::MatrixXd::Zero(Eigen::Index(g.num_left()), Eigen::Index(g.num_right()));
  for (std::uint64_t v = 0; v < g.num_left(); ++v)
    for (std::uint32_t i = 0; i < g.left_degree(); ++i)
      b(Eigen::Index(v), Eigen::Index(g.rot(v, i).first)) += 1.0;
  b /= std::sqrt(double(std::uint64_t(g.left_degree()) * g.right_degree()));
  return b;
}

Eigen::MatrixXd normalized_adjacency(const BipartiteGraph& g) {
  const Eigen::MatrixXd b = normalized_biadjacency(g);
  const Eigen::Index n = b.rows(), m = b.cols();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n + m, n + m);
  a.topRightCorner(n, m) = b;
  a.bottomLeftCorner(m, n) = b.transpose();
  return a;
}

Eigen::MatrixXd normalized_irregular(const EdgeList& el) {
  if (el.kind != EdgeListKind::undirected)
    throw Error(Errc::bad_input, "irregular normalization expects an undirected edge list");
  if (el.n == 0) throw Error(Errc::empty_graph, "empty graph");
  if (el.n > kDenseLimit) throw Error(Errc::too_large, "dense matrix capped at 4096 vertices");
  const Eigen::Index n = Eigen::Index(el.n);
  Eigen::VectorXd deg = Eigen::VectorXd::Zero(n);
  for (const auto& [u, v] : el.edges) {
    deg[Eigen::Index(u)] += 1.0;
    deg[Eigen::Index(v)] += 1.0;
  }
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [u, v] : el.edges) {
    a(Eigen::Index(u), Eigen::Index(v)) += 1.0;
    a(Eigen::Index(v), Eigen::Index(u)) += 1.0;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (deg[i] == 0.0) throw Error(Errc::bad_input, "isolated vertex has no normalization");
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) /= std::sqrt(deg[i] * deg[j]);
  }
  return a;
}

namespace {

SpectralReport disconnected_report(bool bipartite) {
  SpectralReport r;
  r.bipartite = bipartite;
  r.method = "disconnected";
  r.lambda_max = 1.0;
  r.lambda2 = 1.0;
  r.sigma2 = 1.0;
  r.residual = 0.0;
  return r;
}

}  // namespace

SpectralReport measure_spectrum(const RotationGraph& g, SpectralMethod m, std::uint64_t seed) {
  if (g.num_vertices() == 0) throw Error(Errc::empty_graph, "empty graph");
  if (!g.is_connected()) return disconnected_report(false);
  const bool dense = m == SpectralMethod::dense ||
                     (m == SpectralMethod::automatic && g.num_vertices() <= kDenseLimit);
  return dense ? dense_regular(g) : power_regular(g, seed);
}

SpectralReport measure_spectrum(const BipartiteGraph& g, SpectralMethod m, std::uint64_t seed) {
  if (g.num_left() == 0 || g.num_right() == 0) throw Error(Errc::empty_graph, "empty graph");
  if (!g.is_connected()) return disconnected_report(true);
  const bool dense =
      m == SpectralMethod::dense ||
      (m == SpectralMethod::automatic && g.num_left() + g.num_right() <= kDenseLimit);
  return dense ? dense_bipartite(g) : power_bipartite(g, seed);
}

SpectralReport lambda2(const RotationGraph& g, SpectralMethod m, std::uint64_t seed) {
  if (g.num_vertices() == 0) throw Error(Errc::empty_graph, "empty graph");
  if (!g.is_connected()) throw Error(Errc::disconnected, "graph is not connected");
  return measure_spectrum(g, m, seed);
}

SpectralReport lambda2(const BipartiteGraph& g, SpectralMethod m, std::uint64_t seed) {
  if (g.num_left() == 0 || g.num_right() == 0) throw Error(Errc::empty_graph, "empty graph");
  if (!g.is_connected()) throw Error(Errc::disconnected, "graph is not connected");
  return measure_spectrum(g, m, seed);
}

double lambda_abs2(const RotationGraph& g, SpectralMethod m, std::uint64_t seed) {
  return measure_spectrum(g, m, seed).sigma2;
}

bool is_expander_certificate(const SpectralReport& report, double kappa) {
  if (!(kappa > 0.0 && kappa < 1.0)) throw Error(Errc::out_of_range, "kappa must be in (0,1)");
  return report.lambda2 < kappa;
}

std::string SpectralReport::to_json() const {
  nlohmann::ordered_json j;
  j["lambda_max"] = lambda_max;
  j["lambda2"] = lambda2;
  j["sigma2"] = sigma2;
  j["bipartite"] = bipartite;
  j["method"] = method;
  j["residual"] = residual;
  return j.dump(2);
}

}  // namespace expander
