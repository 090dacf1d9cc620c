#include "triphase/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "triphase/constants.hpp"
#include "triphase/errors.hpp"
#include "triphase/geometry.hpp"
#include "triphase/rng.hpp"

namespace triphase {

namespace {

void require_dyn(const ElementSequence& seq, const DynamicalPhases& dyn) {
  if (!dyn.empty() && dyn.size() != seq.elements.size()) {
    throw InvalidParams(
        "dynamical phases: need one entry per element (or an empty list)");
  }
  for (double p : dyn) {
    if (!std::isfinite(p)) {
      throw InvalidParams("dynamical phases: non-finite entry");
    }
  }
}

double dyn_sum(const DynamicalPhases& dyn) {
  return std::accumulate(dyn.begin(), dyn.end(), 0.0);
}

// The (1,1) transfer element, guarded by the closure precondition.
Complex cyclic_first_entry(const Unitary3& m) {
  const Complex m11 = m.at(0, 0);
  if (std::abs(m11) <= 1.0 - tol::cyclicity) {
    throw NotCyclic("sequence does not return port 1 to itself");
  }
  return m11;
}

}  // namespace

Complex forward_amplitude(const ElementSequence& seq,
                          const DynamicalPhases& dyn) {
  require_dyn(seq, dyn);
  const Complex m11 = cyclic_first_entry(interferometer_matrix(seq));
  return m11 * std::polar(1.0, dyn_sum(dyn));
}

Complex backward_amplitude(const ElementSequence& seq,
                           const DynamicalPhases& dyn,
                           ReversalConvention convention) {
  require_dyn(seq, dyn);
  cyclic_first_entry(interferometer_matrix(seq));

  // The counter-propagating beam meets the elements in reverse order, each
  // contributing its reversed matrix with the same dynamical scalar.
  Unitary3 m = Unitary3::identity();
  for (size_t i = seq.elements.size(); i-- > 0;) {
    const Unitary3 e = seq.elements[i].matrix();
    m = (convention == ReversalConvention::TimeReversal ? e.adjoint()
                                                        : e.transpose()) *
        m;
  }
  return m.at(0, 0) * std::polar(1.0, dyn_sum(dyn));
}

std::vector<FringeRecord> fringe(const ElementSequence& seq,
                                 const DynamicalPhases& dyn,
                                 const std::vector<double>& deltas) {
  const Complex f = forward_amplitude(seq, dyn);
  const Complex b = backward_amplitude(seq, dyn);
  const double rel = std::arg(f * std::conj(b));  // twice the geometric phase

  std::vector<FringeRecord> records;
  records.reserve(deltas.size());
  for (double d : deltas) {
    if (!std::isfinite(d)) {
      throw InvalidParams("fringe: non-finite reference phase");
    }
    const double p =
        std::clamp(0.5 * (1.0 + std::cos(rel + d)), 0.0, 1.0);
    records.push_back(FringeRecord{d, p, 1.0 - p});
  }
  return records;
}

std::array<double, 3> port_probabilities(const ElementSequence& seq,
                                         int input_port) {
  if (input_port < 1 || input_port > 3) {
    throw OutOfRange("input port must be 1, 2 or 3");
  }
  const Unitary3 m = interferometer_matrix(seq);
  std::array<double, 3> p{};
  for (int r = 0; r < 3; ++r) {
    p[static_cast<size_t>(r)] = std::norm(m.at(r, input_port - 1));
  }
  return p;
}

std::vector<CountRecord> low_light_counts(const ElementSequence& seq,
                                          const DynamicalPhases& dyn,
                                          const std::vector<double>& deltas,
                                          std::uint64_t photons_per_setting,
                                          std::uint64_t seed) {
  if (photons_per_setting < 1) {
    throw InvalidParams("low_light_counts: need at least one photon");
  }
  const std::vector<FringeRecord> probs = fringe(seq, dyn, deltas);

  std::mt19937_64 gen(seed);
  std::vector<CountRecord> records;
  records.reserve(probs.size());
  for (const FringeRecord& r : probs) {
    CountRecord c;
    c.delta = r.delta;
    for (std::uint64_t n = 0; n < photons_per_setting; ++n) {
      if (unit_uniform(gen) < r.p_plus) ++c.n_plus;
    }
    c.n_minus = photons_per_setting - c.n_plus;
    records.push_back(c);
  }
  return records;
}

namespace {

constexpr double kPi = std::numbers::pi;

// Least-squares fit of y = c0 + a cos(delta) + b sin(delta); the fringe
// model (1 + V cos(delta + phi)) / 2 maps to a = V cos(phi) / 2,
// b = -V sin(phi) / 2.
//
// ns holds the photon count behind each y value, or is empty when y is a
// plain probability. With counts, the coefficient covariance uses the
// per-point binomial variances p(1-p)/N around the unweighted estimate;
// the noise is strongly heteroscedastic (largest at half fringe, exactly
// where the phase information sits), so a pooled residual variance would
// understate the phase error.
PhaseFit fit_sinusoid(const std::vector<double>& ds,
                      const std::vector<double>& ys,
                      const std::vector<double>& ns) {
  const size_t m = ds.size();
  for (double d : ds) {
    if (!std::isfinite(d)) {
      throw InvalidParams("estimate_phase: non-finite reference phase");
    }
  }

  std::vector<double> sorted = ds;
  std::sort(sorted.begin(), sorted.end());
  size_t distinct = m > 0 ? 1 : 0;
  for (size_t i = 1; i < m; ++i) {
    if (sorted[i] - sorted[i - 1] > 1e-12) ++distinct;
  }
  if (distinct < 3) {
    throw IllConditionedFit(
        "estimate_phase: need at least three distinct reference settings");
  }
  if (sorted.back() - sorted.front() < kPi - 1e-12) {
    throw IllConditionedFit(
        "estimate_phase: reference settings must span at least pi");
  }

  // Normal equations over the basis (1, cos, sin).
  double sc = 0, ss = 0, scc = 0, sss = 0, scs = 0;
  double sy = 0, scy = 0, ssy = 0;
  for (size_t i = 0; i < m; ++i) {
    const double c = std::cos(ds[i]), s = std::sin(ds[i]);
    sc += c;
    ss += s;
    scc += c * c;
    sss += s * s;
    scs += c * s;
    sy += ys[i];
    scy += c * ys[i];
    ssy += s * ys[i];
  }
  const double n = static_cast<double>(m);
  const double g[3][3] = {{n, sc, ss}, {sc, scc, scs}, {ss, scs, sss}};

  // Symmetric 3x3 inverse through the adjugate.
  double adj[3][3];
  adj[0][0] = g[1][1] * g[2][2] - g[1][2] * g[2][1];
  adj[0][1] = g[0][2] * g[2][1] - g[0][1] * g[2][2];
  adj[0][2] = g[0][1] * g[1][2] - g[0][2] * g[1][1];
  adj[1][0] = adj[0][1];
  adj[1][1] = g[0][0] * g[2][2] - g[0][2] * g[2][0];
  adj[1][2] = g[0][2] * g[1][0] - g[0][0] * g[1][2];
  adj[2][0] = adj[0][2];
  adj[2][1] = adj[1][2];
  adj[2][2] = g[0][0] * g[1][1] - g[0][1] * g[1][0];
  const double det =
      g[0][0] * adj[0][0] + g[0][1] * adj[1][0] + g[0][2] * adj[2][0];
  if (!(det > 1e-9 * n * n * n)) {
    throw IllConditionedFit(
        "estimate_phase: reference settings nearly collinear in (cos, sin)");
  }

  const double rhs[3] = {sy, scy, ssy};
  double beta[3];
  for (int r = 0; r < 3; ++r) {
    beta[r] =
        (adj[r][0] * rhs[0] + adj[r][1] * rhs[1] + adj[r][2] * rhs[2]) / det;
  }
  const double a = beta[1], b = beta[2];

  const double amp2 = a * a + b * b;
  const double visibility = 2.0 * std::sqrt(amp2);
  if (visibility < tol::min_visibility) {
    throw IllConditionedFit(
        "estimate_phase: visibility below threshold, phase undefined");
  }
  const double phase = canonical_angle(std::atan2(-b, a));

  double caa = 0.0, cbb = 0.0, cab = 0.0;
  if (ns.empty()) {
    // Homoscedastic covariance from the pooled residual variance.
    double rss = 0;
    for (size_t i = 0; i < m; ++i) {
      const double fit = beta[0] + a * std::cos(ds[i]) + b * std::sin(ds[i]);
      rss += (ys[i] - fit) * (ys[i] - fit);
    }
    const double dof = n - 3.0;
    const double sigma2 = dof > 0.0 ? rss / dof : 0.0;
    caa = sigma2 * adj[1][1] / det;
    cbb = sigma2 * adj[2][2] / det;
    cab = sigma2 * adj[1][2] / det;
  } else {
    // cov(beta) = G^-1 (X^T diag(sigma_i^2) X) G^-1 with binomial
    // sigma_i^2 at the fitted probabilities (clipped to half a photon).
    double mid[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
    for (size_t i = 0; i < m; ++i) {
      const double c = std::cos(ds[i]), s = std::sin(ds[i]);
      const double fit = beta[0] + a * c + b * s;
      const double eps = 0.5 / ns[i];
      const double p = std::clamp(fit, eps, 1.0 - eps);
      const double s2 = p * (1.0 - p) / ns[i];
      const double x[3] = {1.0, c, s};
      for (int r = 0; r < 3; ++r) {
        for (int q = 0; q < 3; ++q) mid[r][q] += s2 * x[r] * x[q];
      }
    }
    double cov[3][3];
    for (int r = 0; r < 3; ++r) {
      for (int q = 0; q < 3; ++q) {
        double acc = 0.0;
        for (int u = 0; u < 3; ++u) {
          for (int v = 0; v < 3; ++v) {
            acc += adj[r][u] * mid[u][v] * adj[v][q];
          }
        }
        cov[r][q] = acc / (det * det);
      }
    }
    caa = cov[1][1];
    cbb = cov[2][2];
    cab = cov[1][2];
  }
  const double var =
      (b * b * caa - 2.0 * a * b * cab + a * a * cbb) / (amp2 * amp2);

  return PhaseFit{phase, std::sqrt(std::max(0.0, var)), visibility};
}

}  // namespace

PhaseFit estimate_phase(const std::vector<FringeRecord>& records) {
  std::vector<double> ds, ys;
  ds.reserve(records.size());
  ys.reserve(records.size());
  for (const FringeRecord& r : records) {
    ds.push_back(r.delta);
    ys.push_back(r.p_plus);
  }
  return fit_sinusoid(ds, ys, {});
}

PhaseFit estimate_phase(const std::vector<CountRecord>& records) {
  std::vector<double> ds, ys, ns;
  ds.reserve(records.size());
  ys.reserve(records.size());
  ns.reserve(records.size());
  for (const CountRecord& r : records) {
    if (r.n_total() == 0) {
      throw InvalidParams("estimate_phase: count record without photons");
    }
    ds.push_back(r.delta);
    ys.push_back(static_cast<double>(r.n_plus) /
                 static_cast<double>(r.n_total()));
    ns.push_back(static_cast<double>(r.n_total()));
  }
  return fit_sinusoid(ds, ys, ns);
}

}  // namespace triphase
