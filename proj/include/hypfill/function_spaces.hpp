#ifndef HYPFILL_FUNCTION_SPACES_HPP
#define HYPFILL_FUNCTION_SPACES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "hypfill/measure.hpp"

namespace hypfill {

/// Real values on the boundary points.
struct BoundaryFunction {
  std::vector<double> value;
};

/// Real values on the truncated vertices. Along each ray below the
/// truncation the function continues with the constant value it has at
/// (z, N_trunc); that constant is also its boundary value, so traces are
/// exact rather than limits.
struct GraphFunction {
  std::vector<double> value;  // indexed by vertex id
};

enum class BesovMethod { Direct, Dyadic };

/// The p-th power of the Besov smoothness seminorm.
/// Direct: sum over ordered pairs of distinct points of
///   w(a) w(b) |f(a)-f(b)|^p / (d(a,b)^{p theta} nu(B(a, d(a,b)))).
/// Dyadic: sum over scales n of a^{n theta p} times the averaged ball
/// differences; scales past the isolation level vanish identically and are
/// omitted.
double besov_energy(const FiniteMetricSpace& space, const BoundaryMeasure& nu,
                    const BoundaryFunction& f, double theta, double p,
                    BesovMethod method = BesovMethod::Direct, double alpha = 2.0);

double lp_energy_boundary(const BoundaryMeasure& nu, const BoundaryFunction& f,
                          double p);

struct NewtonianResult {
  double gradient_energy = 0.0;  // sum over edges of (|du|/len)^p * mass(edge)
  double lp = 0.0;               // integral of |u|^p, tails in closed form
  double norm = 0.0;             // (lp + gradient_energy)^{1/p}
};

/// Newtonian norm data with the minimal upper gradient of the piecewise
/// (arc-length-) linear interpolation. Edge integrals of |u|^p use
/// Gauss-Legendre of the given order, split at the horizontal midpoint and
/// at a sign change of u.
NewtonianResult newtonian_norm(const GraphFunction& u, const LiftedMeasure& m,
                               double p, int quad_order = 16);

struct TraceResult {
  BoundaryFunction trace;
  /// sequence[point][n]: average of u over the level-n net points whose
  /// ball covers the boundary point, n = 0..N_trunc.
  std::vector<std::vector<double>> sequence;
};

TraceResult trace(const FillingGraph& g, const GraphFunction& u);

/// Poisson-type extension: vertex (z,n) takes the nu-average of f over
/// B(z, alpha^{-n}). Tails are constant, so trace(extend(f)) == f exactly.
GraphFunction extend(const FillingGraph& g, const BoundaryMeasure& nu,
                     const BoundaryFunction& f);

enum class BoundaryProfile { Uniform, Smooth };

BoundaryFunction random_boundary_function(const FiniteMetricSpace& space,
                                          std::uint64_t seed,
                                          BoundaryProfile profile = BoundaryProfile::Uniform,
                                          double exponent = 1.0);

/// Independent values down to the stabilization level; constant along rays
/// below it, which keeps the function (and all its norms) unchanged when
/// the truncation deepens.
GraphFunction random_graph_function(const FillingGraph& g, std::uint64_t seed);

struct EnergyReport {
  std::string kind;  // "extension" or "trace"
  std::uint64_t seed = 0;
  double theta = 0.0, p = 0.0, beta = 0.0, eps = 0.0;
  double besov_seminorm_p = 0.0;
  double lp_boundary = 0.0;
  double newtonian_gradient_energy = 0.0;
  double lp_graph = 0.0;
  double roundtrip_error = 0.0;  // extension runs only
  // NaN marks a degenerate 0/0 ratio (constant functions).
  double ratio_grad_over_besov = 0.0;
  double ratio_lp_graph_over_lp_boundary = 0.0;
  double ratio_besov_over_grad = 0.0;  // norm ratio, trace runs only
  double ratio_lp_trace = 0.0;         // trace runs only
};

struct TraceExtensionSummary {
  std::vector<EnergyReport> reports;
  double max_roundtrip_error = 0.0;
  double max_ratio_grad_over_besov = 0.0;
  double max_ratio_lp = 0.0;
  double max_ratio_besov_over_grad = 0.0;
  int degenerate = 0;
};

/// Runs n_functions seeded boundary functions through extend/trace with
/// beta = eps p (1-theta) and as many seeded graph functions through the
/// trace bounds. Throws RoundTripFailure if any round trip exceeds 1e-9.
TraceExtensionSummary verify_trace_extension(const UniformizedFilling& u,
                                             const BoundaryMeasure& nu,
                                             double theta, double p,
                                             int n_functions, std::uint64_t seed);

}  // namespace hypfill

#endif
