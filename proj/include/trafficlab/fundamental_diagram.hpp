#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace trafficlab {

/// Parabolic flow-density law q = a*rho^2 + b*rho, the shape assumed by the
/// set-point estimator. Concave with an interior maximum: a < 0, b > 0.
struct ParabolicFD {
  double a;  // curvature coefficient, q in veh/h for rho in veh/km
  double b;  // linear coefficient [km/h]

  ParabolicFD(double a_in, double b_in) : a(a_in), b(b_in) {
    if (!(a < 0.0) || !(b > 0.0)) {
      throw std::invalid_argument("ParabolicFD: requires a < 0 and b > 0");
    }
  }

  double critical_density() const { return -b / (2.0 * a); }
  double capacity() const { return -b * b / (4.0 * a); }
  double root_density() const { return -b / a; }  // flow returns to zero here
};

inline double parabola_flow(const ParabolicFD& fd, double rho) {
  if (rho < 0.0) {
    throw std::domain_error("parabola_flow: negative density");
  }
  return fd.a * rho * rho + fd.b * rho;
}

struct CriticalPoint {
  double density;
  double flow;
};

/// Interior maximum of the parabola: (-b/2a, -b^2/4a).
inline CriticalPoint parabola_critical_point(const ParabolicFD& fd) {
  return {fd.critical_density(), fd.capacity()};
}

/// One phase of the METANET fundamental diagram (one row of the model
/// parameter table). Densities are per lane, q_cap is per lane.
struct MetanetFDParams {
  double v_free;   // free-flow speed [km/h]
  double rho_cr;   // critical density [veh/km/lane]
  double alpha;    // exponent [-]
  double rho_jam;  // jam density [veh/km/lane]
  double q_cap;    // capacity [veh/h/lane]
  double v_min;    // speed floor [km/h]

  MetanetFDParams(double v_free_in, double rho_cr_in, double alpha_in,
                  double rho_jam_in, double q_cap_in, double v_min_in = 7.0)
      : v_free(v_free_in),
        rho_cr(rho_cr_in),
        alpha(alpha_in),
        rho_jam(rho_jam_in),
        q_cap(q_cap_in),
        v_min(v_min_in) {
    if (!(v_min < v_free)) {
      throw std::invalid_argument("MetanetFDParams: requires v_min < v_free");
    }
    if (!(rho_cr > 0.0) || !(rho_cr < rho_jam)) {
      throw std::invalid_argument(
          "MetanetFDParams: requires 0 < rho_cr < rho_jam");
    }
    if (!(alpha > 0.0)) {
      throw std::invalid_argument("MetanetFDParams: requires alpha > 0");
    }
    if (!(q_cap > 0.0)) {
      throw std::invalid_argument("MetanetFDParams: requires q_cap > 0");
    }
    // Parameter-set consistency: the equilibrium flow at the critical
    // density must reproduce the stated capacity within 0.5%.
    const double q_at_cr = rho_cr * equilibrium_speed(rho_cr);
    if (std::abs(q_at_cr - q_cap) > 0.005 * q_cap) {
      throw std::invalid_argument(
          "MetanetFDParams: rho_cr * V(rho_cr) deviates from q_cap by more "
          "than 0.5%");
    }
  }

  /// Equilibrium speed V(rho) = v_free * exp[-(1/alpha)*(rho/rho_cr)^alpha],
  /// floored at v_min.
  double equilibrium_speed(double rho) const {
    if (rho < 0.0) {
      throw std::domain_error("equilibrium_speed: negative density");
    }
    const double v =
        v_free * std::exp(-std::pow(rho / rho_cr, alpha) / alpha);
    return std::max(v, v_min);
  }
};

inline double metanet_equilibrium_speed(const MetanetFDParams& fd,
                                        double rho) {
  return fd.equilibrium_speed(rho);
}

struct FlowSample {
  double rho;  // veh/km
  double q;    // veh/h
};

/// Density trajectory fed to the synthetic sample generator.
struct DensityTrajectory {
  std::vector<double> rho;
  double dt_h = 1.0 / 360.0;  // sample spacing [h]

  static DensityTrajectory constant(double level, std::size_t n,
                                    double dt_h = 1.0 / 360.0) {
    DensityTrajectory t;
    t.rho.assign(n, level);
    t.dt_h = dt_h;
    return t;
  }

  static DensityTrajectory sinusoid(double mean, double amplitude,
                                    double period_h, std::size_t n,
                                    double dt_h = 1.0 / 360.0) {
    DensityTrajectory t;
    t.rho.resize(n);
    t.dt_h = dt_h;
    for (std::size_t k = 0; k < n; ++k) {
      const double time_h = static_cast<double>(k) * dt_h;
      t.rho[k] = mean + amplitude * std::sin(2.0 * M_PI * time_h / period_h);
    }
    return t;
  }
};

/// Flow samples on a parabolic FD with multiplicative Gaussian noise,
/// q_k = flow(rho_k) * (1 + eps_k). Deterministic for a fixed seed.
inline std::vector<FlowSample> synth_fd_samples(const ParabolicFD& fd,
                                                const DensityTrajectory& traj,
                                                double noise_std,
                                                std::uint64_t seed) {
  std::vector<FlowSample> samples;
  samples.reserve(traj.rho.size());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (double rho : traj.rho) {
    if (rho < 0.0 || rho > fd.root_density()) {
      throw std::domain_error(
          "synth_fd_samples: density outside [0, -b/a]");
    }
    double q = parabola_flow(fd, rho);
    if (noise_std > 0.0) {
      q *= 1.0 + noise_std * gauss(rng);
    }
    samples.push_back({rho, q});
  }
  return samples;
}

}  // namespace trafficlab
