#pragma once

#include <cmath>
#include <numbers>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "catalab/errors.hpp"
#include "catalab/meter.hpp"

namespace catalab {

inline constexpr double kBoltzmannJPerK = 1.380649e-23;

/// Physical substrate parameters. Overheads are multiplicative factors >= 1
/// relative to the Landauer benchmark; boltzmann is configurable so tests can
/// work in normalized units (c = 1).
struct PhysicalConfig {
  double temperature_kelvin = 300.0;
  double boltzmann = kBoltzmannJPerK;
  double overhead_exec = 1.0;
  double overhead_adapt = 1.0;
};

inline double overhead(const PhysicalConfig& cfg, Substrate role) {
  return role == Substrate::exec ? cfg.overhead_exec : cfg.overhead_adapt;
}

/// Landauer cost per erased bit: k_B * T * ln 2.
inline double landauer_cost(const PhysicalConfig& cfg) {
  if (!(cfg.temperature_kelvin > 0))
    throw error("landauer_cost: temperature must be positive");
  return cfg.boltzmann * cfg.temperature_kelvin * std::numbers::ln2;
}

/// Task-weighted intelligence score: sum of w_i * p_i.
struct IntelligenceScore {
  std::vector<std::pair<double, double>> terms;  // (weight, proficiency)

  double value() const {
    double v = 0;
    for (const auto& [w, p] : terms) v += w * p;
    return v;
  }

  static IntelligenceScore make(std::vector<std::pair<double, double>> t) {
    for (const auto& [w, p] : t) {
      if (w < 0) throw error("IntelligenceScore: weight must be >= 0");
      if (p < 0 || p > 1)
        throw error("IntelligenceScore: proficiency must be in [0,1]");
    }
    return IntelligenceScore{std::move(t)};
  }

  static IntelligenceScore unit() { return IntelligenceScore{{{1.0, 1.0}}}; }
};

/// Substrate energy floor for n_irrev irreversible bit-operations.
inline double energy_floor(const PhysicalConfig& cfg, double n_irrev,
                           Substrate role) {
  if (n_irrev < 0) throw error("energy_floor: negative bit count");
  if (overhead(cfg, role) < 1.0)
    throw error("energy_floor: overhead factor must be >= 1");
  return overhead(cfg, role) * n_irrev * landauer_cost(cfg);
}

struct WpiResult {
  double phi = 0;
  std::optional<double> phi_floor;
};

/// Watts-per-intelligence and, when a floor energy is supplied, its Landauer
/// floor counterpart computed over the same horizon and score.
inline WpiResult wpi(double energy_joules, double tau_seconds,
                     const IntelligenceScore& score,
                     std::optional<double> floor_energy_joules = {}) {
  if (!(tau_seconds > 0)) throw error("wpi: horizon must be positive");
  const double iv = score.value();
  if (!(iv > 0)) throw error("wpi: intelligence score must be positive");
  WpiResult r;
  r.phi = (energy_joules / tau_seconds) / iv;
  if (floor_energy_joules)
    r.phi_floor = (*floor_energy_joules / tau_seconds) / iv;
  return r;
}

/// Per-cycle restoration energy floor for delta_k bits of reconfiguration.
inline double restoration_floor(const PhysicalConfig& cfg,
                                double delta_k_cycle_bits) {
  if (delta_k_cycle_bits < 0) throw error("restoration_floor: negative bits");
  return overhead(cfg, Substrate::adapt) * delta_k_cycle_bits *
         landauer_cost(cfg);
}

/// Adaptation energy floor: F(adapt) * c * [mu - info_data - c_u]_+.
inline double adaptation_floor(const PhysicalConfig& cfg, double mu_bits,
                               double info_data_bits, double c_u_bits) {
  if (mu_bits < 0 || info_data_bits < 0 || c_u_bits < 0)
    throw error("adaptation_floor: negative input");
  const double residual = std::max(0.0, mu_bits - info_data_bits - c_u_bits);
  return overhead(cfg, Substrate::adapt) * residual * landauer_cost(cfg);
}

/// Coupling form of the adaptation floor, driven by the measured speed-up:
/// F(adapt) * c * [log2(gamma) - info_data - 2*c_u]_+.
inline double coupling_adapt_floor(const PhysicalConfig& cfg, double gamma,
                                   double info_data_bits, double c_u_bits) {
  if (!(gamma > 0)) throw error("coupling_adapt_floor: gamma must be > 0");
  const double residual =
      std::max(0.0, std::log2(gamma) - info_data_bits - 2 * c_u_bits);
  return overhead(cfg, Substrate::adapt) * residual * landauer_cost(cfg);
}

/// Deployment break-even count. NO_HORIZON is a value, not an error: it means
/// per-query deployment savings can never amortize the upfront cost.
struct Breakeven {
  bool has_horizon = false;
  double count = 0;  // integral when has_horizon

  static Breakeven no_horizon() { return Breakeven{false, 0}; }
  static Breakeven at(double n) { return Breakeven{true, n}; }

  bool operator==(const Breakeven&) const = default;
};

inline Breakeven breakeven(const PhysicalConfig& cfg, double gamma,
                           double info_data_bits, double c_u_bits,
                           double e_baseline_query_j, double e_restore_cycle_j) {
  if (!(gamma > 0)) throw error("breakeven: gamma must be > 0");
  const double numerator =
      coupling_adapt_floor(cfg, gamma, info_data_bits, c_u_bits);
  const double denominator =
      e_baseline_query_j * (1.0 - 1.0 / gamma) - e_restore_cycle_j;
  if (!(denominator > 0)) return Breakeven::no_horizon();
  return Breakeven::at(std::ceil(numerator / denominator));
}

/// Flat energy summary; serializes with fixed field names (see serialize.hpp).
struct EnergyReport {
  double landauer_c_j = 0;
  double floor_exec_j = 0;
  double wpi_w = 0;
  double wpi_floor_w = 0;
  double restore_floor_j = 0;
  double adapt_floor_j = 0;
  Breakeven breakeven_count;
  double tau_s = 0;
};

}  // namespace catalab
