#pragma once

#include <cstdint>
#include <optional>

namespace urasim::analytics {

/// Gaussian tail probability Q(x) = P(Z > x), Z ~ N(0,1).
double q_function(double x);

/// OOK symbol error probability Q(sqrt(B Eb / 2 N0)). With the threshold at
/// A/2 this single value is both the miss (1->0) and false-alarm (0->1)
/// probability of the detector.
double symbol_error_prob(double ebn0_db, int bits);

// Per-channel-use probabilities that a given use contributes a recovered
// entry of each type:
//   P_A = (D_L/N) (1-1/N)^(D_L+D_I-1) (1-p_e) (1-p_md)
//   P_B = (D_I/N) (1-1/N)^(D_L+D_I-1) (1-p_e) p_fa
//   P_C = (1-1/N)^(D_L+D_I) p_{0->1} p_fa
double p_type_a(int d_l, int d_i, std::uint64_t n, double p_sym_err, double p_md);
double p_type_b(int d_l, int d_i, std::uint64_t n, double p_sym_err, double p_fa);
double p_type_c(int d_l, int d_i, std::uint64_t n, double p_false_alarm_demod, double p_fa);

/// Closed-form quantities at one operating point. pupe and spoof use the
/// expected recovered-list size min(PN, D_L); both are defined explicitly
/// at P = 0 (pupe = 1, spoof = 0) where the raw expressions are 0/0.
struct AnalyticalPoint {
  double p_sym_err = 0.0;
  double p_a = 0.0;
  double p_b = 0.0;
  double p_c = 0.0;
  double p_total = 0.0;
  double pupe = 1.0;
  double spoof = 0.0;
};

/// Point evaluation with an explicit symbol error probability. n does not
/// have to be a power of two here, which keeps small-N oracle checks exact.
AnalyticalPoint evaluate(int d_l, int d_i, std::uint64_t n, double p_sym_err, double p_md,
                         double p_fa);

/// Point evaluation at an operating Eb/N0. Requires d_l >= 1.
AnalyticalPoint pupe_analytical(int d_l, int d_i, std::uint64_t n, double ebn0_db, int bits,
                                double p_md, double p_fa);

/// Average successful spoofing probability per illegitimate device.
/// Requires d_i >= 1.
double spoofing_analytical(int d_l, int d_i, std::uint64_t n, double ebn0_db, int bits,
                           double p_md, double p_fa);

struct SolverConfig {
  double target_pupe = 0.05;
  double search_lo_db = -20.0;
  double search_hi_db = 40.0;
  double grid_step_db = 0.5;
  double tol_db = 0.01;

  friend bool operator==(const SolverConfig&, const SolverConfig&) = default;
};

/// Smallest Eb/N0 in [search_lo_db, search_hi_db] with pupe <= target_pupe,
/// found by coarse grid scan plus bisection to tol_db. nullopt when even
/// search_hi_db misses the target (infeasible; a normal outcome).
std::optional<double> min_ebn0_for_pupe(const SolverConfig& config, int d_l, int d_i, int bits,
                                        double p_md, double p_fa);

/// Sweeps d_l upward and returns the smallest value whose expected list
/// size PN, evaluated at the solved minimum Eb/N0, no longer exceeds the
/// cap (PN <= D_L): the saturation boundary of min(PN, D_L). d_l values
/// with an infeasible solve are skipped; nullopt if no boundary is found.
std::optional<int> regime_transition_dl(int d_i, int bits, double p_md, double p_fa,
                                        const SolverConfig& config, int d_l_max = 512);

}  // namespace urasim::analytics
