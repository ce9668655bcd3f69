#include "urasim/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "urasim/codec.hpp"

namespace urasim::analytics {

namespace {

void check_counts(int d_l, int d_i, std::uint64_t n) {
  if (d_l < 0) throw std::invalid_argument("d_l: must be >= 0");
  if (d_i < 0) throw std::invalid_argument("d_i: must be >= 0");
  if (n < 1) throw std::invalid_argument("n: must be >= 1");
}

void check_prob(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(name) + ": must be a probability in [0, 1]");
  }
}

// (1 - 1/n)^k via exp/log1p so large k does not accumulate drift.
double idle_power(std::uint64_t n, std::int64_t k) {
  if (k <= 0) return 1.0;
  return std::exp(static_cast<double>(k) * std::log1p(-1.0 / static_cast<double>(n)));
}

}  // namespace

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double symbol_error_prob(double ebn0_db, int bits) {
  if (bits < 1) throw std::invalid_argument("bits: must be >= 1");
  const double ebn0 = std::pow(10.0, ebn0_db / 10.0);
  return q_function(std::sqrt(static_cast<double>(bits) * ebn0 / 2.0));
}

double p_type_a(int d_l, int d_i, std::uint64_t n, double p_sym_err, double p_md) {
  check_counts(d_l, d_i, n);
  check_prob(p_sym_err, "p_sym_err");
  check_prob(p_md, "p_md");
  if (d_l == 0) return 0.0;
  return static_cast<double>(d_l) / static_cast<double>(n) * idle_power(n, d_l + d_i - 1) *
         (1.0 - p_sym_err) * (1.0 - p_md);
}

double p_type_b(int d_l, int d_i, std::uint64_t n, double p_sym_err, double p_fa) {
  check_counts(d_l, d_i, n);
  check_prob(p_sym_err, "p_sym_err");
  check_prob(p_fa, "p_fa");
  if (d_i == 0) return 0.0;
  return static_cast<double>(d_i) / static_cast<double>(n) * idle_power(n, d_l + d_i - 1) *
         (1.0 - p_sym_err) * p_fa;
}

double p_type_c(int d_l, int d_i, std::uint64_t n, double p_false_alarm_demod, double p_fa) {
  check_counts(d_l, d_i, n);
  check_prob(p_false_alarm_demod, "p_false_alarm_demod");
  check_prob(p_fa, "p_fa");
  return idle_power(n, d_l + d_i) * p_false_alarm_demod * p_fa;
}

AnalyticalPoint evaluate(int d_l, int d_i, std::uint64_t n, double p_sym_err, double p_md,
                         double p_fa) {
  AnalyticalPoint point;
  point.p_sym_err = p_sym_err;
  point.p_a = p_type_a(d_l, d_i, n, p_sym_err, p_md);
  point.p_b = p_type_b(d_l, d_i, n, p_sym_err, p_fa);
  point.p_c = p_type_c(d_l, d_i, n, p_sym_err, p_fa);
  point.p_total = point.p_a + point.p_b + point.p_c;
  if (point.p_total <= 0.0) {
    point.pupe = 1.0;  // nothing is ever recovered
    point.spoof = 0.0;
    return point;
  }
  const double expected_list = std::min(point.p_total * static_cast<double>(n),
                                        static_cast<double>(d_l));
  point.pupe = d_l >= 1
                   ? 1.0 - point.p_a / point.p_total * expected_list / static_cast<double>(d_l)
                   : 1.0;
  point.spoof = d_i >= 1
                    ? point.p_b / point.p_total * expected_list / static_cast<double>(d_i)
                    : 0.0;
  return point;
}

AnalyticalPoint pupe_analytical(int d_l, int d_i, std::uint64_t n, double ebn0_db, int bits,
                                double p_md, double p_fa) {
  if (d_l < 1) throw std::invalid_argument("d_l: PUPE is undefined without legitimate devices");
  return evaluate(d_l, d_i, n, symbol_error_prob(ebn0_db, bits), p_md, p_fa);
}

double spoofing_analytical(int d_l, int d_i, std::uint64_t n, double ebn0_db, int bits,
                           double p_md, double p_fa) {
  if (d_i < 1) {
    throw std::invalid_argument("d_i: spoofing is undefined without illegitimate devices");
  }
  return evaluate(d_l, d_i, n, symbol_error_prob(ebn0_db, bits), p_md, p_fa).spoof;
}

namespace {

void check_solver(const SolverConfig& config) {
  if (!(config.target_pupe > 0.0 && config.target_pupe <= 1.0)) {
    throw std::invalid_argument("target_pupe: must be in (0, 1]");
  }
  if (!(config.search_lo_db < config.search_hi_db)) {
    throw std::invalid_argument("search_lo_db: must be below search_hi_db");
  }
  if (!(config.grid_step_db > 0.0)) throw std::invalid_argument("grid_step_db: must be > 0");
  if (!(config.tol_db > 0.0)) throw std::invalid_argument("tol_db: must be > 0");
}

}  // namespace

std::optional<double> min_ebn0_for_pupe(const SolverConfig& config, int d_l, int d_i, int bits,
                                        double p_md, double p_fa) {
  check_solver(config);
  const std::uint64_t n = codec::codebook_size(bits);
  const auto pupe_at = [&](double ebn0_db) {
    return pupe_analytical(d_l, d_i, n, ebn0_db, bits, p_md, p_fa).pupe;
  };

  if (pupe_at(config.search_hi_db) > config.target_pupe) return std::nullopt;
  if (pupe_at(config.search_lo_db) <= config.target_pupe) return config.search_lo_db;

  // Coarse grid brackets the crossing; bisection then assumes local
  // monotonicity inside the bracket.
  double lo = config.search_lo_db;
  double hi = config.search_hi_db;
  for (double g = config.search_lo_db + config.grid_step_db; g < config.search_hi_db;
       g += config.grid_step_db) {
    if (pupe_at(g) <= config.target_pupe) {
      hi = g;
      break;
    }
    lo = g;
  }
  while (hi - lo > config.tol_db) {
    const double mid = 0.5 * (lo + hi);
    (pupe_at(mid) <= config.target_pupe ? hi : lo) = mid;
  }
  return hi;
}

std::optional<int> regime_transition_dl(int d_i, int bits, double p_md, double p_fa,
                                        const SolverConfig& config, int d_l_max) {
  if (d_l_max < 1) throw std::invalid_argument("d_l_max: must be >= 1");
  const std::uint64_t n = codec::codebook_size(bits);
  for (int d_l = 1; d_l <= d_l_max; ++d_l) {
    const auto ebn0_db = min_ebn0_for_pupe(config, d_l, d_i, bits, p_md, p_fa);
    if (!ebn0_db) continue;  // target unreachable at this d_l
    const auto point = pupe_analytical(d_l, d_i, n, *ebn0_db, bits, p_md, p_fa);
    const double expected_entries = point.p_total * static_cast<double>(n);
    if (expected_entries <= static_cast<double>(d_l)) return d_l;
  }
  return std::nullopt;
}

}  // namespace urasim::analytics
