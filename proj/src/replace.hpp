#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "position.hpp"

namespace hypdist {

/// Exponent schedule of a strictly increasing t_0 < ... < t_n:
/// delta = max_s (t_s - t_0)/s, m_n = delta and
/// m_u = t_{u+1} - t_u + max(0, m_{u+1} - delta) for u = n-1 .. 0.
/// Depends on t only through differences, so any t_0 is accepted.
struct ExponentSchedule {
  std::vector<long> t_values;
  Rational delta;
  std::vector<Rational> m_values;
  /// Smallest s attaining the maximum.
  std::size_t argmax = 1;
};

/// Errors: NotIncreasing (also for fewer than two entries).
ExponentSchedule exponent_schedule(std::span<const long> t_values);

struct PowerInequality {
  ExponentSchedule schedule;
  /// prod_u a_u^(t_{u+1} - t_u)
  Rational lhs;
  /// a_0 * ... * a_{n-1}; the right side is rhs_base^delta.
  Rational rhs_base;
  /// Both sides raised to den(delta): lhs^den vs rhs_base^num.
  Rational lhs_raised;
  Rational rhs_raised;
  bool holds = false;
  bool equality = false;
  /// Every step of the exponent-replacement chain is non-decreasing.
  bool chain_holds = false;
};

/// Errors: NotIncreasing, DimensionMismatch (need n values of a),
/// NotSorted (a must be non-increasing), BelowOne.
PowerInequality verify_power_inequality(std::span<const long> t_values, std::span<const Rational> a_values);

/// True iff prod a_i^lhs_exp_i <= prod a_i^rhs_exp_i, exactly, for rational
/// exponents and positive a_i.
bool power_product_at_most(std::span<const Rational> a, std::span<const Rational> lhs_exp,
                           std::span<const Rational> rhs_exp);

struct ReplacementSystem {
  /// P_0 .. P_n.
  std::vector<HomoPoly> replacements;
  /// Row u holds c_{u,0..l}; entries past t_u are zero.
  std::vector<std::vector<Rational>> coeff_matrix;
  DimensionProfile source_profile;
  /// Family members in profile order: Q_order(0), ..., Q_order(l).
  std::vector<HomoPoly> ordered_members;
};

struct ReplacementOptions {
  std::uint64_t seed = 0;
  /// Largest coefficient magnitude B tried; shells r = 1, 2, ..., B in turn.
  long pool_bound = 8;
  /// Candidates taken from the deterministic shell enumeration per step.
  std::size_t deterministic_budget = 20000;
  /// Seeded uniform candidates per step after the enumeration.
  std::size_t random_budget = 2000;
};

/// Builds P_0..P_n with P_u in the span of the first t_u + 1 ordered members
/// and dim(V cut by P_0..P_t) <= n - t - 1. Every candidate is checked with
/// a basis computation. Errors: SameDegreeRequired, InvalidProfile,
/// SearchExhausted.
ReplacementSystem build_replacement(const Variety& v, const HypersurfaceFamily& fam,
                                    const DimensionProfile& profile,
                                    const ReplacementOptions& options = {});

struct ReplacementVerdict {
  /// dim(V cut by P_0..P_t), recomputed from scratch.
  std::vector<Dimension> prefix_dims;
  std::vector<bool> step_ok;
  /// P_u equals its coefficient row applied to the ordered members and the
  /// row vanishes past t_u; P_0 = Q_order(0).
  bool span_ok = false;
  bool ok = false;
};

ReplacementVerdict verify_replacement(const Variety& v, const ReplacementSystem& sys);

}  // namespace hypdist
