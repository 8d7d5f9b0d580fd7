#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sbc/distribution.hpp"
#include "sbc/noise.hpp"
#include "sbc/params.hpp"
#include "sbc/signal_rule.hpp"
#include "sbc/stage_game.hpp"
#include "sbc/technology.hpp"

namespace sbc {

enum class IroningMode { Auto, Forced, Off };
enum class Region { NoTransfer, RisingCap, FlatCap };

std::string region_name(Region r);

struct ScheduleRow {
    double theta = 0.0;
    double b_star = 0.0;
    double t_star = 0.0;
    double b_tilde = 0.0;
    Region region = Region::NoTransfer;
    bool ll_binding = false;
    bool pooled = false; // ironed pooling interval
};

struct MechanismSolution {
    double theta_min = 0.0;
    double theta_dagger = 0.0;
    double b_max = 0.0; // maximal cap level on the grid
    bool no_bailout = false;
    bool ironed = false;
    std::vector<ScheduleRow> rows;

    std::vector<double> thetas() const;
    std::vector<double> caps() const;
    /// Linear interpolation of the cap / grant schedule between grid nodes.
    double cap_at(double theta) const;
    double grant_at(double theta) const;
};

struct SolveOptions {
    int grid_size = 101;
    long draws = 200000;       // per-theta draws for b_tilde
    long effort_draws = 20000;
    std::uint64_t seed = 42;
    IroningMode ironing = IroningMode::Auto;
    bool estimate_lambda_for_linear = false; // two-pass lambda_T(theta) substitution
    LocalChoice base_choice = {};
};

/// Ironed virtual weights: greatest convex minorant of the cumulative weight
/// curve, differentiated back to a nondecreasing per-cell weight.
struct IronedWeights {
    std::vector<double> thetas;
    std::vector<double> raw;
    std::vector<double> ironed;
    std::vector<bool> pooled;
    bool any_pooled = false;
};

/// Kernel: iron a weight sequence on a uniform grid.
IronedWeights iron_weights(const std::vector<double>& thetas, const std::vector<double>& values);

/// v(theta) = (gamma * omega_b / omega_T) * h(theta) on a uniform grid, ironed.
IronedWeights iron_virtual_weight(const TypeDistribution& d, const ParamSet& p, int grid_size);

/// Cutoff calculus only (no Monte Carlo): knife-edge flag, theta_min and
/// theta_dagger (bisection-refined on the hazard for IFR families), and the
/// cap values on the grid.
struct CutoffResult {
    bool no_bailout = false;
    double theta_min = 0.0;
    double theta_dagger = 0.0;
    std::vector<double> thetas;
    std::vector<double> caps;
    std::vector<bool> pooled;
    bool ironed = false;
};

CutoffResult solve_cutoffs(const ParamSet& p, const TypeDistribution& d, int grid_size,
                           IroningMode ironing = IroningMode::Auto);

/// Full mechanism: cap schedule per the pointwise clamp of the virtual
/// weight, b_tilde by fixed-seed Monte Carlo, grants per the envelope
/// difference with limited liability. Throws when validate_params is
/// non-empty, and for non-IFR inputs when ironing is switched off.
MechanismSolution solve(const ParamSet& p, const TypeDistribution& d, const SignalRule& rule,
                        const EffortTechnology& tech, const NoiseModel& noise,
                        const SolveOptions& opts = {});

struct GrantRow {
    double t_star = 0.0;
    bool ll_binding = false;
};

/// T(theta) = T_ref - (omega_b/omega_T) * (btilde - btilde_ref), clamped at 0
/// with the limited-liability flag set where the unclamped value is negative.
std::vector<GrantRow> grant_schedule(const ParamSet& p, const std::vector<double>& btilde,
                                     double btilde_ref);

struct ComparativeStatics {
    bool theta_min_defined = false;
    double theta_min = 0.0;
    double hazard_slope = 0.0; // h'(theta_min)
    double d_theta_min_d_alpha = 0.0;
    double d_theta_min_d_omega_b = 0.0;
    double d_theta_min_d_lambda_T = 0.0;
    double d_theta_min_d_gamma = 0.0;

    double b_max = 0.0; // (gamma*omega_b/lambda_T - alpha)/kappa
    double d_b_max_d_kappa = 0.0;
    double d_b_max_d_lambda_T = 0.0;
    double d_b_max_d_gamma = 0.0;
};

/// Analytic derivatives of the lower cutoff and the interior cap level in the
/// baseline lambda_T = omega_T. theta_min derivatives are flagged undefined
/// when the cutoff sits at a support boundary or the hazard slope vanishes.
ComparativeStatics comparative_statics(const ParamSet& p, const TypeDistribution& d);

/// Cap schedule when the marginal utility of payouts varies with type:
/// b(theta) = clamp((omega_b(theta) - alpha)/kappa, 0, b_bar).
std::vector<double> variable_omega_cap(const std::function<double(double)>& omega_b_fn,
                                       const ParamSet& p, const std::vector<double>& thetas);

std::string schedule_csv(const MechanismSolution& m);
std::string summary_json(const MechanismSolution& m);

} // namespace sbc
