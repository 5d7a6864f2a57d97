#pragma once

#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "hcbf/barrier.hpp"
#include "hcbf/qp.hpp"
#include "hcbf/support.hpp"

namespace hcbf {

enum class FilterMode { Orthogonal, LeastRestrictive, FixedTheta };

struct FilterConfig {
    Mat2 q = Mat2::identity();  // symmetric positive definite
    double alpha_gain = 1.0;
    int theta_grid = 360;       // grid points per obstacle, >= 8
    double refine_tol = 1e-6;   // golden-section tolerance (rad)
    int max_sweeps = 5;         // coordinate-descent sweeps
    FilterMode mode = FilterMode::LeastRestrictive;
    std::vector<double> fixed_thetas;  // used by FilterMode::FixedTheta
    // Tightens the barrier inequality to hdot + alpha(h) >= cbf_margin. Zero
    // keeps the exact reduction; discrete-time simulations set a small
    // positive value so the sampled trajectory cannot shave the boundary
    // between control updates.
    double cbf_margin = 0.0;
    // Feasibility threshold for newly selected angles: candidates must have
    // h(x, theta) >= theta_select_margin. The warm-start angle stays usable
    // at h >= 0. Zero keeps the exact selection rule; simulations use a small
    // positive value, otherwise a greedy selection sits exactly on the
    // h = 0 frontier and the whole candidate set can vanish within one step.
    double theta_select_margin = 0.0;
};

/// Validates the config invariants; throws std::invalid_argument.
void validate(const FilterConfig& config);

/// One hyperplane angle per obstacle. A theta is flagged feasible when
/// h(x, theta) >= 0 at the state it was produced for.
struct ThetaAssignment {
    std::vector<double> theta;
    std::vector<bool> feasible;

    std::size_t size() const { return theta.size(); }
};

enum class FilterStatus { Optimal, FallbackPreviousTheta, Infeasible };

struct FilterResult {
    Vec2 u;
    ThetaAssignment thetas;
    double objective = std::numeric_limits<double>::infinity();
    FilterStatus status = FilterStatus::Infeasible;
};

/// An obstacle together with its prebuilt safety-distance model.
struct FilterObstacle {
    ObstacleState state;
    SupportModel support;
};

/// Solves the safety-filter QP with every hyperplane angle held fixed:
/// minimize (u - u_des)^T Q (u - u_des) subject to ||u|| <= u_max and the
/// barrier constraint of every obstacle at its assigned theta.
FilterResult solve_fixed_theta(const AgentState& agent,
                               std::span<const FilterObstacle> obstacles,
                               const ThetaAssignment& thetas, Vec2 u_des,
                               const FilterConfig& config, const Limits& limits);

/// Jointly optimizes the control and the per-obstacle hyperplane angles.
/// Per obstacle, candidate angles are the grid points with h(x, theta) >= 0;
/// a coordinate-descent pass solves the fixed-theta QP with the other
/// obstacles held at their incumbent angles, and the best grid angle is
/// refined by golden section. The warm-start assignment and the orthogonal
/// assignment are seeded as incumbents, so the returned objective never
/// exceeds either one where they are feasible.
///
/// When an obstacle has no feasible grid angle, its warm-start angle is kept
/// if still feasible (status FallbackPreviousTheta), otherwise the result is
/// Infeasible.
FilterResult optimize(const AgentState& agent, std::span<const FilterObstacle> obstacles,
                      Vec2 u_des, const FilterConfig& config, const Limits& limits,
                      const ThetaAssignment* warm = nullptr);

struct OracleParams {
    int theta_grid = 3600;
    int u_grid = 2001;  // grid points per axis across [-u_max, u_max]
};

/// Dense-grid reference solver over (u, theta-per-obstacle). Enumerates the
/// theta grid per obstacle and, for each combination, the best feasible point
/// of the u grid. Exponential in the obstacle count; intended for <= 2
/// obstacles, tests, and the `oracle-check` command. Independent of the
/// candidate-enumeration QP path.
FilterResult brute_force_oracle(const AgentState& agent,
                                std::span<const FilterObstacle> obstacles, Vec2 u_des,
                                const FilterConfig& config, const Limits& limits,
                                const OracleParams& params = {});

}  // namespace hcbf
