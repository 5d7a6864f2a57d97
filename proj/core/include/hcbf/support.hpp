#pragma once

#include <vector>

#include "hcbf/shape.hpp"
#include "hcbf/vec2.hpp"

namespace hcbf {

enum class SupportKind { ExactDisc, ExactEllipse, ExactPolygon, Fourier };

/// Evaluable safety-distance model delta_ij(theta) for one agent/obstacle
/// pair: agent radius plus the obstacle's support distance, either exact per
/// shape or a conservative truncated-Fourier approximation with margin.
class SupportModel {
  public:
    SupportKind kind() const { return kind_; }
    double agent_radius() const { return agent_radius_; }

    /// Obstacle-side distance: exact delta_j(theta), or the Fourier
    /// approximation plus its conservativeness margin. Never smaller than the
    /// exact support distance by more than 1e-9 on a dense grid.
    double shape_distance(double theta) const;

    /// Total safety distance delta_ij(theta) = agent_radius + shape_distance.
    double total_distance(double theta) const;

    /// Fourier approximation without the margin; only for Fourier models.
    double fourier_value(double theta) const;

    /// Conservativeness margin (zero for exact kinds). May be negative when
    /// the truncation over-approximates everywhere.
    double margin() const { return margin_; }

    int term_count() const { return static_cast<int>(cos_coeffs_.size()); }
    double coeff_a0() const { return a0_; }
    const std::vector<double>& coeffs_cos() const { return cos_coeffs_; }
    const std::vector<double>& coeffs_sin() const { return sin_coeffs_; }

    friend SupportModel exact_support(const ObstacleShape&, double);
    friend SupportModel fit_fourier(const ObstacleShape&, int, int, double);

  private:
    SupportModel() = default;

    SupportKind kind_ = SupportKind::ExactDisc;
    double agent_radius_ = 0.0;

    // Exact payloads.
    double radius_ = 0.0;                  // disc
    double a_ = 0.0, b_ = 0.0, beta_ = 0.0;  // ellipse
    std::vector<Vec2> hull_offsets_;       // polygon hull vertices minus p_o

    // Fourier payload.
    double a0_ = 0.0;
    std::vector<double> cos_coeffs_;
    std::vector<double> sin_coeffs_;
    double margin_ = 0.0;
};

/// Builds the exact support model for a shape (general radial shapes use
/// their polygonal hull).
SupportModel exact_support(const ObstacleShape& shape, double agent_radius = 0.0);

/// Fits a truncated Fourier series to the sampled support distance and
/// attaches the minimal conservativeness margin, measured on a verification
/// grid at least ten times denser than the fit grid.
/// Throws std::invalid_argument when grid_points < 4 * n_terms + 4.
SupportModel fit_fourier(const ObstacleShape& shape, int n_terms, int grid_points = 720,
                         double agent_radius = 0.0);

}  // namespace hcbf
