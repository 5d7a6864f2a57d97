#include "hcbf/support.hpp"

#include <cmath>
#include <stdexcept>

namespace hcbf {

namespace {

int verification_grid_size(int fit_grid) {
    // At least 10x the fit grid and a multiple of 3600, so the dense grids
    // used by the conservativeness checks are subsets.
    const int wanted = std::max(7200, 10 * fit_grid);
    return 3600 * ((wanted + 3599) / 3600);
}

}  // namespace

double SupportModel::shape_distance(double theta) const {
    switch (kind_) {
        case SupportKind::ExactDisc:
            return radius_;
        case SupportKind::ExactEllipse: {
            const double rel = wrap_angle(wrap_angle(theta) - beta_);
            const double cx = a_ * std::cos(rel);
            const double sy = b_ * std::sin(rel);
            const double gamma_max = std::atan2(sy, cx);
            return cx * std::cos(gamma_max) + sy * std::sin(gamma_max);
        }
        case SupportKind::ExactPolygon: {
            const double t = wrap_angle(theta);
            const Vec2 n{std::cos(t), std::sin(t)};
            double best = -std::numeric_limits<double>::infinity();
            for (Vec2 q : hull_offsets_) best = std::max(best, dot(n, q));
            return best;
        }
        case SupportKind::Fourier:
            return fourier_value(theta) + margin_;
    }
    return 0.0;
}

double SupportModel::total_distance(double theta) const {
    return agent_radius_ + shape_distance(theta);
}

double SupportModel::fourier_value(double theta) const {
    if (kind_ != SupportKind::Fourier) {
        throw std::logic_error("fourier_value: not a Fourier support model");
    }
    const double t = wrap_angle(theta);
    double sum = 0.5 * a0_;
    for (std::size_t n = 0; n < cos_coeffs_.size(); ++n) {
        const double nt = static_cast<double>(n + 1) * t;
        sum += cos_coeffs_[n] * std::cos(nt) + sin_coeffs_[n] * std::sin(nt);
    }
    return sum;
}

SupportModel exact_support(const ObstacleShape& shape, double agent_radius) {
    SupportModel m;
    m.agent_radius_ = agent_radius;
    if (const auto* d = std::get_if<Disc>(&shape.variant())) {
        m.kind_ = SupportKind::ExactDisc;
        m.radius_ = d->radius;
    } else if (const auto* e = std::get_if<Ellipse>(&shape.variant())) {
        m.kind_ = SupportKind::ExactEllipse;
        m.a_ = e->semi_major;
        m.b_ = e->semi_minor;
        m.beta_ = e->rotation;
    } else {
        m.kind_ = SupportKind::ExactPolygon;
        m.hull_offsets_.reserve(shape.hull().size());
        for (Vec2 q : shape.hull()) {
            m.hull_offsets_.push_back(q - shape.reference_point());
        }
    }
    return m;
}

SupportModel fit_fourier(const ObstacleShape& shape, int n_terms, int grid_points,
                         double agent_radius) {
    if (n_terms < 0) throw std::invalid_argument("fit_fourier: n_terms must be >= 0");
    if (grid_points < 4 * n_terms + 4) {
        throw std::invalid_argument("fit_fourier: grid too coarse, need >= 4N + 4 points");
    }

    const int m = grid_points;
    std::vector<double> samples(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        samples[static_cast<std::size_t>(i)] = support_distance(shape, kTwoPi * i / m);
    }

    SupportModel model;
    model.kind_ = SupportKind::Fourier;
    model.agent_radius_ = agent_radius;
    model.cos_coeffs_.assign(static_cast<std::size_t>(n_terms), 0.0);
    model.sin_coeffs_.assign(static_cast<std::size_t>(n_terms), 0.0);

    for (int n = 0; n <= n_terms; ++n) {
        double ca = 0.0, sb = 0.0;
        for (int i = 0; i < m; ++i) {
            const double nt = n * kTwoPi * i / m;
            ca += samples[static_cast<std::size_t>(i)] * std::cos(nt);
            sb += samples[static_cast<std::size_t>(i)] * std::sin(nt);
        }
        ca *= 2.0 / m;
        sb *= 2.0 / m;
        if (n == 0) {
            model.a0_ = ca;
        } else {
            model.cos_coeffs_[static_cast<std::size_t>(n - 1)] = ca;
            model.sin_coeffs_[static_cast<std::size_t>(n - 1)] = sb;
        }
    }

    // Minimal margin making the truncated series conservative on the
    // verification grid.
    const int v = verification_grid_size(m);
    double margin = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < v; ++i) {
        const double theta = kTwoPi * i / v;
        margin = std::max(margin,
                          support_distance(shape, theta) - model.fourier_value(theta));
    }
    model.margin_ = margin;
    return model;
}

}  // namespace hcbf
