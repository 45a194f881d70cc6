#include "ultinet/cala.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace ultinet {

void CalaParams::validate() const {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("cala: lambda must be positive");
    if (!(decay_k > 0.0) || !std::isfinite(decay_k))
        throw std::invalid_argument("cala: decay_k must be positive");
    if (!(sigma_floor > 0.0) || !std::isfinite(sigma_floor))
        throw std::invalid_argument("cala: sigma_floor must be positive");
}

double phi(double sigma, double sigma_floor) {
    return std::max(sigma, sigma_floor);
}

double clamped_feedback_ratio(double beta_mu, double beta_x, double phi_sigma) {
    const double r = (beta_x - beta_mu) / phi_sigma;
    return std::clamp(r, -1.0, 1.0);
}

Cala::Cala(double mu, double sigma, const CalaParams& params)
    : mu_(mu), sigma_(sigma), params_(params) {
    params_.validate();
    if (!std::isfinite(mu) || !std::isfinite(sigma))
        throw std::invalid_argument("cala: non-finite initial state");
    sigma_ = std::max(sigma_, params_.sigma_floor);
}

void Cala::update(double x, double beta_mu, double beta_x) {
    if (!std::isfinite(x) || !std::isfinite(beta_mu) || !std::isfinite(beta_x))
        throw std::invalid_argument("cala update: non-finite input");

    const double ph = phi();
    const double r = clamped_feedback_ratio(beta_mu, beta_x, ph);
    assert(std::fabs(r) <= 1.0);

    const double step = (x - mu_) / ph;
    mu_ += params_.lambda * r * step;
    sigma_ += params_.lambda * r * (step * step - 1.0)
            - params_.lambda * params_.decay_k * (sigma_ - params_.sigma_floor);
    // the stored width never drops below the floor
    sigma_ = std::max(sigma_, params_.sigma_floor);
}

}  // namespace ultinet
