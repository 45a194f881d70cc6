#pragma once

#include "ultinet/rng.hpp"

namespace ultinet {

struct CalaParams {
    double lambda = 0.02;        // learning rate
    double decay_k = 0.001;      // variance decay gain
    double sigma_floor = 1e-7;   // lower bound on exploration noise

    void validate() const;  // throws std::invalid_argument on bad values
};

// effective exploration width: sigma bounded away from zero
double phi(double sigma, double sigma_floor);

// feedback difference normalized by phi and clamped to [-1, +1]
double clamped_feedback_ratio(double beta_mu, double beta_x, double phi_sigma);

// Continuous-action learning automaton. One per learning agent. Keeps a
// normal action policy N(mu, phi(sigma)) and moves both moments from the
// feedback pair (beta_mu for playing mu, beta_x for playing the sample x).
class Cala {
public:
    Cala() = default;
    Cala(double mu, double sigma, const CalaParams& params);

    double mu() const { return mu_; }
    double sigma() const { return sigma_; }
    const CalaParams& params() const { return params_; }
    double phi() const { return ultinet::phi(sigma_, params_.sigma_floor); }

    // draw an action from the current policy
    double sample(Rng& rng) const { return rng.normal(mu_, phi()); }

    // one learning step; rejects non-finite inputs (bug upstream)
    void update(double x, double beta_mu, double beta_x);

private:
    double mu_ = 0.0;
    double sigma_ = 1.0;
    CalaParams params_{};
};

}  // namespace ultinet
