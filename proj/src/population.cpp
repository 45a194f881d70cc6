#include "ultinet/population.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace ultinet {

double clamp_strategy(double v) {
    return std::min(std::max(v, kStrategyMin), kStrategyMax);
}

Population Population::init(int n, const PopulationFractions& fracs, double sigma0,
                            const CalaParams& params, Rng& rng) {
    if (n < 2) throw std::invalid_argument("population: need at least 2 agents");
    if (fracs.fs < 0.0 || fracs.dsh < 0.0 || fracs.dsr < 0.0)
        throw std::invalid_argument("population: negative fraction");
    const double total = fracs.fs + fracs.dsh + fracs.dsr;
    if (std::fabs(total - 1.0) > 1e-9)
        throw std::invalid_argument("population: fractions must sum to 1");
    params.validate();
    if (!(sigma0 > 0.0) || !std::isfinite(sigma0))
        throw std::invalid_argument("population: sigma0 must be positive");

    Population pop;
    pop.count_fs = static_cast<int>(std::lround(fracs.fs * n));
    pop.count_dsh = static_cast<int>(std::lround(fracs.dsh * n));
    pop.count_dsr = n - pop.count_fs - pop.count_dsh;
    if (pop.count_dsr < 0)
        throw std::invalid_argument("population: fractions round above 1");

    std::vector<AgentKind> kinds;
    kinds.reserve(static_cast<std::size_t>(n));
    kinds.insert(kinds.end(), static_cast<std::size_t>(pop.count_fs), AgentKind::FixedStrategy);
    kinds.insert(kinds.end(), static_cast<std::size_t>(pop.count_dsh), AgentKind::DynamicHuman);
    kinds.insert(kinds.end(), static_cast<std::size_t>(pop.count_dsr), AgentKind::DynamicRational);

    // Fisher-Yates: decouple agent kind from node id (early ids grow into
    // hubs under preferential attachment, so ordered placement would bias
    // one kind onto high-degree nodes).
    for (int i = n - 1; i > 0; --i) {
        const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
        std::swap(kinds[static_cast<std::size_t>(i)], kinds[static_cast<std::size_t>(j)]);
    }

    pop.agents_.resize(static_cast<std::size_t>(n));
    for (int id = 0; id < n; ++id) {
        Agent& a = pop.agents_[static_cast<std::size_t>(id)];
        a.kind = kinds[static_cast<std::size_t>(id)];
        switch (a.kind) {
            case AgentKind::FixedStrategy:
                a.fixed_value = kFixedStrategyValue;
                break;
            case AgentKind::DynamicHuman:
                a.cala = Cala(clamp_strategy(rng.normal(4.5, 1.0)), sigma0, params);
                break;
            case AgentKind::DynamicRational:
                a.cala = Cala(clamp_strategy(rng.normal(0.01, 1.0)), sigma0, params);
                break;
        }
    }
    pop.refresh_average();
    return pop;
}

double Population::current_strategy(int id) const {
    const Agent& a = agents_[static_cast<std::size_t>(id)];
    if (a.kind == AgentKind::FixedStrategy) return a.fixed_value;
    return clamp_strategy(a.cala.mu());
}

void Population::refresh_average() {
    double sum = 0.0;
    for (int id = 0; id < size(); ++id) sum += current_strategy(id);
    strategy_sum_ = sum;
}

void Population::apply_cala_update(int id, double x, double beta_mu, double beta_x) {
    Agent& a = agents_[static_cast<std::size_t>(id)];
    if (a.kind == AgentKind::FixedStrategy)
        throw std::invalid_argument("population: fixed-strategy agents never update");
    const double before = clamp_strategy(a.cala.mu());
    a.cala.update(x, beta_mu, beta_x);
    strategy_sum_ += clamp_strategy(a.cala.mu()) - before;
}

void Population::set_mu(int id, double mu) {
    Agent& a = agents_[static_cast<std::size_t>(id)];
    if (a.kind == AgentKind::FixedStrategy)
        throw std::invalid_argument("population: fixed-strategy agents have no policy mean");
    const double before = clamp_strategy(a.cala.mu());
    a.cala = Cala(mu, a.cala.sigma(), a.cala.params());
    strategy_sum_ += clamp_strategy(mu) - before;
}

}  // namespace ultinet
