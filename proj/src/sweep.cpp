#include "netdef/sweep.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "netdef/parallel.hpp"
#include "netdef/random.hpp"

namespace netdef {

std::string to_string(Measure m) { return m == Measure::G ? "G" : "B"; }

double efficiency_g(std::size_t node_count, std::size_t g_ca, std::size_t g_da, double e_ca) {
    const auto g_min = std::min(g_ca, g_da);
    return static_cast<double>(node_count - g_min) / e_ca;
}

double efficiency_b(double b_ca, double b_da, double e_ca) { return std::max(b_ca, b_da) / e_ca; }

AttackEvaluator::AttackEvaluator(std::shared_ptr<const Graph> graph, std::shared_ptr<const CapacityProfile> cap,
                                 std::size_t k_ca, std::optional<std::uint64_t> tie_seed, double capacity_floor)
    : graph_(std::move(graph)),
      cap_(std::move(cap)),
      k_ca_(k_ca),
      capacity_floor_(capacity_floor),
      order_(rank_by_capacity(*cap_, tie_seed)) {
    const std::size_t n = order_.ascending.size();
    if (k_ca_ < 1 || k_ca_ > n) throw ConfigError("k_ca", fmt::format("must lie in 1..{}, got {}", n, k_ca_));
    ca_targets_.assign(order_.ascending.rbegin(), order_.ascending.rbegin() + static_cast<std::ptrdiff_t>(k_ca_));
    ca_result_ = run_cascade(*graph_, *cap_, ca_targets_);
}

const CascadeResult& AttackEvaluator::da_cascade(std::size_t prefix) {
    auto it = da_cache_.find(prefix);
    if (it == da_cache_.end()) {
        std::span<const NodeId> targets(order_.ascending.data(), prefix);
        it = da_cache_.emplace(prefix, run_cascade(*graph_, *cap_, targets)).first;
    }
    return it->second;
}

AttackEvaluator::Outcome AttackEvaluator::evaluate(double beta) {
    Outcome out;
    out.beta = beta;
    const DefenseAllocation alloc = allocate_defense(*cap_, beta, capacity_floor_);
    out.ca = build_ca(alloc, order_, k_ca_);
    out.da = build_da(alloc, order_, out.ca.E);
    out.ca_result = &ca_result_;
    out.da_result = &da_cascade(out.da.n_prime());
    return out;
}

std::pair<SweepRecord, SweepRecord> AttackEvaluator::records(double beta, std::uint64_t network_seed) {
    const Outcome o = evaluate(beta);
    const std::uint64_t attack_seed = order_.tie_seed.value_or(0);
    const double e_ca = o.ca.E;
    const double rho_g = efficiency_g(graph_->node_count(), o.ca_result->G, o.da_result->G, e_ca);
    const double rho_b = efficiency_b(o.ca_result->B, o.da_result->B, e_ca);
    SweepRecord ca{beta, Strategy::CA, network_seed, attack_seed, o.ca_result->G, o.ca_result->B, e_ca, rho_g, rho_b};
    SweepRecord da{beta, Strategy::DA, network_seed, attack_seed, o.da_result->G, o.da_result->B, o.da.E, rho_g, rho_b};
    return {ca, da};
}

std::pair<SweepRecord, SweepRecord> evaluate_pair(const Graph& g, const CapacityProfile& cap, double beta,
                                                  std::size_t k_ca, std::optional<std::uint64_t> attack_seed,
                                                  double capacity_floor) {
    // Non-owning handles; the evaluator does not outlive this call.
    std::shared_ptr<const Graph> graph(std::shared_ptr<void>{}, &g);
    std::shared_ptr<const CapacityProfile> profile(std::shared_ptr<void>{}, &cap);
    AttackEvaluator evaluator(graph, profile, k_ca, attack_seed, capacity_floor);
    return evaluator.records(beta, 0);
}

std::uint64_t network_seed_for(const SweepConfig& config, std::size_t realization) {
    if (std::holds_alternative<std::shared_ptr<const Graph>>(config.network)) return 0;
    return derive_seed(config.master_seed, 1, realization);
}

std::uint64_t attack_seed_for(const SweepConfig& config, std::size_t realization) {
    return config.master_seed ^ static_cast<std::uint64_t>(realization);
}

namespace {

int sign(double x) { return (x > 0.0) - (x < 0.0); }

void validate(const SweepConfig& config) {
    if (!(config.alpha > 0.0)) throw ConfigError("alpha", fmt::format("must be > 0, got {}", config.alpha));
    if (config.k_ca < 1) throw ConfigError("k_ca", "must be >= 1");
    if (config.network_realizations < 1) throw ConfigError("network_realizations", "must be >= 1");
    if (config.attack_realizations < 1) throw ConfigError("attack_realizations", "must be >= 1");
    if (config.capacity_floor < 0.0) throw ConfigError("capacity_floor", "must be >= 0");
    if (const auto* fixed = std::get_if<std::shared_ptr<const Graph>>(&config.network); fixed && !*fixed) {
        throw ConfigError("network", "no graph supplied");
    }
}

}  // namespace

CrossoverResult find_crossover(const MeanCurve& ca, const MeanCurve& da, std::pair<double, double> bracket,
                               double tol, Measure measure) {
    auto [lo, hi] = bracket;
    if (!(lo < hi)) throw ConfigError("bracket", fmt::format("needs lo < hi, got ({}, {})", lo, hi));
    if (!(tol > 0.0)) throw ConfigError("tol", "must be > 0");

    CrossoverResult result;
    result.measure = measure;
    auto probe = [&](double beta) {
        const CurvePoint p{beta, ca(beta), da(beta)};
        result.curve.push_back(p);
        return p.da - p.ca;
    };
    auto sorted_curve = [&] {
        auto curve = result.curve;
        std::stable_sort(curve.begin(), curve.end(), [](const auto& a, const auto& b) { return a.beta < b.beta; });
        return curve;
    };

    double f_lo = probe(lo);
    const double f_hi = probe(hi);
    if (f_lo == 0.0 || f_hi == 0.0) {
        result.beta_star = f_lo == 0.0 ? lo : hi;
        result.bracket = {result.beta_star, result.beta_star};
        result.curve = sorted_curve();
        return result;
    }
    if (sign(f_lo) == sign(f_hi)) {
        throw NoCrossoverError(fmt::format("no sign change of mean {} damage difference over [{}, {}]",
                                           to_string(measure), lo, hi),
                               sorted_curve());
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = probe(mid);
        if (f_mid == 0.0) {
            lo = hi = mid;
            break;
        }
        if (sign(f_mid) == sign(f_lo)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    result.beta_star = 0.5 * (lo + hi);
    result.bracket = {lo, hi};
    result.curve = sorted_curve();
    return result;
}

double efficiency_argmin(const std::vector<SweepRecord>& records, Measure measure) {
    std::map<double, std::pair<double, std::size_t>> by_beta;
    for (const auto& r : records) {
        if (r.strategy != Strategy::CA) continue;
        auto& [sum, count] = by_beta[r.beta];
        sum += measure == Measure::G ? r.rho_g : r.rho_b;
        ++count;
    }
    if (by_beta.empty()) throw Error("efficiency_argmin: no records");
    double best_beta = by_beta.begin()->first;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [beta, acc] : by_beta) {
        const double mean = acc.first / static_cast<double>(acc.second);
        if (mean < best) {
            best = mean;
            best_beta = beta;
        }
    }
    return best_beta;
}

Ensemble::Ensemble(SweepConfig config) : config_(std::move(config)) {
    validate(config_);
    const LoadOptions load{config_.load_convention, config_.load_endpoints, 1};

    std::vector<std::shared_ptr<const Graph>> graphs;
    if (const auto* fixed = std::get_if<std::shared_ptr<const Graph>>(&config_.network)) {
        graphs.push_back(*fixed);
    } else {
        const auto& gen = std::get<GeneratorConfig>(config_.network);
        graphs.resize(config_.network_realizations);
        parallel_for(graphs.size(), config_.workers, [&](std::size_t r) {
            GeneratorConfig c = gen;
            c.seed = network_seed_for(config_, r);
            graphs[r] = std::make_shared<const Graph>(generate(c));
        });
    }

    std::vector<std::shared_ptr<const CapacityProfile>> caps(graphs.size());
    parallel_for(graphs.size(), config_.workers, [&](std::size_t r) {
        caps[r] = std::make_shared<const CapacityProfile>(assign_capacity(*graphs[r], config_.alpha, load));
    });

    for (std::size_t r = 0; r < graphs.size(); ++r) {
        for (std::size_t a = 0; a < config_.attack_realizations; ++a) {
            Cell cell;
            cell.network_index = r;
            cell.attack_index = a;
            cell.network_seed = network_seed_for(config_, r);
            cell.attack_seed = attack_seed_for(config_, a);
            cells_.push_back(std::move(cell));
        }
    }
    parallel_for(cells_.size(), config_.workers, [&](std::size_t i) {
        auto& cell = cells_[i];
        cell.evaluator = std::make_unique<AttackEvaluator>(graphs[cell.network_index], caps[cell.network_index],
                                                           config_.k_ca, cell.attack_seed, config_.capacity_floor);
    });
}

std::vector<SweepRecord> Ensemble::sweep(const std::vector<double>& betas) {
    if (betas.empty()) throw ConfigError("beta_grid", "must not be empty");
    for (std::size_t i = 1; i < betas.size(); ++i) {
        if (!(betas[i] > betas[i - 1])) throw ConfigError("beta_grid", "values must be strictly ascending");
    }
    std::vector<std::vector<std::pair<SweepRecord, SweepRecord>>> slots(cells_.size());
    parallel_for(cells_.size(), config_.workers, [&](std::size_t i) {
        for (double beta : betas) slots[i].push_back(cells_[i].evaluator->records(beta, cells_[i].network_seed));
    });
    std::vector<SweepRecord> out;
    out.reserve(2 * betas.size() * cells_.size());
    for (std::size_t b = 0; b < betas.size(); ++b) {
        for (const auto& cell_records : slots) {
            out.push_back(cell_records[b].first);
            out.push_back(cell_records[b].second);
        }
    }
    return out;
}

MeanDamage Ensemble::mean_damage(double beta, Measure measure) {
    const auto key = std::make_pair(beta, static_cast<int>(measure));
    if (auto it = mean_cache_.find(key); it != mean_cache_.end()) return it->second;

    std::vector<std::pair<double, double>> values(cells_.size());
    parallel_for(cells_.size(), config_.workers, [&](std::size_t i) {
        const auto o = cells_[i].evaluator->evaluate(beta);
        values[i] = measure == Measure::G
                        ? std::make_pair(static_cast<double>(o.ca_result->G), static_cast<double>(o.da_result->G))
                        : std::make_pair(o.ca_result->B, o.da_result->B);
    });
    const double n = static_cast<double>(values.size());
    MeanDamage md;
    md.beta = beta;
    for (const auto& [ca, da] : values) {
        md.ca += ca;
        md.da += da;
    }
    md.ca /= n;
    md.da /= n;
    if (values.size() > 1) {
        const double mean_delta = md.da - md.ca;
        double ss = 0.0;
        for (const auto& [ca, da] : values) ss += (da - ca - mean_delta) * (da - ca - mean_delta);
        md.delta_stderr = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    }
    mean_cache_.emplace(key, md);
    return md;
}

CrossoverResult Ensemble::find_crossover(Measure measure, std::pair<double, double> bracket, double tol) {
    return netdef::find_crossover([&](double b) { return mean_damage(b, measure).ca; },
                                  [&](double b) { return mean_damage(b, measure).da; }, bracket, tol, measure);
}

std::vector<SweepRecord> sweep(const SweepConfig& config) {
    Ensemble ensemble(config);
    return ensemble.sweep(config.betas);
}

std::string to_string(TrendAxis axis) {
    switch (axis) {
        case TrendAxis::N: return "N";
        case TrendAxis::Alpha: return "alpha";
        case TrendAxis::MeanDegree: return "mean_degree";
        case TrendAxis::GammaProxy: return "gamma";
    }
    return "?";
}

TrendAxis parse_trend_axis(const std::string& text) {
    if (text == "N" || text == "n") return TrendAxis::N;
    if (text == "alpha") return TrendAxis::Alpha;
    if (text == "mean_degree" || text == "k") return TrendAxis::MeanDegree;
    if (text == "gamma" || text == "gamma-proxy" || text == "model") return TrendAxis::GammaProxy;
    throw ConfigError("axis", fmt::format("unknown axis '{}' (expected N, alpha, mean_degree or gamma)", text));
}

std::vector<TrendPoint> parameter_study(const SweepConfig& base, TrendAxis axis, const std::vector<std::string>& values,
                                        std::pair<double, double> bracket, double tol) {
    if (values.empty()) throw ConfigError("values", "must not be empty");
    if (!std::holds_alternative<GeneratorConfig>(base.network)) {
        throw ConfigError("network", "parameter studies need a generated network");
    }
    std::vector<TrendPoint> out;
    for (const auto& value : values) {
        SweepConfig config = base;
        auto& gen = std::get<GeneratorConfig>(config.network);
        try {
            switch (axis) {
                case TrendAxis::N: gen.n = std::stoul(value); break;
                case TrendAxis::Alpha: config.alpha = std::stod(value); break;
                case TrendAxis::MeanDegree: gen.mean_degree = std::stod(value); break;
                case TrendAxis::GammaProxy: gen.model = parse_graph_model(value); break;
            }
        } catch (const std::logic_error&) {
            throw ConfigError("values", fmt::format("'{}' is not a valid {} value", value, to_string(axis)));
        }

        TrendPoint point;
        point.value = value;
        Ensemble ensemble(config);
        try {
            const auto crossover = ensemble.find_crossover(Measure::B, bracket, tol);
            point.beta_b = crossover.beta_star;
            const double h = 0.1;
            const double lo = std::max(bracket.first, crossover.beta_star - h);
            const double hi = std::min(bracket.second, crossover.beta_star + h);
            const auto d_lo = ensemble.mean_damage(lo, Measure::B);
            const auto d_hi = ensemble.mean_damage(hi, Measure::B);
            const double slope = ((d_hi.da - d_hi.ca) - (d_lo.da - d_lo.ca)) / (hi - lo);
            const double se = ensemble.mean_damage(crossover.beta_star, Measure::B).delta_stderr;
            if (slope != 0.0) point.beta_stderr = se / std::abs(slope);
        } catch (const NoCrossoverError& e) {
            point.note = e.what();
        }
        out.push_back(std::move(point));
    }
    return out;
}

}  // namespace netdef
