#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "netdef/cascade.hpp"
#include "netdef/defense.hpp"
#include "netdef/error.hpp"
#include "netdef/graph.hpp"

namespace netdef {

enum class Measure { G, B };
std::string to_string(Measure m);

/// One strategy's outcome at one (beta, network, attack) cell. The efficiencies are shared by
/// the CA and DA records of a pair and always use the CA budget.
struct SweepRecord {
    double beta = 0.0;
    Strategy strategy = Strategy::CA;
    std::uint64_t network_seed = 0;
    std::uint64_t attack_seed = 0;
    std::size_t G = 0;
    double B = 0.0;
    double E = 0.0;
    double rho_g = 0.0;
    double rho_b = 0.0;
};

/// rho_g = (N - min(G_ca, G_da)) / E_ca and rho_b = max(B_ca, B_da) / E_ca.
double efficiency_g(std::size_t node_count, std::size_t g_ca, std::size_t g_da, double e_ca);
double efficiency_b(double b_ca, double b_da, double e_ca);

/// Attack evaluation for one network and one tie-break seed. CA targets do not depend on beta,
/// so its cascade runs once; DA plans are prefixes of one ascending order, so cascades are
/// memoized by prefix length. Not thread-safe; use one evaluator per worker.
class AttackEvaluator {
public:
    AttackEvaluator(std::shared_ptr<const Graph> graph, std::shared_ptr<const CapacityProfile> cap,
                    std::size_t k_ca, std::optional<std::uint64_t> tie_seed, double capacity_floor = 0.0);

    struct Outcome {
        double beta = 0.0;
        AttackPlan ca;
        AttackPlan da;
        const CascadeResult* ca_result = nullptr;
        const CascadeResult* da_result = nullptr;
    };

    Outcome evaluate(double beta);
    std::pair<SweepRecord, SweepRecord> records(double beta, std::uint64_t network_seed);

    const Graph& graph() const { return *graph_; }
    const CapacityProfile& capacity() const { return *cap_; }
    const AttackOrder& order() const { return order_; }
    std::size_t cached_cascades() const { return da_cache_.size(); }

private:
    const CascadeResult& da_cascade(std::size_t prefix);

    std::shared_ptr<const Graph> graph_;
    std::shared_ptr<const CapacityProfile> cap_;
    std::size_t k_ca_;
    double capacity_floor_;
    AttackOrder order_;
    std::vector<NodeId> ca_targets_;
    CascadeResult ca_result_;
    std::map<std::size_t, CascadeResult> da_cache_;
};

/// Single-pair evaluation: allocation at beta, CA with k_ca targets, DA under the CA budget.
std::pair<SweepRecord, SweepRecord> evaluate_pair(const Graph& g, const CapacityProfile& cap, double beta,
                                                  std::size_t k_ca, std::optional<std::uint64_t> attack_seed,
                                                  double capacity_floor = 0.0);

/// Where the networks come from: a generator (one graph per realization) or one fixed graph.
using NetworkSource = std::variant<GeneratorConfig, std::shared_ptr<const Graph>>;

struct SweepConfig {
    NetworkSource network = GeneratorConfig{};
    double alpha = 0.3;
    std::vector<double> betas;
    std::size_t k_ca = 1;
    std::size_t network_realizations = 1;
    std::size_t attack_realizations = 1;
    std::uint64_t master_seed = 0;
    double capacity_floor = 0.0;
    LoadConvention load_convention = LoadConvention::Count;
    bool load_endpoints = false;
    unsigned workers = 0;
};

/// Seed of generated network realization r; fixed graphs report 0.
std::uint64_t network_seed_for(const SweepConfig& config, std::size_t realization);
/// Tie-break seed of attack realization a: master seed XOR a.
std::uint64_t attack_seed_for(const SweepConfig& config, std::size_t realization);

struct CurvePoint {
    double beta = 0.0;
    double ca = 0.0;
    double da = 0.0;
};

struct CrossoverResult {
    Measure measure = Measure::B;
    double beta_star = 0.0;
    std::pair<double, double> bracket;  // final bisection bracket
    std::vector<CurvePoint> curve;      // every probe, ascending in beta
};

class NoCrossoverError : public Error {
public:
    NoCrossoverError(const std::string& message, std::vector<CurvePoint> curve)
        : Error(message), curve_(std::move(curve)) {}
    const std::vector<CurvePoint>& curve() const { return curve_; }

private:
    std::vector<CurvePoint> curve_;
};

using MeanCurve = std::function<double(double)>;

/// Bisection on delta(beta) = da(beta) - ca(beta) until the bracket is no wider than `tol`;
/// returns its midpoint. The bracket ends must give opposite signs (or an exact zero).
CrossoverResult find_crossover(const MeanCurve& ca, const MeanCurve& da, std::pair<double, double> bracket,
                               double tol, Measure measure = Measure::B);

/// Grid beta minimizing the mean efficiency over CA records (rho is shared within a pair).
double efficiency_argmin(const std::vector<SweepRecord>& records, Measure measure);

/// Mean damages over all realization cells at one beta.
struct MeanDamage {
    double beta = 0.0;
    double ca = 0.0;
    double da = 0.0;
    double delta_stderr = 0.0;  // standard error of (da - ca) across cells
};

/// All network and attack realizations of one configuration, with their memoized evaluators.
/// Every query uses the same fixed realization set (common random numbers).
class Ensemble {
public:
    explicit Ensemble(SweepConfig config);

    const SweepConfig& config() const { return config_; }
    std::size_t cell_count() const { return cells_.size(); }
    const AttackEvaluator& cell(std::size_t i) const { return *cells_[i].evaluator; }

    /// Records for every beta x network x attack cell, ordered by beta, network realization,
    /// attack realization, then CA before DA.
    std::vector<SweepRecord> sweep(const std::vector<double>& betas);

    MeanDamage mean_damage(double beta, Measure measure);

    CrossoverResult find_crossover(Measure measure, std::pair<double, double> bracket = {0.0, 3.0},
                                   double tol = 0.01);

private:
    struct Cell {
        std::size_t network_index = 0;
        std::size_t attack_index = 0;
        std::uint64_t network_seed = 0;
        std::uint64_t attack_seed = 0;
        std::unique_ptr<AttackEvaluator> evaluator;
    };

    SweepConfig config_;
    std::vector<Cell> cells_;
    std::map<std::pair<double, int>, MeanDamage> mean_cache_;
};

/// Full factorial beta x network x attack sweep.
std::vector<SweepRecord> sweep(const SweepConfig& config);

enum class TrendAxis { N, Alpha, MeanDegree, GammaProxy };
std::string to_string(TrendAxis axis);
TrendAxis parse_trend_axis(const std::string& text);

struct TrendPoint {
    std::string value;
    std::optional<double> beta_b;
    /// Standard error of delta at beta_b divided by the local slope of the mean delta curve.
    std::optional<double> beta_stderr;
    std::string note;  // why beta_b is missing, when it is
};

/// Re-runs the B crossover for each axis value applied to `base`. For GammaProxy the values
/// are generator names (BA, ER). A value without a crossover in `bracket` yields a point with
/// no beta_b and the run continues.
std::vector<TrendPoint> parameter_study(const SweepConfig& base, TrendAxis axis,
                                        const std::vector<std::string>& values,
                                        std::pair<double, double> bracket = {0.0, 3.0}, double tol = 0.01);

}  // namespace netdef
