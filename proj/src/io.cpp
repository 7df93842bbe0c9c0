#include "netdef/io.hpp"

#include <fstream>
#include <system_error>
#include <unistd.h>

#include <fmt/format.h>

#include "netdef/error.hpp"

namespace netdef {

std::string format_real(double x) { return fmt::format("{}", x); }

std::string sweep_csv(const std::vector<SweepRecord>& records) {
    std::string out = kSweepCsvHeader;
    out += '\n';
    auto it = std::back_inserter(out);
    for (const auto& r : records) {
        fmt::format_to(it, "{},{},{},{},{},{},{},{},{}\n", r.beta, to_string(r.strategy), r.network_seed,
                       r.attack_seed, r.G, r.B, r.E, r.rho_g, r.rho_b);
    }
    return out;
}

std::string trends_csv(const std::vector<TrendPoint>& points) {
    std::string out = "value,beta_b,stderr,note\n";
    auto it = std::back_inserter(out);
    for (const auto& p : points) {
        std::string note = p.note;
        for (auto& ch : note) {
            if (ch == ',' || ch == '\n') ch = ';';
        }
        fmt::format_to(it, "{},{},{},{}\n", p.value, p.beta_b ? format_real(*p.beta_b) : "",
                       p.beta_stderr ? format_real(*p.beta_stderr) : "", note);
    }
    return out;
}

nlohmann::json to_json(const std::vector<CurvePoint>& curve) {
    auto arr = nlohmann::json::array();
    for (const auto& p : curve) arr.push_back({{"beta", p.beta}, {"ca", p.ca}, {"da", p.da}});
    return arr;
}

nlohmann::json to_json(const CrossoverResult& result) {
    return {{"measure", to_string(result.measure)},
            {"beta_star", result.beta_star},
            {"bracket", {result.bracket.first, result.bracket.second}},
            {"curve", to_json(result.curve)}};
}

nlohmann::json to_json(const AttackPlan& plan) {
    return {{"strategy", to_string(plan.strategy)},
            {"targets", plan.targets},
            {"costs", plan.cost_per_target},
            {"E", plan.E},
            {"n_prime", plan.n_prime()}};
}

nlohmann::json to_json(const DefenseAllocation& alloc) {
    return {{"beta", alloc.beta}, {"R", alloc.R}, {"normalizer", alloc.normalizer}, {"p", alloc.p}};
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    std::error_code ec;
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) throw IoError(fmt::format("cannot create directory '{}': {}", path.parent_path().string(), ec.message()));
    }
    auto tmp = path;
    tmp += fmt::format(".tmp{}", ::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError(fmt::format("cannot write '{}'", tmp.string()));
        out << content;
        out.flush();
        if (!out) {
            std::filesystem::remove(tmp, ec);
            throw IoError(fmt::format("short write to '{}'", tmp.string()));
        }
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError(fmt::format("cannot move output into '{}'", path.string()));
    }
}

}  // namespace netdef
