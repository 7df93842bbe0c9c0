#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "netdef/config.hpp"
#include "netdef/error.hpp"
#include "netdef/experiment.hpp"
#include "netdef/io.hpp"

using namespace netdef;

namespace {

std::string field_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const ConfigError& e) {
        return e.field();
    }
    return "";
}

}  // namespace

TEST_CASE("beta grids") {
    CHECK(parse_beta_grid("0:1:0.25") == std::vector<double>{0, 0.25, 0.5, 0.75, 1});
    const auto fig = parse_beta_grid("0:2.5:0.1");
    CHECK(fig.size() == 26);
    CHECK(fig[3] == 0.3);
    CHECK(fig.back() == 2.5);
    CHECK(parse_beta_grid("0, 0.5,2") == std::vector<double>{0, 0.5, 2});
    CHECK(field_of([] { parse_beta_grid("1,0.5"); }) == "beta_grid");
    CHECK(field_of([] { parse_beta_grid("-1,0.5"); }) == "beta_grid");
    CHECK(field_of([] { parse_beta_grid("0:1:0"); }) == "beta_grid");
    CHECK(field_of([] { parse_beta_grid("0:1"); }) == "beta_grid");
    CHECK(field_of([] { parse_beta_grid("a,b"); }) == "beta_grid");
}

TEST_CASE("layering: preset < file < overrides") {
    ConfigLayers layers;
    layers.add_preset("fig1");
    layers.add_text("[network]\nn = 500\n[experiment]\nnetwork_realizations = 10\n", "local.ini");
    layers.set("network_realizations", "3");
    const auto c = resolve_config(layers);
    CHECK(c.n == 500);
    CHECK(c.mean_degree == 4.0);
    CHECK(c.network_realizations == 3);
    CHECK(c.alpha == 0.3);
    CHECK(c.beta_grid.size() == 26);

    const auto echo = layers.echo();
    CHECK(echo["sources"].size() == 2);
    CHECK(echo["sources"][0]["source"] == "preset:fig1");
    CHECK(echo["overrides"]["network_realizations"] == "3");
    CHECK(echo["effective"]["n"] == "500");
}

TEST_CASE("INI comments") {
    ConfigLayers l;
    l.add_text("# hash\n; semicolon\n[network]\nn = 42\n", "t");
    CHECK(resolve_config(l).n == 42);
}

TEST_CASE("config errors name the offending key") {
    auto resolve = [](const std::string& text) {
        ConfigLayers l;
        l.add_text(text, "t");
        return resolve_config(l);
    };
    CHECK(field_of([&] { resolve("alpha = 0\n"); }) == "alpha");
    CHECK(field_of([&] { resolve("alpha = x\n"); }) == "alpha");
    CHECK(field_of([&] { resolve("k_ca = 0\n"); }) == "k_ca");
    CHECK(field_of([&] { resolve("n = -5\n"); }) == "n");
    CHECK(field_of([&] { resolve("load_convention = both\n"); }) == "load_convention");
    CHECK(field_of([&] { resolve("load_endpoints = maybe\n"); }) == "load_endpoints");
    CHECK(field_of([&] { resolve("[experiment]\nbogus = 1\n"); }) == "bogus");
    CHECK(field_of([&] { resolve("bracket_lo = 3\nbracket_hi = 1\n"); }) == "bracket_lo");
    CHECK(field_of([&] { resolve("axis = size\n"); }) == "axis");
    CHECK(field_of([] { ConfigLayers().add_preset("fig9"); }) == "preset");
    CHECK(field_of([] { ConfigLayers().set("nope", "1"); }) == "nope");
    CHECK(field_of([] { ConfigLayers().add_file("/nonexistent/x.ini"); }) == "config");
}

TEST_CASE("every preset resolves") {
    for (const char* name : {"fig1", "fig2", "fig3", "fig4"}) {
        ConfigLayers l;
        l.add_preset(name);
        CHECK_NOTHROW(resolve_config(l));
    }
    ConfigLayers l;
    l.add_preset("fig3");
    const auto c = resolve_config(l);
    CHECK(c.k_ca == 10);
    CHECK(c.attack_realizations == 10);
}

TEST_CASE("to_sweep_config carries every field") {
    ConfigLayers l;
    l.add_text("model = ER\nn = 700\nmean_degree = 6\nalpha = 0.2\nbeta_grid = 0,1\nk_ca = 2\n"
               "network_realizations = 4\nattack_realizations = 5\nmaster_seed = 77\ncapacity_floor = 0.5\n"
               "load_convention = count\nload_endpoints = false\nworkers = 3\n",
               "t");
    const auto s = to_sweep_config(resolve_config(l));
    const auto& gen = std::get<GeneratorConfig>(s.network);
    CHECK(gen.model == GraphModel::ErdosRenyi);
    CHECK(gen.n == 700);
    CHECK(gen.mean_degree == 6.0);
    CHECK(s.alpha == 0.2);
    CHECK(s.betas == std::vector<double>{0, 1});
    CHECK(s.k_ca == 2);
    CHECK(s.network_realizations == 4);
    CHECK(s.attack_realizations == 5);
    CHECK(s.master_seed == 77);
    CHECK(s.capacity_floor == 0.5);
    CHECK(s.load_convention == LoadConvention::Count);
    CHECK(!s.load_endpoints);
    CHECK(s.workers == 3);
}

TEST_CASE("sweep CSV") {
    std::vector<SweepRecord> records{{0.1, Strategy::CA, 12, 3, 40, 2.5, 0.125, 0.3, 1.0 / 3.0},
                                     {0.1, Strategy::DA, 12, 3, 41, 1e-20, 0.1, 0.3, 1.0 / 3.0}};
    const auto csv = sweep_csv(records);
    std::istringstream in(csv);
    std::string header, row1, row2;
    std::getline(in, header);
    std::getline(in, row1);
    std::getline(in, row2);
    CHECK(header == "beta,strategy,network_seed,attack_seed,G,B,E,rho_g,rho_b");
    CHECK(row1 == "0.1,CA,12,3,40,2.5,0.125,0.3,0.3333333333333333");
    CHECK(row2 == "0.1,DA,12,3,41,1e-20,0.1,0.3,0.3333333333333333");
    CHECK(std::stod(format_real(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("trends CSV leaves missing values empty") {
    std::vector<TrendPoint> points(2);
    points[0].value = "500";
    points[0].beta_b = 1.25;
    points[0].beta_stderr = 0.05;
    points[1].value = "1000";
    points[1].note = "no sign change, over [0, 3]";
    CHECK(trends_csv(points) == "value,beta_b,stderr,note\n500,1.25,0.05,\n1000,,,no sign change; over [0; 3]\n");
}

TEST_CASE("crossover JSON shape") {
    CrossoverResult r;
    r.measure = Measure::G;
    r.beta_star = 1.25;
    r.bracket = {1.2, 1.3};
    r.curve = {{0.0, 10.0, 20.0}, {3.0, 10.0, 5.0}};
    const auto j = to_json(r);
    CHECK(j["measure"] == "G");
    CHECK(j["beta_star"] == 1.25);
    CHECK(j["bracket"].size() == 2);
    CHECK(j["curve"][1]["da"] == 5.0);
    CHECK(j["curve"][0]["beta"] == 0.0);
}

TEST_CASE("atomic writes leave no temporary behind") {
    const auto dir = std::filesystem::temp_directory_path() / "netdef_io_test";
    std::filesystem::remove_all(dir);
    atomic_write(dir / "sub" / "a.txt", "hello\n");
    std::ifstream in(dir / "sub" / "a.txt");
    std::string line;
    std::getline(in, line);
    CHECK(line == "hello");
    std::size_t files = 0;
    for (const auto& e : std::filesystem::directory_iterator(dir / "sub")) files += e.is_regular_file();
    CHECK(files == 1);
    std::filesystem::remove_all(dir);
}

TEST_CASE("experiment summaries are reproducible without timing") {
    ConfigLayers l;
    l.add_text("n = 150\nnetwork_realizations = 2\nbeta_grid = 0:2:0.5\nworkers = 1\n", "t");
    const auto c = resolve_config(l);
    RunOptions options;
    options.config_echo = l.echo();
    const auto a = run_sweep_experiment(c, options);
    const auto b = run_sweep_experiment(c, options);
    CHECK(a.files == b.files);
    CHECK(a.files.count("sweep.csv") == 1);
    CHECK(a.files.count("summary.json") == 1);
    CHECK(a.summary["runtime_seconds"].is_null());
    CHECK(a.summary.contains("crossovers"));
    CHECK(a.summary["efficiency_argmin"].contains("B"));

    options.timing = true;
    CHECK(run_sweep_experiment(c, options).summary["runtime_seconds"].is_number());
}
