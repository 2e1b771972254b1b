#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "wnlse/cli.hpp"
#include "wnlse/resonance.hpp"
#include "wnlse/study.hpp"
#include "wnlse/weyl.hpp"
#include "test_helpers.hpp"

using namespace wnlse;
namespace fs = std::filesystem;

namespace {

int run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"wnlse"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    return cli_main(static_cast<int>(argv.size()), argv.data());
}

fs::path fresh_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("wnlse_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// study.csv with the wallclock column stripped (the only non-deterministic field)
std::string strip_wallclock(const std::string& csv) {
    std::stringstream in(csv), out;
    std::string line;
    while (std::getline(in, line)) {
        const auto pos = line.rfind(',');
        out << line.substr(0, pos) << '\n';
    }
    return out.str();
}

SimulationConfig zero_spec_config() {
    SimulationConfig cfg = reference_cgl_config();
    cfg.nonlinearity = NonlinearitySpec{};
    cfg.epsilon_sweep = {0.2, 0.1};
    cfg.integrator.dt_slow = 1.0 / 256.0;
    return cfg;
}

}  // namespace

TEST_CASE("resonance scanner") {
    SUBCASE("double eigenvalues of the constant potential are resonant") {
        const Grid grid(1, 64);
        const SpectralBasis basis = assemble_operator(make_constant_potential(grid, 1.0), grid, 6);
        const ResonanceReport rep = resonance_scan(basis, 5, 1, 1e-9);
        CHECK(rep.verdict == ResonanceVerdict::Resonant);
        CHECK(rep.best_value <= 1e-12);
    }
    SUBCASE("planted relation is recovered with a valid witness") {
        const ResonanceReport rep = resonance_scan({1.0, 2.0, 3.0}, 3, 3, 1e-12);
        CHECK(rep.best_value == 0.0);
        CHECK(rep.verdict == ResonanceVerdict::Resonant);
        double combo = 0.0;
        bool nonzero = false;
        const double lambda[3] = {1.0, 2.0, 3.0};
        for (int i = 0; i < 3; ++i) {
            combo += rep.best_vector[static_cast<std::size_t>(i)] * lambda[i];
            if (rep.best_vector[static_cast<std::size_t>(i)] != 0) nonzero = true;
        }
        CHECK(combo == 0.0);
        CHECK(nonzero);
    }
    SUBCASE("golden-ratio-style pair against its own brute force") {
        const std::vector<double> lambda{1.0, std::sqrt(2.0)};
        const ResonanceReport rep = resonance_scan(lambda, 2, 3, 1e-9);
        CHECK(rep.verdict == ResonanceVerdict::NonResonantAtTolerance);
        double best = 1e300;
        for (int s1 = -3; s1 <= 3; ++s1)
            for (int s2 = -3; s2 <= 3; ++s2) {
                if (s1 == 0 && s2 == 0) continue;
                best = std::min(best, std::abs(s1 * lambda[0] + s2 * lambda[1]));
            }
        CHECK(rep.best_value == doctest::Approx(best).epsilon(1e-15));
        // widening the search can only tighten the minimum
        const ResonanceReport wider = resonance_scan(lambda, 2, 6, 1e-9);
        CHECK(wider.best_value <= rep.best_value + 1e-15);
    }
    SUBCASE("negative tolerance makes every spectrum non-resonant") {
        const ResonanceReport rep = resonance_scan({1.0, 2.0, 3.0}, 3, 2, -1.0);
        CHECK(rep.verdict == ResonanceVerdict::NonResonantAtTolerance);
        CHECK(rep.best_value >= 0.0);
    }
    SUBCASE("guards") {
        CHECK_THROWS_AS(resonance_scan({1.0, 2.0}, 3, 2, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(resonance_scan(std::vector<double>(12, 1.0), 12, 10, 0.0),
                        std::invalid_argument);
    }
}

TEST_CASE("random potentials are non-resonant at tolerance") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const Grid grid(1, 32);
        const Potential pot = make_random_trig_potential(grid, seed, 3, 0.4);
        CHECK(pot.min_value() == doctest::Approx(1.0).epsilon(1e-12));
        const SpectralBasis basis = assemble_operator(pot, grid, 8);
        const ResonanceReport rep = resonance_scan(basis, 6, 3, 1e-6);
        INFO("seed ", seed, " best value ", rep.best_value);
        CHECK(rep.verdict == ResonanceVerdict::NonResonantAtTolerance);
    }
}

TEST_CASE("quasi-periodic time averages") {
    TorusTrigPoly f;
    f.dim = 2;
    f.harmonics = {TorusHarmonic{{1, 0, 0, 0}, 1.0, 0.0}};
    const std::vector<double> omega{1.0, std::sqrt(2.0)};
    const std::vector<double> x0{0.3, 0.7};
    SUBCASE("non-resonant gap obeys the 2/T envelope and matches the closed form") {
        const auto rows = weyl_average_test(omega, f, x0, {10.0, 100.0, 1000.0});
        for (const WeylGapRow& r : rows) {
            CHECK(r.haar_average == 0.0);
            CHECK(r.gap <= 2.0 / r.t_horizon);
            const double closed =
                std::abs(std::sin(x0[0] + r.t_horizon) - std::sin(x0[0])) / r.t_horizon;
            CHECK(r.gap == doctest::Approx(closed).epsilon(1e-6));
        }
    }
    SUBCASE("constants average exactly") {
        TorusTrigPoly c;
        c.dim = 2;
        c.constant = 0.42;
        for (const WeylGapRow& r : weyl_average_test(omega, c, x0, {10.0, 100.0}))
            CHECK(r.gap <= 1e-12);
    }
    SUBCASE("resonant direction never decays") {
        TorusTrigPoly g;
        g.dim = 2;
        g.harmonics = {TorusHarmonic{{1, -1, 0, 0}, 1.0, 0.0}};
        const double expected = std::abs(std::cos(x0[0] - x0[1]));
        for (const WeylGapRow& r : weyl_average_test({1.0, 1.0}, g, x0, {10.0, 100.0, 1000.0}))
            CHECK(r.gap == doctest::Approx(expected).epsilon(1e-9));
    }
    SUBCASE("dimension checks") {
        CHECK_THROWS_AS(weyl_average_test({1.0}, f, x0, {10.0}), std::invalid_argument);
        TorusTrigPoly bad;
        bad.dim = 5;
        CHECK_THROWS_AS(weyl_average_test({1.0, 1.0}, bad, x0, {10.0}), std::invalid_argument);
    }
}

TEST_CASE("config round trip and validation") {
    SUBCASE("reference config survives JSON round trip") {
        const SimulationConfig cfg = reference_cgl_config();
        const SimulationConfig copy = config_from_json(config_to_json(cfg));
        CHECK(copy.grid == cfg.grid);
        CHECK(copy.truncation == cfg.truncation);
        CHECK(copy.epsilon_sweep == cfg.epsilon_sweep);
        CHECK(copy.nonlinearity.gamma_r == cfg.nonlinearity.gamma_r);
        CHECK(copy.integrator.dt_slow == cfg.integrator.dt_slow);
        CHECK(copy.averaging.seed == cfg.averaging.seed);
    }
    SUBCASE("non-decreasing sweeps are rejected") {
        SimulationConfig cfg = reference_cgl_config();
        cfg.epsilon_sweep = {0.1, 0.2};
        CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    }
    SUBCASE("initial mode out of range is rejected") {
        SimulationConfig cfg = reference_cgl_config();
        cfg.initial.entries[0].mode = 99;
        CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    }
    SUBCASE("oversized truncation is rejected") {
        SimulationConfig cfg = reference_cgl_config();
        cfg.truncation = 64;
        CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    }
    SUBCASE("reference initial datum is normalized in L2") {
        const SimulationConfig cfg = reference_cgl_config();
        const SpectralBasis basis = assemble_operator(build_potential(cfg), cfg.grid, cfg.truncation);
        const ModeVector v0 = build_initial_modes(cfg, basis);
        CHECK(hp_norm(v0, basis, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(v0[0] - cplx(1.0, 1.0) / std::sqrt(2.0)) <= 1e-12);
    }
}

TEST_CASE("zero-spec study has vanishing errors and a single-row sweep works") {
    SimulationConfig cfg = zero_spec_config();
    SUBCASE("both sides conserve actions") {
        const StudyResult result = convergence_study(cfg, 2, false);
        REQUIRE(result.rows.size() == 2);
        for (const StudyRow& row : result.rows) {
            CHECK(*row.sup_err_q0 <= 1e-10);
            CHECK(*row.sup_err_q1 <= 1e-10);
            CHECK(row.sup_xi <= 1e-10);
        }
    }
    SUBCASE("sweep of length one") {
        cfg.epsilon_sweep = {0.1};
        const StudyResult result = convergence_study(cfg, 1, false);
        CHECK(result.rows.size() == 1);
    }
    SUBCASE("xi-only skips the effective solve") {
        const StudyResult result = convergence_study(cfg, 1, true);
        CHECK(result.effective.size() == 0);
        for (const StudyRow& row : result.rows) {
            CHECK_FALSE(row.sup_err_q0.has_value());
            CHECK(row.sup_xi <= 1e-10);
        }
    }
}

TEST_CASE("study aborts on divergence naming the epsilon") {
    SimulationConfig cfg = zero_spec_config();
    cfg.integrator.blowup_threshold = 1e-6;
    CHECK_THROWS_AS(convergence_study(cfg, 1, false), integration_error);
}

TEST_CASE("cli exit codes and outputs") {
    SUBCASE("missing config file") {
        CHECK(run_cli({"simulate", "--config", "/nonexistent/nope.json"}) == 1);
    }
    SUBCASE("malformed config file") {
        const fs::path dir = fresh_dir("badcfg");
        write_text_file((dir / "bad.json").string(), "{ not json ");
        CHECK(run_cli({"simulate", "--config", (dir / "bad.json").string()}) == 1);
        write_text_file((dir / "schema.json").string(), "{\"grid\": {\"dim\": 1}}");
        CHECK(run_cli({"simulate", "--config", (dir / "schema.json").string()}) == 1);
    }
    SUBCASE("unknown subcommand is a usage error") {
        CHECK(run_cli({"frobnicate"}) != 0);
    }
    SUBCASE("simulate and effective happy path") {
        const fs::path dir = fresh_dir("simulate");
        SimulationConfig cfg = zero_spec_config();
        cfg.output_dir = (dir / "out").string();
        write_text_file((dir / "cfg.json").string(), config_to_json(cfg).dump(2));
        CHECK(run_cli({"simulate", "--config", (dir / "cfg.json").string()}) == 0);
        CHECK(fs::exists(dir / "out" / "trajectory.csv"));
        CHECK(fs::exists(dir / "out" / "trajectory.json"));
        CHECK(run_cli({"effective", "--config", (dir / "cfg.json").string()}) == 0);
        CHECK(fs::exists(dir / "out" / "effective.csv"));
        const std::string head = read_file(dir / "out" / "trajectory.csv").substr(0, 24);
        CHECK(head.rfind("tau,k,re_v,im_v,action", 0) == 0);
    }
    SUBCASE("blow-up threshold below the initial norm exits 2") {
        const fs::path dir = fresh_dir("blowup");
        SimulationConfig cfg = zero_spec_config();
        cfg.integrator.blowup_threshold = 1e-9;
        cfg.output_dir = (dir / "out").string();
        write_text_file((dir / "cfg.json").string(), config_to_json(cfg).dump(2));
        CHECK(run_cli({"simulate", "--config", (dir / "cfg.json").string()}) == 2);
    }
    SUBCASE("converge writes deterministic outputs") {
        const fs::path dir = fresh_dir("converge");
        SimulationConfig cfg = zero_spec_config();
        cfg.output_dir = (dir / "out_a").string();
        write_text_file((dir / "cfg.json").string(), config_to_json(cfg).dump(2));
        CHECK(run_cli({"converge", "--config", (dir / "cfg.json").string(), "--threads", "2"}) == 0);
        CHECK(run_cli({"converge", "--config", (dir / "cfg.json").string(), "--threads", "1",
                       "--out", (dir / "out_b").string()}) == 0);
        CHECK(fs::exists(dir / "out_a" / "study.csv"));
        CHECK(fs::exists(dir / "out_a" / "summary.json"));
        CHECK(fs::exists(dir / "out_a" / "effective.csv"));
        const std::string a = strip_wallclock(read_file(dir / "out_a" / "study.csv"));
        const std::string b = strip_wallclock(read_file(dir / "out_b" / "study.csv"));
        CHECK(a == b);
        CHECK(read_file(dir / "out_a" / "trajectory_eps_0.2.csv") ==
              read_file(dir / "out_b" / "trajectory_eps_0.2.csv"));
    }
    SUBCASE("spectrum exports a loadable basis") {
        const fs::path dir = fresh_dir("spectrum");
        SimulationConfig cfg = zero_spec_config();
        cfg.output_dir = (dir / "out").string();
        write_text_file((dir / "cfg.json").string(), config_to_json(cfg).dump(2));
        CHECK(run_cli({"spectrum", "--config", (dir / "cfg.json").string(), "--out",
                       (dir / "basis.json").string()}) == 0);
        const SpectralBasis basis = load_basis((dir / "basis.json").string());
        CHECK(basis.truncation == cfg.truncation);
    }
    SUBCASE("weyl table runs standalone") {
        CHECK(run_cli({"weyl", "--horizons", "10", "50"}) == 0);
    }
    SUBCASE("xi-only study leaves the error columns empty") {
        const fs::path dir = fresh_dir("xionly");
        SimulationConfig cfg = zero_spec_config();
        cfg.output_dir = (dir / "out").string();
        write_text_file((dir / "cfg.json").string(), config_to_json(cfg).dump(2));
        CHECK(run_cli({"converge", "--config", (dir / "cfg.json").string(), "--xi-only"}) == 0);
        std::stringstream csv(read_file(dir / "out" / "study.csv"));
        std::string line;
        std::getline(csv, line);
        CHECK(line == "epsilon,sup_err_q0,sup_err_q1,sup_xi,wallclock_s");
        std::getline(csv, line);
        CHECK(line.find(",,,") != std::string::npos);  // q0/q1 empty
        CHECK_FALSE(fs::exists(dir / "out" / "effective.csv"));
    }
    SUBCASE("epsilon flag overrides the config") {
        const fs::path dir = fresh_dir("epsflag");
        SimulationConfig cfg = zero_spec_config();
        cfg.output_dir = (dir / "out").string();
        write_text_file((dir / "cfg.json").string(), config_to_json(cfg).dump(2));
        CHECK(run_cli({"converge", "--config", (dir / "cfg.json").string(), "--epsilon",
                       "0.15"}) == 0);
        std::stringstream csv(read_file(dir / "out" / "study.csv"));
        std::string line;
        std::getline(csv, line);
        std::getline(csv, line);
        CHECK(std::stod(line.substr(0, line.find(','))) == 0.15);
        CHECK_FALSE(std::getline(csv, line));  // single-row sweep
    }
    SUBCASE("environment variable provides the default seed") {
        const fs::path dir = fresh_dir("envseed");
        SimulationConfig cfg = zero_spec_config();
        cfg.averaging.seed = 0;
        cfg.epsilon_sweep = {0.2};
        cfg.output_dir = (dir / "out").string();
        write_text_file((dir / "cfg.json").string(), config_to_json(cfg).dump(2));
        setenv("WNLSE_SEED", "777", 1);
        CHECK(run_cli({"converge", "--config", (dir / "cfg.json").string()}) == 0);
        unsetenv("WNLSE_SEED");
        const std::string summary = read_file(dir / "out" / "summary.json");
        CHECK(nlohmann::json::parse(summary)["config"]["averaging"]["seed"].get<int>() == 777);
        // an explicit flag beats both config and environment
        setenv("WNLSE_SEED", "777", 1);
        CHECK(run_cli({"converge", "--config", (dir / "cfg.json").string(), "--seed", "42",
                       "--out", (dir / "out2").string()}) == 0);
        unsetenv("WNLSE_SEED");
        const std::string summary2 = read_file(dir / "out2" / "summary.json");
        CHECK(nlohmann::json::parse(summary2)["config"]["averaging"]["seed"].get<int>() == 42);
    }
}
