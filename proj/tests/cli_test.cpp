#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

fs::path scratch() {
    static const fs::path dir = [] {
        fs::path p = fs::temp_directory_path() / ("gthermo_cli_" + std::to_string(::getpid()));
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Result cli(const std::string& args, const std::string& env = "") {
    const fs::path out = scratch() / "stdout.txt", err = scratch() / "stderr.txt";
    const std::string cmd = env + " \"" GTHERMO_CLI_PATH "\" " + args + " >\"" + out.string() + "\" 2>\"" + err.string() + "\"";
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

std::string scenario(const std::string& name) { return "\"" GTHERMO_SCENARIO_DIR "/" + name + "\""; }

std::string write_scenario(const std::string& name, const std::string& body) {
    const fs::path p = scratch() / name;
    std::ofstream(p) << body;
    return "\"" + p.string() + "\"";
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

std::vector<double> column(const std::vector<std::string>& rows, int index) {
    std::vector<double> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        std::istringstream row(rows[i]);
        std::string cell;
        for (int k = 0; k <= index; ++k) std::getline(row, cell, ',');
        out.push_back(std::stod(cell));
    }
    return out;
}

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("schema verb prints the shipped schema") {
        const Result r = cli("schema");
        CHECK(r.code == 0);
        const auto doc = nlohmann::json::parse(r.out);
        CHECK(doc.at("additionalProperties") == false);
    }

    TEST_CASE("identity scenario yields an all-zero ledger") {
        const Result r = cli("run " + scenario("identity.json"));
        REQUIRE(r.code == 0);
        const auto doc = nlohmann::json::parse(r.out);
        for (const auto& [k, v] : doc.at("report").items())
            if (v.is_number() && k.rfind("T_", 0) != 0) CHECK_MESSAGE(std::abs(v.get<double>()) < 1e-12, k);
    }

    TEST_CASE("run writes to --out") {
        const fs::path dest = scratch() / "run.json";
        const Result r = cli("run " + scenario("thermal_beam_splitter.json") + " --out \"" + dest.string() + "\"");
        CHECK(r.code == 0);
        CHECK(r.out.empty());
        CHECK(nlohmann::json::parse(slurp(dest)).contains("report"));
    }

    TEST_CASE("validation failures exit 2 and name the problem") {
        const Result unknown = cli("run " + write_scenario("unknown.json", R"({"state": {"family": "product"}, "speed": 1})"));
        CHECK(unknown.code == 2);
        CHECK(unknown.err.find("speed") != std::string::npos);

        CHECK(cli("run " + write_scenario("broken.json", "{ not json")).code == 2);
        CHECK(cli("run \"" + (scratch() / "missing.json").string() + "\"").code == 2);
        CHECK(cli("frobnicate").code == 2);
        CHECK(cli("verify " + scenario("identity.json") + " --mode banana").code == 2);
        CHECK(cli("verify " + scenario("identity.json")).code == 2);
        CHECK(cli("run " + scenario("identity.json"), "GTHERMO_TOL=abc").code == 2);
        CHECK(cli("run " + scenario("identity.json"), "GTHERMO_TOL=-1").code == 2);
        CHECK(cli("sweep " + scenario("identity.json") + " --axis mass --from 0 --to 1 --steps 3").code == 2);

        const Result env = cli("verify " + write_scenario("big.json", R"({"state": {"family": "product", "mode_a": {"n": 9}},
            "transform": {"kind": "fc", "angle": 0.5, "phase": 0}})") + " --mode fock");
        CHECK(env.code == 2);
        CHECK(env.err.find("envelope") != std::string::npos);
    }

    TEST_CASE("physicality failures exit 3") {
        const Result r = cli("run " + write_scenario("bound.json", R"({"state": {"family": "type2", "n_a": 1, "n_b": 1, "c": 1.5}})"));
        CHECK(r.code == 3);
        CHECK(r.err.find("N_A (1 + N_B)") != std::string::npos);
        const Result c = cli("run " + write_scenario("custom.json", R"({"state": {"family": "custom", "n_a": 0, "n_b": 0,
            "custom_eps": [[0.4, 0], [0, 0.4]]}})"));
        CHECK(c.code == 3);
    }

    TEST_CASE("Type-I extraction sweep is a deterministic 100-row table") {
        const Result a = cli("sweep " + scenario("type1_extraction_peak.json"));
        const Result b = cli("sweep " + scenario("type1_extraction_peak.json"), "LC_ALL=C.UTF-8");
        REQUIRE(a.code == 0);
        CHECK(a.out == b.out);
        const auto rows = lines(a.out);
        REQUIRE(rows.size() == 101);
        const auto theta = column(rows, 0), net = column(rows, 6);
        std::size_t best = 0;
        for (std::size_t i = 1; i < net.size(); ++i)
            if (net[i] > net[best]) best = i;
        CHECK(std::abs(theta[best] - 0.955317) < 0.02);
        CHECK(net[best] == doctest::Approx(10.0).epsilon(1e-3));
    }

    TEST_CASE("sweep overrides and --out") {
        const fs::path dest = scratch() / "sweep.csv";
        const Result r = cli("sweep " + scenario("thermal_beam_splitter.json") +
                             " --axis theta --from 0 --to 1.5707963267948966 --steps 5 --out \"" + dest.string() + "\"");
        CHECK(r.code == 0);
        const auto rows = lines(slurp(dest));
        CHECK(rows.size() == 6);
    }

    TEST_CASE("Type-II converter sweeps show correlation-driven cooling") {
        const Result r = cli("sweep " + scenario("anomalous_type2_fc.json"));
        REQUIRE(r.code == 0);
        const auto rows = lines(r.out);
        const auto c = column(rows, 0), dq = column(rows, 4);
        // Equal populations put the threshold at c = 0: every correlated point cools the bath.
        for (std::size_t i = 0; i < dq.size(); ++i) {
            if (std::abs(c[i]) > 1e-9) CHECK(dq[i] < 0);
            if (std::abs(c[i] - 1.2) < 1e-9) CHECK(dq[i] == doctest::Approx(-0.6).epsilon(1e-9));
        }

        const Result t = cli("sweep " + scenario("type2_fc_threshold_sweep.json"));
        REQUIRE(t.code == 0);
        const auto trows = lines(t.out);
        const auto tc = column(trows, 0), tdq = column(trows, 4);
        const double threshold = 1.0239367218776387;
        for (std::size_t i = 0; i < tdq.size(); ++i) {
            if (std::abs(tc[i]) < threshold - 1e-6) CHECK(tdq[i] > 0);
            if (std::abs(tc[i]) > threshold + 1e-6) CHECK(tdq[i] < 0);
        }
    }

    TEST_CASE("verify verbs") {
        const Result cf = cli("verify " + scenario("anomalous_type2_fc.json"));
        CHECK(cf.code == 0);
        CHECK(cf.out.find("status,PASS") != std::string::npos);

        const Result fk = cli("verify " + scenario("anomalous_type2_fock.json"));
        CHECK(fk.code == 0);
        CHECK(fk.out.find("max_abs_diff") != std::string::npos);

        const Result win = cli("verify " + scenario("type1_pa_cooling_window.json"));
        CHECK(win.out.find("c_M,14.1421356237") != std::string::npos);
        CHECK(win.out.find("reference_threshold,13.9") != std::string::npos);
        CHECK(win.out.find("reference_agreement,disagree") != std::string::npos);
    }
}

TEST_SUITE("cli_truncation") {
    TEST_CASE("oracle truncation overflow exits 4") {
        const Result r = cli("verify " + write_scenario("amplified.json", R"({"state": {"family": "product",
            "mode_a": {"n": 4}, "mode_b": {"n": 4}}, "transform": {"kind": "pa", "angle": 0.7, "phase": 0}})") +
                             " --mode fock");
        CHECK(r.code == 4);
        CHECK(r.err.find("Fock levels") != std::string::npos);
    }
}
