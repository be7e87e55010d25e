#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "hdisk/cli.hpp"

namespace {

namespace fs = std::filesystem;

fs::path temp_dir() {
    auto d = fs::temp_directory_path() / "hdisk_cli_tests";
    fs::create_directories(d);
    return d;
}

fs::path temp_file(const std::string& name) { return temp_dir() / name; }

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(std::initializer_list<std::string> args) {
    std::vector<std::string> store{"hdisk"};
    store.insert(store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : store) argv.push_back(s.c_str());
    return hdisk::cli_main(static_cast<int>(argv.size()), argv.data());
}

} // namespace

TEST_CASE("eval: corpus entry to json report") {
    auto out = temp_file("eval_btp.json");
    int rc = run_cli({"eval", "--corpus", "identity", "--functional", "bt_p", "--p", "2",
                      "--out", out.string()});
    CHECK(rc == 0);

    auto doc = nlohmann::json::parse(read_file(out));
    CHECK(doc.at("functional") == "bt_p");
    CHECK(doc.at("entry") == "identity");
    CHECK(doc.at("version") == "hdisk 1.0.0");
    CHECK(doc.at("verdict") == "converged-finite");
    CHECK(std::abs(doc.at("value").get<double>() - M_PI) <= 1e-6);
}

TEST_CASE("eval: divergent run exits 2") {
    auto out = temp_file("eval_div.json");
    int rc = run_cli({"eval", "--corpus", "remark3", "--functional", "besov_seminorm_smooth",
                      "--p", "2", "--out", out.string()});
    CHECK(rc == 2);
    auto doc = nlohmann::json::parse(read_file(out));
    CHECK(doc.at("verdict") == "divergent-suspect");
}

TEST_CASE("eval: csv format") {
    auto out = temp_file("eval.csv");
    int rc = run_cli({"eval", "--corpus", "identity", "--functional", "jacobian",
                      "--format", "csv", "--out", out.string()});
    CHECK(rc == 0);
    auto text = read_file(out);
    CHECK(text.rfind("functional,entry,value,est_error,verdict,boundary_limited,decaying,converged\n", 0) == 0);
    CHECK(text.find("jacobian,identity,1,") != std::string::npos);
}

TEST_CASE("eval: map file with explicit h_prime and w") {
    auto mp = temp_file("map_identity.json");
    write_file(mp, R"({"h_prime": {"op": "const", "value": [1.0, 0.0]},
                       "w": {"op": "const", "value": [0.0, 0.0]}})");
    auto out = temp_file("eval_map.json");
    int rc = run_cli({"eval", "--map", mp.string(), "--functional", "jacobian",
                      "--out", out.string()});
    CHECK(rc == 0);
    auto doc = nlohmann::json::parse(read_file(out));
    CHECK(doc.at("value").get<double>() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("eval: shear-block map file") {
    // shear of phi(z)=z with w(z)=z/2 has h' = 1/(1 - z/2), so P(0) = 1/2
    auto mp = temp_file("map_shear.json");
    write_file(mp, R"({"shear": {
        "phi": {"op": "z"},
        "w": {"op": "scale", "k": [0.5, 0.0], "arg": {"op": "z"}}
    }})");
    auto out = temp_file("eval_shear.json");
    int rc = run_cli({"eval", "--map", mp.string(), "--functional", "pre_schwarzian",
                      "--out", out.string()});
    CHECK(rc == 0);
    auto doc = nlohmann::json::parse(read_file(out));
    CHECK(std::abs(doc.at("value").get<double>() - 0.5) <= 1e-12);
}

TEST_CASE("corpus export round-trips through --map") {
    auto mp = temp_file("mobius_export.json");
    int rc = run_cli({"corpus", "export", "--corpus", "mobius", "--out", mp.string()});
    CHECK(rc == 0);

    auto direct = temp_file("mobius_direct.json");
    auto reload = temp_file("mobius_reload.json");
    CHECK(run_cli({"eval", "--corpus", "mobius", "--functional", "schwarzian_norm",
                   "--cap", "8", "--out", direct.string()}) == 0);
    CHECK(run_cli({"eval", "--map", mp.string(), "--functional", "schwarzian_norm",
                   "--cap", "8", "--out", reload.string()}) == 0);

    auto a = nlohmann::json::parse(read_file(direct));
    auto b = nlohmann::json::parse(read_file(reload));
    CHECK(a.at("value").get<double>() == b.at("value").get<double>());
}

TEST_CASE("corpus list: json, filter, csv") {
    auto out = temp_file("list.json");
    CHECK(run_cli({"corpus", "list", "--out", out.string()}) == 0);
    auto doc = nlohmann::json::parse(read_file(out));
    REQUIRE(doc.is_array());
    CHECK(doc.size() == 16);
    CHECK(doc[0].contains("name"));
    CHECK(doc[0].contains("facts"));

    auto flt = temp_file("list_shear.json");
    CHECK(run_cli({"corpus", "list", "--filter", "shear", "--out", flt.string()}) == 0);
    auto sub = nlohmann::json::parse(read_file(flt));
    CHECK(sub.size() == 3);

    auto csv = temp_file("list.csv");
    CHECK(run_cli({"corpus", "list", "--format", "csv", "--out", csv.string()}) == 0);
    CHECK(read_file(csv).find("identity") != std::string::npos);
}

TEST_CASE("sweep: p axis csv") {
    auto out = temp_file("sweep_p.csv");
    int rc = run_cli({"sweep", "p", "--corpus", "identity", "--functional", "bt_p",
                      "--values", "2", "--format", "csv", "--out", out.string()});
    CHECK(rc == 0);
    auto text = read_file(out);
    CHECK(text.rfind("p,value,est_error,verdict,boundary_limited,decaying,converged\n", 0) == 0);
    // one data row, p=2, value pi
    auto row = text.substr(text.find('\n') + 1);
    CHECK(row.rfind("2,", 0) == 0);
    double value = std::strtod(row.c_str() + 2, nullptr);
    CHECK(std::abs(value - M_PI) <= 1e-6);
}

TEST_CASE("sweep: truncation axis flags growth") {
    auto out = temp_file("sweep_trunc.csv");
    int rc = run_cli({"sweep", "truncation", "--corpus", "remark3", "--functional",
                      "divergence_probe_smooth", "--p", "2", "--format", "csv",
                      "--out", out.string()});
    CHECK(rc == 2);
    auto text = read_file(out);
    CHECK(text.rfind("m,radius,value,growth_exponent,verdict\n", 0) == 0);

    std::vector<double> values;
    std::istringstream lines(text.substr(text.find('\n') + 1));
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        auto c1 = line.find(','), c2 = line.find(',', c1 + 1);
        values.push_back(std::strtod(line.c_str() + c2 + 1, nullptr));
    }
    REQUIRE(values.size() >= 5);
    for (std::size_t i = 1; i < values.size(); ++i) CHECK(values[i] >= values[i - 1]);
}

TEST_CASE("config file is honored and flags win") {
    auto cfg = temp_file("cfg.json");
    write_file(cfg, R"({"p": 3.0})");

    auto from_cfg = temp_file("cfg_p3.json");
    CHECK(run_cli({"eval", "--corpus", "identity", "--functional", "bt_p",
                   "--config", cfg.string(), "--out", from_cfg.string()}) == 0);
    auto a = nlohmann::json::parse(read_file(from_cfg));
    CHECK(std::abs(a.at("value").get<double>() - M_PI / 2.0) <= 1e-6);  // BT_3(id) = pi/2

    auto overridden = temp_file("cfg_p2.json");
    CHECK(run_cli({"eval", "--corpus", "identity", "--functional", "bt_p",
                   "--config", cfg.string(), "--p", "2", "--out", overridden.string()}) == 0);
    auto b = nlohmann::json::parse(read_file(overridden));
    CHECK(std::abs(b.at("value").get<double>() - M_PI) <= 1e-6);
}

TEST_CASE("error paths exit 1") {
    auto cfg = temp_file("bad_cfg.json");
    write_file(cfg, R"({"pp": 3.0})");
    CHECK(run_cli({"eval", "--corpus", "identity", "--functional", "bt_p",
                   "--config", cfg.string()}) == 1);
    CHECK(run_cli({"eval", "--corpus", "identity", "--functional", "no_such"}) == 1);
    CHECK(run_cli({"eval", "--corpus", "identity", "--map", "x.json",
                   "--functional", "jacobian"}) == 1);
    CHECK(run_cli({"eval", "--corpus", "identity"}) == 1);  // missing --functional
    CHECK(run_cli({"sweep", "sideways", "--corpus", "identity",
                   "--functional", "bt_p"}) == 1);
    CHECK(run_cli({"eval", "--corpus", "nope", "--functional", "jacobian"}) == 1);
}

TEST_CASE("reports are byte-identical across reruns") {
    auto r1 = temp_file("det1.json");
    auto r2 = temp_file("det2.json");
    for (const auto& p : {r1, r2}) {
        CHECK(run_cli({"eval", "--corpus", "shear_rho:0.5", "--functional", "qt_p",
                       "--p", "2", "--out", p.string()}) == 0);
    }
    CHECK(read_file(r1) == read_file(r2));
}

TEST_CASE("verify: single fast criterion") {
    auto out = temp_file("verify14.json");
    int rc = run_cli({"verify", "--filter", "14", "--out", out.string()});
    CHECK(rc == 0);
    auto doc = nlohmann::json::parse(read_file(out));
    CHECK(doc.at("criteria").size() == 1);
    CHECK(doc.at("run") == 1);
    CHECK(doc.at("failed") == 0);
    CHECK(doc.at("criteria")[0].at("name") == nlohmann::json("nh-envelopes"));
}
