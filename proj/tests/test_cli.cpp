#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "fermi");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = fermi::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

nlohmann::json invoke_json(std::vector<std::string> args) {
    args.push_back("--format");
    args.push_back("json");
    const Outcome o = invoke(std::move(args));
    REQUIRE(o.code == 0);
    return nlohmann::json::parse(o.out);
}

std::vector<double> column(const nlohmann::json& doc, const std::string& name) {
    std::vector<double> v;
    for (const auto& r : doc["records"]) v.push_back(r[name].is_null() ? NAN : r[name].get<double>());
    return v;
}

}  // namespace

TEST_CASE("transform to-rw for Milne") {
    const auto doc = invoke_json({"transform", "to-rw", "--model", "milne", "--tau", "2", "--rho", "1.7320508"});
    const auto& r = doc["records"][0];
    CHECK(r["t"].get<double>() == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(r["chi"].get<double>() == doctest::Approx(1.3169579).epsilon(1e-7));
    CHECK(r["rho_slice"].get<double>() == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("transform to-fermi at the origin") {
    const auto doc = invoke_json({"transform", "to-fermi", "--model", "power-law", "--alpha", "1", "--t", "1", "--chi", "0"});
    const auto& r = doc["records"][0];
    CHECK(r["tau"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(r["rho"].get<double>()) < 1e-12);
}

TEST_CASE("transform CSV output has a header and one row") {
    const Outcome o = invoke({"transform", "to-rw", "--model", "radiation", "--tau", "1", "--rho", "1"});
    CHECK(o.code == 0);
    std::istringstream is(o.out);
    std::string header, row, extra;
    std::getline(is, header);
    std::getline(is, row);
    CHECK(header == "tau,rho,theta,phi,t,chi,sigma,rho_slice");
    CHECK_FALSE(row.empty());
    CHECK_FALSE(std::getline(is, extra));
}

TEST_CASE("point outside the slice exits with the domain code") {
    const Outcome o = invoke({"transform", "to-rw", "--model", "milne", "--tau", "1", "--rho", "2"});
    CHECK(o.code == fermi::cli::kDomain);
    CHECK(o.err.find("rho_M = 1") != std::string::npos);
    CHECK(o.out.empty());
}

TEST_CASE("usage errors and help") {
    CHECK(invoke({}).code == fermi::cli::kUsage);
    CHECK(invoke({"transform", "to-rw", "--tau", "1"}).code == fermi::cli::kUsage);
    CHECK(invoke({"sweep", "metric", "--from", "0", "--to", "1", "--n", "1"}).code == fermi::cli::kUsage);
    CHECK(invoke({"transform", "to-rw", "--model", "closed", "--tau", "1", "--rho", "0"}).code == fermi::cli::kUsage);
    const Outcome help = invoke({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("transform") != std::string::npos);
}

TEST_CASE("power law without exponent is a domain error") {
    CHECK(invoke({"transform", "to-rw", "--model", "power-law", "--tau", "1", "--rho", "0.1"}).code ==
          fermi::cli::kDomain);
}

TEST_CASE("velocity sweep for matter approaches the supremum") {
    const auto doc = invoke_json(
        {"sweep", "velocity", "--model", "matter", "--tau", "200", "--from", "0.1", "--to", "20", "--n", "30"});
    const auto v = column(doc, "v_fermi");
    REQUIRE(v.size() == 30);
    for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i] > v[i - 1]);
    CHECK(v.back() < 1.31103 + 1e-5);
    CHECK(v.back() > 1.2);
}

TEST_CASE("radius sweep for radiation") {
    const auto doc = invoke_json({"sweep", "radius", "--model", "radiation", "--from", "1", "--to", "10", "--n", "10"});
    const auto tau = column(doc, "tau");
    const auto r = column(doc, "rho_slice");
    for (std::size_t i = 0; i < tau.size(); ++i) {
        CHECK(std::abs(r[i] - std::numbers::pi / 2 * tau[i]) < 1e-8);
    }
}

TEST_CASE("geometric geodesic sweep for Milne") {
    const auto doc = invoke_json({"sweep", "geodesic", "--model", "milne", "--tau", "1", "--from", "1", "--to", "100",
                                  "--n", "5", "--spacing", "geometric"});
    const auto sigma = column(doc, "sigma");
    const auto t = column(doc, "t");
    const std::vector<double> expected{1.0, std::sqrt(10.0), 10.0, std::pow(10.0, 1.5), 100.0};
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        CHECK(sigma[i] == doctest::Approx(expected[i]).epsilon(1e-13));
        CHECK(t[i] == doctest::Approx(1.0 / std::sqrt(sigma[i])).epsilon(1e-12));
    }
}

TEST_CASE("failing rows carry an error column") {
    const auto doc = invoke_json({"sweep", "metric", "--model", "milne", "--tau", "1", "--from", "0.5", "--to", "1.5",
                                  "--n", "3"});
    const auto& rows = doc["records"];
    REQUIRE(rows.size() == 3);
    CHECK(rows[0]["error"].is_null());
    CHECK(rows[2]["error"].is_string());
    CHECK(rows[2]["g_tau_tau"].is_null());
    CHECK(rows[2]["rho"].get<double>() == 1.5);

    const Outcome csv = invoke({"sweep", "metric", "--model", "milne", "--tau", "1", "--from", "0.5", "--to", "1.5",
                                "--n", "3"});
    CHECK(csv.code == 0);
    CHECK(csv.out.rfind("rho,sigma,g_tau_tau,g_rho_rho,ang,lambda,error\n", 0) == 0);
    CHECK(csv.out.find("outside the slice") != std::string::npos);
}

TEST_CASE("JSON document layout") {
    const auto doc = invoke_json({"sweep", "radius", "--model", "de-sitter", "--h0", "2", "--from", "1", "--to", "2",
                                  "--n", "2", "--meta"});
    CHECK(doc["schema"]["kind"] == "sweep-radius");
    CHECK(doc["schema"]["columns"].size() == 4);
    CHECK(doc.contains("model"));
    CHECK(doc.contains("meta"));
    CHECK(doc["records"].size() == 2);
}

TEST_CASE("output is deterministic") {
    const std::vector<std::string> args{"sweep", "metric", "--model", "matter", "--tau", "2", "--from", "0",
                                        "--to", "1", "--n", "7"};
    const Outcome a = invoke(args);
    const Outcome b = invoke(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("output file option") {
    const auto path = std::filesystem::temp_directory_path() / "fermi_cli_output_test.csv";
    const Outcome o = invoke({"sweep", "radius", "--model", "milne", "--from", "1", "--to", "2", "--n", "2", "-o",
                              path.string()});
    CHECK(o.code == 0);
    CHECK(o.out.empty());
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "tau,rho_slice,hubble_radius,error");
    std::filesystem::remove(path);
}

TEST_CASE("tabulated model from a CSV file") {
    const auto path = std::filesystem::temp_directory_path() / "fermi_cli_table_test.csv";
    {
        std::ofstream f(path);
        f << "t,a\n";
        for (int i = 0; i < 200; ++i) {
            const double t = 0.01 * std::pow(2000.0, i / 199.0);
            char line[64];
            std::snprintf(line, sizeof line, "%.17g,%.17g\n", t, std::sqrt(t));
            f << line;
        }
    }
    // Knots of the interpolant slow the adaptive rule; the default subdivision cap reports that per row.
    const auto strict = invoke_json({"sweep", "radius", "--model", "tabulated", "--table", path.string(), "--from",
                                     "1", "--to", "3", "--n", "3"});
    CHECK(strict["records"][1]["error"].get<std::string>().find("no convergence") != std::string::npos);
    const auto doc = invoke_json({"sweep", "radius", "--model", "tabulated", "--table", path.string(), "--from", "1",
                                  "--to", "3", "--n", "3", "--max-iter", "5000"});
    const auto r = column(doc, "rho_slice");
    CHECK(r[1] == doctest::Approx(std::numbers::pi).epsilon(1e-3));
    std::filesystem::remove(path);
    CHECK(invoke({"sweep", "radius", "--model", "tabulated", "--table", path.string(), "--from", "1", "--to", "2"})
              .code == fermi::cli::kDomain);
}

TEST_CASE("verify suites") {
    const Outcome all = invoke({"verify", "all"});
    CHECK(all.code == 0);
    CHECK(all.out.find("FAIL") == std::string::npos);

    const Outcome j = invoke({"verify", "closed-forms", "--format", "json"});
    CHECK(j.code == 0);
    const auto doc = nlohmann::json::parse(j.out);
    CHECK(doc["passed"] == true);
    CHECK(doc["checks"].size() >= 12);

    const Outcome ode = invoke({"verify", "ode-oracle", "--model", "power-law", "--alpha", "0.5"});
    CHECK(ode.code == 0);
    CHECK(ode.out.find("PASS") != std::string::npos);

    CHECK(invoke({"verify", "nonsense"}).code == fermi::cli::kUsage);
}
