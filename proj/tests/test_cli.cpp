#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "paretogeo/cli.hpp"
#include "paretogeo/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

using namespace paretogeo;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "paretogeo_test_cli";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const std::string kFixtureFile = std::string(PARETOGEO_TEST_DATA) + "/table2_fixture.txt";

/// Rows of a CSV body (header dropped) split into numeric columns.
std::vector<std::vector<double>> csv_rows(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::vector<double> row;
        for (const auto& f : io::split(line, ',')) row.push_back(std::stod(f));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

TEST_CASE("sample is deterministic under a fixed seed") {
    const auto a = scratch("a.txt");
    const auto b = scratch("b.txt");
    const auto r1 = invoke({"sample", "--alpha", "1", "--beta", "1", "--n", "100", "--seed", "42", "--out", a.string()});
    const auto r2 = invoke({"--seed", "42", "sample", "--alpha", "1", "--beta", "1", "--n", "100", "--out", b.string()});
    REQUIRE(r1.code == cli::kExitOk);
    REQUIRE(r2.code == cli::kExitOk);
    CHECK(slurp(a) == slurp(b));
    CHECK(io::read_sample_file(a).size() == 100);

    const auto report = nlohmann::json::parse(r1.out);
    CHECK(report.at("seed") == 42);
    CHECK(report.at("stats").at("n") == 100);
    const SufficientStats s = io::stats_from_json(report.at("stats"));
    CHECK(s.q1 == model::sufficient_stats(io::read_sample_file(a)).q1);
}

TEST_CASE("sample: MLE is consistent at large n") {
    const auto path = scratch("big.txt");
    const auto r = invoke({"sample", "--alpha", "1", "--beta", "1", "--n", "100000", "--out", path.string()});
    REQUIRE(r.code == cli::kExitOk);
    const auto mle = nlohmann::json::parse(r.out).at("mle");
    CHECK(std::abs(mle.at("alpha").get<double>() - 1.0) < 0.05);
    CHECK(std::abs(mle.at("beta").get<double>() - 1.0) < 0.05);
}

TEST_CASE("sample: invalid parameters are usage errors") {
    const auto r = invoke({"sample", "--alpha", "1", "--beta", "0", "--n", "10", "--out", scratch("x.txt").string()});
    CHECK(r.code == cli::kExitUsage);
    CHECK_FALSE(r.err.empty());
    CHECK(r.out.empty());
    CHECK(invoke({"sample", "--alpha", "1", "--beta", "1", "--n", "10"}).code == cli::kExitUsage);
    CHECK(invoke({"nonsense"}).code == cli::kExitUsage);
}

TEST_CASE("fit reproduces the estimator table from the fixture file") {
    const auto r = invoke({"fit", "--input", kFixtureFile, "--reference", "1,1"});
    REQUIRE(r.code == cli::kExitOk);
    const auto report = nlohmann::json::parse(r.out);
    CHECK(report.at("stats").at("n") == 100);
    CHECK(std::abs(report.at("stats").at("q1").get<double>() - 1.0303) < 1e-12);
    CHECK(std::abs(report.at("stats").at("q2").get<double>() - 91.7082) < 1e-10);
    const auto& rows = report.at("rows");
    REQUIRE(rows.size() == 9);
    const double d[9] = {0.1238, 0.1190, 0.1217, 0.0866, 0.0932, 0.0965, 0.0298, 0.0229, 0.0199};
    for (std::size_t i = 0; i < 9; ++i) {
        const auto row = io::summary_from_json(rows[i]);
        REQUIRE(row.distance_to_reference.has_value());
        CHECK(std::abs(*row.distance_to_reference - d[i]) < 5e-4);
    }
}

TEST_CASE("fit: CSV output reads back") {
    const auto r = invoke({"--format", "csv", "fit", "--input", kFixtureFile, "--known-beta", "1"});
    REQUIRE(r.code == cli::kExitOk);
    std::istringstream in(r.out);
    const auto rows = io::read_summary_csv(in);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].conditioning == bayes::Conditioning::known_beta);
    CHECK(std::abs(rows[2].alpha_hat - 1.0201) < 1e-4);
    CHECK_FALSE(rows[0].distance_to_reference.has_value());
}

TEST_CASE("fit: two-point file") {
    const auto path = scratch("two.txt");
    {
        std::ofstream f(path);
        f << "1\n" << io::format_exact(std::numbers::e) << "\n";
    }
    const auto r = invoke({"fit", "--input", path.string()});
    REQUIRE(r.code == cli::kExitOk);
    const auto rows = nlohmann::json::parse(r.out).at("rows");
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].at("estimator") == "mle");
    CHECK(rows[0].at("alpha").get<double>() == doctest::Approx(1.0));
    CHECK(rows[0].at("beta").get<double>() == doctest::Approx(2.0));
    CHECK(rows[0].at("distance").is_null());
}

TEST_CASE("fit: errors") {
    const auto r = invoke({"fit", "--input", kFixtureFile, "--known-alpha", "1.1"});
    CHECK(r.code == cli::kExitFailure);
    CHECK(r.err.find("alpha exceeds minimum observation") != std::string::npos);

    const auto bad = scratch("bad.txt");
    {
        std::ofstream f(bad);
        f << "1.0\n2.0\n-1\n";
    }
    const auto b = invoke({"fit", "--input", bad.string()});
    CHECK(b.code == cli::kExitFailure);
    CHECK(b.err.find("line 3") != std::string::npos);

    CHECK(invoke({"fit", "--input", scratch("missing.txt").string()}).code == cli::kExitFailure);
}

TEST_CASE("distance") {
    CHECK(invoke({"distance", "1", "1", "1", "1"}).out == "0.000000\n");
    const auto table = invoke({"distance", "1", "1", "1.0303", "1.1271"});
    REQUIRE(table.code == cli::kExitOk);
    CHECK(std::abs(std::stod(table.out) - 0.1238) < 5e-5);
    const auto vertical = invoke({"distance", "1", "1", "1", io::format_exact(std::numbers::e)});
    CHECK(std::abs(std::stod(vertical.out) - 1.0) < 1e-6);
    CHECK(invoke({"--precision", "3", "distance", "1", "1", "1", "1"}).out == "0.000\n");
    CHECK(invoke({"distance", "1", "1", "0", "1"}).code == cli::kExitUsage);
    CHECK(invoke({"distance", "1", "1", "1"}).code == cli::kExitUsage);
}

TEST_CASE("ball") {
    const auto r = invoke({"ball"});
    REQUIRE(r.code == cli::kExitOk);
    const auto rows = csv_rows(r.out);
    CHECK(rows.size() == 32 * 51);
    for (const auto& row : rows) {
        if (row[1] == 1.0) {
            const double d = geometry::distance(ParetoParams(1.0, 1.0), ParetoParams(row[2], row[3]));
            CHECK(std::abs(d - 1.0) < 1e-8);
        }
    }

    const auto path = scratch("ball.csv");
    REQUIRE(invoke({"ball", "--rays", "1", "--steps", "2", "--out", path.string()}).code == cli::kExitOk);
    CHECK(csv_rows(slurp(path)).size() == 2);
    CHECK(invoke({"ball", "--radius", "-1"}).code == cli::kExitUsage);
}

TEST_CASE("curves: marginal beta peaks at the MLE") {
    const auto r = invoke({"curves", "--input", kFixtureFile, "--kind", "marginal_beta", "--grid", "0.6:1.7:1101"});
    REQUIRE(r.code == cli::kExitOk);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 1101);
    std::size_t peak = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i][1] > rows[peak][1]) peak = i;
    }
    // The Gamma(100, r) mode (n - 1) / r sits one hundredth below the mean.
    CHECK(std::abs(rows[peak][0] - 1.1271) < 0.015);
}

TEST_CASE("curves: predictive has its cusp at the minimum observation") {
    const auto r = invoke({"curves", "--input", kFixtureFile, "--kind", "predictive", "--grid", "0.5:2:1501",
                           "--reference", "1,1"});
    REQUIRE(r.code == cli::kExitOk);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 1501);
    CHECK(rows[0].size() == 3);
    std::size_t cusp = 1;
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
        const double bend = std::abs((rows[i + 1][1] - rows[i][1]) - (rows[i][1] - rows[i - 1][1]));
        if (bend > worst) {
            worst = bend;
            cusp = i;
        }
    }
    CHECK(std::abs(rows[cusp][0] - 1.0303) < 2e-3);
}

TEST_CASE("curves: joint density vanishes above the minimum") {
    const auto r = invoke({"curves", "--input", kFixtureFile, "--kind", "joint", "--grid", "0.95:1.1:31",
                           "--grid-beta", "0.8:1.5:11"});
    REQUIRE(r.code == cli::kExitOk);
    const auto rows = csv_rows(r.out);
    CHECK(rows.size() == 31 * 11);
    for (const auto& row : rows) {
        if (row[0] > 1.0303) CHECK(row[2] == 0.0);
    }
    CHECK(invoke({"curves", "--input", kFixtureFile, "--kind", "histogram"}).code == cli::kExitUsage);
}
