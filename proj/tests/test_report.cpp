#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "mrcs/errors.hpp"
#include "mrcs/report.hpp"

using namespace mrcs;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    return std::string((std::istreambuf_iterator<char>(f)),
                       std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("csv carries the schema comment and escapes fields") {
    CsvTable t;
    t.schema = "mrcs-test-v1";
    t.columns = {"name", "value"};
    t.rows = {{"plain", "1"}, {"with,comma", "2"}, {"with \"quote\"", "3"}};
    const fs::path path = fs::temp_directory_path() / "mrcs_report.csv";
    write_csv(t, path.string());
    const std::string text = slurp(path);
    CHECK(text.rfind("# schema: mrcs-test-v1\n", 0) == 0);
    CHECK(text.find("name,value\n") != std::string::npos);
    CHECK(text.find("\"with,comma\",2") != std::string::npos);
    CHECK(text.find("\"with \"\"quote\"\"\",3") != std::string::npos);
    fs::remove(path);
}

TEST_CASE("csv row width mismatch is a shape error") {
    CsvTable t;
    t.schema = "mrcs-test-v1";
    t.columns = {"a", "b"};
    t.rows = {{"only-one"}};
    const fs::path path = fs::temp_directory_path() / "mrcs_report_bad.csv";
    CHECK_THROWS_AS(write_csv(t, path.string()), ShapeError);
}

TEST_CASE("svg contains the labels, points, and polyline") {
    SvgPlot p;
    p.title = "test plot";
    p.x_label = "savings";
    p.y_label = "success";
    SvgSeries s;
    s.label = "front";
    s.connect = true;
    s.points = {{0.0, 1.0}, {0.5, 0.8}, {1.0, 0.2}};
    p.series = {s};
    const fs::path path = fs::temp_directory_path() / "mrcs_report.svg";
    write_svg(p, path.string());
    const std::string text = slurp(path);
    CHECK(text.find("<svg") != std::string::npos);
    CHECK(text.find("test plot") != std::string::npos);
    CHECK(text.find("savings") != std::string::npos);
    CHECK(text.find("success") != std::string::npos);
    CHECK(text.find("front") != std::string::npos);
    CHECK(text.find("<polyline") != std::string::npos);
    CHECK(text.find("<circle") != std::string::npos);
    fs::remove(path);
}

TEST_CASE("unwritable paths raise io errors") {
    CsvTable t;
    t.schema = "s";
    t.columns = {"a"};
    CHECK_THROWS_AS(write_csv(t, "/nonexistent-dir/x.csv"), IoError);
    CHECK_THROWS_AS(write_svg(SvgPlot{}, "/nonexistent-dir/x.svg"), IoError);
}
