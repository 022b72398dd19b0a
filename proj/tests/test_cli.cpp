#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <sstream>
#include <string>

#include "ffgeom/error.hpp"
#include "ffgeom/experiment.hpp"
#include "ffgeom/gen.hpp"
#include "ffgeom/plane.hpp"
#include "ffgeom/report.hpp"
#include "ffgeom/stats.hpp"

using namespace ffgeom;

namespace {

PlanePoint pt(const FieldCtx& ctx, std::int64_t x, std::int64_t y) {
  return {ctx.from_int(x), ctx.from_int(y)};
}

errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& err) {
    return err.code();
  }
  return errc::invalid_argument;
}

}  // namespace

TEST_CASE("generators are seed-deterministic and exact-cardinality") {
  const auto f7 = make_field(7);

  const GenSpec spec{GenKind::random, 20, 0, 99};
  const PointSet a = generate(f7, spec);
  const PointSet b = generate(f7, spec);
  CHECK(a == b);
  CHECK(a.size() == 20);
  const PointSet c = generate(f7, {GenKind::random, 20, 0, 100});
  CHECK_FALSE(a == c);

  // Whole plane is allowed, one above errors.
  CHECK(generate(f7, {GenKind::random, 49, 0, 1}).size() == 49);
  CHECK(code_of([&] { generate(f7, {GenKind::random, 50, 0, 1}); }) ==
        errc::size_exceeds_plane);

  const PointSet line = generate(f7, {GenKind::line, 6, 0, 5});
  CHECK(line.size() == 6);
  const LineF carrier = line_through(f7, line.points()[0], line.points()[1]);
  CHECK_FALSE(carrier.isotropic);
  for (const PlanePoint p : line.points()) CHECK(on_line(f7, carrier, p));

  const PointSet prod = generate(f7, {GenKind::product, 3, 4, 8});
  CHECK(prod.size() == 12);
}

TEST_CASE("grid generator covers the requested square") {
  const auto f5 = make_field(5);
  const PointSet grid = generate(f5, {GenKind::grid, 2, 0, 0});
  CHECK(grid == PointSet(f5, {pt(f5, 0, 0), pt(f5, 0, 1), pt(f5, 1, 0), pt(f5, 1, 1)}));
}

TEST_CASE("isotropic-line generator needs square -1") {
  const auto f5 = make_field(5);
  const PointSet iso = generate(f5, {GenKind::isotropic_line, 5, 0, 11});
  CHECK(iso.size() == 5);
  const LineF carrier = line_through(f5, iso.points()[0], iso.points()[1]);
  CHECK(carrier.isotropic);
  for (const PlanePoint p : iso.points()) {
    CHECK(on_line(f5, carrier, p));
    // Distinct points on an isotropic line sit at distance zero.
    CHECK(distance(f5, iso.points()[0], p).rank == 0);
  }

  const auto f3 = make_field(3);
  CHECK(code_of([&] { generate(f3, {GenKind::isotropic_line, 2, 0, 1}); }) ==
        errc::no_isotropic_lines);
}

TEST_CASE("gen specs parse and reject junk") {
  const GenSpec r = parse_gen_spec("random:40", 7);
  CHECK(r.kind == GenKind::random);
  CHECK(r.size == 40);
  CHECK(r.seed == 7);
  const GenSpec p = parse_gen_spec("product:3x5", 1);
  CHECK(p.size == 3);
  CHECK(p.size2 == 5);
  CHECK(code_of([] { parse_gen_spec("random", 0); }) == errc::parse_error);
  CHECK(code_of([] { parse_gen_spec("mystery:4", 0); }) == errc::parse_error);
  CHECK(code_of([] { parse_gen_spec("random:x", 0); }) == errc::parse_error);
}

TEST_CASE("CSV column order is fixed") {
  const Report empty;
  CHECK(to_csv(empty) ==
        "run_id,seed,p,e,n_E,n_F,statistic,mode,value,bound,holds,borderline,premise_in_range,"
        "elapsed_ms\n");

  ReportRow row;
  row.run_id = 3;
  row.seed = 12345;
  row.p = 7;
  row.e = 1;
  row.n_E = 9;
  row.n_F = 9;
  row.statistic = "T*";
  row.mode = "paper";
  row.value = "216";
  row.holds = true;
  row.elapsed_ms = 5;
  Report report;
  report.rows.push_back(row);
  const std::string csv = to_csv(report);
  CHECK(csv.find("3,12345,7,1,9,9,T*,paper,216,,true,,,5\n") != std::string::npos);

  // Cells holding the delimiter are quoted.
  row.mode = "a,b";
  report.rows[0] = row;
  CHECK(to_csv(report).find("\"a,b\"") != std::string::npos);

  // Stripping the timing column keeps everything else byte-identical.
  CHECK(csv_without_elapsed(csv).find("3,12345,7,1,9,9,T*,paper,216,,true,,\n") !=
        std::string::npos);
}

TEST_CASE("JSON report keeps 64-bit quantities as strings") {
  ReportRow row;
  row.seed = ~std::uint64_t{0};  // would not survive a double round-trip
  row.value = "18446744073709551615";
  Report report;
  report.rows.push_back(row);
  const auto doc = nlohmann::json::parse(to_json(report));
  REQUIRE(doc.is_array());
  CHECK(doc[0]["seed"] == "18446744073709551615");
  CHECK(doc[0]["value"] == "18446744073709551615");
  CHECK(doc[0]["holds"].is_null());
}

TEST_CASE("experiment reproduces the full-grid statistic") {
  ExperimentConfig config;
  config.p = 3;
  config.source_e = "grid:3";
  config.selections = {"T*", "Q"};
  const ExperimentResult result = run_experiment(config);
  REQUIRE(result.report.rows.size() == 2);
  CHECK(result.report.rows[0].statistic == "T*");
  CHECK(result.report.rows[0].mode == "paper");
  CHECK(result.report.rows[0].value == "216");
  CHECK(result.report.rows[1].statistic == "Q");
  CHECK(result.report.rows[1].value == "432");
  CHECK(result.exit_status == 0);
}

TEST_CASE("experiment validates its configuration") {
  ExperimentConfig config;
  config.selections = {"T*"};

  SUBCASE("no selections") {
    config.selections.clear();
    CHECK(code_of([&] { run_experiment(config); }) == errc::config_error);
  }
  SUBCASE("unknown selection") {
    config.selections = {"interocitor"};
    CHECK(code_of([&] { run_experiment(config); }) == errc::config_error);
  }
  SUBCASE("zero instances") {
    config.instances = 0;
    CHECK(code_of([&] { run_experiment(config); }) == errc::config_error);
  }
  SUBCASE("unparseable tree") {
    config.selections = {"trees"};
    config.tree_text = "vertices=3 edges=1-2 pin=1";
    CHECK(code_of([&] { run_experiment(config); }) == errc::config_error);
  }
  SUBCASE("missing tree") {
    config.selections = {"certify"};
    CHECK(code_of([&] { run_experiment(config); }) == errc::config_error);
  }
  SUBCASE("bad generator") {
    config.source_e = "bogus:4";
    CHECK(code_of([&] { run_experiment(config); }) == errc::config_error);
  }
  SUBCASE("composite characteristic") {
    config.p = 4;
    CHECK(code_of([&] { run_experiment(config); }) == errc::config_error);
  }
  SUBCASE("wrong mode for the statistic") {
    config.mode = "nonzero";
    CHECK(code_of([&] { run_experiment(config); }) == errc::config_error);
  }
  SUBCASE("unwritable output path") {
    config.out_path = "/nonexistent-dir/report.csv";
    CHECK(code_of([&] { run_experiment(config); }) == errc::io_error);
  }
}

TEST_CASE("audit sweeps count violations into the exit status") {
  ExperimentConfig config;
  config.p = 7;
  config.source_e = "random:12";
  config.selections = {"incidence_bound"};
  config.instances = 25;
  const ExperimentResult clean = run_experiment(config);
  CHECK(clean.exit_status == 0);
  CHECK(clean.report.rows.size() == 25);
  for (std::size_t i = 0; i < clean.report.rows.size(); ++i) {
    const ReportRow& row = clean.report.rows[i];
    CHECK(row.run_id == i);
    CHECK(row.seed == config.seed + i);
    CHECK(row.holds == true);
  }

  config.selections = {"incidence_bound", "planted_violation"};
  config.instances = 2;
  const ExperimentResult dirty = run_experiment(config);
  CHECK(dirty.exit_status == 2);
  CHECK(dirty.report.rows.size() == 4);
}

TEST_CASE("experiments are deterministic across worker counts") {
  ExperimentConfig config;
  config.p = 11;
  config.source_e = "random:15";
  config.source_f = "random:15";
  config.selections = {"T*", "Q", "bisector_bound"};
  config.instances = 12;
  config.seed = 99;

  setenv("FFGEOM_THREADS", "1", 1);
  const std::string serial = csv_without_elapsed(to_csv(run_experiment(config).report));
  setenv("FFGEOM_THREADS", "4", 1);
  const std::string parallel = csv_without_elapsed(to_csv(run_experiment(config).report));
  const std::string again = csv_without_elapsed(to_csv(run_experiment(config).report));
  unsetenv("FFGEOM_THREADS");
  CHECK(serial == parallel);
  CHECK(parallel == again);

  setenv("FFGEOM_THREADS", "zero", 1);
  CHECK(code_of([&] { run_experiment(config); }) == errc::config_error);
  unsetenv("FFGEOM_THREADS");
}

TEST_CASE("file sources load fixed point sets") {
  const auto f7 = make_field(7);
  const PointSet fixed = generate(f7, {GenKind::random, 9, 0, 123});
  const std::string path = "/tmp/ffgeom_test_points.txt";
  {
    std::ofstream out(path);
    write_point_set(out, fixed);
  }

  ExperimentConfig config;
  config.p = 7;
  config.source_e = "file:" + path;
  config.selections = {"Q"};
  config.instances = 2;
  const ExperimentResult result = run_experiment(config);
  REQUIRE(result.report.rows.size() == 2);
  // Same fixed set regardless of the instance seed.
  CHECK(result.report.rows[0].value == result.report.rows[1].value);
  CHECK(result.report.rows[0].n_E == 9);
  CHECK(result.report.rows[0].value == std::to_string(bisector_energy(fixed)));

  config.p = 5;  // file header says p=7
  CHECK(code_of([&] { run_experiment(config); }) == errc::config_error);

  config.p = 7;
  config.source_e = "file:/tmp/ffgeom_no_such_file.txt";
  CHECK(code_of([&] { run_experiment(config); }) == errc::io_error);
}

TEST_CASE("reports land on disk when a path is set") {
  ExperimentConfig config;
  config.p = 5;
  config.source_e = "grid:2";
  config.selections = {"T*"};
  config.out_path = "/tmp/ffgeom_test_report.csv";
  run_experiment(config);

  std::ifstream in(config.out_path);
  REQUIRE(in.good());
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  CHECK(text.starts_with("run_id,seed,"));
  CHECK(text.find(",T*,paper,") != std::string::npos);
}
