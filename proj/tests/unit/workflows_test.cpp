#include <doctest.h>
#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cmath>
#include <numbers>
#include <random>

#include "../common/workflow_scenario.hpp"
#include "rdm/previews/png.hpp"
#include "rdm/workflows/plot.hpp"
#include "rdm/workflows/report.hpp"
#include "rdm/workflows/scheduler.hpp"
#include "rdm/workflows/stress_strain.hpp"
#include "support.hpp"

using namespace rdm;
using rdm::test::TempDir;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an rdm::Error");
  return ErrorCode::Io;
}

LoadDisplacementSeries random_series(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 5e-7), f(0.0, 5e-2);
  LoadDisplacementSeries s;
  for (std::size_t i = 0; i < n; ++i) s.samples.push_back({0.1 * double(i), u(rng), f(rng)});
  return s;
}

// Engineering stress written out from the area of the top face.
double oracle_stress(double load, double diameter) {
  const double radius = diameter / 2.0;
  const double area = std::numbers::pi * radius * radius;
  return load / area;
}

}  // namespace

TEST_SUITE("workflows") {

TEST_CASE("load csv parsing converts to SI") {
  const auto s = parse_load_csv("time_s,displacement_nm,load_mN\n0,0,0\n0.5,50,1\n1.0,100,2.5\n");
  REQUIRE(s.samples.size() == 3);
  CHECK(s.samples[1].time == 0.5);
  CHECK(s.samples[1].displacement == 50 * 1e-9);
  CHECK(s.samples[2].load == 2.5 * 1e-3);
  CHECK(parse_load_csv("time_s,displacement_nm,load_mN\r\n0,1,2\r\n").samples.size() == 1);

  CHECK(code_of([] { parse_load_csv(""); }) == ErrorCode::Header);
  CHECK(code_of([] { parse_load_csv("time,disp,load\n0,0,0\n"); }) == ErrorCode::Header);
  try {
    parse_load_csv("time_s,displacement_nm,load_mN\n0,0,0\n1,abc,2\n");
    FAIL("expected SYNTAX");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Syntax);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK(code_of([] { parse_load_csv("time_s,displacement_nm,load_mN\n0,0\n"); }) == ErrorCode::Syntax);
  CHECK(code_of([] { parse_load_csv("time_s,displacement_nm,load_mN\n1,0,0\n1,0,0\n"); }) ==
        ErrorCode::Domain);
  CHECK(code_of([] { parse_load_csv("time_s,displacement_nm,load_mN\n0,nan,0\n"); }) ==
        ErrorCode::Domain);
}

TEST_CASE("geometry csv parsing") {
  const auto g = parse_geometry_csv("pillar_id,diameter_top_um,height_um\nMP1,2,5\nMP2,1.5,4\n");
  REQUIRE(g.size() == 2);
  CHECK(g[0] == PillarGeometry{"MP1", 2 * 1e-6, 5 * 1e-6});
  CHECK(g[1].diameter_top == 1.5 * 1e-6);
  CHECK(code_of([] { parse_geometry_csv("id,d,h\n"); }) == ErrorCode::Header);
  CHECK(code_of([] { parse_geometry_csv("pillar_id,diameter_top_um,height_um\nMP1,0,5\n"); }) ==
        ErrorCode::Domain);
  CHECK(code_of([] {
          parse_geometry_csv("pillar_id,diameter_top_um,height_um\nMP1,1,5\nMP1,2,5\n");
        }) == ErrorCode::Domain);
  CHECK(parse_geometry_csv(write_geometry_csv(g)) == g);
}

TEST_CASE("csv writers round trip") {
  std::mt19937_64 rng(8);
  const auto s = random_series(rng, 50);
  const auto back = parse_load_csv(write_load_csv(s));
  REQUIRE(back.samples.size() == s.samples.size());
  for (std::size_t i = 0; i < s.samples.size(); ++i) {
    CHECK(back.samples[i].time == doctest::Approx(s.samples[i].time).epsilon(1e-15));
    CHECK(back.samples[i].displacement == doctest::Approx(s.samples[i].displacement).epsilon(1e-15));
    CHECK(back.samples[i].load == doctest::Approx(s.samples[i].load).epsilon(1e-15));
  }
}

TEST_CASE("hand-derived stress and strain") {
  LoadDisplacementSeries s{{{0, 0, 0}, {1, 5.0e-8, 1.0e-3}}};
  const auto c = stress_strain(s, {"P", 1.0e-6, 2.0e-6});
  REQUIRE(c.points.size() == 2);
  CHECK(c.points[0] == CurvePoint{0, 0});
  CHECK(std::abs(c.points[1].stress - 1.2732395e9) / 1.2732395e9 < 1e-6);
  CHECK(c.points[1].strain == doctest::Approx(0.025).epsilon(1e-15));

  CHECK(code_of([] { stress_strain({}, {"P", 1e-6, 1e-6}); }) == ErrorCode::Empty);
  CHECK(code_of([&] { stress_strain(s, {"P", 0, 1e-6}); }) == ErrorCode::Domain);
  CHECK(code_of([&] { stress_strain(s, {"P", 1e-6, -1e-6}); }) == ErrorCode::Domain);

  const auto csv = curve_csv(c);
  CHECK(csv.starts_with("strain,stress_Pa\n"));
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(to_json(c)["points"].size() == 2);
}

TEST_CASE("stress matches an independent evaluator") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> size(1e-7, 1e-5);
  for (int k = 0; k < 100; ++k) {
    const auto s = random_series(rng, 1 + rng() % 200);
    const PillarGeometry g{"P", size(rng), size(rng)};
    const auto c = stress_strain(s, g);
    REQUIRE(c.points.size() == s.samples.size());
    for (std::size_t i = 0; i < s.samples.size(); ++i) {
      const double expect = oracle_stress(s.samples[i].load, g.diameter_top);
      if (expect == 0)
        CHECK(c.points[i].stress == 0);
      else
        CHECK(std::abs(c.points[i].stress - expect) / expect <= 1e-12);
      const double strain = s.samples[i].displacement / g.height;
      CHECK(std::abs(c.points[i].strain - strain) <= 1e-12 * std::abs(strain));
    }
  }
}

TEST_CASE("stress and strain scale linearly") {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 50; ++k) {
    const auto s = random_series(rng, 30);
    const PillarGeometry g{"P", 1.25e-6, 3e-6};
    const auto base = stress_strain(s, g);
    auto scaled = s;
    for (auto& p : scaled.samples) p.load *= 4.0;
    const auto loads = stress_strain(scaled, g);
    const auto wide = stress_strain(s, {"P", 2 * g.diameter_top, g.height});
    const auto tall = stress_strain(s, {"P", g.diameter_top, 2 * g.height});
    for (std::size_t i = 0; i < s.samples.size(); ++i) {
      CHECK(loads.points[i].stress == 4.0 * base.points[i].stress);
      CHECK(wide.points[i].stress == base.points[i].stress / 4.0);
      CHECK(tall.points[i].strain == base.points[i].strain / 2.0);
    }
  }
}

TEST_CASE("curve rendering is a deterministic PNG") {
  LoadDisplacementSeries s{{{0, 0, 0}, {1, 5.0e-8, 1.0e-3}}};
  const auto c = stress_strain(s, {"MP1", 1.0e-6, 2.0e-6});
  const auto png = render_curve(c);
  REQUIRE(png.size() > 8);
  CHECK(png[0] == 0x89);
  CHECK(png[1] == 'P');
  CHECK(png[2] == 'N');
  CHECK(png[3] == 'G');
  CHECK(render_curve(c) == png);
  const auto img = decode_png(png);
  CHECK(img.width == kPlotWidth);
  CHECK(img.height == kPlotHeight);
  const auto text = read_png_text(png);
  CHECK(std::find(text.begin(), text.end(), std::pair<std::string, std::string>{"x_axis", "strain [-]"}) !=
        text.end());
  CHECK(std::find(text.begin(), text.end(), std::pair<std::string, std::string>{"y_axis", "stress [Pa]"}) !=
        text.end());
  CHECK(code_of([] { render_curve({}); }) == ErrorCode::Empty);
  CHECK(text_width("AB", 2) == 2 * text_width("AB"));
}

TEST_CASE("prep report orders rows and warns on degenerate input") {
  Repository repo({std::nullopt, test::stepping_clock()});
  ObjectRecord e;
  e.type_name = "PREPARATION_EXP";
  e.properties = {{"title", "Polishing FeAl"}};
  const auto entry = repo.put_object(e);
  test::add_prep_step(repo, entry, 3, "Final polish", "colloidal silica", "none", 300);
  test::add_prep_step(repo, entry, 1, "Grinding", "SiC P800", "water", 120);
  test::add_prep_step(repo, entry, 2, "Polishing", "diamond 3 µm", "alcohol", 240);

  const auto t = prep_report(repo, entry);
  CHECK(t.title == "Preparation report: Polishing FeAl");
  CHECK(t.columns == kPrepReportColumns);
  REQUIRE(t.rows.size() == 3);
  CHECK(t.rows[0] == std::vector<std::string>{"1", "Grinding", "SiC P800", "water", "120 s"});
  CHECK(t.rows[1][1] == "Polishing");
  CHECK(t.rows[2][1] == "Final polish");
  CHECK(t.warnings.empty());

  const auto html = render_html(t);
  CHECK(html.find("<th>Abrasive</th>") != std::string::npos);
  CHECK(html.find("diamond 3 µm") != std::string::npos);
  const auto text = render_text(t);
  const auto body = text.find('\n');
  CHECK(text.find("Grinding", body) < text.find("Polishing", body));
  CHECK(to_json(t)["rows"].size() == 3);

  test::add_prep_step(repo, entry, 2, "Repeat polish");
  const auto dup = prep_report(repo, entry);
  CHECK(dup.rows.size() == 4);
  CHECK(dup.warnings.size() == 1);

  ObjectRecord empty;
  empty.type_name = "PREPARATION_EXP";
  empty.properties = {{"title", "nothing yet"}};
  const auto none = prep_report(repo, repo.put_object(empty));
  CHECK(none.rows.empty());
  CHECK(none.columns == kPrepReportColumns);
  CHECK(none.warnings.size() == 1);
  CHECK(code_of([&] { prep_report(repo, PermId("19700101000000000-2")); }) == ErrorCode::NotFound);
}

TEST_CASE("every step appears in exactly one row") {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 20; ++k) {
    Repository repo({std::nullopt, test::stepping_clock()});
    const auto entry = repo.put_object(test::entry("PREPARATION_EXP"));
    const int n = static_cast<int>(rng() % 8);
    std::multiset<std::string> names;
    for (int i = 0; i < n; ++i) {
      const auto name = "step-" + std::to_string(i);
      test::add_prep_step(repo, entry, static_cast<int>(rng() % 4), name);
      names.insert(name);
    }
    const auto t = prep_report(repo, entry);
    std::multiset<std::string> rows;
    for (const auto& r : t.rows) rows.insert(r[1]);
    CHECK(rows == names);
    for (std::size_t i = 1; i < t.rows.size(); ++i)
      CHECK(std::stoi(t.rows[i - 1][0]) <= std::stoi(t.rows[i][0]));
  }
}

TEST_CASE("scheduler runs each workflow once") {
  TempDir dir;
  Repository repo({std::nullopt, test::stepping_clock()});
  auto store = BlobStore::on_filesystem(dir.path());
  const auto entry = test::add_micro_mech_entry(repo, store, demo_pillars(), 3);
  Scheduler scheduler(repo, store);

  const auto first = scheduler.tick();
  REQUIRE(first.size() == 1);
  CHECK_FALSE(first[0].skipped);
  CHECK(first[0].reason == "executed");
  CHECK(first[0].workflow_name == kStressStrainWorkflow);
  CHECK(first[0].produced_datasets.size() == 4);

  std::set<std::string> names;
  std::size_t figures = 0;
  for (const auto& d : repo.datasets_of(entry)) {
    names.insert(d->original_filename);
    if (d->dataset_type == "DERIVED_FIGURE") {
      ++figures;
      CHECK(d->preview);
      CHECK(is_png(store.get_blob(d->blob)));
    }
  }
  CHECK(figures == 2);
  CHECK(names.contains("MP1_stress_strain.png"));
  CHECK(names.contains("MP2_stress_strain.png"));
  CHECK(names.contains("MP1_stress_strain.csv"));

  const auto count = repo.datasets().size();
  const auto second = scheduler.tick();
  REQUIRE(second.size() == 1);
  CHECK(second[0].skipped);
  CHECK(second[0].reason == "up to date");
  CHECK(repo.datasets().size() == count);

  // New input data legitimately re-triggers the analysis.
  register_linked_dataset(repo, store, entry,
                          to_bytes(write_load_csv(demo_load_series(demo_pillars()[0], 77, 30))),
                          "LOAD_DISPLACEMENT", std::nullopt, "MP1.csv");
  const auto third = scheduler.tick();
  REQUIRE(third.size() == 1);
  CHECK_FALSE(third[0].skipped);
}

TEST_CASE("scheduler reports missing inputs") {
  TempDir dir;
  Repository repo({std::nullopt, test::stepping_clock()});
  auto store = BlobStore::on_filesystem(dir.path());
  ObjectRecord e;
  e.type_name = "MICRO_MECH_EXP";
  e.properties = {{"title", "geometry only"}, {"pillar_geometry", write_geometry_csv(demo_pillars())}};
  const auto entry = repo.put_object(e);
  Scheduler scheduler(repo, store);
  const auto out = scheduler.run_stress_strain(entry);
  CHECK(out.skipped);
  CHECK(out.reason.starts_with("missing input"));
  CHECK(out.produced_datasets.empty());

  const auto plain = repo.put_object(test::entry());
  CHECK(code_of([&] { scheduler.run_stress_strain(plain); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { scheduler.run_stress_strain(PermId("19700101000000000-4")); }) ==
        ErrorCode::NotFound);
  CHECK(scheduler.run_prep_report(plain).reason.starts_with("missing input"));
}

TEST_CASE("prep report job attaches html and text") {
  TempDir dir;
  Repository repo({std::nullopt, test::stepping_clock()});
  auto store = BlobStore::on_filesystem(dir.path());
  const auto entry = repo.put_object(test::entry("PREPARATION_EXP", "Polishing"));
  test::add_prep_step(repo, entry, 1, "Grinding");
  Scheduler scheduler(repo, store);
  const auto out = scheduler.run_prep_report(entry);
  CHECK_FALSE(out.skipped);
  REQUIRE(out.produced_datasets.size() == 2);
  std::set<std::string> names;
  for (const auto& id : out.produced_datasets) {
    const auto d = repo.get_dataset(id);
    CHECK(d->dataset_type == "DERIVED_FIGURE");
    names.insert(d->original_filename);
  }
  CHECK(names == std::set<std::string>{"prep_report.html", "prep_report.txt"});
  CHECK(scheduler.run_prep_report(entry).reason == "up to date");

  // Editing a step changes the inputs.
  test::add_prep_step(repo, entry, 2, "Polishing");
  CHECK_FALSE(scheduler.run_prep_report(entry).skipped);
}

TEST_CASE("second tick is a no-op on random repositories") {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 15; ++round) {
    TempDir dir;
    Repository repo({std::nullopt, test::stepping_clock()});
    auto store = BlobStore::on_filesystem(dir.path());
    test::populate_random_workflow_repo(repo, store, rng);
    Scheduler scheduler(repo, store);
    for (const auto& o : scheduler.tick())
      if (o.skipped) CHECK(o.produced_datasets.empty());
    const auto count = repo.datasets().size();
    for (const auto& o : scheduler.tick()) {
      CHECK(o.produced_datasets.empty());
      CHECK(o.skipped);
    }
    CHECK(repo.datasets().size() == count);
  }
}

TEST_CASE("overlapping ticks are refused") {
  TempDir dir;
  Repository repo({std::nullopt, test::stepping_clock()});
  auto store = BlobStore::on_filesystem(dir.path());
  const auto lock = dir / "tick.lock";
  Scheduler a(repo, store, lock);
  CHECK_NOTHROW(a.tick());
  const int fd = ::open(lock.c_str(), O_RDWR | O_CREAT, 0644);
  REQUIRE(fd >= 0);
  REQUIRE(::flock(fd, LOCK_EX | LOCK_NB) == 0);
  CHECK(code_of([&] { a.tick(); }) == ErrorCode::Busy);
  ::flock(fd, LOCK_UN);
  ::close(fd);
  CHECK_NOTHROW(a.tick());
}

}  // TEST_SUITE
