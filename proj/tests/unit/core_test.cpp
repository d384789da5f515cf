#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <regex>
#include <set>
#include <thread>

#include "rdm/core/elements.hpp"
#include "rdm/core/perm_id.hpp"
#include "rdm/core/repository.hpp"
#include "rdm/core/validation.hpp"
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

Timestamp ts(const char* iso) { return parse_timestamp(iso); }

}  // namespace

TEST_SUITE("core") {

TEST_CASE("perm ids follow the timestamp-sequence grammar") {
  CHECK(mint_perm_id(ts("2023-12-04T12:34:56.789Z"), 42).str() == "20231204123456789-42");
  CHECK(mint_perm_id(ts("1970-01-01T00:00:00.000Z"), 1).str() == "19700101000000000-1");
  CHECK(code_of([] { mint_perm_id(ts("1970-01-01T00:00:00.000Z"), 0); }) == ErrorCode::Domain);

  CHECK(PermId::is_valid("20231204123456789-1"));
  CHECK_FALSE(PermId::is_valid("20231204123456789-0"));
  CHECK_FALSE(PermId::is_valid("20231204123456789-01"));
  CHECK_FALSE(PermId::is_valid("2023120412345678-1"));
  CHECK_FALSE(PermId::is_valid("20231204123456789_1"));
  CHECK_FALSE(PermId::is_valid("20231304123456789-1"));
  CHECK_FALSE(PermId::is_valid(""));
  CHECK(code_of([] { PermId("nope"); }) == ErrorCode::Parse);
}

TEST_CASE("minting is injective over distinct clock and sequence pairs") {
  const std::regex grammar(R"(\d{17}-[1-9]\d*)");
  std::mt19937_64 rng(7);
  std::set<std::pair<std::int64_t, std::uint64_t>> inputs;
  std::set<std::string> ids;
  for (int i = 0; i < 2000; ++i) {
    const auto ms = static_cast<std::int64_t>(rng() % 4102444800000ULL);
    const auto seq = 1 + rng() % 5;
    const auto id = mint_perm_id(test::at_ms(ms), seq).str();
    CHECK(std::regex_match(id, grammar));
    CHECK(PermId::is_valid(id));
    inputs.emplace(ms, seq);
    ids.insert(id);
  }
  CHECK(ids.size() == inputs.size());
}

TEST_CASE("qr payload round trip") {
  const PermId id("20231204123456789-42");
  CHECK(qr_payload(id) == "rdm://object/20231204123456789-42");
  CHECK(resolve_qr_payload(qr_payload(id)) == id);
  CHECK(code_of([] { resolve_qr_payload("http://evil"); }) == ErrorCode::Parse);
  CHECK(code_of([] { resolve_qr_payload("rdm://object/xyz"); }) == ErrorCode::Parse);
  CHECK(code_of([] { resolve_qr_payload("rdm://object/"); }) == ErrorCode::Parse);
}

TEST_CASE("timestamps format with milliseconds") {
  CHECK(format_timestamp(ts("2023-12-04T12:34:56.789Z")) == "2023-12-04T12:34:56.789Z");
  CHECK(code_of([] { parse_timestamp("2023-12-04"); }) == ErrorCode::Parse);
}

TEST_CASE("element symbols") {
  CHECK(is_element_symbol("Fe"));
  CHECK(is_element_symbol("Al"));
  CHECK(is_element_symbol("Og"));
  CHECK(is_element_symbol("H"));
  CHECK_FALSE(is_element_symbol("fe"));
  CHECK_FALSE(is_element_symbol("FE"));
  CHECK_FALSE(is_element_symbol("Xx"));
  CHECK_FALSE(is_element_symbol(""));
}

TEST_CASE("seed vocabularies") {
  const auto v = seed_vocabularies();
  const auto& samples = v.at("SAMPLE_TYPE");
  std::vector<std::string> codes;
  for (const auto& t : samples.terms()) codes.push_back(t.code);
  CHECK(codes == std::vector<std::string>{"ROD", "SHEET", "BULK", "APT_TIP", "TEM_LAMELLA",
                                          "THIN_FILM", "MICRO_PILLAR"});
  CHECK(samples.find("APT_TIP")->description == "Sharpened needle for Atom Probe Tomography");
  CHECK(v.contains("EXPERIMENT_TECHNIQUE"));
  CHECK(v.at("DATASET_TYPE").contains("SLIDE_DECK"));
  CHECK(v.at("DATASET_TYPE").contains("LOAD_DISPLACEMENT"));

  ControlledVocabulary copy = samples;
  CHECK(code_of([&] { copy.add_term({"ROD", "Rod", ""}); }) == ErrorCode::Vocab);
  CHECK(code_of([&] { copy.add_term({"", "x", ""}); }) == ErrorCode::Vocab);
  CHECK(code_of([] { ControlledVocabulary("EMPTY", {}); }) == ErrorCode::Vocab);
  copy.add_term({"WIRE", "Wire", "Drawn wire"});
  CHECK(copy.contains("WIRE"));
  CHECK(vocabulary_from_json(to_json(copy)) == copy);
}

TEST_CASE("builtin schemas are consistent") {
  const auto vocabs = seed_vocabularies();
  for (const auto& [name, schema] : builtin_schemas()) {
    CAPTURE(name);
    CHECK_NOTHROW(check_schema(schema, vocabs));
  }
  ObjectTypeSchema bad{"BAD", "Bad", {{"a", ValueKind::Text}, {"a", ValueKind::Real}}, {}};
  CHECK(code_of([&] { check_schema(bad, vocabs); }) == ErrorCode::Validation);
  ObjectTypeSchema missing{"BAD", "Bad", {{"a", ValueKind::Text}}, {"b"}};
  CHECK(code_of([&] { check_schema(missing, vocabs); }) == ErrorCode::Validation);
  ObjectTypeSchema dangling{"BAD", "Bad", {{"a", ValueKind::Vocabulary, "NOPE"}}, {}};
  CHECK(code_of([&] { check_schema(dangling, vocabs); }) == ErrorCode::Validation);
}

TEST_CASE("sample validation") {
  const auto schemas = builtin_schemas();
  const auto vocabs = seed_vocabularies();
  auto check = [&](const ObjectRecord& r) { return validate_object(r, schemas, vocabs); };

  CHECK(check(test::sample({{"composition", {{"Fe", 60.0}, {"Al", 40.0}}}})).ok());
  CHECK(check(test::sample({{"composition", {{"Fe", 60.0}, {"Al", 39.0}}}}))
            .has("composition", rule::kSum100));

  auto no_location = test::sample();
  no_location.properties.erase("location");
  const auto report = check(no_location);
  CHECK_FALSE(report.ok());
  CHECK(report.has("location", rule::kRequired));
  CHECK(report.violations.size() == 1);

  auto empty_location = test::sample({{"location", ""}});
  CHECK(check(empty_location).has("location", rule::kRequired));

  CHECK(check(test::sample({{"colour", "red"}})).has("colour", rule::kUnknownProperty));
  CHECK(check(test::sample({{"sample_category", "BULK"}})).ok());
  CHECK(check(test::sample({{"sample_category", "BLOB"}})).has("sample_category", rule::kVocabularyTerm));
  CHECK(check(test::sample({{"composition", {{"Xx", 100.0}}}})).has("composition", rule::kElementSymbol));
  CHECK(check(test::sample({{"composition", {{"Fe", 110.0}, {"Al", -10.0}}}}))
            .has("composition", rule::kNegative));
  CHECK(check(test::sample({{"dimensions_mm", {10, -1, 2}}})).has("dimensions_mm", rule::kNegative));
  CHECK(check(test::sample({{"dimensions_mm", {10, 2}}})).has("dimensions_mm", rule::kArity));
  CHECK(check(test::sample({{"dimensions_mm", "big"}})).has("dimensions_mm", rule::kType));
  CHECK(check(test::sample({{"is_computational", "yes"}})).has("is_computational", rule::kType));
  CHECK(check(test::sample({{"is_computational", true}})).ok());
  CHECK(check(test::sample({{"defect_tags", {"grain boundary", "dislocation"}}})).ok());
  CHECK(check(test::sample({{"defect_tags", {"a", "a"}}})).has("defect_tags", rule::kType));

  ObjectRecord unknown;
  unknown.type_name = "SPACESHIP";
  CHECK(code_of([&] { check(unknown); }) == ErrorCode::SchemaNotFound);
}

TEST_CASE("other schemas validate their kinds") {
  const auto schemas = builtin_schemas();
  const auto vocabs = seed_vocabularies();
  auto check = [&](const ObjectRecord& r) { return validate_object(r, schemas, vocabs); };

  auto e = test::entry("ENTRY");
  e.properties["date"] = "2024-02-30";
  CHECK(check(e).has("date", rule::kType));
  e.properties["date"] = "2024-02-29";
  e.properties["technique"] = "SEM";
  CHECK(check(e).ok());
  e.properties["technique"] = "ALCHEMY";
  CHECK(check(e).has("technique", rule::kVocabularyTerm));

  ObjectRecord step;
  step.type_name = "PREPARATION_STEP";
  step.properties = {{"sequence_index", 1.5}, {"protocol_name", "Grind"}};
  CHECK(check(step).has("sequence_index", rule::kType));
  step.properties["sequence_index"] = 1;
  step.properties["duration"] = -3.0;
  CHECK(check(step).has("duration", rule::kNegative));
  step.properties["duration"] = 30;
  CHECK(check(step).ok());

  auto mm = test::entry("MICRO_MECH_EXP");
  mm.properties["pillar_geometry"] = "pillar_id,diameter_top_um,height_um\nMP1,2,5\n";
  CHECK(check(mm).ok());
  mm.properties["pillar_geometry"] = 12;
  CHECK(check(mm).has("pillar_geometry", rule::kType));
}

// Accept iff |sum - 100| <= 1e-6.
TEST_CASE("composition tolerance boundary") {
  const auto schemas = builtin_schemas();
  const auto vocabs = seed_vocabularies();
  auto ok = [&](double fe, double al) {
    return validate_object(test::sample({{"composition", {{"Fe", fe}, {"Al", al}}}}), schemas, vocabs)
        .ok();
  };
  CHECK(ok(60.0, 40.0));
  CHECK(ok(60.0, 40.000001));
  CHECK(ok(60.0, 39.999999));
  CHECK(ok(60.0, 40.0000009));
  CHECK_FALSE(ok(60.0, 40.0000011));
  CHECK_FALSE(ok(60.0, 39.9999989));
  CHECK_FALSE(ok(60.0, 40.00001));
  CHECK_FALSE(ok(60.0, 41.0));
  // Single element and many elements.
  CHECK(validate_object(test::sample({{"composition", {{"Mg", 100.0}}}}), schemas, vocabs).ok());
  nlohmann::json many;
  for (const char* s : {"Fe", "Al", "Ni", "Cr", "Mo", "Ti", "Co", "W", "Nb", "V"}) many[s] = 10.0;
  CHECK(validate_object(test::sample({{"composition", many}}), schemas, vocabs).ok());
}

TEST_CASE("repository round trip and updates") {
  Repository repo({std::nullopt, test::stepping_clock(), "tester"});
  auto r = test::sample({{"composition", {{"Fe", 60.0}, {"Al", 40.0}}}, {"name", "FeAl"}});
  r.space = "LAB";
  const PermId id = repo.put_object(r);
  auto stored = repo.get_object(id);
  CHECK(stored->perm_id == id);
  CHECK(stored->type_name == r.type_name);
  CHECK(stored->properties == r.properties);
  CHECK(stored->space == "LAB");
  CHECK(stored->registered_at != Timestamp{});

  ObjectRecord back = *stored;
  CHECK(object_from_json(to_json(back)) == back);

  auto changed = *stored;
  changed.properties["location"] = "shelf 2";
  CHECK(repo.put_object(changed, "alice") == id);
  auto updated = repo.get_object(id);
  CHECK(updated->properties.at("location") == "shelf 2");
  CHECK(updated->registered_at == stored->registered_at);
  const auto trail = repo.audit_trail(id);
  REQUIRE(trail.size() == 1);
  CHECK(trail[0].actor == "alice");
  CHECK(trail[0].property == "location");
  CHECK(trail[0].old_value == "shelf 1");
  CHECK(trail[0].new_value == "shelf 2");

  auto retyped = *updated;
  retyped.type_name = "DEVICE";
  retyped.properties = {{"model", "X"}};
  CHECK_THROWS_AS(repo.put_object(retyped), ValidationError);
  CHECK(repo.get_object(id)->type_name == "SAMPLE");
}

TEST_CASE("invalid records leave the repository unchanged") {
  Repository repo({std::nullopt, test::stepping_clock()});
  const auto before = repo.snapshot().objects.size();
  try {
    repo.put_object(test::sample({{"composition", {{"Fe", 60.0}, {"Al", 39.0}}}}));
    FAIL("expected rejection");
  } catch (const ValidationError& e) {
    CHECK(e.code() == ErrorCode::Validation);
    CHECK(e.report().has("composition", rule::kSum100));
  }
  CHECK(repo.snapshot().objects.size() == before);
  CHECK(code_of([&] { repo.get_object(PermId("20231204123456789-1")); }) == ErrorCode::NotFound);
}

TEST_CASE("colliding mints bump the sequence") {
  Repository repo({std::nullopt, test::fixed_clock()});
  const auto a = repo.put_object(test::sample());
  const auto b = repo.put_object(test::sample());
  CHECK(a.str() == "20231204123456789-1");
  CHECK(b.str() == "20231204123456789-2");
}

TEST_CASE("links: chain, two-cycle, self link, diamond") {
  Repository repo({std::nullopt, test::stepping_clock()});
  const auto a = repo.put_object(test::sample());
  const auto b = repo.put_object(test::sample());
  const auto c = repo.put_object(test::sample());
  const auto d = repo.put_object(test::sample());
  repo.link(a, b);
  repo.link(b, c);
  CHECK(repo.ancestors(c) == std::set<PermId>{a, b});
  CHECK(repo.descendants(a) == std::set<PermId>{b, c});
  CHECK(code_of([&] { repo.link(b, a); }) == ErrorCode::Cycle);
  CHECK(code_of([&] { repo.link(c, a); }) == ErrorCode::Cycle);
  CHECK(code_of([&] { repo.link(a, a); }) == ErrorCode::Cycle);
  CHECK(code_of([&] { repo.link(a, PermId("19700101000000000-9")); }) == ErrorCode::NotFound);
  repo.link(a, b);  // no-op
  CHECK(repo.get_object(a)->children == std::set<PermId>{b});

  repo.link(a, d);
  repo.link(d, c);
  CHECK(repo.get_object(c)->parents == std::set<PermId>{b, d});
  CHECK(repo.ancestors(c) == std::set<PermId>{a, b, d});
}

TEST_CASE("put_object links parents and children atomically") {
  Repository repo({std::nullopt, test::stepping_clock()});
  const auto a = repo.put_object(test::sample());
  auto r = test::sample();
  r.parents = {a};
  const auto b = repo.put_object(r);
  CHECK(repo.get_object(a)->children == std::set<PermId>{b});
  CHECK(repo.get_object(b)->parents == std::set<PermId>{a});

  // b -> a would close a cycle; nothing of the record may land.
  auto cyc = *repo.get_object(b);
  cyc.children = {a};
  cyc.properties["location"] = "moved";
  CHECK(code_of([&] { repo.put_object(cyc); }) == ErrorCode::Cycle);
  CHECK(repo.get_object(b)->properties.at("location") == "shelf 1");
  CHECK(repo.get_object(b)->children.empty());

  auto dangling = test::sample();
  dangling.parents = {PermId("19700101000000000-5")};
  const auto count = repo.snapshot().objects.size();
  CHECK(code_of([&] { repo.put_object(dangling); }) == ErrorCode::NotFound);
  CHECK(repo.snapshot().objects.size() == count);
}

// Random link sequences against a brute-force reachability model.
TEST_CASE("randomized link sequences keep a DAG") {
  std::mt19937_64 rng(2024);
  for (int round = 0; round < 60; ++round) {
    Repository repo({std::nullopt, test::stepping_clock()});
    const std::size_t n = 2 + rng() % 20;
    std::vector<PermId> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back(repo.put_object(test::sample()));
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    auto reach = [&](std::size_t from, std::size_t to) {
      std::vector<bool> seen(n, false);
      std::vector<std::size_t> stack{from};
      while (!stack.empty()) {
        auto x = stack.back();
        stack.pop_back();
        if (x == to) return true;
        if (seen[x]) continue;
        seen[x] = true;
        for (std::size_t y = 0; y < n; ++y)
          if (adj[x][y]) stack.push_back(y);
      }
      return false;
    };
    for (int step = 0; step < 40; ++step) {
      const auto p = rng() % n, c = rng() % n;
      const bool expect_cycle = reach(c, p);
      const auto before = repo.snapshot().objects;
      bool rejected = false;
      try {
        repo.link(ids[p], ids[c]);
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Cycle);
        rejected = true;
      }
      CHECK(rejected == expect_cycle);
      if (rejected) {
        const auto after = repo.snapshot().objects;
        for (const auto& [id, rec] : before) CHECK(*after.at(id) == *rec);
      } else {
        adj[p][c] = true;
      }
    }
    // Symmetry and closure.
    for (std::size_t i = 0; i < n; ++i) {
      auto rec = repo.get_object(ids[i]);
      std::set<PermId> anc;
      for (std::size_t j = 0; j < n; ++j) {
        CHECK(rec->children.contains(ids[j]) == adj[i][j]);
        CHECK(rec->parents.contains(ids[j]) == adj[j][i]);
        if (j != i && reach(j, i)) anc.insert(ids[j]);
      }
      CHECK(repo.ancestors(ids[i]) == anc);
    }
  }
}

TEST_CASE("journal replay reproduces the repository") {
  TempDir dir;
  const auto journal = dir / "repo" / "journal.jsonl";
  PermId a, b;
  RepositorySnapshot before;
  std::vector<AuditEntry> trail;
  {
    Repository repo({journal, test::stepping_clock()});
    a = repo.put_object(test::sample({{"composition", {{"Fe", 60.0}, {"Al", 40.0}}}}));
    auto r = test::entry();
    r.parents = {a};
    b = repo.put_object(r);
    auto upd = *repo.get_object(a);
    upd.properties["location"] = "vault";
    repo.put_object(upd, "bob");
    repo.add_vocabulary_term("SAMPLE_TYPE", {"WIRE", "Wire", "Drawn wire"});
    DatasetRecord d;
    d.owner_entry = b;
    d.dataset_type = "SEM_IMAGE";
    d.blob = {"ab", 2};
    const auto ds = repo.put_dataset(d);
    repo.set_preview(ds->dataset_id, {"cd", 3});
    before = repo.snapshot();
    trail = repo.audit_trail(a);
  }
  std::ifstream in(journal);
  std::string header;
  std::getline(in, header);
  CHECK(nlohmann::json::parse(header) == nlohmann::json{{"format", "rdm-journal"}, {"version", 1}});

  Repository again({journal, test::stepping_clock()});
  const auto after = again.snapshot();
  REQUIRE(after.objects.size() == before.objects.size());
  for (const auto& [id, rec] : before.objects) CHECK(*after.objects.at(id) == *rec);
  REQUIRE(after.datasets.size() == 1);
  CHECK(*after.datasets.begin()->second == *before.datasets.begin()->second);
  CHECK(after.datasets.begin()->second->preview == BlobRef{"cd", 3});
  CHECK(after.vocabularies.at("SAMPLE_TYPE").contains("WIRE"));
  CHECK(again.audit_trail(a) == trail);
  CHECK(again.replay_warnings().empty());
}

TEST_CASE("journal: torn tail is dropped, corruption is reported") {
  TempDir dir;
  const auto journal = dir / "journal.jsonl";
  PermId a;
  {
    Repository repo({journal, test::stepping_clock()});
    a = repo.put_object(test::sample());
  }
  {
    std::ofstream out(journal, std::ios::app);
    out << R"({"op":"put_object","at":"2023-)";
  }
  {
    Repository repo({journal, test::stepping_clock()});
    CHECK(repo.contains(a));
    REQUIRE(repo.replay_warnings().size() == 1);
    const auto b = repo.put_object(test::sample());
    Repository again({journal, test::stepping_clock()});
    CHECK(again.contains(b));
    CHECK(again.replay_warnings().empty());
  }
  {
    std::ofstream out(journal, std::ios::app);
    out << "garbage\n" << R"({"op":"link"})" << "\n";
  }
  CHECK(code_of([&] { Repository repo({journal, test::stepping_clock()}); }) == ErrorCode::Corrupt);

  const auto other = dir / "other.jsonl";
  {
    std::ofstream out(other);
    out << R"({"format":"something-else","version":1})" << "\n";
  }
  CHECK(code_of([&] { Repository repo({other, test::stepping_clock()}); }) == ErrorCode::Corrupt);
}

TEST_CASE("datasets need an existing owner and a known type") {
  Repository repo({std::nullopt, test::stepping_clock()});
  const auto e = repo.put_object(test::entry());
  DatasetRecord d;
  d.owner_entry = PermId("19700101000000000-3");
  d.dataset_type = "SEM_IMAGE";
  CHECK(code_of([&] { repo.put_dataset(d); }) == ErrorCode::NotFound);
  d.owner_entry = e;
  d.dataset_type = "HOLOGRAM";
  CHECK(code_of([&] { repo.put_dataset(d); }) == ErrorCode::Vocab);
  d.dataset_type = "SEM_IMAGE";
  const auto stored = repo.put_dataset(d);
  CHECK(repo.datasets_of(e).size() == 1);
  CHECK(repo.get_dataset(stored->dataset_id)->owner_entry == e);
  CHECK(code_of([&] { repo.set_preview(PermId("19700101000000000-3"), {}); }) == ErrorCode::NotFound);
}

TEST_CASE("readers see whole records while a writer runs") {
  Repository repo({std::nullopt, test::stepping_clock()});
  const auto root = repo.put_object(test::sample());
  std::atomic<bool> done{false};
  std::atomic<int> bad{0};
  std::thread reader([&] {
    while (!done) {
      const auto snap = repo.snapshot();
      for (const auto& [id, rec] : snap.objects) {
        for (const auto& c : rec->children)
          if (!snap.objects.contains(c)) ++bad;
        if (rec->properties.at("location") != "shelf 1") ++bad;
      }
    }
  });
  std::vector<std::thread> writers;
  for (int w = 0; w < 4; ++w)
    writers.emplace_back([&] {
      for (int i = 0; i < 50; ++i) {
        auto r = test::sample();
        r.parents = {root};
        repo.put_object(r);
      }
    });
  for (auto& t : writers) t.join();
  done = true;
  reader.join();
  CHECK(bad == 0);
  CHECK(repo.get_object(root)->children.size() == 200);
  std::set<PermId> ids;
  for (const auto& [id, rec] : repo.snapshot().objects) ids.insert(id);
  CHECK(ids.size() == 201);
}

}  // TEST_SUITE
