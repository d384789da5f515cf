#pragma once

#include <random>
#include <string>

#include "rdm/core/repository.hpp"
#include "rdm/service/demo_files.hpp"
#include "rdm/store/registration.hpp"
#include "rdm/workflows/load_data.hpp"

namespace rdm::test {

inline PermId add_prep_step(Repository& repo, const PermId& entry, int index,
                            const std::string& protocol, const std::string& abrasive = "SiC P1200",
                            const std::string& lubricant = "water", double duration = 60) {
  ObjectRecord step;
  step.type_name = "PREPARATION_STEP";
  step.properties = {{"sequence_index", index},
                     {"protocol_name", protocol},
                     {"abrasive", abrasive},
                     {"lubricant", lubricant},
                     {"duration", duration}};
  step.parents = {entry};
  return repo.put_object(step);
}

// Micro-mechanics entry with geometry as a dataset and one load curve per
// pillar, all named after the pillar.
inline PermId add_micro_mech_entry(Repository& repo, BlobStore& store,
                                   const std::vector<PillarGeometry>& pillars, std::uint64_t seed,
                                   bool geometry_as_property = false) {
  ObjectRecord e;
  e.type_name = "MICRO_MECH_EXP";
  e.properties = {{"title", "pillar compression " + std::to_string(seed)}};
  if (geometry_as_property) e.properties["pillar_geometry"] = write_geometry_csv(pillars);
  const auto entry = repo.put_object(e);
  if (!geometry_as_property)
    register_linked_dataset(repo, store, entry, to_bytes(write_geometry_csv(pillars)),
                            "PILLAR_GEOMETRY", std::nullopt, "pillar_geometry.csv");
  for (std::size_t i = 0; i < pillars.size(); ++i)
    register_linked_dataset(repo, store, entry,
                            to_bytes(write_load_csv(demo_load_series(pillars[i], seed + i, 40))),
                            "LOAD_DISPLACEMENT", std::nullopt, pillars[i].pillar_id + ".csv");
  return entry;
}

// A mix of complete, incomplete and broken workflow inputs.
inline void populate_random_workflow_repo(Repository& repo, BlobStore& store, std::mt19937_64& rng) {
  const int entries = 1 + static_cast<int>(rng() % 5);
  for (int i = 0; i < entries; ++i) {
    switch (rng() % 6) {
      case 0: {
        std::vector<PillarGeometry> pillars;
        const int n = 1 + static_cast<int>(rng() % 3);
        for (int p = 0; p < n; ++p)
          pillars.push_back({"P" + std::to_string(p + 1), 1e-6 * double(1 + rng() % 4),
                             1e-6 * double(2 + rng() % 6)});
        add_micro_mech_entry(repo, store, pillars, rng(), rng() % 2 == 0);
        break;
      }
      case 1: {
        // Geometry only.
        ObjectRecord e;
        e.type_name = "MICRO_MECH_EXP";
        e.properties = {{"title", "no loads"},
                        {"pillar_geometry", write_geometry_csv(demo_pillars())}};
        repo.put_object(e);
        break;
      }
      case 2: {
        // Loads without geometry.
        ObjectRecord e;
        e.type_name = "MICRO_MECH_EXP";
        e.properties = {{"title", "no geometry"}};
        const auto entry = repo.put_object(e);
        register_linked_dataset(repo, store, entry,
                                to_bytes(write_load_csv(demo_load_series(demo_pillars()[0], rng(), 20))),
                                "LOAD_DISPLACEMENT", std::nullopt, "MP1.csv");
        break;
      }
      case 3: {
        // Unparseable load data.
        ObjectRecord e;
        e.type_name = "MICRO_MECH_EXP";
        e.properties = {{"title", "broken"},
                        {"pillar_geometry", write_geometry_csv(demo_pillars())}};
        const auto entry = repo.put_object(e);
        register_linked_dataset(repo, store, entry, to_bytes("not,a,load,file\n"),
                                "LOAD_DISPLACEMENT", std::nullopt, "MP1.csv");
        break;
      }
      case 4: {
        ObjectRecord e;
        e.type_name = "PREPARATION_EXP";
        e.properties = {{"title", "polish " + std::to_string(i)}};
        const auto entry = repo.put_object(e);
        const int steps = static_cast<int>(rng() % 4);
        for (int s = 0; s < steps; ++s)
          add_prep_step(repo, entry, static_cast<int>(rng() % 5), "step " + std::to_string(s));
        break;
      }
      default: {
        ObjectRecord e;
        e.type_name = "ENTRY";
        e.properties = {{"title", "unrelated"}};
        repo.put_object(e);
      }
    }
  }
}

}  // namespace rdm::test
