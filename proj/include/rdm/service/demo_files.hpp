#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "rdm/previews/ebsd.hpp"
#include "rdm/workflows/load_data.hpp"

namespace rdm {

// Synthetic inputs for demos and tests; equal seeds give equal bytes.
std::vector<PillarGeometry> demo_pillars();
LoadDisplacementSeries demo_load_series(const PillarGeometry& pillar, std::uint64_t seed,
                                        std::size_t points = 200);
// Voronoi grains with random orientations.
EbsdMap demo_ebsd_map(std::uint64_t seed, std::size_t cols = 64, std::size_t rows = 48,
                      std::size_t grains = 12);

// Writes one file of every supported kind into `dir` and returns the paths:
// vendor A/B/C SEM files, an EBSD map, a pillar geometry sheet and one load
// curve per pillar.
std::vector<std::filesystem::path> write_demo_files(const std::filesystem::path& dir,
                                                    std::uint64_t seed = 1);

}  // namespace rdm
