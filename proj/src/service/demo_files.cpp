#include "rdm/service/demo_files.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "rdm/bytes.hpp"
#include "rdm/extract/fixtures.hpp"

namespace rdm {

std::vector<PillarGeometry> demo_pillars() {
  return {{"MP1", 2.0e-6, 5.0e-6}, {"MP2", 1.5e-6, 4.0e-6}};
}

LoadDisplacementSeries demo_load_series(const PillarGeometry& pillar, std::uint64_t seed,
                                        std::size_t points) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 0.005);
  const double area = std::numbers::pi * pillar.diameter_top * pillar.diameter_top / 4.0;
  const double modulus = 70e9, yield = 500e6, hardening = 2e9;
  const double max_strain = 0.08;
  LoadDisplacementSeries s;
  for (std::size_t i = 0; i < points; ++i) {
    const double strain = max_strain * static_cast<double>(i) / static_cast<double>(points - 1);
    const double eps_y = yield / modulus;
    double stress = strain < eps_y ? modulus * strain : yield + hardening * (strain - eps_y);
    stress *= 1.0 + (i ? noise(rng) : 0.0);
    // Round to the precision an instrument export would carry.
    const double u_nm = std::round(strain * pillar.height * 1e9 * 1000.0) / 1000.0;
    const double f_mN = std::round(stress * area * 1e3 * 1e6) / 1e6;
    s.samples.push_back({0.05 * static_cast<double>(i), u_nm * 1e-9, f_mN * 1e-3});
  }
  return s;
}

EbsdMap demo_ebsd_map(std::uint64_t seed, std::size_t cols, std::size_t rows, std::size_t grains) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  struct Grain {
    double x, y;
    EulerOrientation o;
  };
  std::vector<Grain> seeds;
  for (std::size_t g = 0; g < grains; ++g) {
    const double x = unit(rng) * static_cast<double>(cols);
    const double y = unit(rng) * static_cast<double>(rows);
    const EulerOrientation o{2 * std::numbers::pi * unit(rng), std::acos(2 * unit(rng) - 1),
                             2 * std::numbers::pi * unit(rng)};
    seeds.push_back({x, y, o});
  }
  EbsdMap map{cols, rows, 0.5e-6, {}};
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      std::size_t best = 0;
      double best_d = INFINITY;
      for (std::size_t g = 0; g < seeds.size(); ++g) {
        const double dx = seeds[g].x - static_cast<double>(c), dy = seeds[g].y - static_cast<double>(r);
        if (dx * dx + dy * dy < best_d) {
          best_d = dx * dx + dy * dy;
          best = g;
        }
      }
      map.cells.push_back({seeds[best].o, 0.5 + 0.5 * unit(rng), 1});
    }
  return map;
}

std::vector<std::filesystem::path> write_demo_files(const std::filesystem::path& dir,
                                                    std::uint64_t seed) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  auto put = [&](const std::string& name, ByteView bytes) {
    written.push_back(dir / name);
    write_file(written.back(), bytes);
  };
  const auto m = demo_sem_metadata();
  put("sem_vendorA.va", write_vendor_a(m));
  put("sem_vendorB.vb", write_vendor_b(m));
  put("sem_vendorC.ini", write_vendor_c(m));
  put("ebsd_map.ang", to_bytes(write_ang(demo_ebsd_map(seed))));
  const auto pillars = demo_pillars();
  put("pillar_geometry.csv", to_bytes(write_geometry_csv(pillars)));
  for (std::size_t i = 0; i < pillars.size(); ++i)
    put(pillars[i].pillar_id + ".csv",
        to_bytes(write_load_csv(demo_load_series(pillars[i], seed + i))));
  return written;
}

}  // namespace rdm
