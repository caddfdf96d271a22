// Writes the oracle fixtures used by the CLI tests:
//   round_trip.json  oracle of one fixed descriptor
//   noise.json       same values, selectors shifted by stabilizer noise
//   perturbed.json   one value tampered with
// Usage: make_fixtures <out-dir>

#include "mhv/two_local.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace mhv;

namespace {

void write(const std::filesystem::path& path, const TwoLocalOracle& o) {
  std::ofstream out(path);
  out << oracle_to_json(o).dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <out-dir>\n";
    return 2;
  }
  const std::filesystem::path dir = argv[1];
  std::filesystem::create_directories(dir);
  const Window w(5);
  const DerivationDescriptor w0{parse_element("d[2] + 3*h[-1]"), 5, Rational(-1, 2)};
  const TwoLocalOracle base = descriptor_oracle(w0, w);
  std::mt19937_64 rng(2024);
  write(dir / "round_trip.json", base);
  write(dir / "noise.json", with_stabilizer_noise(base, rng));
  TwoLocalOracle tampered = base;
  const Element point = perturb_oracle(tampered, rng);
  write(dir / "perturbed.json", tampered);
  std::cout << "tampered point: " << format_element(point) << '\n';
  return 0;
}
