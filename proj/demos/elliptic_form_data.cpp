// Writes newform JSON (weight 2, K_f = Q) from the point counts of
// y^2 = f(x), f a cubic.
//
//   elliptic_form_data COEFFS LEVEL XMAX [cm] > form.json
//
// e.g. "0,-1,0,1 32 10000 cm" for y^2 = x^3 - x.
#include <iostream>
#include <string>

#include "ordinarium/modforms.hpp"

int main(int argc, char** argv) {
  using namespace ordinarium;
  if (argc < 4) {
    std::cerr << "usage: elliptic_form_data COEFFS LEVEL XMAX [cm]\n";
    return 2;
  }
  try {
    std::vector<BigInt> c;
    std::string s = argv[1];
    for (std::size_t pos = 0; pos <= s.size();) {
      const std::size_t next = std::min(s.find(',', pos), s.size());
      c.emplace_back(s.substr(pos, next - pos));
      pos = next + 1;
    }
    std::optional<bool> cm;
    if (argc > 4) cm = std::string(argv[4]) == "cm";
    const auto form = mf::from_elliptic_curve(IntPoly(c), std::stoull(argv[2]), std::stoull(argv[3]), cm, threads_from_env());
    std::cout << mf::to_json(form).dump() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
