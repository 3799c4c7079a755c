// Prints the blow-up table of the counterexample for the unit and log weights.

#include <iostream>

#include "vilenkin/vilenkin.hpp"

int main() {
  using namespace vilenkin;
  const VilenkinBase base = dyadic_base(11);
  for (const WeightSpec& w : {WeightSpec::unit(), WeightSpec::log()}) {
    const BlowupTable t = blowup_table(base, w, 0.5, 1, 5);
    std::cout << "phi = " << t.weight << ", p = 1/2\n";
    std::cout << "  k  ratio       k/phi(M_{2k+1})\n";
    for (const BlowupRow& r : t.rows) {
      std::cout << "  " << r.k << "  " << io::format_double(r.ratio) << "  " << io::format_double(r.analytic)
                << '\n';
    }
    std::cout << "  trend: " << to_string(t.trend) << "\n\n";
  }
}
