// Library usage: spectrum of a step potential, then the uniqueness check
// for a shifted copy and for a genuine perturbation.

#include <iostream>

#include "sltk/ambarzumyan/checks.hpp"
#include "sltk/ambarzumyan/report.hpp"

int main() {
  using namespace sltk;
  const auto qt = Potential::piecewise({0.0, 0.5, 1.0}, {1.0, 3.0});
  const auto bc = BoundaryCondition::robin();

  const auto data = spectrum(qt, bc, 3);
  for (const auto& p : data.pairs) {
    std::cout << "lambda_" << p.index << " = " << format_double(p.eigenvalue) << "  nodes " << p.node_count << "\n";
  }
  std::cout << "\n";

  const auto shifted = check_main(shift(qt, -4.0), qt, bc, 2);
  const auto bumped = check_main(add(qt, Potential::piecewise({0.0, 0.3, 1.0}, {0.5, 0.0})), qt, bc, 2);
  std::cout << format_reports_text({shifted, bumped});
  return shifted.hypotheses_hold && !bumped.hypotheses_hold ? 0 : 1;
}
