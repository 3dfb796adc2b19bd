// Reduces a small skewed basis and prints lengths against the minima.

#include <iostream>

#include "latred/latred.hpp"

int main() {
  using namespace latred;
  Basis const basis({{1, 0, 0, 0},
                     {7, 1, 0, 0},
                     {3, 12, 1, 0},
                     {5, -4, 19, 3}});
  ReductionReport const rep = strong_reduce(basis);
  std::cout << "defect " << rep.defect_before << " -> " << rep.defect_after << "\n";
  for (std::size_t i = 0; i < basis.rank(); ++i) {
    std::cout << "b_" << i + 1 << " = [" << join(rep.output_basis.row(i), ", ")
              << "]  |b|^2 = " << norm_sq(rep.output_basis.row(i))
              << "  lambda^2 = " << rep.minima.lambda_sq[i] << "\n";
  }
  std::cout << "strongly reduced: " << flag(rep.property1_ok && rep.property2_ok) << "\n";
}
