// Checks a few profiles both ways and prints a best-response move.
#include <iostream>

#include "hotelling/hotelling.hpp"

using hotelling::Rational;

int main() {
  using Profile = hotelling::LocationProfile<Rational>;
  const Profile examples[] = {
      Profile::from_values({0, Rational(1, 2), Rational(1, 2)}),
      Profile::from_values({0, 0, Rational(1, 2)}),
      Profile::from_values({0, Rational(1, 10), Rational(1, 5)}),
  };
  for (const auto& p : examples) {
    std::cout << "profile:";
    for (const auto& x : p.positions()) std::cout << ' ' << hotelling::to_string(x.value());
    std::cout << "\n  profits:";
    for (const auto& f : hotelling::profit_closed_form(p)) std::cout << ' ' << hotelling::to_string(f);
    std::cout << "\n  gap condition: " << std::boolalpha << hotelling::gap_condition(p).holds
              << ", best-response oracle: " << hotelling::is_equilibrium(p) << '\n';
    for (std::size_t k = 0; k < p.size(); ++k) {
      const auto br = hotelling::best_response(p, k);
      if (br.improving) {
        std::cout << "  vendor " << k + 1 << " improves " << hotelling::to_string(br.current_profit) << " -> "
                  << hotelling::to_string(br.best_value) << " by moving to "
                  << hotelling::to_string(br.witness.value()) << '\n';
      }
    }
  }
}
