// Runs the fast verification suite against a library whose 2F1 argument
// sign has been flipped. Succeeds only if route agreement flags it.

#include <iostream>

#include "fockstat/verify.hpp"

int main() {
  const auto summary = fockstat::verify_suite(fockstat::VerifyLevel::fast);
  std::cout << fockstat::render_summary(summary);
  for (const auto& check : summary.checks) {
    if (check.name == "route_agreement") {
      std::cout << (check.passed ? "mutation survived\n" : "mutation caught by route_agreement\n");
      return check.passed ? 1 : 0;
    }
  }
  std::cout << "route_agreement check missing\n";
  return 1;
}
