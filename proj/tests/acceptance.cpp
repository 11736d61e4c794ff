// Acceptance harness: one PASS/FAIL line per criterion.
#include <chrono>
#include <functional>
#include <iostream>

#include "ellcover/ellcover.hpp"

using namespace ellcover;

namespace {

struct Run {
  std::string label;
  std::uint32_t p, e, ell;
  std::string suite;
  VerifyParams params;
};

struct Criterion {
  int id;
  std::string title;
  std::vector<Run> runs;
};

VerifyParams with_n(unsigned n) {
  VerifyParams P;
  P.max_n = n;
  return P;
}

VerifyParams with_genus(unsigned g) {
  VerifyParams P;
  P.genus = g;
  return P;
}

}  // namespace

int main(int argc, char** argv) {
  const bool verbose = argc > 1 && std::string(argv[1]) == "-v";
  const std::vector<Criterion> criteria = {
      {1, "exact quadratic counts", {{"q=3", 3, 1, 2, "quadratic-exact", with_n(8)}, {"q=5", 5, 1, 2, "quadratic-exact", with_n(6)}}},
      {2, "triple pipeline, ell=3 q=4, n<=6", {{"q=4", 2, 2, 3, "triple", with_n(6)}}},
      {3, "conditioned densities at X", {{"q=3", 3, 1, 2, "conditioned", {}}}},
      {4, "ramified closed-form discrepancy", {{"q=3", 3, 1, 2, "discrepancy", with_n(8)}}},
      {5, "point-count distribution up to genus 5", {{"q=3", 3, 1, 2, "distribution", with_genus(5)}}},
      {6, "constants and main-term ratios", {{"ell=2 q=3", 3, 1, 2, "constants", {}}, {"ell=3 q=4", 2, 2, 3, "constants", {}}}},
      {7, "reciprocity and L-sequences", {{"ell=2 q=3", 3, 1, 2, "characters", {}}, {"ell=3 q=7", 7, 1, 3, "characters", {}}}},
      {8, "Weil bound and functional equation, g<=2", {{"q=3", 3, 1, 2, "weil", with_genus(2)}}},
      {9, "tuple scaling identity, n<=6", {{"ell=2 q=3", 3, 1, 2, "scaling", with_n(6)}, {"ell=3 q=4", 2, 2, 3, "scaling", with_n(6)}}},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    bool ok = true;
    std::vector<std::string> notes;
    const auto t0 = std::chrono::steady_clock::now();
    for (const auto& r : c.runs) {
      try {
        const Field F = make_field(r.p, r.e, r.ell);
        const auto results = run_suite(r.suite, F, r.params);
        for (const auto& x : results) {
          if (verbose || (!x.pass && !x.diagnostic))
            notes.push_back(std::string(x.diagnostic ? "  (diag) " : x.pass ? "  ok " : "  FAILED ") + r.label + " " + x.check +
                            ": expected " + x.expected + ", actual " + x.actual);
        }
        ok = ok && all_pass(results);
      } catch (const std::exception& ex) {
        ok = false;
        notes.push_back("  ERROR " + r.label + ": " + ex.what());
      }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " (" << std::fixed;
    std::cout.precision(1);
    std::cout << secs << " s)\n";
    for (const auto& n : notes) std::cout << n << "\n";
    std::cout.flush();
    if (!ok) ++failed;
  }
  std::cout << (failed == 0 ? "ALL PASS" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
