#include "doctest.h"
#include "property_suite.hpp"

namespace {

void require(const props::Result& r) {
  INFO(r.name << ": " << r.checks << " checks");
  for (const auto& f : r.failures) INFO(f);
  CHECK(r.checks > 0);
  CHECK_MESSAGE(r.failures.empty(), r.failures.size() << " failures, first: " << (r.failures.empty() ? "" : r.failures[0]));
}

}  // namespace

TEST_CASE("Shapiro's lemma") { require(props::shapiro()); }
TEST_CASE("bar differential squares to zero") { require(props::dd_zero()); }
TEST_CASE("restriction is functorial") { require(props::restriction_functorial()); }
TEST_CASE("permutation lattices") { require(props::permutation_h1()); }
TEST_CASE("cyclic periodicity") { require(props::cyclic_periodicity()); }
TEST_CASE("long exact sequence segment") { require(props::six_term_exactness()); }
TEST_CASE("regular norm-one lattice") { require(props::regular_normone_sha()); }
TEST_CASE("characters and H^2") { require(props::characters_vs_h2()); }
TEST_CASE("vanishing theorem on random configurations") { require(props::thm21_oracle()); }
TEST_CASE("comparison theorem on random configurations") { require(props::thm31_oracle()); }
TEST_CASE("determinism") { require(props::thread_determinism()); }
