#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <vector>

#include "puzred/cover_enum.hpp"
#include "puzred/matching_count.hpp"
#include "puzred/reduce.hpp"

using namespace puzred;

namespace {

Formula make(int nvars, std::vector<std::array<int, 3>> clauses) {
  Formula f;
  f.num_vars = nvars;
  f.clauses = std::move(clauses);
  for (auto& cl : f.clauses) std::sort(cl.begin(), cl.end());
  return f;
}

void check_parsimonious(const Formula& f) {
  ReductionTrace tr = reduce_formula(f);
  auto sat = enumerate_one_in_three(f);

  EnumLimits lim;
  lim.max_edges = 256;
  auto covers = enumerate_cycle_covers(tr.instance, lim);
  REQUIRE(covers.size() == sat.size());
  REQUIRE(count_covers_required_matching(tr.instance) == sat.size());

  std::set<CoverAssignment> from_masks;
  for (std::uint32_t mask : sat) {
    CoverAssignment c = cover_from_assignment(tr, mask);
    REQUIRE(std::binary_search(covers.begin(), covers.end(), c));
    REQUIRE(assignment_from_cover(tr, c) == mask);
    from_masks.insert(std::move(c));
  }
  REQUIRE(from_masks.size() == sat.size());
  for (const auto& c : covers) {
    std::uint32_t mask = assignment_from_cover(tr, c);
    REQUIRE(std::binary_search(sat.begin(), sat.end(), mask));
  }
}

}  // namespace

TEST_CASE("reduction is parsimonious across formula shapes") {
  check_parsimonious(make(3, {{1, 2, 3}}));                                  // one clause
  check_parsimonious(make(5, {{1, 2, 3}, {1, 4, 5}}));                       // shared variable
  check_parsimonious(make(7, {{1, 2, 3}, {3, 4, 5}, {5, 6, 7}}));            // chain
  check_parsimonious(make(7, {{1, 2, 3}, {1, 4, 5}, {1, 6, 7}}));            // degree-3 hub
  check_parsimonious(make(4, {{1, 2, 3}, {1, 2, 4}}));                       // two shared
  check_parsimonious(make(6, {{1, 2, 3}, {4, 5, 6}}));                       // disconnected
}

TEST_CASE("reduction output is deterministic") {
  Formula f = make(5, {{1, 2, 3}, {1, 4, 5}});
  ReductionTrace a = reduce_formula(f);
  ReductionTrace b = reduce_formula(f);
  REQUIRE(serialize_mixed_graph(a.instance) == serialize_mixed_graph(b.instance));
  REQUIRE(a.links.size() == 6);
}

TEST_CASE("nonplanar incidence is rejected with a witness") {
  // three clauses pairwise sharing variables 1 and 2, with two bridge clauses
  // completing disjoint paths to variable 3: a subdivided K3,3
  Formula f = make(7, {{1, 2, 3}, {1, 2, 4}, {1, 2, 6}, {3, 4, 5}, {3, 6, 7}});
  REQUIRE_THROWS_AS(reduce_formula(f), NonPlanarError);
  try {
    reduce_formula(f);
  } catch (const NonPlanarError& e) {
    REQUIRE_FALSE(e.witness.empty());
  }
}

TEST_CASE("converters reject off-semantics inputs") {
  Formula f = make(3, {{1, 2, 3}});
  ReductionTrace tr = reduce_formula(f);

  REQUIRE_THROWS_AS(cover_from_assignment(tr, 0b000), ClassError);  // no true variable
  REQUIRE_THROWS_AS(cover_from_assignment(tr, 0b011), ClassError);  // two true variables

  CoverAssignment empty;
  empty.state.assign(tr.instance.edges.size(), EdgeState::Unused);
  REQUIRE_THROWS_AS(assignment_from_cover(tr, empty), ClassError);

  CoverAssignment wrong_size;
  REQUIRE_THROWS_AS(assignment_from_cover(tr, wrong_size), ClassError);
}
