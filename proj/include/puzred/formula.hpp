#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "puzred/common.hpp"
#include "puzred/mixed_graph.hpp"
#include "puzred/planar.hpp"

namespace puzred {

// Positive 1-in-3 formula: clauses are unordered triples of distinct
// variables, stored sorted ascending. Variables are 1-based.
struct Formula {
  int num_vars = 0;
  std::vector<std::array<int, 3>> clauses;

  friend bool operator==(const Formula&, const Formula&) = default;
};

// Format: optional `c` comment lines, one header `p pos1in3 <nvars> <nclauses>`,
// then one clause per line as three space-separated positive integers.
inline Formula parse_formula(const std::string& text) {
  Formula f;
  bool have_header = false;
  int clauses_declared = 0;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    std::string t;
    while (ls >> t) tok.push_back(t);
    if (tok.empty() || tok[0] == "c") continue;
    if (tok[0] == "p") {
      if (have_header) throw ParseError(line_no, "duplicate header");
      if (tok.size() != 4 || tok[1] != "pos1in3")
        throw ParseError(line_no, "header must be: p pos1in3 <nvars> <nclauses>");
      f.num_vars = detail::parse_int(tok[2], line_no, "variable count");
      clauses_declared = detail::parse_int(tok[3], line_no, "clause count");
      if (f.num_vars <= 0) throw ParseError(line_no, "variable count must be positive");
      if (clauses_declared < 0) throw ParseError(line_no, "clause count must be nonnegative");
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(line_no, "clause before header");
    if (tok.size() != 3)
      throw ParseError(line_no, "clause must have exactly 3 literals, got " +
                                    std::to_string(tok.size()));
    std::array<int, 3> cl{};
    for (int i = 0; i < 3; ++i) {
      int lit = detail::parse_int(tok[i], line_no, "literal");
      if (lit < 0) throw ParseError(line_no, "negative literal " + std::to_string(lit));
      if (lit == 0) throw ParseError(line_no, "literal 0 is not a variable");
      if (lit > f.num_vars)
        throw ParseError(line_no, "variable " + std::to_string(lit) + " exceeds declared count");
      cl[i] = lit;
    }
    std::sort(cl.begin(), cl.end());
    if (cl[0] == cl[1] || cl[1] == cl[2])
      throw ParseError(line_no, "repeated literal in clause");
    f.clauses.push_back(cl);
  }
  if (!have_header) throw ParseError(line_no, "missing header");
  if (static_cast<int>(f.clauses.size()) != clauses_declared)
    throw ParseError(line_no, "declared " + std::to_string(clauses_declared) + " clauses, found " +
                                  std::to_string(f.clauses.size()));
  std::vector<char> used(f.num_vars + 1, 0);
  for (auto& cl : f.clauses)
    for (int v : cl) used[v] = 1;
  for (int v = 1; v <= f.num_vars; ++v)
    if (!used[v]) throw ParseError(line_no, "variable " + std::to_string(v) + " occurs in no clause");
  return f;
}

inline std::string serialize_formula(const Formula& f) {
  std::ostringstream out;
  out << "p pos1in3 " << f.num_vars << " " << f.clauses.size() << "\n";
  for (auto& cl : f.clauses) out << cl[0] << " " << cl[1] << " " << cl[2] << "\n";
  return out.str();
}

// Removes duplicate clauses, keeping first occurrences.
inline Formula dedup_clauses(const Formula& f) {
  Formula g;
  g.num_vars = f.num_vars;
  std::set<std::array<int, 3>> seen;
  for (auto& cl : f.clauses)
    if (seen.insert(cl).second) g.clauses.push_back(cl);
  return g;
}

// Assignments as bitmasks, bit (v-1) set when variable v is true, ascending.
inline std::vector<std::uint32_t> enumerate_one_in_three(const Formula& f, int cap_vars = 24) {
  if (f.num_vars > cap_vars)
    throw CapError("variable count " + std::to_string(f.num_vars) + " exceeds exhaustive cap " +
                   std::to_string(cap_vars));
  std::vector<std::uint32_t> out;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << f.num_vars); ++mask) {
    bool ok = true;
    for (auto& cl : f.clauses) {
      int trues = ((mask >> (cl[0] - 1)) & 1) + ((mask >> (cl[1] - 1)) & 1) +
                  ((mask >> (cl[2] - 1)) & 1);
      if (trues != 1) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(mask);
  }
  return out;
}

// Incidence graph: vertices 0..num_vars-1 are variables, num_vars..+m-1 are
// clauses; one edge per (variable, clause) membership.
inline std::vector<std::pair<int, int>> incidence_edges(const Formula& f) {
  std::vector<std::pair<int, int>> edges;
  for (std::size_t k = 0; k < f.clauses.size(); ++k)
    for (int v : f.clauses[k]) edges.push_back({v - 1, f.num_vars + static_cast<int>(k)});
  return edges;
}

// Planar rotation system of the incidence graph; order[i] lists incidence-edge
// indices cyclically. Throws NonPlanarError with a Kuratowski witness.
inline RotationSystem plan_incidence_embedding(const Formula& f) {
  auto edges = incidence_edges(f);
  int n = f.num_vars + static_cast<int>(f.clauses.size());
  auto pr = test_planarity(n, edges);
  if (!pr.planar) throw NonPlanarError(pr.kuratowski);
  if (!euler_ok(n, edges, pr.rotation))
    throw StructuralError("embedding fails the Euler check");
  return pr.rotation;
}

}  // namespace puzred
