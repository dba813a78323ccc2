#pragma once
#include <string>
#include <vector>

#include "eqhh/algebra.h"

namespace eqhh {

// Built-in groups: Z1, Z2, Z3, Z4, V4.
std::vector<GroupPtr> catalog_groups();
GroupPtr find_group(const std::string& name);  // throws InvalidInput

// Built-in coefficient algebras over f:
//   k            the ground field
//   dual-numbers k[x]/x^2, |x| = 0
//   kZ2          k[x]/(x^2-1), |x| = 0
//   kZ3          k[t]/(t^3-1), |t| = 0
//   exterior     k<x>/x^2, |x| = 1
std::vector<AlgPtr> catalog_algebras(const Field& f);
AlgPtr find_algebra(const std::string& name, const Field& f);

AlgPtr make_ground(const Field& f);
AlgPtr make_dual_numbers(const Field& f);
AlgPtr make_kz2(const Field& f);
AlgPtr make_kz3(const Field& f);
AlgPtr make_exterior(const Field& f);

// All catalog actions of g on a, validated. Always contains "trivial";
// two-dimensional algebras carry "sign" (x -> -x) and kZ3 carries "inv"
// (t -> t^2) whenever the group maps onto Z2.
std::vector<GAction> catalog_actions(GroupPtr g, AlgPtr a);
GAction find_action(GroupPtr g, AlgPtr a, const std::string& name);

// The (group, algebra, action) grid used by the verification suites.
struct GridPoint {
  GroupPtr group;
  AlgPtr alg;
  GAction action;
};
std::vector<GridPoint> catalog_grid(const Field& f, Index max_dim_a = 3,
                                    int max_order = 4);

struct CatalogEntry {
  std::string kind;    // "group" | "algebra" | "action"
  std::string name;
  std::string detail;
};
std::vector<CatalogEntry> catalog_listing(const Field& f);

}  // namespace eqhh
