#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polytree/expr.hpp"
#include "polytree/polynomial.hpp"

namespace polytree {

/// A one-parameter family f_t with coefficients given as expressions in
/// `t`, sampled along the schedule t = t(j), j = first..last. An optional
/// `lambda(t)` replaces each member by lambda * f(z / lambda).
struct FamilySpec {
  std::vector<Expr> coeffs;  // highest degree first
  Expr schedule;
  int first = 0;
  int last = 0;
  std::optional<Expr> lambda;

  int degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
  std::size_t size() const noexcept;
  int index_to_j(std::size_t index) const noexcept;
  Complex parameter(std::size_t index) const;

  std::string coeff_text;
  std::string schedule_text;
  std::string lambda_text;
};

/// Parses the coefficient list (`t,1,0,0`), the schedule
/// (`t=1e-1*10^-j, j=0..6`; the `t=` and `j=` prefixes are optional) and
/// an optional lambda expression (empty for none). Offsets in ParseError
/// refer to the string that failed.
FamilySpec parse_family(std::string_view coeffs, std::string_view schedule, std::string_view lambda = {});

struct FamilyMember {
  int j = 0;
  Complex t;
  Complex lambda{1.0, 0.0};
  Polynomial f;
};

/// First `count` members; throws DegreeDrop if a leading coefficient
/// vanishes and InvalidArgument if |t| is not strictly monotone.
std::vector<FamilyMember> sample_members(const FamilySpec& spec, std::size_t count);
std::vector<FamilyMember> sample_members(const FamilySpec& spec);
std::vector<Polynomial> sample_family(const FamilySpec& spec, std::size_t count);

}  // namespace polytree
