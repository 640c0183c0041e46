#pragma once

// Closed forms of the generating functions and the golden-ratio
// substitution points that turn them into Fibonacci/Lucas identities.

#include <string>
#include <string_view>
#include <vector>

#include "cbv/ball.hpp"
#include "cbv/exact.hpp"
#include "cbv/series.hpp"

namespace cbv {

enum class GFName {
  M,         // sum C(2n,n) H_n x^n
  HD,        // sum C(2n,n) (H_2n - H_n) x^n
  H2N,       // sum C(2n,n) H_2n x^n
  CAT_HD,    // sum C_n (H_2n - H_n) x^n
  CAT_H2N,   // sum C_n H_2n x^n
  CAT_HALF,  // sum C_n (H_2n - H_n/2) x^n
  EQ28,      // sum n C(2n,n) x^2n / (4^n (2n-1)^2 (2n+1))
  EQ29,      // sum n C(2n,n) x^(2n+3) / (4^n (2n-1)^2 (2n+1) (2n+3))
  EQ30,      // sum 2 n^2 C(2n,n) x^(2n-1) / (4^n (2n-1)^2 (2n+1))
  SHIFTED,   // sum_{m>=0} C(2m+k, m) x^m
};

inline constexpr GFName kAllGFNames[] = {GFName::M,       GFName::HD,       GFName::H2N,
                                         GFName::CAT_HD,  GFName::CAT_H2N,  GFName::CAT_HALF,
                                         GFName::EQ28,    GFName::EQ29,     GFName::EQ30,
                                         GFName::SHIFTED};

struct GF {
  GFName name = GFName::M;
  int k = 0;  // SHIFTED only, k >= 0
};

std::string_view to_string(GFName n);
/// Accepts "GF_M", "GF_HD", ..., "GF_SHIFTED".
GFName parse_gf_name(std::string_view text);
std::string to_string(const GF& gf);
std::string domain_text(GFName n);

/// Throws DomainError unless x lies inside the domain; a ball straddling
/// the boundary is rejected as well.
void check_domain(const GF& gf, const Ball& x);
void check_domain(const GF& gf, const SurdQ5& x);

Ball gf_eval(const GF& gf, const Ball& x);
Ball gf_eval(const GF& gf, const SurdQ5& x, Precision prec);

/// Terms of the defining power series at x.
StreamSpec gf_series_stream(const GF& gf, const SurdQ5& x);

enum class FamilyBase { FIB, LUCAS };

/// A = alpha^r F_r sqrt5 (FIB) or alpha^r L_r (LUCAS); r >= 0 for LUCAS, r >= 1 for FIB.
SurdQ5 family_parameter(FamilyBase base, long r);
/// x = 1 / (4 A), exactly.
SurdQ5 substitution_point(FamilyBase base, long r);

}  // namespace cbv
