#pragma once

#include <string>

#include "igusa/errors.hpp"
#include "igusa/padic.hpp"
#include "igusa/ratfun.hpp"

namespace igusa {

/// Canonical single-line JSON forms with a stable key order and canonical
/// rational strings: serialize(parse(s)) reproduces canonical documents
/// byte-for-byte, and parse(serialize(x)) is the identity.
///
/// Shapes:
///   scalar      {"p":5,"coeffs":[2,0,1],"exact":true}      (2 + pi^2)
///   polynomial  {"arity":2,"p":5,"terms":[{"exps":[5,0],"coeff":<scalar>}]}
///   value       {"q":5,"num":[{"t":0,"c":"4/5"}],
///                "den":[{"a":1,"b":1}],"zeta_order":1}
/// Numerator coefficients are "num/den" strings in Q and
/// {"m":4,"coords":["1/2","0"]} objects in a cyclotomic field.

std::string padic_to_json(const PadicScalar& x);

/// Accepts the scalar object form, or a bare integer (reduced into F_p)
/// when `p_hint` >= 2.
PadicScalar padic_from_json(const std::string& text, long p_hint = 0);

std::string trunc_poly_to_json(const TruncPoly& a);
TruncPoly trunc_poly_from_json(const std::string& text);

std::string zeta_rat_to_json(const ZetaRat& x);
ZetaRat zeta_rat_from_json(const std::string& text);

/// A single numerator-style coefficient on its own (rational string or
/// {"m":...,"coords":[...]}).
std::string cyclo_to_json(const CycloScalar& c);
CycloScalar cyclo_from_json(const std::string& text);

}  // namespace igusa
