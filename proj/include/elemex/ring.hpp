#pragma once

// Exact arithmetic over a tower of commutative rings: the integers,
// residue rings Z/n, the rationals, multivariate polynomial rings over
// any base, localizations R_s at a single non-zerodivisor, and the
// excision ring R (+) I attached to an ideal I of R.
//
// All values are immutable; every operation is a pure function of its
// inputs and safe for unrestricted concurrent use.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace elemex {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct RingNode;
using Ring = std::shared_ptr<const RingNode>;

struct Payload;
struct Ideal;

/// A value in some ring of the tower. Cheap to copy (shared immutable payload).
struct Elem {
    Ring ring;
    std::shared_ptr<const Payload> data;
};

/// Element of a finitely generated ideal, stored as an explicit linear
/// combination of the generators so membership holds by construction.
struct IdealElem {
    std::shared_ptr<const Ideal> ideal;
    std::vector<std::pair<Elem, std::size_t>> terms;  // (coefficient, generator index)
};

struct Ideal {
    Ring ring;
    std::vector<Elem> gens;  // non-empty; the zero ideal is gens = {0}
};

using IdealPtr = std::shared_ptr<const Ideal>;

// Sparse multivariate polynomial: exponent vector -> nonzero base coefficient.
// std::map keeps monomials lexicographically sorted on the exponent vector.
using Monomial = std::vector<std::uint32_t>;
struct PolyData {
    std::map<Monomial, Elem> terms;
};

// p / s^k over the base, canonicalized so s does not divide p when exact
// division is decidable in the base.
struct LocData {
    Elem num;
    std::uint32_t k = 0;
};

// r (+) i with the ideal component witnessed.
struct ExcData {
    Elem r;
    IdealElem i;
};

struct Payload {
    std::variant<Int, Rat, PolyData, LocData, ExcData> v;
};

enum class RingKind { Integers, IntegersMod, Rationals, Polynomial, Localized, Excision };

struct RingNode {
    RingKind kind;
    Int modulus;                     // IntegersMod
    Ring base;                       // Polynomial / Localized / Excision
    std::vector<std::string> vars;   // Polynomial
    std::optional<Elem> s;           // Localized
    IdealPtr ideal;                  // Excision
};

/// Machine-readable error kinds, mirrored by the CLI response schema.
enum class ErrKind {
    RingMismatch,
    NotInIdeal,
    NonzeroInnerProduct,
    Undecidable,
    RewriteFailure,
    SchemaError,
    Domain,
};

class Error : public std::runtime_error {
  public:
    Error(ErrKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    ErrKind kind() const { return kind_; }

  private:
    ErrKind kind_;
};

const char* err_kind_name(ErrKind k);

// ---- ring constructors -------------------------------------------------

Ring integers();
Ring integers_mod(const Int& n);
Ring rationals();
Ring polynomial_ring(Ring base, std::vector<std::string> vars);
Ring localized_ring(Ring base, const Elem& s);
Ring excision_ring(Ring base, IdealPtr ideal);

bool ring_eq(const Ring& a, const Ring& b);
std::string ring_to_string(const Ring& r);

/// True when the ring is an integral domain by construction (Z, Q,
/// polynomials over a domain, localizations of a domain).
bool is_domain(const Ring& r);
/// True when 2 is a unit (false for Z; for Z/n iff n odd).
bool two_is_unit(const Ring& r);
bool is_field(const Ring& r);

// ---- element constructors and accessors --------------------------------

Elem zero(const Ring& r);
Elem one(const Ring& r);
Elem from_int(const Ring& r, const Int& v);
Elem make_rational(const Ring& r, const Int& num, const Int& den);
Elem make_poly(const Ring& r, std::map<Monomial, Elem> terms);
Elem make_localized(const Ring& r, Elem num, std::uint32_t k);
Elem make_excision(const Ring& r, Elem base_part, IdealElem ideal_part);

const Int& int_value(const Elem& e);
const Rat& rat_value(const Elem& e);
const PolyData& poly_data(const Elem& e);
const LocData& loc_data(const Elem& e);
const ExcData& exc_data(const Elem& e);

// ---- arithmetic ---------------------------------------------------------

Elem add(const Elem& a, const Elem& b);
Elem sub(const Elem& a, const Elem& b);
Elem mul(const Elem& a, const Elem& b);
Elem neg(const Elem& a);
Elem pow(const Elem& a, std::uint32_t e);
bool eq(const Elem& a, const Elem& b);
bool is_zero(const Elem& a);
bool is_one(const Elem& a);

/// a / b when the quotient exists exactly in the ring; nullopt otherwise.
std::optional<Elem> try_divide(const Elem& a, const Elem& b);

/// True iff a is a unit, when unit testing is decidable; nullopt otherwise.
std::optional<bool> is_unit(const Elem& a);

std::string to_string(const Elem& e);

// ---- homomorphisms ------------------------------------------------------

/// Canonical embedding of an element into a ring built on top of its own
/// (iterated constants into polynomial rings, k = 0 into localizations,
/// r (+) 0 into excision rings). Identity when target equals the source.
Elem embed(const Elem& e, const Ring& target);

/// Substitution homomorphism on a polynomial ring: replaces the named
/// variables by elements of the same ring, fixing the base.
Elem substitute(const Elem& p, const std::map<std::string, Elem>& bindings);

/// Applies f to every coefficient of a polynomial; f must map the base
/// ring into new_base. Zero images are dropped.
Elem map_coefficients(const Elem& p, const Ring& new_poly_ring,
                      const std::function<Elem(const Elem&)>& f);

/// Transports a polynomial into another polynomial ring by variable name;
/// every variable of p must exist in the target, coefficients are embedded.
Elem transport_poly(const Elem& p, const Ring& target);

// Polynomial helpers.
std::size_t var_index(const Ring& poly_ring, const std::string& var);
Elem variable(const Ring& poly_ring, const std::string& var);
std::uint32_t min_var_degree(const Elem& p, std::size_t var);  // min over monomials; UINT32_MAX for 0
bool divisible_by_var_power(const Elem& p, std::size_t var, std::uint32_t k);
Elem divide_by_var_power(const Elem& p, std::size_t var, std::uint32_t k);
std::uint32_t total_degree(const Elem& p);

/// phi : R (+) I -> R, (r (+) i) -> r + value(i).
Elem phi(const Elem& a);

/// Max localization denominator exponent occurring anywhere inside e
/// (recursing through polynomial coefficients and excision components).
std::uint32_t denominator_exponent(const Elem& e);

/// Strips a Localized layer: defined on elements with denominator
/// exponent 0, returns the numerator over the base ring. Recurses through
/// polynomial coefficients when the localization sits in the base.
Elem delocalize(const Elem& e, const Ring& target);

// ---- ideals -------------------------------------------------------------

IdealPtr make_ideal(Ring ring, std::vector<Elem> gens);
bool ideal_eq(const Ideal& a, const Ideal& b);

IdealElem ideal_zero(IdealPtr ideal);
IdealElem ideal_gen_multiple(IdealPtr ideal, std::size_t gen_index, Elem coeff);
Elem ideal_elem_value(const IdealElem& w);
IdealElem ideal_elem_scale(const Elem& r, const IdealElem& w);
IdealElem ideal_elem_add(const IdealElem& a, const IdealElem& b);
IdealElem ideal_elem_neg(const IdealElem& a);

/// Reinterprets the generators of I in a ring extending I's ring.
IdealPtr extend_ideal(const IdealPtr& ideal, const Ring& target);
/// Transports a witness along embed into the extended ideal.
IdealElem embed_witness(const IdealElem& w, const IdealPtr& target_ideal);

struct NotMember {};
struct Undecidable {};
using Membership = std::variant<IdealElem, NotMember, Undecidable>;

/// Decision procedure for x in I where the base admits one: Z (gcd),
/// Z/n, Q, univariate polynomials over a field. Multivariate rings fall
/// back to trial division by a single generator; otherwise Undecidable.
Membership decide_membership(const Elem& x, const IdealPtr& ideal);

/// Witness for x in I, combining an explicit witness check with the
/// decision procedure; throws NotInIdeal / Undecidable errors.
IdealElem require_membership(const Elem& x, const IdealPtr& ideal);

}  // namespace elemex
