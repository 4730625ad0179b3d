#pragma once

// Dense matrices and vectors over a ring, the standard symplectic and
// hyperbolic forms, the rank-two update gadgets M(v,w) and <v,w>, and the
// group / relative-congruence membership checks.

#include <optional>

#include "elemex/ring.hpp"

namespace elemex {

enum class GroupKind { Linear, Symplectic, Orthogonal };

const char* group_kind_name(GroupKind k);

/// The index involution swapping 2i-1 <-> 2i (1-based).
std::size_t sigma(std::size_t i);

struct Matrix {
    Ring ring;
    std::size_t n = 0;
    std::vector<Elem> entries;  // row-major, n*n
    std::shared_ptr<const Matrix> inverse_witness;

    const Elem& at(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
    Elem& at(std::size_t i, std::size_t j) { return entries[i * n + j]; }
};

struct Vector {
    Ring ring;
    std::vector<Elem> entries;
    std::vector<std::optional<IdealElem>> witnesses;  // empty or size n

    std::size_t size() const { return entries.size(); }
};

Matrix identity_matrix(const Ring& r, std::size_t n);
Matrix zero_matrix(const Ring& r, std::size_t n);
Matrix mat_mul(const Matrix& a, const Matrix& b);
Matrix mat_add(const Matrix& a, const Matrix& b);
Matrix mat_sub(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
bool mat_eq(const Matrix& a, const Matrix& b);
bool is_identity(const Matrix& a);
Vector mat_vec(const Matrix& a, const Vector& v);
Matrix scalar_mul(const Elem& c, const Matrix& a);

/// Checks the claimed inverse both ways and attaches it.
Matrix with_inverse_witness(Matrix m, Matrix inverse);

Vector make_vector(const Ring& r, std::vector<Elem> entries);
Vector basis_vector(const Ring& r, std::size_t n, std::size_t i);  // 1-based
bool vec_eq(const Vector& a, const Vector& b);

/// Determinant by fraction-free elimination (domains) or cofactor
/// expansion (small non-domains); nullopt when neither applies.
std::optional<Elem> determinant(const Matrix& m);

/// psi_m (Symplectic, alternating) or psi~_m (Orthogonal, symmetric) of
/// size 2m x 2m.
Matrix form_matrix(GroupKind kind, std::size_t m, const Ring& ring);

/// v^t . psi (symplectic) or v^t . psi~ (orthogonal), as a length-n vector
/// of row entries.
Vector tilde(const Vector& v, GroupKind kind);

/// <v,w>: v^t.w (linear) or tilde(v).w (symplectic / orthogonal).
Elem inner(const Vector& v, const Vector& w, GroupKind kind);

/// M(v,w): v.w^t (linear), v.w~ + w.v~ (symplectic), v.w~ - w.v~ (orthogonal).
Matrix m_update(const Vector& v, const Vector& w, GroupKind kind);

enum class Check { True, False, Undecidable };

/// Linear: invertibility via witness or decidable determinant-unit test.
/// Symplectic / orthogonal: the exact form equation.
Check check_group_membership(const Matrix& m, GroupKind kind);

struct RelativeCheck {
    Check status = Check::Undecidable;
    // witnesses for off-diagonal entries and (diagonal - 1), row-major;
    // populated only when status == True
    std::vector<std::optional<IdealElem>> witnesses;
};

/// alpha == I_n modulo I, entrywise, by witness or decision procedure.
RelativeCheck check_relative(const Matrix& m, const IdealPtr& ideal);

/// v in Um_n(R, I): entries generate the unit ideal (decidable bases, or a
/// caller-supplied coefficient witness u with u.v = 1) and v == e_1 mod I.
Check check_um_rel(const Vector& v, const IdealPtr& ideal,
                   const std::optional<Vector>& unimodularity_witness = std::nullopt);

}  // namespace elemex
