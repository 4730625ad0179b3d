#pragma once

// JSON encoding of every public data type, with canonical key ordering and
// arbitrary-size integers as decimal strings (schemas/ documents the layout).
// Decoding validates shapes and reports schema-error on malformed input.

#include <json.hpp>

#include "elemex/dilation.hpp"

namespace elemex {

using Json = nlohmann::ordered_json;

Json ring_to_json(const Ring& r);
Ring ring_from_json(const Json& j);

Json elem_to_json(const Elem& e);
Elem elem_from_json(const Json& j, const Ring& r);

Json ideal_to_json(const IdealPtr& i);  // generator list; the ring is contextual
IdealPtr ideal_from_json(const Json& j, const Ring& r);

Json witness_to_json(const IdealElem& w);  // term list; the ideal is contextual
IdealElem witness_from_json(const Json& j, const IdealPtr& ideal);

Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j, const Ring& r, const IdealPtr& ideal_for_witnesses);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const Ring& r);

Json generator_to_json(const Generator& g);
Generator generator_from_json(const Json& j, GroupKind kind, std::size_t n, const Ring& r,
                              const IdealPtr& ideal_for_relative);

/// Self-contained: embeds the ring and, when relative factors occur, the
/// witness ideal.
Json word_to_json(const Word& w);
Word word_from_json(const Json& j);

Json rewrite_certificate_to_json(const RewriteCertificate& c);
Json rank_one_certificate_to_json(const RankOneCertificate& c);
Json monomial_certificate_to_json(const MonomialCertificate& c);
Json dilation_result_to_json(const DilationResult& r);

/// Canonical single-line serialization (sorted monomials, fixed key order).
std::string dump_json(const Json& j, bool pretty);

}  // namespace elemex
