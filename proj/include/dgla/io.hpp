// JSON and text formats for DGLAs, rings, elements, paths and morphisms,
// plus the source strings accepted on the command line.  The schemas are
// described in docs/schemas.md.
#pragma once

#include "dgla/homotopy.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace dgla::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Malformed input.  The message names the offending field as a JSON
/// pointer ("/bracket/0/entries/3") or the line and column of a syntax
/// error.
class ParseError : public Error {
public:
  using Error::Error;
};

/// Parses JSON text; syntax errors report "<source>:<line>:<column>".
Json parse_json(const std::string &text, const std::string &source = "<input>");
/// Reads a whole file; throws ParseError when it cannot be opened.
std::string read_file(const std::string &path);

// -- scalars, vectors, matrices ----------------------------------------------

/// Integers as JSON numbers when they fit in 64 bits, everything else as
/// "p/q" strings.
Json to_json(const Scalar &s);
Scalar scalar_from_json(const Json &j, const std::string &where);
Json to_json(const Vec &v);
/// A matrix as a list of rows.
Json to_json(const Matrix &m);
Matrix matrix_from_json(const Json &j, std::size_t rows, std::size_t cols, const std::string &where);

// -- structures ---------------------------------------------------------------

Json dgla_to_json(const Dgla &l);
DglaPtr dgla_from_json(const Json &j);

/// Always the {"m_basis", "table"} form.
Json ring_to_json(const ArtinAlgebra &a);
/// {"vars", "relations"} or {"m_basis", "table"}; a bare string is read
/// as in load_ring.
ArtinPtr ring_from_json(const Json &j);

/// {"degree": i, "coeffs": [[c_{k,p}]]} with one row per basis vector of L^i.
Json element_to_json(const TensorElement &x);
TensorElement element_from_json(const Json &j, const DglaPtr &l, const ArtinPtr &a,
                                std::optional<int> degree = std::nullopt);
/// "2*e@t^2 - 1/2*e@t"; "0" for zero.
std::string element_to_text(const TensorElement &x);
TensorElement element_from_text(const std::string &text, const DglaPtr &l, const ArtinPtr &a, int degree);

/// {"degree", "cap", "coeff_by_t_power": [element coeffs, ...]}.
Json path_to_json(const PolyPath &p);
PolyPath path_from_json(const Json &j, const DglaPtr &l, const ArtinPtr &a);
/// {"a": path, "b": path}.
Json omega_to_json(const OmegaElement &w);
OmegaElement omega_from_json(const Json &j, const DglaPtr &l, const ArtinPtr &a);

/// {"source", "target", "blocks": {"deg": matrix}}; the endpoints are DGLA
/// sources or inline DGLA objects.
Json morphism_to_json(const DglaMorphism &f);
DglaMorphism morphism_from_json(const Json &j);

Json cohomology_to_json(const Dgla &l);
Json truncated_map_to_json(const TruncatedMap &q);

// -- command-line sources -----------------------------------------------------

/// "builtin:NAME", a bare builtin name, inline JSON, or a file path.
DglaPtr load_dgla(const std::string &source);
/// A builtin ring name (optionally "builtin:"), a relation list such as
/// "t^3" or "x^2,xy,y^2" (variables are the letters used), inline JSON, or a
/// file path.
ArtinPtr load_ring(const std::string &source);
/// "0", the text syntax, inline JSON, or a file path.
TensorElement load_element(const std::string &source, const DglaPtr &l, const ArtinPtr &a, int degree);
PolyPath load_path(const std::string &source, const DglaPtr &l, const ArtinPtr &a);
OmegaElement load_omega(const std::string &source, const DglaPtr &l, const ArtinPtr &a);
/// "identity:SRC", "truncation:SRC", "zero:SRC", inline JSON or a file.
DglaMorphism load_morphism(const std::string &source);

/// Lower-case hex SHA-256 of the text.
std::string digest(const std::string &text);

} // namespace dgla::io
