#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "obliq/decompose.hpp"
#include "obliq/functional.hpp"
#include "obliq/subspace.hpp"
#include "obliq/trig.hpp"

namespace obliq {

using Json = nlohmann::ordered_json;

// Complex scalar formatting used by every text format: "a+bi" with 17
// significant digits on both parts.
std::string format_complex(const Complex& z);
Complex parse_complex(const std::string& text);

// MatrixMarket (array or coordinate; real/complex/integer;
// general/symmetric/hermitian) and plain CSV (row-major "a+bi" entries).
// read_matrix dispatches on the file extension.
Matrix read_matrix(const std::string& path);
Matrix read_matrix_market(std::istream& in);
Matrix read_csv_matrix(std::istream& in);
void write_matrix_market(std::ostream& out, const Matrix& a);
void write_csv_matrix(std::ostream& out, const Matrix& a);
void write_matrix(const std::string& path, const Matrix& a);

// FNV-1a over a file's raw bytes, hex-encoded; used for input digests.
std::uint64_t fnv1a(const void* data, std::size_t size);
std::string file_digest(const std::string& path);
// Digest of the metric via its canonical text formatting.
std::string gram_hash(const Matrix& gram);

Json complex_vector_json(const ColVec& v);
Json real_vector_json(const RealVec& v);

// Subspace = matrix payload (shared formats) + this header.
Json subspace_header_json(const Subspace& s);

// Trig fields as JSON: per component, a list of (factor list, coefficient)
// terms; factors are ["sin"|"cos", k] pairs, one per axis.
Json trig_field_json(const TrigField& field);
TrigField trig_field_from_json(const Json& j);

Json inclination_report_json(const InclinationReport& rep);
Json decomposition_json(const Decomposition& d, const BoundsReport& bounds);
Json extension_report_json(const ExtensionReport& ext);
Json probe_table_json(const ProbeTable& table);
void probe_table_csv(std::ostream& out, const ProbeTable& table);

} // namespace obliq
