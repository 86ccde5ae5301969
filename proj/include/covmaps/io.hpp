#pragma once
// JSON serialization. Complex numbers are [re, im] pairs, matrices are arrays
// of rows. Parse errors throw InputError naming the offending field.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "covmaps/dynamics.hpp"
#include "covmaps/linmap.hpp"
#include "covmaps/types.hpp"

namespace covmaps {

using Json = nlohmann::ordered_json;

Json complex_to_json(Complex z);
Json matrix_to_json(const Matrix& m);
Json vector_to_json(const Vector& v);

Complex complex_from_json(const Json& j, const std::string& field);
Matrix matrix_from_json(const Json& j, const std::string& field);

/// {"n": int, "basis": "frobenius"|"canonical", "c": matrix}
Json map_to_json(const MapMatrix& m);
MapMatrix map_from_json(const Json& j, const std::string& field = "map");

/// A map file may carry {"certificate": {"cp": map, "cocp": map}}.
struct MapDocument {
    MapMatrix map;
    std::optional<MapMatrix> cp;
    std::optional<MapMatrix> cocp;
};
MapDocument map_document_from_json(const Json& j);

/// {"H": matrix, "phi_cp": map, "phi_cocp": map}; either phi part may be
/// omitted and defaults to the zero map.
Generator generator_from_json(const Json& j);
/// Bare matrix or {"rho": matrix}.
DensityMatrix density_from_json(const Json& j);

/// Reads and parses a file; InputError on I/O or syntax failure.
Json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);

/// 64-bit FNV-1a, rendered as 16 hex digits.
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL);
std::string hex64(std::uint64_t h);

/// Command report. Every verdict is stored with its residual and tolerance
/// under the same name.
class Report {
public:
    explicit Report(std::string command) : command_(std::move(command)) {}

    void set_inputs_digest(std::string digest) { digest_ = std::move(digest); }
    void verdict(const std::string& name, bool value, double residual, double tolerance);
    void residual(const std::string& name, double value);
    void artifact(const std::string& name, Json value);

    /// True when every verdict holds (vacuously true with none).
    bool passed() const;
    Json to_json() const;
    std::string to_text() const;

private:
    std::string command_;
    std::string digest_;
    Json verdicts_ = Json::object();
    Json residuals_ = Json::object();
    Json tolerances_ = Json::object();
    Json artifacts_ = Json::object();
};

}  // namespace covmaps
