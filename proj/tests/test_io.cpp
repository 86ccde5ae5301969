#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "covmaps/io.hpp"

using namespace covmaps;

namespace {

// CHECKs that f throws InputError whose message starts with the field path.
template <class F>
void check_field_error(F&& f, const std::string& field) {
    try {
        f();
        FAIL("expected InputError for " << field);
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).rfind(field, 0) == 0);
    }
}

std::string temp_path(const char* name) { return std::string("covmaps_io_") + name; }

}  // namespace

TEST_CASE("complex numbers and matrices round-trip") {
    CHECK(complex_to_json(Complex(1.5, -2.0)) == Json::parse("[1.5, -2.0]"));
    CHECK(complex_from_json(Json::parse("[1.5, -2.0]"), "z") == Complex(1.5, -2.0));
    CHECK(complex_from_json(Json(3), "z") == Complex(3.0, 0.0));
    Rng rng(91);
    const Matrix m = random_ginibre(3, 2, rng);
    const Json j = matrix_to_json(m);
    REQUIRE(j.size() == 3);
    CHECK(j[0].size() == 2);
    // Serialization keeps full precision.
    CHECK(max_abs(matrix_from_json(Json::parse(j.dump()), "m") - m) == 0.0);
}

TEST_CASE("matrix parse errors name the field") {
    check_field_error([] { matrix_from_json(Json::parse("[]"), "A"); }, "A");
    check_field_error([] { matrix_from_json(Json::parse("[[1, 2], [3]]"), "A"); }, "A[1]");
    check_field_error([] { matrix_from_json(Json::parse("[[1, \"x\"]]"), "A"); }, "A[0][1]");
    check_field_error([] { matrix_from_json(Json::parse("[[1, [2, 3, 4]]]"), "A"); }, "A[0][1]");
    check_field_error([] { complex_from_json(Json::parse("[1, null]"), "z"); }, "z[1]");
}

TEST_CASE("maps round-trip and validate shape") {
    Rng rng(92);
    const MapMatrix m(3, BasisTag::frobenius, random_ginibre(9, 9, rng));
    const MapMatrix back = map_from_json(Json::parse(map_to_json(m).dump()));
    CHECK(back.n() == 3);
    CHECK(max_abs(back.coefficients() - m.coefficients()) == 0.0);

    const MapMatrix canon = MapMatrix::identity(2).in_basis(BasisTag::canonical);
    const Json cj = map_to_json(canon);
    CHECK(cj["basis"] == "canonical");
    CHECK(max_abs(map_from_json(cj).frobenius_coefficients() - MapMatrix::identity(2).frobenius_coefficients()) < 1e-15);

    // basis defaults to frobenius.
    const Json bare = Json::parse(R"({"n": 2, "c": [[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,2]]})");
    CHECK(max_abs(map_from_json(bare).frobenius_coefficients() - MapMatrix::identity(2).frobenius_coefficients()) ==
          0.0);

    check_field_error([] { map_from_json(Json::parse(R"({"c": [[1]]})")); }, "map.n");
    check_field_error([] { map_from_json(Json::parse(R"({"n": 1, "c": [[1]]})")); }, "map.n");
    check_field_error([] { map_from_json(Json::parse(R"({"n": 2.5, "c": [[1]]})")); }, "map.n");
    check_field_error([] { map_from_json(Json::parse(R"({"n": 2, "basis": "pauli", "c": [[1]]})")); }, "map.basis");
    check_field_error([] { map_from_json(Json::parse(R"({"n": 2, "c": [[1, 2], [3, 4]]})")); }, "map.c");
    check_field_error([] { map_from_json(Json::parse("[1, 2]"), "input"); }, "input");
}

TEST_CASE("map documents with certificates") {
    Json doc = map_to_json(MapMatrix::identity(2) + MapMatrix::transpose_map(2));
    doc["certificate"] = {{"cp", map_to_json(MapMatrix::identity(2))}, {"cocp", map_to_json(MapMatrix::transpose_map(2))}};
    const MapDocument d = map_document_from_json(doc);
    REQUIRE(d.cp);
    REQUIRE(d.cocp);
    CHECK(max_abs(d.cocp->coefficients() - MapMatrix::transpose_map(2).coefficients()) == 0.0);

    const MapDocument plain = map_document_from_json(map_to_json(MapMatrix::identity(2)));
    CHECK_FALSE(plain.cp);
    CHECK_FALSE(plain.cocp);

    doc["certificate"]["cp"] = map_to_json(MapMatrix::identity(3));
    check_field_error([&] { map_document_from_json(doc); }, "map.certificate");
}

TEST_CASE("generator documents") {
    const Json j = Json::parse(R"({
        "H": [[1, 0], [0, -1]],
        "phi_cp": {"n": 2, "c": [[0,0,0,0],[0,0,0,0],[0,0,2,0],[0,0,0,0]]}
    })");
    const Generator gen = generator_from_json(j);
    CHECK(gen.n() == 2);
    CHECK_FALSE(gen.time_dependent());
    // phi_cp = Ad_sigma_z, anchor sigma_z^2 = I.
    CHECK(max_abs(gen.anchor(0.0) - Matrix::Identity(2, 2)) < 1e-14);

    check_field_error([] { generator_from_json(Json::parse(R"({"phi_cp": {}})")); }, "generator.H");
    check_field_error([] { generator_from_json(Json::parse(R"({"H": [[0, 1], [0, 0]]})")); }, "generator.H");
    check_field_error(
        [] {
            generator_from_json(Json::parse(R"({"H": [[0, 0], [0, 0]],
                "phi_cp": {"n": 2, "c": [[1,0,0,0],[0,-1,0,0],[0,0,0,0],[0,0,0,0]]}})"));
        },
        "generator.phi_cp");
    check_field_error(
        [] {
            generator_from_json(Json::parse(R"({"H": [[0, 0], [0, 0]],
                "phi_cocp": {"n": 2, "c": [[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,2]]}})"));
        },
        "generator.phi_cocp");
    check_field_error(
        [] {
            generator_from_json(Json::parse(R"({"H": [[0, 0], [0, 0]],
                "phi_cp": {"n": 3, "c": [[0,0,0,0,0,0,0,0,0],[0,0,0,0,0,0,0,0,0],[0,0,0,0,0,0,0,0,0],
                    [0,0,0,0,0,0,0,0,0],[0,0,0,0,0,0,0,0,0],[0,0,0,0,0,0,0,0,0],[0,0,0,0,0,0,0,0,0],
                    [0,0,0,0,0,0,0,0,0],[0,0,0,0,0,0,0,0,0]]}})"));
        },
        "generator.phi_cp.n");
}

TEST_CASE("density documents") {
    CHECK(density_from_json(Json::parse("[[0.5, 0.5], [0.5, 0.5]]")).n() == 2);
    CHECK(density_from_json(Json::parse(R"({"rho": [[1, 0], [0, 0]]})")).n() == 2);
    check_field_error([] { density_from_json(Json::parse("[[1, 0], [0, 1]]")); }, "rho0");
    check_field_error([] { density_from_json(Json::parse(R"({"rho": [[1, 0], [0, 1]]})")); }, "rho0.rho");
    check_field_error([] { density_from_json(Json::parse(R"({"state": []})")); }, "rho0.rho");
}

TEST_CASE("files") {
    const std::string good = temp_path("good.json"), bad = temp_path("bad.json");
    std::ofstream(good) << R"({"a": [1, 2]})";
    std::ofstream(bad) << R"({"a": [1, 2)";
    CHECK(read_json_file(good)["a"][1] == 2);
    CHECK(read_text_file(good) == R"({"a": [1, 2]})");
    check_field_error([&] { read_json_file(bad); }, bad);
    check_field_error([] { read_json_file("covmaps_io_does_not_exist.json"); }, "covmaps_io_does_not_exist.json");
    std::remove(good.c_str());
    std::remove(bad.c_str());
}

TEST_CASE("FNV-1a reference vectors") {
    CHECK(hex64(fnv1a("")) == "cbf29ce484222325");
    CHECK(hex64(fnv1a("a")) == "af63dc4c8601ec8c");
    CHECK(hex64(fnv1a("foobar")) == "85944171f73967e8");
    // Incremental hashing equals one-shot hashing.
    CHECK(fnv1a("bar", fnv1a("foo")) == fnv1a("foobar"));
    CHECK(hex64(0x1) == "0000000000000001");
}

TEST_CASE("report schema") {
    Report r("check");
    r.set_inputs_digest("0123456789abcdef");
    r.verdict("cp", true, 0.0, 1e-9);
    r.verdict("cocp", false, 0.5, 1e-9);
    r.residual("cp_min_eigenvalue", 1.0);
    r.artifact("spectrum", Json::array({1, 2}));
    CHECK_FALSE(r.passed());

    const Json j = r.to_json();
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"command", "inputs_digest", "verdicts", "residuals", "tolerances", "artifacts"});
    CHECK(j["command"] == "check");
    CHECK(j["verdicts"]["cp"] == true);
    CHECK(j["verdicts"]["cocp"] == false);
    CHECK(j["residuals"]["cocp"] == 0.5);
    CHECK(j["tolerances"]["cp"] == 1e-9);
    CHECK(j["residuals"]["cp_min_eigenvalue"] == 1.0);
    CHECK(j["artifacts"]["spectrum"][1] == 2);
    // Deterministic output: same inputs, same bytes.
    CHECK(r.to_json().dump() == j.dump());

    const std::string text = r.to_text();
    CHECK(text.find("PASS cp") != std::string::npos);
    CHECK(text.find("FAIL cocp") != std::string::npos);

    CHECK(Report("empty").passed());
}
