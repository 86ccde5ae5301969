// covmaps: command-line front end. Exit codes: 0 pass, 1 verdict false,
// 2 usage or input error.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "covmaps/basis.hpp"
#include "covmaps/covariance.hpp"
#include "covmaps/dilation.hpp"
#include "covmaps/dynamics.hpp"
#include "covmaps/io.hpp"
#include "covmaps/linmap.hpp"
#include "covmaps/suites.hpp"

using namespace covmaps;

namespace {

struct Common {
    bool json = false;
    double tol = kEigenTol;
    double structural_tol = kStructuralTol;
    std::uint64_t seed = 0x5eed;
    int samples = 30;
};

// Digest over the command line and the bytes of every input file.
class Digest {
public:
    explicit Digest(const std::vector<std::string>& args) {
        for (const std::string& a : args) {
            h_ = fnv1a(a, h_);
            h_ = fnv1a(std::string_view("\0", 1), h_);
        }
    }
    std::string file(const std::string& path) {
        std::string text = read_text_file(path);
        h_ = fnv1a(text, h_);
        return text;
    }
    Json json_file(const std::string& path) {
        const std::string text = file(path);
        try {
            return Json::parse(text);
        } catch (const Json::parse_error& e) {
            throw InputError(path + ": malformed JSON (" + e.what() + ")");
        }
    }
    std::string hex() const { return hex64(h_); }

private:
    std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

int emit(Report& report, const Digest& digest, const Common& c, bool gate) {
    report.set_inputs_digest(digest.hex());
    if (c.json)
        std::cout << report.to_json().dump() << "\n";
    else
        std::cout << report.to_text();
    return gate && !report.passed() ? 1 : 0;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

void write_json(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw InputError(path + ": cannot write file");
    out << j.dump(2) << "\n";
}

double violation(double min_eigenvalue) { return std::max(0.0, -min_eigenvalue); }

// --- subcommands -----------------------------------------------------------------

int cmd_basis(int n, const Common& c, Digest& d) {
    const FrobeniusBasis& b = frobenius_basis(n);
    Report r("basis");
    double gram = 0.0;
    for (int i = 0; i < b.size(); ++i)
        for (int j = 0; j < b.size(); ++j)
            gram = std::max(gram, std::abs((b.matrices[static_cast<std::size_t>(i)].adjoint() *
                                            b.matrices[static_cast<std::size_t>(j)])
                                               .trace() -
                                           Complex(i == j ? 1.0 : 0.0)));
    r.verdict("orthonormal", gram < kExactTol, gram, kExactTol);
    Json mats = Json::array();
    for (const Matrix& m : b.matrices) mats.push_back(matrix_to_json(m));
    r.artifact("n", n);
    r.artifact("matrices", std::move(mats));
    return emit(r, d, c, true);
}

int cmd_check(const std::string& path, const std::string& props, const Common& c, Digest& d) {
    const MapDocument doc = map_document_from_json(d.json_file(path));
    Report r("check");
    for (const std::string& p : split_list(props)) {
        if (p == "hp") {
            const Matrix cf = doc.map.frobenius_coefficients();
            const double res = max_abs(cf - cf.adjoint());
            r.verdict("hp", res <= c.tol, res, c.tol);
        } else if (p == "cp" || p == "cocp") {
            const PositivityReport rep = p == "cp" ? cp_report(doc.map, c.tol) : cocp_report(doc.map, c.tol);
            r.verdict(p, rep.holds, violation(rep.min_eigenvalue), c.tol);
            r.residual(p + "_min_eigenvalue", rep.min_eigenvalue);
            r.residual(p + "_hermiticity", rep.hermiticity_residual);
        } else {
            throw InputError("--props: unknown property \"" + p + "\" (expected hp, cp, cocp)");
        }
    }
    if (doc.cp || doc.cocp) {
        const MapMatrix cp = doc.cp.value_or(MapMatrix::zero(doc.map.n()));
        const MapMatrix cocp = doc.cocp.value_or(MapMatrix::zero(doc.map.n()));
        const PositivityReport a = cp_report(cp, c.tol);
        const PositivityReport b = cocp_report(cocp, c.tol);
        const double sum_gap = max_abs((cp + cocp).frobenius_coefficients() - doc.map.frobenius_coefficients());
        r.verdict("certificate_cp", a.holds, violation(a.min_eigenvalue), c.tol);
        r.verdict("certificate_cocp", b.holds, violation(b.min_eigenvalue), c.tol);
        r.verdict("certificate_sum", sum_gap <= c.structural_tol, sum_gap, c.structural_tol);
    }
    return emit(r, d, c, true);
}

Json blocks_to_json(const CovariantBlocks& b) {
    return Json{{"c1", vector_to_json(b.c1)}, {"c2", vector_to_json(b.c2)}, {"c3", matrix_to_json(b.c3)}};
}

Json conjugate_blocks_to_json(const ConjugateCovariantBlocks& b) {
    return Json{{"c11", vector_to_json(b.c11)}, {"c12", vector_to_json(b.c12)}, {"c21", vector_to_json(b.c21)},
                {"c22", vector_to_json(b.c22)}, {"a", vector_to_json(b.a)}};
}

int cmd_covcheck(const std::string& path, bool conjugate, const Common& c, Digest& d) {
    const MapDocument doc = map_document_from_json(d.json_file(path));
    Report r(conjugate ? "covcheck --conjugate" : "covcheck");
    const CovarianceReport rep = conjugate ? conjugate_covariance_report(doc.map, c.samples, c.structural_tol, c.seed)
                                           : covariance_report(doc.map, c.samples, c.structural_tol, c.seed);
    r.verdict("identity", rep.identity_holds, rep.identity_residual, c.structural_tol);
    r.verdict("commutation", rep.commutation_holds, rep.commutation_residual, c.structural_tol);
    r.verdict("covariant", rep.covariant, std::max(rep.identity_residual, rep.commutation_residual), c.structural_tol);
    r.artifact("samples", c.samples);
    if (rep.covariant && is_hermiticity_preserving(doc.map, c.tol)) {
        if (conjugate) {
            const ConjugateBlockClassification cls = classify_conjugate_blocks(doc.map, c.structural_tol);
            r.residual("block_residual", cls.residual);
            if (cls.blocks) {
                r.artifact("blocks", conjugate_blocks_to_json(*cls.blocks));
                const RealVector lo = conjugate_corner_min_eigenvalues(*cls.blocks);
                r.residual("corner_min_eigenvalue", lo.size() ? lo.minCoeff() : 0.0);
                r.artifact("cp", cocp_conjugate_test(*cls.blocks, c.tol));
            }
        } else {
            const BlockClassification cls = classify_covariant_blocks(doc.map, c.structural_tol);
            r.residual("block_residual", cls.residual);
            if (cls.blocks) {
                r.artifact("blocks", blocks_to_json(*cls.blocks));
                const RealVector spec = covariant_corner_spectrum(*cls.blocks);
                r.residual("corner_min_eigenvalue", spec.size() ? spec.minCoeff() : 0.0);
                r.artifact("cp", cp_covariant_test(*cls.blocks, c.tol));
            }
        }
    }
    return emit(r, d, c, true);
}

int cmd_project(const std::string& path, const std::string& mode_name, const std::string& out, const Common& c,
                Digest& d) {
    ProjectionMode mode;
    if (mode_name == "quadrature")
        mode = ProjectionMode::quadrature;
    else if (mode_name == "closed")
        mode = ProjectionMode::closed_form;
    else
        throw InputError("--mode: expected quadrature or closed, got \"" + mode_name + "\"");
    const MapDocument doc = map_document_from_json(d.json_file(path));
    const MapMatrix p = project_covariant(doc.map, mode);
    const MapMatrix pp = project_covariant(p, ProjectionMode::closed_form);
    const double idem = max_abs(pp.frobenius_coefficients() - p.frobenius_coefficients());
    const CovarianceReport cov = covariance_report(p, c.samples, c.structural_tol, c.seed);
    Report r("project");
    r.verdict("idempotent", idem <= c.structural_tol, idem, c.structural_tol);
    r.verdict("covariant", cov.covariant, std::max(cov.identity_residual, cov.commutation_residual),
              c.structural_tol);
    r.residual("distance", (p.frobenius_coefficients() - doc.map.frobenius_coefficients()).norm());
    r.artifact("mode", mode_name);
    r.artifact("map", map_to_json(p));
    if (!out.empty()) write_json(out, map_to_json(p));
    return emit(r, d, c, true);
}

int cmd_random(const std::string& kind_name, int n, const std::string& out, const Common& c, Digest& d) {
    CovariantKind kind;
    if (kind_name == "cp")
        kind = CovariantKind::cp;
    else if (kind_name == "cocp")
        kind = CovariantKind::cocp;
    else if (kind_name == "dec")
        kind = CovariantKind::decomposable;
    else
        throw InputError("--kind: expected cp, cocp or dec, got \"" + kind_name + "\"");
    require_dimension(n);
    const RandomCovariantMap m = random_covariant_map(kind, n, c.seed);
    Json doc = map_to_json(m.map);
    doc["certificate"] = Json{{"cp", map_to_json(m.cp_part)}, {"cocp", map_to_json(m.cocp_part)}};
    const DecomposableMap cert = decomposable_certificate(m.cp_part, m.cocp_part, c.tol);
    const CovarianceReport cov = covariance_report(m.map, c.samples, c.structural_tol, c.seed);
    Report r("random");
    r.verdict("covariant", cov.covariant, std::max(cov.identity_residual, cov.commutation_residual),
              c.structural_tol);
    r.verdict("certified", true, violation(std::min(cp_report(cert.cp_part).min_eigenvalue,
                                                    cocp_report(cert.cocp_part).min_eigenvalue)),
              c.tol);
    r.artifact("kind", kind_name);
    r.artifact("map", doc);
    if (!out.empty()) write_json(out, doc);
    return emit(r, d, c, true);
}

int cmd_dilate(const std::string& path, std::string kind, bool verify, const Common& c, Digest& d) {
    const MapDocument doc = map_document_from_json(d.json_file(path));
    if (kind == "auto") {
        if (doc.cp || doc.cocp)
            kind = "jordan";
        else if (is_cp(doc.map, c.tol))
            kind = "cp";
        else if (is_cocp(doc.map, c.tol))
            kind = "cocp";
        else
            throw InputError("map: neither CP nor coCP and no certificate given; use --kind jordan with a certificate");
    }
    Dilation dil;
    MapMatrix target = doc.map;
    if (kind == "cp") {
        dil = stinespring(doc.map, c.tol);
    } else if (kind == "cocp") {
        dil = costinespring(doc.map, c.tol);
    } else if (kind == "jordan") {
        if (!doc.cp && !doc.cocp) throw InputError("map.certificate: required for --kind jordan");
        const MapMatrix cp = doc.cp.value_or(MapMatrix::zero(doc.map.n()));
        const MapMatrix cocp = doc.cocp.value_or(MapMatrix::zero(doc.map.n()));
        dil = jordan_dilation(cp, cocp, c.tol);
        target = cp + cocp;
    } else {
        throw InputError("--kind: expected auto, cp, cocp or jordan, got \"" + kind + "\"");
    }

    double recon = 0.0;
    for (const Matrix& e : canonical_basis(doc.map.n()))
        recon = std::max(recon, max_abs(dil.reconstruct(e) - covmaps::apply(target, e)));
    Report r("dilate");
    r.verdict("reconstruction", recon <= c.structural_tol, recon, c.structural_tol);
    r.artifact("kind", kind);
    r.artifact("k_dim", dil.k_dim);
    r.artifact("truncated", dil.truncated);
    r.artifact("v", matrix_to_json(dil.v));
    if (verify) {
        try {
            const CovarianceIntertwiner w = covariance_intertwiner(dil, c.samples, 1.0, c.seed);
            const double worst =
                std::max({w.intertwining_residual, w.representation_residual, w.unitarity_residual});
            r.verdict("intertwiner", worst <= kIntertwinerTol, worst, kIntertwinerTol);
            r.residual("intertwining", w.intertwining_residual);
            r.residual("representation", w.representation_residual);
            r.residual("unitarity", w.unitarity_residual);
            Rng rng(c.seed);
            const TorusElement g = TorusElement::random(doc.map.n(), rng);
            r.artifact("witness_g", std::vector<double>(g.angles().begin(), g.angles().end()));
            r.artifact("witness_w", matrix_to_json(w.w(g)));
        } catch (const NoIntertwinerFound& e) {
            r.verdict("intertwiner", false, std::numeric_limits<double>::infinity(), kIntertwinerTol);
            r.artifact("intertwiner_error", e.what());
        }
    }
    return emit(r, d, c, true);
}

int cmd_evolve(const std::string& gen_path, const std::string& rho_path, double horizon, double step,
               const std::string& reports, std::size_t stride, const Common& c, Digest& d) {
    const Generator gen = generator_from_json(d.json_file(gen_path));
    const DensityMatrix rho0 = density_from_json(d.json_file(rho_path));
    if (rho0.n() != gen.n()) throw InputError("rho0: dimension does not match generator.H");
    if (stride == 0) throw InputError("--stride: must be positive");
    EvolveOptions opts;
    opts.record_every = stride;
    const Evolution ev = evolve(gen, horizon, step, rho0, opts);

    for (std::size_t k = 0; k < ev.states.size(); ++k) {
        const Json line{{"t", ev.family.times[k]},
                        {"rho", matrix_to_json(ev.states[k])},
                        {"trace_residual", ev.trace_residuals[k]}};
        if (c.json) {
            std::cout << line.dump() << "\n";
        } else {
            std::ostringstream ss;
            ss << "t=" << ev.family.times[k] << "  trace_residual=" << ev.trace_residuals[k] << "  rho=" << line["rho"].dump();
            std::cout << ss.str() << "\n";
        }
    }

    Report r("evolve");
    r.artifact("steps", static_cast<long long>(std::llround(horizon / step)));
    r.verdict("regular", ev.regular, ev.max_generator_norm, opts.regularity_bound);
    for (const std::string& what : split_list(reports)) {
        if (what == "trace") {
            double drift = ev.family.trace_residual();
            for (double t : ev.trace_residuals) drift = std::max(drift, t);
            r.verdict("trace", drift <= 1e-8, drift, 1e-8);
        } else if (what == "covariance") {
            const GeneratorCovarianceReport g = generator_covariance_report(gen, c.samples, c.structural_tol, c.seed);
            const FamilyCovarianceReport f = dynamics_covariance_check(ev.family, c.samples, 1e-8, c.seed);
            const FamilyCovarianceReport p = propagator_covariance_check(ev.family, c.samples, 1e-8, c.seed);
            r.residual("hamiltonian_commutator", g.hamiltonian_commutator);
            r.residual("dissipator_covariance", std::max(g.dissipator.identity_residual, g.dissipator.commutation_residual));
            r.residual("family_covariance", f.max_residual);
            r.residual("propagator_covariance", p.max_residual);
            r.artifact("generator_covariant", g.covariant);
            r.artifact("family_covariant", f.covariant);
            r.artifact("propagators_skipped", p.skipped);
            const bool agree = g.covariant == f.covariant && (p.checked == 0 || p.covariant == f.covariant);
            r.verdict("covariance_agreement", agree, f.max_residual, 1e-8);
        } else if (what == "divisibility") {
            double worst = std::numeric_limits<double>::infinity(), bound = kDivisibilityTol;
            bool passes = true;
            const std::size_t last = ev.family.times.size() - 2;
            for (std::size_t k : {std::size_t{0}, last / 2, last}) {
                const DivisibilityWitness w = divisibility_witness(gen, ev.family, k);
                passes = passes && w.passes;
                if (w.min_eigenvalue < worst) {
                    worst = w.min_eigenvalue;
                    bound = w.tolerance;
                }
            }
            r.verdict("divisibility", passes, violation(worst), bound);
            r.residual("divisibility_min_eigenvalue", worst);
        } else {
            throw InputError("--report: unknown item \"" + what + "\" (expected covariance, trace, divisibility)");
        }
    }
    return emit(r, d, c, true);
}

int cmd_selftest(std::optional<int> n, bool full, const Common& c, Digest& d) {
    SuiteOptions opts;
    opts.n = n;
    opts.reduced = !full;
    opts.seed = c.seed;
    if (n) require_dimension(*n);
    Report r("selftest");
    for (const SuiteResult& s : run_suites(opts)) {
        const std::string prefix = "suite" + std::to_string(s.id) + "." + s.title + ".";
        for (const SuiteCheck& k : s.checks) r.verdict(prefix + k.name, k.passed, k.value, k.tolerance);
    }
    return emit(r, d, c, true);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Covariant decomposable maps on M_n"};
    app.require_subcommand(1);
    Common common;

    auto add_common = [&](CLI::App* sub) {
        sub->add_flag("--json", common.json, "Emit JSON");
        sub->add_option("--tol", common.tol, "Eigenvalue tolerance")->capture_default_str();
        sub->add_option("--structural-tol", common.structural_tol, "Structural tolerance")->capture_default_str();
        sub->add_option("--seed", common.seed, "Random seed")->capture_default_str();
        sub->add_option("--samples", common.samples, "Sample count")->capture_default_str()->check(CLI::PositiveNumber);
    };

    int n = 0;
    std::optional<int> n_opt;
    std::string map_path, props = "hp,cp,cocp", mode = "closed", out, kind = "auto", gen_path, rho_path,
                reports = "covariance,trace,divisibility";
    bool conjugate = false, verify = false, full = false;
    double horizon = 1.0, step = 1e-3;
    std::size_t stride = 1;

    auto* basis = app.add_subcommand("basis", "Frobenius basis of M_n");
    basis->add_option("--n", n, "Dimension")->required();
    add_common(basis);

    auto* check = app.add_subcommand("check", "Hermiticity preservation, CP and coCP");
    check->add_option("--map", map_path, "Map JSON")->required();
    check->add_option("--props", props, "Comma-separated hp,cp,cocp")->capture_default_str();
    add_common(check);

    auto* covcheck = app.add_subcommand("covcheck", "Torus covariance test");
    covcheck->add_option("--map", map_path, "Map JSON")->required();
    covcheck->add_flag("--conjugate", conjugate, "Test conjugate covariance");
    add_common(covcheck);

    auto* project = app.add_subcommand("project", "Projection onto covariant maps");
    project->add_option("--map", map_path, "Map JSON")->required();
    project->add_option("--mode", mode, "quadrature or closed")->capture_default_str();
    project->add_option("--out", out, "Write the projected map here");
    add_common(project);

    auto* random = app.add_subcommand("random", "Random covariant map with certificate");
    random->add_option("--kind", kind, "cp, cocp or dec")->required();
    random->add_option("--n", n, "Dimension")->required();
    random->add_option("--out", out, "Write the map here");
    add_common(random);

    auto* dilate = app.add_subcommand("dilate", "Stinespring, co-Stinespring or Jordan dilation");
    dilate->add_option("--map", map_path, "Map JSON")->required();
    dilate->add_option("--kind", kind, "auto, cp, cocp or jordan")->capture_default_str();
    dilate->add_flag("--verify-covariance", verify, "Construct and check the intertwiner W(g)");
    add_common(dilate);

    auto* evolve_cmd = app.add_subcommand("evolve", "Integrate the master equation");
    evolve_cmd->set_help_flag("--help", "Print this help message and exit");
    evolve_cmd->add_option("--generator", gen_path, "Generator JSON")->required();
    evolve_cmd->add_option("--rho0", rho_path, "Initial state JSON")->required();
    evolve_cmd->add_option("--t", horizon, "Horizon")->capture_default_str();
    evolve_cmd->add_option("--h", step, "Step")->capture_default_str();
    evolve_cmd->add_option("--report", reports, "Comma-separated covariance,trace,divisibility")->capture_default_str();
    evolve_cmd->add_option("--stride", stride, "Emit every k-th step")->capture_default_str();
    add_common(evolve_cmd);

    auto* selftest = app.add_subcommand("selftest", "Run the invariant suites");
    selftest->add_option("--n", n_opt, "Pin the dimension");
    selftest->add_flag("--full", full, "Full sample counts");
    add_common(selftest);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    Digest digest(std::vector<std::string>(argv + 1, argv + argc));
    try {
        if (*basis) return cmd_basis(n, common, digest);
        if (*check) return cmd_check(map_path, props, common, digest);
        if (*covcheck) return cmd_covcheck(map_path, conjugate, common, digest);
        if (*project) return cmd_project(map_path, mode, out, common, digest);
        if (*random) return cmd_random(kind, n, out, common, digest);
        if (*dilate) return cmd_dilate(map_path, kind, verify, common, digest);
        if (*evolve_cmd) return cmd_evolve(gen_path, rho_path, horizon, step, reports, stride, common, digest);
        if (*selftest) return cmd_selftest(n_opt, full, common, digest);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
