#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "s3torus/mesh.hpp"
#include "s3torus/periodicity.hpp"
#include "s3torus/report.hpp"

using namespace s3torus;

namespace {

RunConfig clifford_config(int grid) {
    RunConfig cfg;
    cfg.k = 1;
    cfg.l = 1;
    cfg.deformation = 0.0;
    cfg.grid1 = cfg.grid2 = grid;
    return cfg;
}

}  // namespace

TEST_SUITE_BEGIN("mesh_export");

TEST_CASE("Clifford mesh: counts and radii") {
    const SurfaceMesh mesh = generate_mesh(clifford_config(8));
    CHECK(mesh.vertices.size() == 64);
    CHECK(mesh.faces.size() == 64);
    CHECK(mesh.domain == "torus");
    for (const Vec4& x : mesh.vertices) {
        CHECK(std::fabs(x[0] * x[0] + x[1] * x[1] - 0.5) < 1e-14);
        CHECK(std::fabs(x.norm() - 1.0) < 1e-14);
    }
}

TEST_CASE("open strip mesh: counts, sphere constraint, residuals") {
    RunConfig cfg;
    cfg.k = 0;
    cfg.l = 1;
    cfg.energy = 0.4;
    cfg.grid1 = cfg.grid2 = 64;
    const SurfaceMesh mesh = generate_mesh(cfg);
    CHECK(mesh.domain == "open-strip");
    CHECK(mesh.vertices.size() == 64 * 64);
    CHECK(mesh.faces.size() == 64 * 63);

    const VerificationReport rep = evaluate_mesh(mesh, false);
    CHECK(rep.max_minimality_residual <= 1e-8);
    CHECK(rep.max_norm_deviation < 1e-12);
}

TEST_CASE("closed ODE mesh from closure data wraps both directions") {
    const TorusParams p{0, 1, 0.4};
    const double estar = search_rational_period(p, 4, 3, 1e-11);
    RunConfig cfg;
    cfg.k = 0;
    cfg.l = 1;
    cfg.deformation = estar;
    cfg.grid1 = 16;
    cfg.grid2 = 48;
    cfg.closure = std::make_pair(4, 3);
    const SurfaceMesh mesh = generate_mesh(cfg);
    CHECK(mesh.domain == "torus");
    CHECK(mesh.wrap2);
    CHECK(mesh.faces.size() == 16 * 48);
    // phi2 spans three oscillations = 4*pi.
    CHECK(mesh.phi2.back() == doctest::Approx(4 * kPi * 47.0 / 48.0).epsilon(1e-6));
}

TEST_CASE("invalid configurations are rejected before any computation") {
    RunConfig bad_energy;
    bad_energy.k = 0;
    bad_energy.l = 1;
    bad_energy.energy = 0.7;
    CHECK_THROWS_AS((void)generate_mesh(bad_energy), DomainError);

    RunConfig both;
    both.energy = 0.4;
    both.deformation = 1.0;
    CHECK_THROWS_AS((void)generate_mesh(both), DomainError);

    RunConfig none;
    CHECK_THROWS_AS((void)generate_mesh(none), DomainError);

    RunConfig tiny = clifford_config(2);
    CHECK_THROWS_AS((void)generate_mesh(tiny), DomainError);
}

TEST_CASE("stereographic projection: anchor point and pole handling") {
    SurfaceMesh single;
    single.vertices = {Vec4{{1.0, 0.0, 0.0, 0.0}}};
    const auto pts = stereographic_project(single, {{0.0, 0.0, 0.0, -1.0}});
    CHECK(pts.size() == 1);
    CHECK(pts[0].x == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::fabs(pts[0].y) < 1e-15);
    CHECK(std::fabs(pts[0].z) < 1e-15);

    // A pole on the surface is rejected.
    const SurfaceMesh mesh = generate_mesh(clifford_config(8));
    const Vec4 on_surface = mesh.vertices.front();
    CHECK_THROWS_AS((void)stereographic_project(mesh, on_surface), PoleProximityError);
    CHECK_THROWS_AS((void)stereographic_project(mesh, Vec4{{2.0, 0.0, 0.0, 0.0}}), DomainError);
}

TEST_CASE("projected Clifford torus is the standard torus of revolution") {
    // Image under projection from (0,0,0,-1): ring radius sqrt(2), tube radius 1.
    const SurfaceMesh mesh = generate_mesh(clifford_config(24));
    const auto pts = stereographic_project(mesh, {{0.0, 0.0, 0.0, -1.0}});
    double worst = 0;
    for (const Vec3& p : pts) {
        const double ring = std::sqrt(p.x * p.x + p.y * p.y);
        const double dist =
            std::sqrt((ring - std::sqrt(2.0)) * (ring - std::sqrt(2.0)) + p.z * p.z);
        worst = std::max(worst, std::fabs(dist - 1.0));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("OBJ export: line counts and bit-exact reparse") {
    const SurfaceMesh mesh = generate_mesh(clifford_config(8));
    std::ostringstream os;
    export_obj(mesh, {{0.0, 0.0, 0.0, -1.0}}, os);
    const std::string text = os.str();

    int v_lines = 0, f_lines = 0;
    std::istringstream is(text);
    std::string line;
    std::vector<Vec3> parsed;
    while (std::getline(is, line)) {
        if (line.rfind("v ", 0) == 0) {
            ++v_lines;
            Vec3 p;
            char* end = nullptr;
            p.x = std::strtod(line.c_str() + 2, &end);
            p.y = std::strtod(end, &end);
            p.z = std::strtod(end, &end);
            parsed.push_back(p);
        } else if (line.rfind("f ", 0) == 0) {
            ++f_lines;
        }
    }
    CHECK(v_lines == 64);
    CHECK(f_lines == 64);

    const auto pts = stereographic_project(mesh, {{0.0, 0.0, 0.0, -1.0}});
    REQUIRE(parsed.size() == pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(parsed[i].x == pts[i].x);
        CHECK(parsed[i].y == pts[i].y);
        CHECK(parsed[i].z == pts[i].z);
    }
}

TEST_CASE("CSV export: exact header contract") {
    const SurfaceMesh mesh = generate_mesh(clifford_config(4));
    std::ostringstream os;
    export_csv(mesh, os);
    const std::string text = os.str();
    CHECK(text.rfind("phi1,phi2,theta,x1,x2,x3,x4\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 16);
}

TEST_CASE("JSON report: key contract") {
    RunConfig cfg;
    cfg.k = 0;
    cfg.l = 1;
    cfg.energy = 0.4;
    cfg.grid1 = cfg.grid2 = 12;
    const SurfaceMesh mesh = generate_mesh(cfg);
    std::ostringstream os;
    export_json_report(mesh, os);
    const auto j = nlohmann::json::parse(os.str());
    CHECK(j.contains("max_minimality_residual"));
    CHECK(j.contains("max_energy_residual"));
    CHECK(j.contains("gaussian_R_max_abs"));
    CHECK(j.contains("period"));
    CHECK(j["params"]["k"] == 0);
    CHECK(j["max_minimality_residual"].get<double>() < 1e-8);
}

TEST_CASE("determinism: identical configs produce byte-identical exports") {
    auto render = []() {
        RunConfig cfg;
        cfg.k = 0;
        cfg.l = 1;
        cfg.energy = 0.37;
        cfg.grid1 = cfg.grid2 = 10;
        const SurfaceMesh mesh = generate_mesh(cfg);
        std::ostringstream obj, csv;
        export_obj(mesh, cfg.pole, obj);
        export_csv(mesh, csv);
        return obj.str() + csv.str();
    };
    CHECK(render() == render());
}

TEST_SUITE_END();
