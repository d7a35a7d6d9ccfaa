#include <CLI11.hpp>

#include <Eigen/Core>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "omega/catalog.hpp"
#include "omega/forms.hpp"
#include "omega/mesh.hpp"
#include "omega/mesh_operators.hpp"
#include "omega/report.hpp"
#include "omega/torus.hpp"
#include "omega/verify.hpp"

namespace {

using omega::json;

struct OutputOptions {
  std::string output_path;
  std::string csv_path;
};

void add_output_options(CLI::App* cmd, OutputOptions& out) {
  cmd->add_option("--output", out.output_path, "write the JSON report to this path (default: stdout)");
  cmd->add_option("--csv", out.csv_path, "write the spectra table as CSV to this path");
}

void emit(const json& report, const OutputOptions& out, const std::string& csv) {
  const std::string text = report.dump(2) + "\n";
  if (out.output_path.empty())
    std::cout << text;
  else
    omega::write_text_file(out.output_path, text);
  if (!out.csv_path.empty()) omega::write_text_file(out.csv_path, csv);
}

std::vector<double> parse_number_list(const std::string& text, char sep = ',') {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, sep))
    if (!cell.empty()) out.push_back(std::stod(cell));
  return out;
}

omega::EinsteinFactor load_spectrum_csv(const std::string& path, double einstein_const, int dim) {
  std::ifstream in(path);
  if (!in) throw omega::input_error("cannot open spectrum file: " + path);
  omega::EinsteinFactor f;
  f.einstein_const = einstein_const;
  f.dim = dim;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const std::vector<double> cells = parse_number_list(line);
    if (cells.size() != 2) throw omega::input_error("spectrum file rows must be lambda,multiplicity");
    f.spectrum.emplace_back(cells[0], static_cast<long long>(cells[1]));
  }
  f.validate();
  return f;
}

// Factor specs: sphere:dim,radius[,levels] | torus:p1:p2:...,max | file:path
omega::EinsteinFactor parse_factor(const std::string& spec, double einstein_override, int dim_override) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string::npos) throw omega::input_error("factor spec needs a kind prefix: " + spec);
  const std::string kind = spec.substr(0, colon);
  const std::string rest = spec.substr(colon + 1);
  if (kind == "sphere") {
    const std::vector<double> args = parse_number_list(rest);
    if (args.size() < 2) throw omega::input_error("sphere factor: expected dim,radius[,levels]");
    const int levels = args.size() > 2 ? static_cast<int>(args[2]) : 60;
    return omega::sphere_spectrum(static_cast<int>(args[0]), args[1], levels);
  }
  if (kind == "torus") {
    const std::size_t comma = rest.find_last_of(',');
    if (comma == std::string::npos) throw omega::input_error("torus factor: expected p1:p2:...,max_norm");
    const std::vector<double> periods = parse_number_list(rest.substr(0, comma), ':');
    return omega::torus_spectrum(periods, std::stod(rest.substr(comma + 1)));
  }
  if (kind == "file") return load_spectrum_csv(rest, einstein_override, dim_override);
  throw omega::input_error("unknown factor kind: " + kind);
}

double theorem_a_margin(int dim, double omega1) {
  return (static_cast<double>(dim) - 1.0) / dim - omega1;
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
};

int run_cli(int argc, char** argv) {
  CLI::App app{"spectral curvature invariants of closed manifolds"};
  app.set_config("--config", "", "INI config file (flat key=value; CLI flags override)");
  app.require_subcommand(1);

  int exit_code = 0;

  // ---- catalog ------------------------------------------------------------
  auto* catalog = app.add_subcommand("catalog", "closed-form spectra and Omega values");
  catalog->require_subcommand(1);

  {
    auto* sphere = catalog->add_subcommand("sphere", "round sphere S^n(radius)");
    auto dim = std::make_shared<int>(2);
    auto radius = std::make_shared<double>(1.0);
    auto top = std::make_shared<int>(3);
    auto levels = std::make_shared<int>(60);
    auto out = std::make_shared<OutputOptions>();
    sphere->add_option("--dim", *dim, "sphere dimension")->check(CLI::PositiveNumber);
    sphere->add_option("--radius", *radius, "sphere radius")->check(CLI::PositiveNumber);
    sphere->add_option("--top", *top, "number of distinct values")->check(CLI::PositiveNumber);
    sphere->add_option("--max-level", *levels, "spectrum truncation level")->check(CLI::PositiveNumber);
    add_output_options(sphere, *out);
    sphere->callback([=]() {
      Timer timer;
      const omega::EinsteinFactor f = omega::sphere_spectrum(*dim, *radius, *levels);
      const auto omega_values = omega::einstein_omega(f, *top);
      const auto lambda_g = omega::catalog_lambda_of_g(f, *top);
      json config{{"dim", *dim}, {"radius", *radius}, {"top", *top}, {"max_level", *levels}};
      json payload;
      payload["einstein_const"] = f.einstein_const;
      payload["omega"] = omega::omega_values_to_json(omega_values);
      payload["lambda_g"] = omega::omega_values_to_json(lambda_g);
      payload["theorem_a_margin"] = theorem_a_margin(*dim, omega_values.empty() ? 0.0 : omega_values[0].value);
      emit(omega::finalize_report("catalog sphere", config, payload, timer.ms()), *out,
           omega::omega_values_to_csv(omega_values.empty() ? lambda_g : omega_values));
    });
  }

  {
    auto* torus = catalog->add_subcommand("torus", "flat torus with given periods");
    auto periods = std::make_shared<std::string>("6.283185307179586,6.283185307179586");
    auto max_norm = std::make_shared<double>(20.0);
    auto top = std::make_shared<int>(3);
    auto out = std::make_shared<OutputOptions>();
    torus->add_option("--periods", *periods, "comma-separated periods");
    torus->add_option("--max-norm", *max_norm, "eigenvalue cutoff")->check(CLI::NonNegativeNumber);
    torus->add_option("--top", *top, "number of distinct values")->check(CLI::PositiveNumber);
    add_output_options(torus, *out);
    torus->callback([=]() {
      Timer timer;
      const omega::EinsteinFactor f = omega::torus_spectrum(parse_number_list(*periods), *max_norm);
      const auto lambda_g = omega::catalog_lambda_of_g(f, *top);
      json config{{"periods", *periods}, {"max_norm", *max_norm}, {"top", *top}};
      json payload;
      payload["einstein_const"] = 0.0;
      payload["omega"] = json::array();  // Ric = 0: every Omega value is zero
      payload["lambda_g"] = omega::omega_values_to_json(lambda_g);
      payload["theorem_a_margin"] = theorem_a_margin(f.dim, 0.0);
      emit(omega::finalize_report("catalog torus", config, payload, timer.ms()), *out,
           omega::omega_values_to_csv(lambda_g));
    });
  }

  {
    auto* product = catalog->add_subcommand("product", "product of Einstein factors");
    auto f1 = std::make_shared<std::string>();
    auto f2 = std::make_shared<std::string>();
    auto a1 = std::make_shared<double>(0.0);
    auto a2 = std::make_shared<double>(0.0);
    auto dim1 = std::make_shared<int>(0);
    auto dim2 = std::make_shared<int>(0);
    auto top = std::make_shared<int>(5);
    auto out = std::make_shared<OutputOptions>();
    product->add_option("--f1", *f1, "factor 1: sphere:dim,radius[,levels] | torus:p1:...,max | file:path")
        ->required();
    product->add_option("--f2", *f2, "factor 2 (same forms)")->required();
    product->add_option("--a1", *a1, "Einstein constant for a file factor 1");
    product->add_option("--a2", *a2, "Einstein constant for a file factor 2");
    product->add_option("--dim1", *dim1, "dimension for a file factor 1");
    product->add_option("--dim2", *dim2, "dimension for a file factor 2");
    product->add_option("--top", *top, "number of distinct values")->check(CLI::PositiveNumber);
    add_output_options(product, *out);
    product->callback([=]() {
      Timer timer;
      const omega::EinsteinFactor fac1 = parse_factor(*f1, *a1, *dim1);
      const omega::EinsteinFactor fac2 = parse_factor(*f2, *a2, *dim2);
      const auto values = omega::product_omega(fac1, fac2, *top);
      json config{{"f1", *f1}, {"f2", *f2}, {"a1", fac1.einstein_const}, {"a2", fac2.einstein_const}, {"top", *top}};
      json payload;
      payload["omega"] = omega::omega_values_to_json(values);
      payload["theorem_a_margin"] = theorem_a_margin(fac1.dim + fac2.dim, values.empty() ? 0.0 : values[0].value);
      emit(omega::finalize_report("catalog product", config, payload, timer.ms()), *out,
           omega::omega_values_to_csv(values));
    });
  }

  {
    auto* heis = catalog->add_subcommand("heisenberg", "Heisenberg quotient with a left-invariant metric");
    auto n = std::make_shared<int>(1);
    auto sup_only = std::make_shared<bool>(false);
    auto d = std::make_shared<std::string>("1");
    auto g_last = std::make_shared<double>(1.0);
    auto c = std::make_shared<long long>(0);
    auto hermite = std::make_shared<std::string>();
    auto out = std::make_shared<OutputOptions>();
    heis->add_option("--n", *n, "Heisenberg parameter n (dimension 2n+1)")->check(CLI::PositiveNumber);
    heis->add_flag("--sup", *sup_only, "report only the sup over left-invariant metrics");
    heis->add_option("--d", *d, "comma-separated frame constants d_1..d_n");
    heis->add_option("--g-last", *g_last, "vertical metric coefficient")->check(CLI::PositiveNumber);
    heis->add_option("--c", *c, "evaluate Omega(c, k, g) at this lattice index");
    heis->add_option("--hermite", *hermite, "comma-separated Hermite indices (default all zero)");
    add_output_options(heis, *out);
    heis->callback([=]() {
      Timer timer;
      json config{{"n", *n}, {"sup", *sup_only}};
      json payload;
      payload["sup_over_metrics"] = omega::heisenberg_sup(*n);
      if (!*sup_only) {
        omega::HeisenbergMetric metric{*n, parse_number_list(*d), *g_last};
        const double omega1 = omega::heisenberg_omega1(metric);
        config["d"] = *d;
        config["g_last"] = *g_last;
        payload["omega1"] = omega1;
        payload["critical_c"] = omega::heisenberg_critical_c(metric);
        payload["multiplicity"] = "unresolved";
        payload["theorem_a_margin"] = theorem_a_margin(2 * *n + 1, omega1);
        if (*c != 0) {
          std::vector<long long> k(static_cast<std::size_t>(*n), 0);
          if (!hermite->empty()) {
            const std::vector<double> raw = parse_number_list(*hermite);
            k.assign(raw.size(), 0);
            for (std::size_t i = 0; i < raw.size(); ++i) k[i] = static_cast<long long>(raw[i]);
          }
          config["c"] = *c;
          payload["omega_ck"] = omega::heisenberg_omega_ck(metric, *c, k);
        }
      }
      emit(omega::finalize_report("catalog heisenberg", config, payload, timer.ms()), *out, "");
    });
  }

  {
    auto* unitary = catalog->add_subcommand("unitary", "U(n) with the bi-invariant metric G_r");
    auto n = std::make_shared<int>(2);
    auto r = std::make_shared<double>(1.0);
    auto out = std::make_shared<OutputOptions>();
    unitary->add_option("--n", *n, "unitary group order (>= 2)");
    unitary->add_option("--r", *r, "circle factor radius")->check(CLI::PositiveNumber);
    add_output_options(unitary, *out);
    unitary->callback([=]() {
      Timer timer;
      const double value = omega::unitary_omega1(*n, *r);
      json config{{"n", *n}, {"r", *r}};
      json payload;
      payload["omega1"] = value;
      payload["theorem_a_margin"] = theorem_a_margin(*n * *n, value);
      emit(omega::finalize_report("catalog unitary", config, payload, timer.ms()), *out, "");
    });
  }

  // ---- mesh ---------------------------------------------------------------
  {
    auto* mesh_cmd = app.add_subcommand("mesh", "numerical Omega spectrum of a closed surface mesh");
    auto input = std::make_shared<std::string>();
    auto gen = std::make_shared<std::string>();
    auto subdiv = std::make_shared<int>(3);
    auto radius = std::make_shared<double>(1.0);
    auto radii = std::make_shared<std::string>("2,1,1");
    auto eps_list = std::make_shared<std::string>();
    auto torus_params = std::make_shared<std::string>("48,24,2.0,0.5");
    auto eigs = std::make_shared<int>(60);
    auto top = std::make_shared<int>(5);
    auto out = std::make_shared<OutputOptions>();
    mesh_cmd->add_option("--input", *input, "OFF or OBJ mesh file");
    mesh_cmd->add_option("--gen", *gen, "generator: icosphere | ellipsoid | blob | torus");
    mesh_cmd->add_option("--subdiv", *subdiv, "icosphere subdivisions")->check(CLI::NonNegativeNumber);
    mesh_cmd->add_option("--radius", *radius, "icosphere radius")->check(CLI::PositiveNumber);
    mesh_cmd->add_option("--radii", *radii, "ellipsoid semi-axes a,b,c");
    mesh_cmd->add_option("--eps", *eps_list, "blob: decreasing eps values (runs the table experiment)");
    mesh_cmd->add_option("--torus-params", *torus_params, "torus: major_segments,minor_segments,R,r");
    mesh_cmd->add_option("--eigs", *eigs, "Laplacian eigenpairs / Galerkin basis size")->check(CLI::PositiveNumber);
    mesh_cmd->add_option("--top", *top, "spectrum entries to report")->check(CLI::PositiveNumber);
    add_output_options(mesh_cmd, *out);
    mesh_cmd->callback([=]() {
      Timer timer;
      json config{{"input", *input}, {"gen", *gen}, {"subdiv", *subdiv}, {"eigs", *eigs}, {"top", *top}};
      if (*gen == "blob" && !eps_list->empty()) {
        const std::vector<double> eps = parse_number_list(*eps_list);
        config["eps"] = *eps_list;
        const auto table = omega::blob_experiment(eps, *subdiv, *eigs);
        json rows = json::array();
        bool monotone = true;
        for (std::size_t i = 0; i < table.size(); ++i) {
          rows.push_back({{"eps", table[i].eps}, {"omega1", table[i].omega1}});
          if (i > 0 && table[i].omega1 < table[i - 1].omega1 - 1e-2) monotone = false;
        }
        json payload;
        payload["table"] = std::move(rows);
        payload["monotone"] = monotone;
        payload["final_gap"] = 0.5 - table.back().omega1;
        std::ostringstream csv;
        csv.precision(17);
        csv << "eps,omega1\n";
        for (const auto& row : table) csv << row.eps << "," << row.omega1 << "\n";
        emit(omega::finalize_report("mesh blob", config, payload, timer.ms()), *out, csv.str());
        return;
      }

      omega::TriangleMesh mesh;
      if (!input->empty()) {
        mesh = omega::load_mesh(*input);
      } else if (*gen == "icosphere") {
        mesh = omega::make_icosphere(*subdiv, *radius);
        config["radius"] = *radius;
      } else if (*gen == "ellipsoid") {
        const std::vector<double> r3 = parse_number_list(*radii);
        if (r3.size() != 3) throw omega::input_error("--radii needs three values");
        mesh = omega::make_ellipsoid(*subdiv, Eigen::Vector3d(r3[0], r3[1], r3[2]));
        config["radii"] = *radii;
      } else if (*gen == "blob") {
        mesh = omega::make_blob_sphere(*subdiv, eps_list->empty() ? 0.2 : parse_number_list(*eps_list)[0]);
      } else if (*gen == "torus") {
        const std::vector<double> tp = parse_number_list(*torus_params);
        if (tp.size() != 4) throw omega::input_error("--torus-params needs M,m,R,r");
        mesh = omega::make_torus(static_cast<int>(tp[0]), static_cast<int>(tp[1]), tp[2], tp[3]);
        config["torus_params"] = *torus_params;
      } else {
        throw omega::input_error("mesh: need --input or a valid --gen");
      }

      const omega::MeshOmegaResult r = omega::omega_spectrum(mesh, *eigs, *top);
      json payload;
      payload["spectrum"] = omega::spectrum_to_json(r.spectrum, *top);
      payload["omega1"] = r.omega1;
      payload["omega1_half_basis"] = r.omega1_half_basis;
      payload["converged"] = r.converged;
      payload["theorem_a_margin"] = r.theorem_a_margin;
      payload["gauss_bonnet_residual"] = r.gauss_bonnet_residual;
      payload["barycentric_fallback_faces"] = r.fallback_face_count;
      payload["lambda1"] = r.lambda1;
      payload["min_vertex_curvature"] = r.min_vertex_curvature;
      payload["vertices"] = r.vertex_count;
      payload["faces"] = r.face_count;
      payload["euler_characteristic"] = r.euler;
      emit(omega::finalize_report("mesh", config, payload, timer.ms()), *out, omega::spectrum_to_csv(r.spectrum));
    });
  }

  // ---- verify ---------------------------------------------------------------
  {
    auto* verify_cmd = app.add_subcommand("verify", "randomized property suites");
    auto suite = std::make_shared<std::string>("all");
    auto cases = std::make_shared<int>(100);
    auto seed = std::make_shared<std::uint64_t>(0);
    auto out = std::make_shared<OutputOptions>();
    verify_cmd->add_option("--suite", *suite, "minmax | monotone | product-law | orthogonality | decay-bound | lichnerowicz | all");
    verify_cmd->add_option("--cases", *cases, "randomized cases per suite")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--seed", *seed, "RNG seed");
    add_output_options(verify_cmd, *out);
    verify_cmd->callback([=, &exit_code]() {
      Timer timer;
      std::vector<std::string> names;
      if (*suite == "all") {
        names = omega::suite_names();
      } else {
        const auto known = omega::suite_names();
        if (std::find(known.begin(), known.end(), *suite) == known.end())
          throw omega::input_error("unknown suite: " + *suite);
        names = {*suite};
      }
      json config{{"suite", *suite}, {"cases", *cases}, {"seed", *seed}};
      json suites = json::array();
      bool all_pass = true;
      for (const std::string& name : names) {
        const omega::VerifyReport report = omega::run_suite(name, *cases, *seed);
        all_pass = all_pass && report.pass();
        suites.push_back(omega::verify_report_to_json(report));
      }
      json payload;
      payload["suites"] = std::move(suites);
      payload["all_pass"] = all_pass;
      emit(omega::finalize_report("verify", config, payload, timer.ms()), *out, "");
      if (!all_pass) exit_code = 1;
    });
  }

  // ---- probe ----------------------------------------------------------------
  {
    auto* probe_cmd = app.add_subcommand("probe", "constructive positivity probe on the flat torus");
    auto field = std::make_shared<std::string>("identity");
    auto k = std::make_shared<int>(3);
    auto periods = std::make_shared<std::string>("6.283185307179586,6.283185307179586");
    auto grid = std::make_shared<int>(64);
    auto out = std::make_shared<OutputOptions>();
    probe_cmd->add_option("--field", *field,
                          "identity | neg-identity | diag:... | cap | indefinite | scalar-cos:... | csv:path");
    probe_cmd->add_option("--k", *k, "target subspace dimension")->check(CLI::PositiveNumber);
    probe_cmd->add_option("--periods", *periods, "comma-separated torus periods");
    probe_cmd->add_option("--grid", *grid, "field grid size per axis (power of two >= 16)");
    add_output_options(probe_cmd, *out);
    probe_cmd->callback([=]() {
      Timer timer;
      const std::vector<double> p = parse_number_list(*periods);
      omega::TorusField torus_field;
      if (field->rfind("csv:", 0) == 0)
        torus_field = omega::load_field_csv(field->substr(4), p);
      else
        torus_field = omega::builtin_field(*field, p, *grid);
      const omega::ProbeResult result = omega::positivity_probe(torus_field, *k);
      json config{{"field", *field}, {"k", *k}, {"periods", *periods}, {"grid", *grid}};
      json payload;
      payload["K"] = result.family.K;
      payload["patch_freq"] = result.family.patch_freq;
      payload["gram_min_eig"] = result.gram_min_eig;
      payload["pass"] = result.gram_min_eig > 0.0;
      emit(omega::finalize_report("probe", config, payload, timer.ms()), *out, "");
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  const char* threads = std::getenv("OMEGA_THREADS");
  Eigen::setNbThreads(threads ? std::max(1, std::atoi(threads)) : 1);
  try {
    return run_cli(argc, argv);
  } catch (const omega::insufficient_spectrum_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const omega::input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const omega::mesh_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
