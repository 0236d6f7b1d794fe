// magcrit: critical magnetic field of a relativistic hydrogenic atom.
// Batch CLI over the shooting and finite-element solvers; every output file
// carries its resolved configuration as '#' comment lines.

#include "magcrit/acceptance.hpp"
#include "magcrit/coefficients.hpp"
#include "magcrit/critical_field.hpp"
#include "magcrit/errors.hpp"
#include "magcrit/io.hpp"
#include "magcrit/shooting.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <Eigen/Core>

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;
using namespace magcrit;

namespace {

void error_record(int code, const std::string& kind, const std::string& msg)
{
    std::string clean = msg;
    for (char& c : clean)
        if (c == '\n' || c == '"') c = ' ';
    std::cerr << "error: code=" << code << " kind=" << kind << " msg=\"" << clean << "\"\n";
}

std::vector<double> parse_nu_list(const std::string& csv)
{
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const auto first = tok.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        const auto last = tok.find_last_not_of(" \t");
        std::size_t used = 0;
        const std::string item = tok.substr(first, last - first + 1);
        const double v = std::stod(item, &used);
        if (used != item.size()) throw std::invalid_argument("nu-list: not a number: " + item);
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("nu-list: empty nu list");
    return out;
}

Variant parse_variant(const std::string& v)
{
    if (v == "main") return Variant::Main;
    if (v == "lower") return Variant::Lower;
    if (v == "upper") return Variant::Upper;
    throw std::invalid_argument("variant: must be main, lower or upper");
}

FieldSource parse_source(const std::string& v)
{
    if (v == "landau") return FieldSource::Landau;
    if (v == "unconstrained") return FieldSource::Unconstrained;
    if (v == "lower_bound") return FieldSource::LowerBound;
    if (v == "upper_bound") return FieldSource::UpperBound;
    throw std::invalid_argument(
            "source: must be landau, unconstrained, lower_bound or upper_bound");
}

void echo_config(const OutputMeta& meta)
{
    std::cout << "# magcrit " << MAGCRIT_VERSION << "\n# command: " << meta.command << '\n';
    for (const auto& [k, v] : meta.config) std::cout << "# " << k << " = " << v << '\n';
}

std::vector<std::string> record_row(const CriticalFieldRecord& r)
{
    return {format_double(r.nu),           format_double(r.Z),
            format_double(r.mu),           format_double(r.B_dimensionless),
            format_double(r.log10_tesla),  to_string(r.source)};
}

void write_rows(const std::string& path, const std::string& format, const OutputMeta& meta,
                const std::vector<std::string>& columns,
                const std::vector<std::vector<std::string>>& rows)
{
    if (format == "json") {
        json arr = json::array();
        for (const auto& row : rows) {
            json obj;
            for (std::size_t i = 0; i < columns.size(); ++i) obj[columns[i]] = row[i];
            arr.push_back(std::move(obj));
        }
        write_json(path, meta, arr.dump(2));
    } else {
        write_csv(path, meta, columns, rows);
    }
}

struct GridFlags {
    int n_s = 96, n_z = 192;
    double L_s = 20.0, L_z = 30.0, h_min = 1e-4;
    double eig_tol = 1e-10;
    CLI::Option *o_ns = nullptr, *o_nz = nullptr, *o_ls = nullptr, *o_lz = nullptr,
                *o_hmin = nullptr;

    void attach(CLI::App* cmd)
    {
        o_ns = cmd->add_option("--ns", n_s, "radial cell count");
        o_nz = cmd->add_option("--nz", n_z, "axial cell count (even)");
        o_ls = cmd->add_option("--Ls", L_s, "radial domain size");
        o_lz = cmd->add_option("--Lz", L_z, "axial half-domain size");
        o_hmin = cmd->add_option("--hmin", h_min, "smallest cell size at the origin");
        cmd->add_option("--eig-tol", eig_tol, "eigensolver residual tolerance");
    }

    // per-nu tuned defaults, overridden only by flags actually given
    std::optional<FemSettings> resolve(double nu) const
    {
        SturmLiouvilleProblem pb{nu, Variant::Main, 170.0};
        FemSettings s = default_fem_settings(nu, find_ground_eigenvalue(pb, 1e-10).mu);
        if (o_ns->count()) s.n_s = n_s;
        if (o_nz->count()) s.n_z = n_z;
        if (o_ls->count()) s.L_s = L_s;
        if (o_lz->count()) s.L_z = L_z;
        if (o_hmin->count()) s.h_min = h_min;
        s.eig_tol = eig_tol;
        return s;
    }

    void describe(std::map<std::string, std::string>& cfg, const FemSettings& s) const
    {
        cfg["ns"] = std::to_string(s.n_s);
        cfg["nz"] = std::to_string(s.n_z);
        cfg["Ls"] = format_double(s.L_s);
        cfg["Lz"] = format_double(s.L_z);
        cfg["hmin"] = format_double(s.h_min);
        cfg["eig_tol"] = format_double(s.eig_tol);
    }
};

int run(int argc, char** argv)
{
    CLI::App app{"Critical magnetic field B = 4/mu^2 of a relativistic hydrogenic atom"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key = value configuration file (flags override it)");
    app.set_version_flag("--version", std::string("magcrit ") + MAGCRIT_VERSION);

    std::string threads = "auto";
    app.add_option("--threads", threads, "worker threads: integer or auto");

    // ---- landau ----------------------------------------------------------
    auto* c_landau = app.add_subcommand("landau", "1D Landau-channel eigenvalue and field");
    double l_nu = 0.0, l_zmax = 170.0, l_tol = 1e-11;
    std::string l_variant = "main", l_output, l_format = "csv";
    bool l_converged = false;
    c_landau->add_option("--nu", l_nu, "coupling constant in (0, 1]")->required();
    c_landau->add_option("--variant", l_variant, "main, lower or upper");
    c_landau->add_option("--zmax", l_zmax, "truncation radius");
    c_landau->add_option("--tol", l_tol, "eigenvalue bracket tolerance");
    c_landau->add_flag("--converged", l_converged, "grow zmax until the eigenvalue stabilizes");
    c_landau->add_option("--output", l_output, "also write a one-row table to this path");
    c_landau->add_option("--format", l_format, "csv or json");

    // ---- full ------------------------------------------------------------
    auto* c_full = app.add_subcommand("full", "2D unconstrained minimization for one nu");
    double f_nu = 0.0;
    std::string f_output, f_format = "csv", f_dump_k, f_dump_m;
    GridFlags f_grid;
    c_full->add_option("--nu", f_nu, "coupling constant in (0, 1]")->required();
    f_grid.attach(c_full);
    c_full->add_option("--output", f_output, "also write a one-row table to this path");
    c_full->add_option("--format", f_format, "csv or json");
    c_full->add_option("--dump-k", f_dump_k, "write the stiffness matrix (row col value)");
    c_full->add_option("--dump-m", f_dump_m, "write the mass matrix (row col value)");

    // ---- table -----------------------------------------------------------
    auto* c_table = app.add_subcommand("table", "critical-field table over a nu list");
    std::string t_source = "landau", t_nu_list = "default", t_output = "table.csv",
                t_format = "csv";
    double t_zmax = 170.0, t_tol = 1e-11;
    GridFlags t_grid;
    c_table->add_option("--source", t_source,
                        "landau, unconstrained, lower_bound or upper_bound");
    c_table->add_option("--nu-list", t_nu_list,
                        "comma-separated nu values; 'default' selects the built-in grid");
    c_table->add_option("--zmax", t_zmax, "truncation radius (1D sources)");
    c_table->add_option("--tol", t_tol, "eigenvalue bracket tolerance (1D sources)");
    t_grid.attach(c_table);
    c_table->add_option("--output", t_output, "output path");
    c_table->add_option("--format", t_format, "csv or json");

    // ---- ratio -----------------------------------------------------------
    auto* c_ratio = app.add_subcommand("ratio", "Landau-to-unconstrained field ratio per nu");
    std::string r_nu_list = "default", r_output = "ratio.csv", r_format = "csv";
    c_ratio->add_option("--nu-list", r_nu_list, "comma-separated nu values");
    c_ratio->add_option("--output", r_output, "output path");
    c_ratio->add_option("--format", r_format, "csv or json");

    // ---- mismatch-scan ----------------------------------------------------
    auto* c_scan = app.add_subcommand("mismatch-scan",
                                      "endpoint mismatch log(1+g) over a lambda grid");
    double s_nu = 0.0, s_zmax = 170.0, s_lo = 0.0, s_hi = 0.0;
    int s_points = 400;
    std::string s_variant = "main", s_output = "mismatch.csv", s_format = "csv";
    c_scan->add_option("--nu", s_nu, "coupling constant in (0, 1]")->required();
    c_scan->add_option("--variant", s_variant, "main, lower or upper");
    c_scan->add_option("--zmax", s_zmax, "truncation radius");
    auto* o_lo = c_scan->add_option("--lambda-min", s_lo, "scan start (default -nu*a(0))");
    auto* o_hi = c_scan->add_option("--lambda-max", s_hi, "scan end (default 0)");
    c_scan->add_option("--points", s_points, "sample count")->check(CLI::Range(2, 1000000));
    c_scan->add_option("--output", s_output, "output path");
    c_scan->add_option("--format", s_format, "csv or json");

    // ---- density ----------------------------------------------------------
    auto* c_density = app.add_subcommand("density",
                                         "minimizer density log10(1e-4 + |phi|^4) on the grid");
    double d_nu = 0.0;
    std::string d_output = "density.csv", d_format = "csv";
    GridFlags d_grid;
    c_density->add_option("--nu", d_nu, "coupling constant in (0, 1]")->required();
    d_grid.attach(c_density);
    c_density->add_option("--output", d_output, "output path");
    c_density->add_option("--format", d_format, "csv or json");

    // ---- asymptotics -------------------------------------------------------
    auto* c_asym = app.add_subcommand("asymptotics", "nu*log|mu_L| diagnostics per nu");
    std::string a_nu_list = "0.5,0.4,0.3,0.25,0.2", a_variant = "main",
                a_output = "asymptotics.csv", a_format = "csv";
    c_asym->add_option("--nu-list", a_nu_list, "comma-separated nu values, descending");
    c_asym->add_option("--variant", a_variant, "main, lower or upper");
    c_asym->add_option("--output", a_output, "output path");
    c_asym->add_option("--format", a_format, "csv or json");

    // ---- check -------------------------------------------------------------
    auto* c_check = app.add_subcommand("check", "run the embedded acceptance suite");
    std::string k_output;
    c_check->add_option("--output", k_output, "also write the per-criterion report (json)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help / --version
        error_record(1, "usage", e.what());
        return 1;
    }

    if (threads != "auto") {
        std::size_t used = 0;
        const int n = std::stoi(threads, &used);
        if (used != threads.size() || n < 1)
            throw std::invalid_argument("threads: must be a positive integer or auto");
        Eigen::setNbThreads(n);
    }

    const std::vector<std::string> table_columns = {"nu", "Z", "mu", "B", "log10_tesla",
                                                    "source"};

    if (*c_landau) {
        SturmLiouvilleProblem pb{l_nu, parse_variant(l_variant), l_zmax};
        pb.validate();
        OutputMeta meta{"landau",
                        {{"nu", format_double(l_nu)},
                         {"variant", l_variant},
                         {"zmax", format_double(l_zmax)},
                         {"tol", format_double(l_tol)},
                         {"converged", l_converged ? "true" : "false"}}};
        echo_config(meta);
        const ShootingResult res =
            l_converged ? find_ground_eigenvalue_converged(l_nu, pb.variant, l_tol, l_zmax)
                        : find_ground_eigenvalue(pb, l_tol);
        const FieldSource src = pb.variant == Variant::Main    ? FieldSource::Landau
                                : pb.variant == Variant::Lower ? FieldSource::LowerBound
                                                               : FieldSource::UpperBound;
        const CriticalFieldRecord rec = make_record(l_nu, res.mu, src);
        std::cout << "mu = " << format_double(rec.mu) << '\n'
                  << "B = " << format_double(rec.B_dimensionless) << '\n'
                  << "log10_tesla = " << format_double(rec.log10_tesla) << '\n';
        if (!l_output.empty())
            write_rows(l_output, l_format, meta, table_columns, {record_row(rec)});
        return 0;
    }

    if (*c_full) {
        const std::optional<FemSettings> settings = f_grid.resolve(f_nu);
        OutputMeta meta{"full", {{"nu", format_double(f_nu)}}};
        f_grid.describe(meta.config, *settings);
        echo_config(meta);
        const UnconstrainedSolveResult res = solve_unconstrained(f_nu, settings);
        const CriticalFieldRecord rec =
            make_record(f_nu, res.spectral.mu, FieldSource::Unconstrained);
        std::cout << "mu = " << format_double(rec.mu) << '\n'
                  << "B = " << format_double(rec.B_dimensionless) << '\n'
                  << "log10_tesla = " << format_double(rec.log10_tesla) << '\n'
                  << "mu_landau = " << format_double(res.mu_landau) << '\n'
                  << "residual = " << format_double(res.spectral.residual) << '\n';
        if (!f_output.empty())
            write_rows(f_output, f_format, meta, table_columns, {record_row(rec)});
        if (!f_dump_k.empty() || !f_dump_m.empty()) {
            AssembledPencil pencil = assemble(ReducedQuadraticForm{f_nu, 1.0}, res.grid);
            if (!f_dump_k.empty()) write_coordinate_matrix(f_dump_k, meta, pencil.K);
            if (!f_dump_m.empty()) write_coordinate_matrix(f_dump_m, meta, pencil.M);
        }
        return 0;
    }

    if (*c_table) {
        const FieldSource source = parse_source(t_source);
        std::vector<double> nu_list;
        if (t_nu_list == "default")
            nu_list = source == FieldSource::Unconstrained ? table2_nu_values()
                                                           : table1_nu_values();
        else
            nu_list = parse_nu_list(t_nu_list);
        TableOptions opt;
        opt.z_max = t_zmax;
        opt.shooting_tol = t_tol;
        OutputMeta meta{"table",
                        {{"source", t_source},
                         {"nu_list", t_nu_list},
                         {"zmax", format_double(t_zmax)},
                         {"tol", format_double(t_tol)},
                         {"output", t_output},
                         {"format", t_format}}};
        echo_config(meta);
        std::vector<std::vector<std::string>> rows;
        for (double nu : nu_list) {
            if (source == FieldSource::Unconstrained) opt.fem = t_grid.resolve(nu);
            const auto batch = build_table({nu}, source, opt);
            for (const auto& row : batch) {
                if (!row.ok) throw SolverError("nu = " + format_double(nu) + ": " + row.error);
                rows.push_back(record_row(row.record));
                std::cout << "nu = " << format_double(row.record.nu)
                          << "  mu = " << format_double(row.record.mu)
                          << "  B = " << format_double(row.record.B_dimensionless) << '\n';
            }
        }
        write_rows(t_output, t_format, meta, table_columns, rows);
        std::cout << "wrote " << t_output << '\n';
        return 0;
    }

    if (*c_ratio) {
        const std::vector<double> nu_list =
            r_nu_list == "default" ? table2_nu_values() : parse_nu_list(r_nu_list);
        OutputMeta meta{"ratio", {{"nu_list", r_nu_list}, {"output", r_output}}};
        echo_config(meta);
        std::vector<std::vector<std::string>> rows;
        for (const auto& p : comparison_ratio(nu_list, {})) {
            if (!p.ok) throw SolverError("nu = " + format_double(p.nu) + ": " + p.error);
            rows.push_back({format_double(p.nu), format_double(p.ratio)});
            std::cout << "nu = " << format_double(p.nu)
                      << "  B_landau/B = " << format_double(p.ratio) << '\n';
        }
        write_rows(r_output, r_format, meta, {"nu", "ratio"}, rows);
        std::cout << "wrote " << r_output << '\n';
        return 0;
    }

    if (*c_scan) {
        SturmLiouvilleProblem pb{s_nu, parse_variant(s_variant), s_zmax};
        pb.validate();
        const double lo = o_lo->count() ? s_lo : -s_nu * coefficient_a0();
        const double hi = o_hi->count() ? s_hi : 0.0;
        if (!(lo < hi)) throw std::invalid_argument("lambda-min: must be below lambda-max");
        OutputMeta meta{"mismatch-scan",
                        {{"nu", format_double(s_nu)},
                         {"variant", s_variant},
                         {"zmax", format_double(s_zmax)},
                         {"lambda_min", format_double(lo)},
                         {"lambda_max", format_double(hi)},
                         {"points", std::to_string(s_points)}}};
        echo_config(meta);
        std::vector<std::vector<std::string>> rows;
        for (int i = 0; i < s_points; ++i) {
            const double lambda = lo + (hi - lo) * i / (s_points - 1.0);
            rows.push_back({format_double(lambda),
                            format_double(log1p_mismatch(pb, lambda))});
        }
        write_rows(s_output, s_format, meta, {"lambda", "log1p_mismatch"}, rows);
        std::cout << "wrote " << s_output << '\n';
        return 0;
    }

    if (*c_density) {
        const std::optional<FemSettings> settings = d_grid.resolve(d_nu);
        OutputMeta meta{"density", {{"nu", format_double(d_nu)}}};
        d_grid.describe(meta.config, *settings);
        echo_config(meta);
        const UnconstrainedSolveResult res = solve_unconstrained(d_nu, settings);
        const std::vector<double> field =
            density_grid(res.spectral.eigenvector, res.dofs, res.grid);
        std::vector<std::vector<std::string>> rows;
        rows.reserve(field.size());
        for (int i = 0; i < res.dofs.n_s_nodes; ++i)
            for (int j = 0; j < res.dofs.n_z_nodes; ++j)
                rows.push_back({format_double(res.grid.s_nodes[i]),
                                format_double(res.grid.z_nodes[j]),
                                format_double(field[res.dofs.node(i, j)])});
        write_rows(d_output, d_format, meta, {"s", "z", "log10_density"}, rows);
        std::cout << "mu = " << format_double(res.spectral.mu) << '\n'
                  << "wrote " << d_output << '\n';
        return 0;
    }

    if (*c_asym) {
        const std::vector<double> nu_list = parse_nu_list(a_nu_list);
        OutputMeta meta{"asymptotics", {{"nu_list", a_nu_list}, {"variant", a_variant}}};
        echo_config(meta);
        std::vector<std::vector<std::string>> rows;
        for (const auto& p : asymptotic_diagnostic(nu_list, parse_variant(a_variant))) {
            if (!p.ok) throw SolverError("nu = " + format_double(p.nu) + ": " + p.error);
            rows.push_back(
                {format_double(p.nu), format_double(p.mu), format_double(p.product)});
            std::cout << "nu = " << format_double(p.nu)
                      << "  nu*log|mu| = " << format_double(p.product) << '\n';
        }
        write_rows(a_output, a_format, meta, {"nu", "mu", "nu_log_abs_mu"}, rows);
        std::cout << "wrote " << a_output << '\n';
        return 0;
    }

    if (*c_check) {
        OutputMeta meta{"check", {}};
        echo_config(meta);
        const auto results = run_acceptance([](const CriterionResult& r) {
            std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail
                      << std::endl;
        });
        if (!k_output.empty()) {
            json arr = json::array();
            for (const auto& r : results)
                arr.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
            write_json(k_output, meta, arr.dump(2));
        }
        int failed = 0;
        for (const auto& r : results)
            if (!r.pass) ++failed;
        std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
        if (failed) {
            error_record(2, "solver", std::to_string(failed) + " acceptance criteria failed");
            return 2;
        }
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    try {
        return run(argc, argv);
    } catch (const IoError& e) {
        error_record(3, "io", e.what());
        return 3;
    } catch (const SolverError& e) {
        error_record(2, "solver", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        error_record(1, "usage", e.what());
        return 1;
    } catch (const std::exception& e) {
        error_record(2, "solver", e.what());
        return 2;
    }
}
