#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "snakeineq/extremal.hpp"
#include "snakeineq/format.hpp"
#include "snakeineq/scans.hpp"

using namespace snakeineq;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

// "a..b" (inclusive range) or "a,b,c" (explicit list)
std::vector<std::size_t> parse_n_list(const std::string& spec) {
    std::vector<std::size_t> out;
    const auto dots = spec.find("..");
    if (dots != std::string::npos) {
        const std::size_t lo = std::stoul(spec.substr(0, dots));
        const std::size_t hi = std::stoul(spec.substr(dots + 2));
        if (hi < lo) throw CLI::ValidationError("--n", "range is empty");
        for (std::size_t n = lo; n <= hi; ++n) out.push_back(n);
        return out;
    }
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoul(item));
    if (out.empty()) throw CLI::ValidationError("--n", "no values");
    return out;
}

struct CaseFlags {
    std::string case_id = "unit";
    CatalogParams params;
};

// Expand `--config file` into `--key value` pairs appended after the explicit
// flags. Keys already given on the command line are skipped, so flags override
// the file; unknown keys surface as ordinary parse errors.
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string path;
    for (auto it = args.begin(); it != args.end();) {
        if (*it == "--config") {
            if (std::next(it) == args.end())
                throw CLI::ValidationError("--config", "missing file path");
            path = *std::next(it);
            it = args.erase(it, std::next(it, 2));
        } else if (it->rfind("--config=", 0) == 0) {
            path = it->substr(9);
            it = args.erase(it);
        } else {
            ++it;
        }
    }
    if (path.empty()) return args;
    std::ifstream f(path);
    if (!f) throw CLI::ValidationError("--config", "cannot open " + path);
    std::string line;
    while (std::getline(f, line)) {
        const auto start = line.find_first_not_of(" \t");
        if (start == std::string::npos || line[start] == '#' || line[start] == '[')
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--config", "expected key=value: " + line);
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        const std::string key = "--" + trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
            return a == key || a.rfind(key + "=", 0) == 0;
        });
        if (!given) {
            args.push_back(key);
            args.push_back(value);
        }
    }
    return args;
}

void add_case_flags(CLI::App& app, CaseFlags& cf) {
    app.add_option("--case", cf.case_id, "catalog case identifier");
    app.add_option("--a", cf.params.a);
    app.add_option("--b", cf.params.b);
    app.add_option("--c", cf.params.c);
    app.add_option("--ell", cf.params.ell);
    app.add_option("--m", cf.params.m);
    app.add_option("--cs", cf.params.cs)->delimiter(',');
    app.add_option("--as", cf.params.as)->delimiter(',');
    app.add_option("--bs", cf.params.bs)->delimiter(',');
}

std::pair<std::size_t, std::size_t> default_grids(std::size_t n) {
    return (n <= 20) ? std::make_pair<std::size_t, std::size_t>(2001, 2001)
                     : std::make_pair<std::size_t, std::size_t>(4001, 4001);
}

int cmd_snake(const CaseFlags& cf, std::size_t n) {
    const auto [mu, snake] = catalog_majorant(cf.case_id, cf.params, n);
    std::cout << "case=" << cf.case_id << " n=" << n << "\n";
    std::cout << "coefficients:";
    for (std::size_t j = 0; j <= snake.omega.degree(); ++j)
        std::cout << ' ' << format_double(snake.omega.coeff(j));
    std::cout << "\nnodes:";
    for (const auto& nd : snake.nodes) {
        std::cout << ' ' << format_double(nd.x);
        if (nd.multiplicity > 1) std::cout << "(x" << nd.multiplicity << ")";
    }
    std::cout << "\nk0=" << positivity_profile(snake.omega).k0 << "\n";
    return kExitOk;
}

int cmd_verify_theorem_main(const CaseFlags& cf, const std::vector<std::size_t>& ns,
                            const std::vector<std::size_t>& ks) {
    bool all_ok = true;
    std::cout << ExtremalReport::csv_header() << "\n";
    for (std::size_t n : ns) {
        for (std::size_t k : ks) {
            const ExtremalReport rep = verify_theorem_main(cf.case_id, cf.params, n, k);
            std::cout << rep.to_csv_row() << "\n";
            if (rep.verdict != Verdict::ConfirmsTheoremMain) all_ok = false;
        }
    }
    return all_ok ? kExitOk : kExitVerifyFailed;
}

int cmd_verify_tau_max(const std::vector<std::size_t>& ns) {
    bool all_ok = true;
    for (std::size_t n : ns) {
        const auto [gx, gt] = default_grids(n);
        const TauScanResult r = tau_scan(n, gx, gt);
        const double n2 = static_cast<double>(n * n);
        const bool ok = r.global_max <= n2 * (1.0 + 1e-9) &&
                        r.global_max >= n2 - 1e-5 &&
                        std::abs(std::abs(r.argmax_x) - 1.0) <= 1e-9 &&
                        tau_endpoint_check(n).pass;
        std::cout << "n=" << n << " global_max=" << format_double(r.global_max)
                  << " bound=" << format_double(n2) << (ok ? " pass" : " FAIL") << "\n";
        all_ok = all_ok && ok;
    }
    return all_ok ? kExitOk : kExitVerifyFailed;
}

int cmd_verify_fg(const std::vector<std::size_t>& ns) {
    bool all_ok = true;
    for (std::size_t n : ns) {
        const FgCheck c = fg_bound_check(n);
        std::cout << "n=" << n << " worst_F=" << format_double(c.worst_F)
                  << " worst_G=" << format_double(c.worst_G)
                  << (c.pass ? " pass" : " FAIL") << "\n";
        all_ok = all_ok && c.pass;
    }
    return all_ok ? kExitOk : kExitVerifyFailed;
}

int cmd_verify_tau_dd(const std::vector<std::size_t>& ns) {
    bool all_ok = true;
    for (std::size_t n : ns) {
        const TauSecondDerivCheck c = tau_second_deriv_check(n);
        const PropDDReport r = verify_prop_DD(n);
        const bool ok = c.pass && r.pass;
        std::cout << "n=" << n << " worst_crit=" << format_double(r.worst_crit)
                  << " d2_3_roots=" << r.d2_3_roots
                  << " worst_endpoint=" << format_double(c.worst_endpoint)
                  << (ok ? " pass" : " FAIL") << "\n";
        all_ok = all_ok && ok;
    }
    return all_ok ? kExitOk : kExitVerifyFailed;
}

int cmd_growth(std::size_t m, std::size_t k, const std::vector<std::size_t>& ns,
               const std::string& out_path) {
    // parity precheck with a corrective suggestion
    std::vector<std::size_t> suggestion;
    bool parity_ok = true;
    for (std::size_t n : ns) {
        const bool even_m = (m % 2 == 0);
        const bool bad = even_m ? ((n % 2) == (k % 2)) : ((n % 2) != (k % 2));
        suggestion.push_back(bad ? n + 1 : n);
        if (bad) parity_ok = false;
    }
    if (!parity_ok) {
        std::cerr << "error: parity condition violated; try --n ";
        for (std::size_t i = 0; i < suggestion.size(); ++i)
            std::cerr << (i ? "," : "") << suggestion[i];
        std::cerr << "\n";
        return kExitUsage;
    }

    std::ostringstream csv;
    csv << "n,m_side,d_side,d_over_m,d_over_nlogn\n";
    for (std::size_t n : ns) {
        const double mval =
            std::abs(derivative(detail::mu_m_snake(m, n), k)(1.0));
        const double dval = md_lower_bound(m, k, n);
        const double nd = static_cast<double>(n);
        csv << n << ',' << format_double(mval) << ',' << format_double(dval) << ','
            << format_double(dval / mval) << ','
            << format_double(dval / (nd * std::log(nd))) << "\n";
    }
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        f << csv.str();
    } else {
        std::cout << csv.str();
    }
    if (ns.size() >= 4) {
        const GrowthFit fit = md_growth_fit(m, k, ns);
        std::cout << "m_exponent=" << format_double(fit.m_exponent)
                  << " d_exponent=" << format_double(fit.d_exponent)
                  << " log_factor=" << (fit.log_factor ? "yes" : "no") << "\n";
    } else {
        std::cout << "exponent fit skipped (need at least 4 values of n)\n";
    }
    return kExitOk;
}

int cmd_scan_tau(std::size_t n, std::size_t grid_x, std::size_t grid_t,
                 const std::string& out_path) {
    if (grid_x < 2 || grid_t < 2) {
        std::cerr << "error: grid sizes must be at least 2\n";
        return kExitUsage;
    }
    const TauScanResult r = tau_scan(n, grid_x, grid_t);
    std::cout << "n=" << n << " global_max=" << format_double(r.global_max)
              << " argmax_x=" << format_double(r.argmax_x)
              << " argmax_t=" << format_double(r.argmax_t)
              << " boundary_max=" << format_double(r.boundary_max)
              << " interior_max=" << format_double(r.interior_max)
              << " extrema=" << r.local_extrema.size() << "\n";
    if (out_path.empty()) return kExitOk;

    // CSV export on a coarse sub-grid (full scan grids produce huge files)
    const std::size_t ex = std::min<std::size_t>(grid_x, 201);
    const std::size_t et = std::min<std::size_t>(grid_t, 201);
    std::ofstream f(out_path);
    f << "n,x,t,tau,tau_dx,tau_dxx,domain_tag\n";
    const auto xs = uniform_grid(ex);
    for (const double t : uniform_grid(et)) {
        const ChebPoly p = tau_poly(n, t);
        const ChebPoly d1 = derivative(p);
        const ChebPoly d2 = derivative(d1);
        for (const double x : xs) {
            // x < 0 is classified through the (x,t) -> (-x,-t) symmetry
            const DomainTag tag =
                (x >= 0.0) ? domain_classify(n, x, t) : domain_classify(n, -x, -t);
            f << n << ',' << format_double(x) << ',' << format_double(t) << ','
              << format_double(p(x)) << ',' << format_double(d1(x)) << ','
              << format_double(d2(x)) << ',' << to_string(tag) << "\n";
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"snake-polynomial toolkit: constructions, verification runs, scans"};
    app.require_subcommand(1);

    CaseFlags snake_cf;
    std::size_t snake_n = 7;
    CLI::App* snake_cmd = app.add_subcommand("snake", "construct and print a snake");
    add_case_flags(*snake_cmd, snake_cf);
    snake_cmd->add_option("--n", snake_n, "polynomial degree");

    CLI::App* verify_cmd = app.add_subcommand("verify", "verification runs");
    verify_cmd->require_subcommand(1);
    CaseFlags vt_cf;
    std::string vt_n = "6..14", vt_k = "1..3";
    CLI::App* vt = verify_cmd->add_subcommand("theorem-main", "equality of the constants");
    add_case_flags(*vt, vt_cf);
    vt->add_option("--n", vt_n);
    vt->add_option("--k", vt_k);
    std::string vm_n = "3..50";
    CLI::App* vm = verify_cmd->add_subcommand("tau-max", "global bound on tau'");
    vm->add_option("--n", vm_n);
    std::string vf_n = "3..16";
    CLI::App* vf = verify_cmd->add_subcommand("fg", "F/G majorization bounds");
    vf->add_option("--n", vf_n);
    std::string vd_n = "3..16";
    CLI::App* vd = verify_cmd->add_subcommand("tau-dd", "critical points of tau'");
    vd->add_option("--n", vd_n);

    std::size_t g_m = 2, g_k = 1;
    std::string g_n = "20,40,80,160,320", g_out;
    CLI::App* growth_cmd = app.add_subcommand("growth", "growth separation experiment");
    growth_cmd->add_option("--m", g_m);
    growth_cmd->add_option("--k", g_k);
    growth_cmd->add_option("--n", g_n);
    growth_cmd->add_option("--out", g_out, "CSV output path");

    CLI::App* scan_cmd = app.add_subcommand("scan", "grid scans");
    std::size_t s_n = 6, s_gx = 0, s_gt = 0;
    std::string s_out;
    CLI::App* st = scan_cmd->add_subcommand("tau", "scan tau' over the square");
    st->add_option("--n", s_n);
    st->add_option("--grid-x", s_gx);
    st->add_option("--grid-t", s_gt);
    st->add_option("--out", s_out, "CSV output path");
    scan_cmd->require_subcommand(1);

    try {
        std::vector<std::string> args = expand_config(argc, argv);
        std::reverse(args.begin(), args.end());  // CLI11 vector parse wants reverse order
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (snake_cmd->parsed()) return cmd_snake(snake_cf, snake_n);
        if (vt->parsed())
            return cmd_verify_theorem_main(vt_cf, parse_n_list(vt_n), parse_n_list(vt_k));
        if (vm->parsed()) return cmd_verify_tau_max(parse_n_list(vm_n));
        if (vf->parsed()) return cmd_verify_fg(parse_n_list(vf_n));
        if (vd->parsed()) return cmd_verify_tau_dd(parse_n_list(vd_n));
        if (growth_cmd->parsed())
            return cmd_growth(g_m, g_k, parse_n_list(g_n), g_out);
        if (st->parsed()) {
            auto [dx, dt] = default_grids(s_n);
            return cmd_scan_tau(s_n, s_gx ? s_gx : dx, s_gt ? s_gt : dt, s_out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
