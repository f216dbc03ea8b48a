#include "CLI11.hpp"

#include "sft/basic_set.hpp"
#include "sft/count_matrix.hpp"
#include "sft/entropy.hpp"
#include "sft/lattice.hpp"
#include "sft/oracle.hpp"
#include "sft/report.hpp"
#include "sft/spectral.hpp"
#include "sft/transfer.hpp"

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace {

struct Options {
    std::string input;
    int n_max = 6;
    int m_max = 6;
    std::int64_t k_max = 6;
    int q_max = 4;
    double tol = 1e-10;
    std::string format = "tsv";
    bool log2 = false;
    bool partial = false;
};

// Scale a natural-log quantity to the requested base.
double scaled(double value, const Options& opt) {
    return opt.log2 ? value / std::log(2.0) : value;
}

std::string fmt_log(double value, const Options& opt) {
    return sft::format_real(scaled(value, opt));
}

void emit(const sft::Report& report, const Options& opt) {
    if (opt.format == "json") {
        sft::write_json(std::cout, report);
    } else {
        sft::write_tsv(std::cout, report);
    }
}

sft::Report base_report(const std::string& subcommand, const Options& opt,
                        const sft::BasicSet& bs) {
    sft::Report report;
    report.subcommand = subcommand;
    report.meta.emplace_back("input", opt.input);
    report.meta.emplace_back("input_digest", sft::file_digest(opt.input));
    report.meta.emplace_back("r", sft::format_int(bs.r()));
    report.meta.emplace_back("dim_cap", sft::format_int(sft::dim_cap()));
    report.meta.emplace_back("log_base", opt.log2 ? "2" : "e");
    return report;
}

int finish(const sft::Report& report, const Options& opt, bool truncated) {
    emit(report, opt);
    return truncated ? 2 : 0;
}

int cmd_entropy(const Options& opt) {
    const sft::BasicSet bs = sft::load_basic_set(opt.input);
    bool truncated = false;
    sft::HEstimates h;
    std::vector<sft::EntropyPoint> hs, hq;
    if (!opt.partial) {
        if (opt.n_max >= 2) h = sft::h_estimates(bs, opt.n_max);
        hs = sft::h_star_estimates(bs, opt.m_max);
        hq = sft::h1_gamma_estimates(bs, opt.q_max);
    } else {
        // Grow each cap one step at a time so completed cells survive a cap
        // abort; the last successful call holds every finished cell.
        for (int n = 2; n <= opt.n_max && !truncated; ++n) {
            try {
                h = sft::h_estimates(bs, n);
            } catch (const sft::CapExceeded&) {
                truncated = true;
            }
        }
        for (int m = 1; m <= opt.m_max && !truncated; ++m) {
            try {
                hs = sft::h_star_estimates(bs, m);
            } catch (const sft::CapExceeded&) {
                truncated = true;
            }
        }
        for (int q = 1; q <= opt.q_max && !truncated; ++q) {
            try {
                hq = sft::h1_gamma_estimates(bs, q);
            } catch (const sft::CapExceeded&) {
                truncated = true;
            }
        }
    }
    sft::Report report = base_report("entropy", opt, bs);
    report.meta.emplace_back("n_max", sft::format_int(opt.n_max));
    report.meta.emplace_back("m_max", sft::format_int(opt.m_max));
    report.meta.emplace_back("q_max", sft::format_int(opt.q_max));
    report.meta.emplace_back("tol", sft::format_real(opt.tol));
    if (truncated) report.notes.push_back("truncated: dimension cap exceeded");
    report.columns = {"n", "h_H(n)", "m", "h_T(m)", "q", "h_gamma(q)"};
    const std::size_t rows =
        std::max({h.horizontal.size(), hs.size(), hq.size()});
    for (std::size_t i = 0; i < rows; ++i) {
        std::vector<std::string> row(6, "-");
        if (i < h.horizontal.size()) {
            row[0] = sft::format_int(h.horizontal[i].index);
            row[1] = fmt_log(h.horizontal[i].value, opt);
        }
        if (i < hs.size()) {
            row[2] = sft::format_int(hs[i].index);
            row[3] = fmt_log(hs[i].value, opt);
        }
        if (i < hq.size()) {
            row[4] = sft::format_int(hq[i].index);
            row[5] = fmt_log(hq[i].value, opt);
        }
        report.rows.push_back(std::move(row));
    }
    return finish(report, opt, truncated);
}

int cmd_periodic(const Options& opt, std::int64_t n, std::int64_t l, std::int64_t k) {
    const sft::BasicSet bs = sft::load_basic_set(opt.input);
    std::cout << sft::gamma_count(bs, static_cast<int>(n), static_cast<int>(l), k) << '\n';
    return 0;
}

int cmd_oracle(const Options& opt, std::int64_t n, std::int64_t l, std::int64_t k) {
    const sft::BasicSet bs = sft::load_basic_set(opt.input);
    std::cout << sft::count_torus(bs, {n, k, l}) << '\n';
    return 0;
}

int cmd_mixing(const Options& opt) {
    const sft::BasicSet bs = sft::load_basic_set(opt.input);
    bool truncated = false;
    sft::ConnectivityReport conn;
    if (!opt.partial) {
        conn = sft::block_gluing_check(bs, opt.m_max);
    } else {
        for (int m = 1; m <= opt.m_max && !truncated; ++m) {
            try {
                conn = sft::block_gluing_check(bs, m);
            } catch (const sft::CapExceeded&) {
                truncated = true;
            }
        }
    }
    sft::Report report = base_report("mixing-check", opt, bs);
    report.meta.emplace_back("m_max", sft::format_int(opt.m_max));
    report.meta.emplace_back("tol", sft::format_real(opt.tol));
    report.notes.push_back(
        "finite-size evidence only: bounds at these m do not certify the full shift");
    if (truncated) report.notes.push_back("truncated: dimension cap exceeded");
    report.columns = {"m",         "dim",      "irreducible", "diameter",
                      "self_loop", "gluing_K", "rho",         "c_diag(m,m)"};
    for (const sft::ConnectivityRow& row : conn.rows) {
        const sft::SparseCountMatrix t = sft::build_Tm(bs, row.m);
        const sft::SpectralEstimate est = sft::spectral_radius(t, opt.tol);
        const sft::BigInt count = sft::power_entry_sum(t, row.m);
        double c_diag = 0.0;
        if (count > 0 && est.rho > 0.0) {
            const double denom = std::pow(est.rho, static_cast<double>(row.m));
            if (count < (sft::BigInt(1) << 53) && std::isfinite(denom) && denom >= 1e-300) {
                c_diag = count.convert_to<double>() / denom;
            } else {
                c_diag = std::exp(sft::big_log(count) -
                                  static_cast<double>(row.m) * std::log(est.rho));
            }
        }
        report.rows.push_back(
            {sft::format_int(row.m), sft::format_int(row.dim),
             row.irreducible ? "1" : "0",
             row.diam ? sft::format_int(*row.diam) : "inf",
             row.self_loop ? sft::format_int(*row.self_loop) : "-",
             row.gluing_k ? sft::format_int(*row.gluing_k) : "-",
             sft::format_real(est.rho), sft::format_real(c_diag)});
    }
    return finish(report, opt, truncated);
}

int cmd_domination(const Options& opt) {
    const sft::BasicSet bs = sft::load_basic_set(opt.input);
    bool truncated = false;
    sft::DominationTable table;
    if (!opt.partial) {
        table = sft::domination_table(bs, opt.m_max, static_cast<int>(opt.k_max));
    } else {
        for (int m = 1; m <= opt.m_max && !truncated; ++m) {
            try {
                table = sft::domination_table(bs, m, static_cast<int>(opt.k_max));
            } catch (const sft::CapExceeded&) {
                truncated = true;
            }
        }
    }
    sft::Report report = base_report("domination", opt, bs);
    report.meta.emplace_back("m_max", sft::format_int(opt.m_max));
    report.meta.emplace_back("k_max", sft::format_int(opt.k_max));
    if (table.k_bound) {
        report.meta.emplace_back("k_bound", sft::format_int(*table.k_bound));
    }
    if (table.any_uncertified) report.notes.push_back("warning: uncertified rho estimate");
    if (truncated) report.notes.push_back("truncated: dimension cap exceeded");
    report.columns = {"m", "k", "count", "rho_m", "c", "log_c_over_mk", "bound_m"};
    for (const sft::DominationCell& cell : table.cells) {
        const std::size_t mi = static_cast<std::size_t>(cell.m - 1);
        const double rho_m = table.rho_per_m[mi].rho;
        const std::string bound = mi < table.bound_per_m.size()
                                      ? sft::format_real(table.bound_per_m[mi])
                                      : std::string("-");
        report.rows.push_back({sft::format_int(cell.m), sft::format_int(cell.k),
                               cell.abs_count.str(), sft::format_real(rho_m),
                               sft::format_real(cell.c),
                               fmt_log(cell.log_c_over_mk, opt), bound});
    }
    return finish(report, opt, truncated);
}

int cmd_hnf(const std::vector<std::int64_t>& gamma, const std::vector<std::int64_t>& hnf,
            const std::vector<std::int64_t>& to_gamma,
            const std::vector<std::int64_t>& matrix) {
    sft::HermiteForm result;
    if (!matrix.empty()) {
        result = sft::hnf_reduce({matrix[0], matrix[1], matrix[2], matrix[3]}).first;
    } else {
        const sft::Unimodular g = sft::make_unimodular(gamma[0], gamma[1], gamma[2], gamma[3]);
        if (to_gamma.empty()) {
            result = sft::to_gamma0(g, hnf[0], hnf[1], hnf[2]);
        } else {
            const sft::Unimodular g2 =
                sft::make_unimodular(to_gamma[0], to_gamma[1], to_gamma[2], to_gamma[3]);
            result = sft::transform(g, g2, hnf[0], hnf[1], hnf[2]);
        }
    }
    std::cout << result.n << ' ' << result.l << ' ' << result.k << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    Options opt;
    std::int64_t cell_n = 1, cell_l = 0, cell_k = 1;
    std::vector<std::int64_t> hnf_gamma, hnf_triple, hnf_to_gamma, hnf_matrix;

    CLI::App app{"transfer-matrix counting and entropy estimation for 2x2-window shifts"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub, bool needs_input) {
        if (needs_input) {
            sub->add_option("--input", opt.input, "basic-set file (text or JSON)")
                ->required();
        }
        sub->add_option("--tol", opt.tol, "spectral tolerance")
            ->check(CLI::Range(1e-300, 1.0));
        sub->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember({"tsv", "json"}));
        sub->add_flag("--log2", opt.log2, "report logs base 2 instead of e");
        sub->add_flag("--partial", opt.partial,
                      "emit completed cells when a cap aborts (exit stays 2)");
    };

    CLI::App* entropy = app.add_subcommand("entropy", "growth-rate estimate table");
    add_common(entropy, true);
    entropy->add_option("--n-max", opt.n_max, "largest strip height")->check(CLI::PositiveNumber);
    entropy->add_option("--m-max", opt.m_max, "largest cylinder width")->check(CLI::PositiveNumber);
    entropy->add_option("--q-max", opt.q_max, "largest staircase shear")->check(CLI::PositiveNumber);

    CLI::App* periodic = app.add_subcommand("periodic-count", "exact periodic pattern count");
    add_common(periodic, true);
    periodic->add_option("--n", cell_n, "horizontal period")->required()->check(CLI::PositiveNumber);
    periodic->add_option("--l", cell_l, "shear, 0 <= l < n");
    periodic->add_option("--k", cell_k, "vertical period")->required()->check(CLI::PositiveNumber);

    CLI::App* oracle = app.add_subcommand("oracle-count", "periodic count by direct enumeration");
    add_common(oracle, true);
    oracle->add_option("--n", cell_n, "horizontal period")->required()->check(CLI::PositiveNumber);
    oracle->add_option("--l", cell_l, "shear, 0 <= l < n");
    oracle->add_option("--k", cell_k, "vertical period")->required()->check(CLI::PositiveNumber);

    CLI::App* mixing = app.add_subcommand("mixing-check", "connectivity and gluing evidence");
    add_common(mixing, true);
    mixing->add_option("--m-max", opt.m_max, "largest cylinder width")->check(CLI::PositiveNumber);

    CLI::App* domination = app.add_subcommand("domination", "c(m,k) = |T_m^k| / rho^k table");
    add_common(domination, true);
    domination->add_option("--m-max", opt.m_max, "largest cylinder width")
        ->check(CLI::PositiveNumber);
    domination->add_option("--k-max", opt.k_max, "largest power")->check(CLI::PositiveNumber);

    CLI::App* hnf = app.add_subcommand("hnf", "canonical lattice triple n l k");
    hnf->add_option("--gamma", hnf_gamma, "coordinate system a b c d")->expected(4);
    hnf->add_option("--hnf", hnf_triple, "input triple M L K")->expected(3);
    hnf->add_option("--to-gamma", hnf_to_gamma, "target coordinate system a b c d")
        ->expected(4);
    hnf->add_option("--matrix", hnf_matrix, "raw integer matrix a11 a12 a21 a22")
        ->expected(4);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (entropy->parsed()) return cmd_entropy(opt);
        if (periodic->parsed()) return cmd_periodic(opt, cell_n, cell_l, cell_k);
        if (oracle->parsed()) return cmd_oracle(opt, cell_n, cell_l, cell_k);
        if (mixing->parsed()) return cmd_mixing(opt);
        if (domination->parsed()) return cmd_domination(opt);
        if (hnf->parsed()) {
            if (hnf_matrix.empty() && (hnf_gamma.empty() || hnf_triple.empty())) {
                std::cerr << "hnf needs either --matrix or both --gamma and --hnf\n";
                return 1;
            }
            return cmd_hnf(hnf_gamma, hnf_triple, hnf_to_gamma, hnf_matrix);
        }
    } catch (const sft::CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
