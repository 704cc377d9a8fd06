// Command-line front end: logical-measurement constructions on CSS codes,
// scheme comparisons, code info, and the binomial-interval helper.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>

#include "eehm/codes.hpp"
#include "eehm/css.hpp"
#include "eehm/errors.hpp"
#include "eehm/io.hpp"
#include "eehm/surgery.hpp"
#include "eehm/tableau.hpp"

namespace {

using namespace eehm;

constexpr int kExitParse = 2;
constexpr int kExitNotLogical = 3;
constexpr int kExitResource = 4;

struct CodeInput {
    std::string code_file;
    std::string hx_file, hz_file;

    CssCode load() const {
        if (!code_file.empty()) return read_code_file(code_file);
        if (hx_file.empty() || hz_file.empty())
            throw parse_error("provide a code file or both --hx and --hz");
        return CssCode(read_matrix_auto(hx_file), read_matrix_auto(hz_file));
    }
};

void add_profile(Report& rep, const std::string& prefix, const CssCode& code) {
    auto [n, k] = params(code);
    WeightProfile p = weight_profile(code);
    rep.add(prefix + ".n", n);
    rep.add(prefix + ".k", k);
    rep.add(prefix + ".q_X", p.q_x);
    rep.add(prefix + ".w_X", p.w_x);
    rep.add(prefix + ".q_Z", p.q_z);
    rep.add(prefix + ".w_Z", p.w_z);
    rep.add(prefix + ".q", p.q);
    rep.add(prefix + ".w", p.w);
    rep.add(prefix + ".q_X_avg", p.q_x_avg);
    rep.add(prefix + ".w_X_avg", p.w_x_avg);
    rep.add(prefix + ".q_Z_avg", p.q_z_avg);
    rep.add(prefix + ".w_Z_avg", p.w_z_avg);
    rep.add(prefix + ".q_avg", p.q_avg);
    rep.add(prefix + ".w_avg", p.w_avg);
}

std::string ratio_str(const Ratio& r) {
    return std::to_string(r.num) + "/" + std::to_string(r.den);
}

std::string tag_ranges(const std::vector<RowTag>& tags) {
    std::ostringstream os;
    std::size_t i = 0;
    bool first = true;
    auto name = [](RowTag t) {
        switch (t) {
            case RowTag::original_x: return "original-x";
            case RowTag::new_x: return "new-x";
            case RowTag::original_z: return "original-z";
            case RowTag::new_z: return "new-z";
            case RowTag::new_x_cycle: return "new-x-cycle";
            case RowTag::new_z_cycle: return "new-z-cycle";
        }
        return "?";
    };
    while (i < tags.size()) {
        std::size_t j = i;
        while (j + 1 < tags.size() && tags[j + 1] == tags[i]) ++j;
        os << (first ? "" : ", ") << name(tags[i]) << ":" << i << ".." << j;
        first = false;
        i = j + 1;
    }
    return os.str();
}

void emit(const Report& rep, const std::string& output) {
    if (output.empty()) {
        std::cout << rep;
    } else {
        std::ofstream out(output);
        if (!out) throw std::runtime_error("cannot write " + output);
        out << rep;
    }
}

void validate_sector(const PauliOperator& op, const std::string& sector) {
    if (sector == "auto") return;
    bool want_x = sector == "x";
    if ((want_x && op.z.any()) || (!want_x && op.x.any()))
        throw parse_error("operator does not match the requested sector");
}

int run(int argc, char** argv) {
    CLI::App app{"edge expanded homological measurement toolkit"};
    app.require_subcommand(1);

    // shared state across subcommands
    CodeInput input;
    std::vector<std::string> op_tokens;
    std::string output;
    std::string sector = "auto";
    std::string scheme = "eehm";
    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::size_t samples = 1000;
    std::size_t cheeger_cap = 24;
    std::size_t distance_cap = 26;
    std::size_t distance_trials = 0;
    std::size_t rounds = 0;
    std::size_t r_param = 0;
    bool no_cellulation = false;
    std::size_t max_cycle_weight = 0;
    std::size_t max_degree = 3;

    auto add_common = [&](CLI::App* sub, bool with_op) {
        sub->add_option("code", input.code_file, "code file (hx/hz sections)");
        sub->add_option("--hx", input.hx_file, "X-check matrix file (plain or .alist)");
        sub->add_option("--hz", input.hz_file, "Z-check matrix file (plain or .alist)");
        if (with_op)
            sub->add_option("operator", op_tokens, "logical operator tokens, e.g. X1 X2 X3");
        sub->add_option("-o,--output", output, "report file (default stdout)");
        sub->add_option("--seed", seed, "random seed");
        sub->add_option("--workers", workers, "worker threads for searches");
        sub->add_option("--samples", samples, "low-weight d0 search samples");
        sub->add_option("--cheeger-cap", cheeger_cap, "max vertices for Cheeger enumeration");
        sub->add_option("--distance-cap", distance_cap, "max kernel dim for exact distance");
        sub->add_option("--distance-trials", distance_trials,
                        "randomized distance-bound trials (0 = skip)");
        sub->add_option("--sector", sector, "x, z or auto")
            ->check(CLI::IsMember({"x", "z", "auto"}));
    };

    CLI::App* measure = app.add_subcommand("measure", "construct a merged measurement code");
    add_common(measure, true);
    measure->add_option("--scheme", scheme, "eehm, gls or cylinder")
        ->check(CLI::IsMember({"eehm", "gls", "cylinder"}));
    measure->add_option("--r", r_param, "repetition parameter for gls (default: operator weight)");
    measure->add_option("--rounds", rounds, "noiseless protocol rounds per eigenvalue (0 = skip)");
    measure->add_flag("--no-cellulation", no_cellulation, "disable cellulation");
    measure->add_option("--max-cycle-weight", max_cycle_weight,
                        "cellulation cycle-weight bound (default: sparsity threshold)");
    measure->add_option("--max-degree", max_degree, "cellulation vertex-degree bound");

    CLI::App* compare = app.add_subcommand("compare", "ancilla counts across schemes");
    add_common(compare, true);
    compare->add_option("--r", r_param, "explicit reduced-r column (omitted when absent)");

    CLI::App* info = app.add_subcommand("info", "code parameters and weight profile");
    add_common(info, false);
    bool exact_distances = false;
    info->add_flag("--exact-distance", exact_distances,
                   "exhaustive sector distances (subject to --distance-cap)");

    CLI::App* stats = app.add_subcommand("stats", "Agresti-Coull interval");
    std::size_t n_fail = 0, n_tot = 0;
    double kappa = 1.96;
    stats->add_option("--fail", n_fail, "failure count")->required();
    stats->add_option("--total", n_tot, "trial count")->required();
    stats->add_option("--kappa", kappa, "normal quantile (default 1.96)");

    CLI11_PARSE(app, argc, argv);

    if (stats->parsed()) {
        auto [p, half] = agresti_coull(n_fail, n_tot, kappa);
        Report rep;
        rep.add("p_fail", p);
        rep.add("half_width", half);
        emit(rep, output);
        return 0;
    }

    CssCode code = input.load();

    if (info->parsed()) {
        Report rep;
        add_profile(rep, "code", code);
        if (exact_distances) {
            DistanceOptions dopt;
            dopt.cap = distance_cap;
            dopt.workers = workers;
            rep.add("code.d_X", exact_distance(code, Sector::X, std::nullopt, dopt));
            rep.add("code.d_Z", exact_distance(code, Sector::Z, std::nullopt, dopt));
        }
        if (distance_trials > 0) {
            rep.add("code.d_upper_X",
                    distance_upper_bound(code, Sector::X, distance_trials, seed, workers));
            rep.add("code.d_upper_Z",
                    distance_upper_bound(code, Sector::Z, distance_trials, seed, workers));
        }
        rep.add("seed", seed);
        rep.add("workers", static_cast<std::size_t>(workers));
        emit(rep, output);
        return 0;
    }

    std::string op_text;
    for (const std::string& t : op_tokens) op_text += t + " ";
    PauliOperator op = parse_operator(op_text, code.n());
    validate_sector(op, sector);

    MeasureOptions opts;
    opts.seed = seed;
    opts.samples = samples;
    opts.cheeger_cap = cheeger_cap;
    opts.cellulation = !no_cellulation;
    if (max_cycle_weight > 0) opts.max_cycle_weight = max_cycle_weight;
    opts.max_degree = max_degree;
    opts.workers = workers;

    if (compare->parsed()) {
        std::size_t w = op.weight();
        MeasurementArtifact gls_d = scheme_generalized_lattice_surgery(code, op, w);
        MeasurementArtifact ours = algorithm3_measure(code, op, opts);
        Report rep;
        rep.add("operator", op_text);
        rep.add("operator.weight", w);
        rep.add("n_anc.gls_r_eq_d", gls_d.ancilla_count);
        if (r_param > 0) {
            MeasurementArtifact gls_r = scheme_generalized_lattice_surgery(code, op, r_param);
            rep.add("n_anc.gls_reduced_r", gls_r.ancilla_count);
        } else {
            rep.add("n_anc.gls_reduced_r", "unavailable (pass --r)");
        }
        rep.add("n_anc.eehm", ours.ancilla_count);
        rep.add("seed", seed);
        rep.add("workers", static_cast<std::size_t>(workers));
        emit(rep, output);
        return 0;
    }

    MeasurementArtifact art;
    if (scheme == "eehm") {
        art = (op.x.any() && op.z.any()) ? mixed_measure(code, op, opts)
                                         : algorithm3_measure(code, op, opts);
    } else if (scheme == "gls") {
        art = scheme_generalized_lattice_surgery(code, op, r_param ? r_param : op.weight());
    } else {
        art = scheme_cylinder(code, op);
    }

    Report rep;
    rep.add("scheme", scheme);
    rep.add("operator", op_text);
    add_profile(rep, "input", code);
    if (art.is_css()) {
        add_profile(rep, "merged", art.css());
        rep.add("merged.rows.x", tag_ranges(art.x_tags));
        rep.add("merged.rows.z", tag_ranges(art.z_tags));
    } else {
        rep.add("merged.n", art.symplectic().n());
        rep.add("merged.k", art.symplectic().k());
        rep.add("merged.form", "symplectic");
        rep.add("merged.interpretation_sign", art.interpretation_sign > 0 ? "+1" : "-1");
    }
    rep.add("n_anc", art.ancilla_count);
    rep.add("k_merged", art.k_merged);
    rep.add("r_merged", art.r_merged);
    rep.add("cheeger", ratio_str(art.cheeger_final));
    {
        std::string trace;
        for (const Ratio& h : art.cheeger_trace) trace += (trace.empty() ? "" : ", ") + ratio_str(h);
        rep.add("cheeger_trace", trace.empty() ? "-" : trace);
    }
    rep.add("edges_added", art.edges_added);
    rep.add("chords_added", art.chords_added);
    rep.add("hyperedges_expanded", art.hyperedges_expanded ? "yes" : "no");
    rep.add("is_measurement", art.is_measurement ? "yes" : "no");
    if (!art.advisory.empty()) rep.add("advisory", art.advisory);
    rep.add("seed", seed);
    rep.add("samples", samples);
    rep.add("workers", static_cast<std::size_t>(workers));

    if (distance_trials > 0 && art.is_css()) {
        rep.add("input.d_upper",
                distance_upper_bound(code, Sector::X, distance_trials, seed, workers));
        rep.add("merged.d_upper",
                distance_upper_bound(art.css(), Sector::X, distance_trials, seed, workers));
    }

    if (rounds > 0 && art.is_css() && art.is_measurement) {
        for (int eig : {+1, -1}) {
            ProtocolReport pr = run_protocol(art, eig, rounds, seed);
            std::string prefix = eig > 0 ? "protocol.plus" : "protocol.minus";
            rep.add(prefix + ".inferred", pr.inferred_outcome > 0 ? "+1" : "-1");
            rep.add(prefix + ".final_group_matches", pr.final_group_matches ? "yes" : "no");
        }
    }
    emit(rep, output);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const eehm::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const eehm::not_logical_error& e) {
        std::cerr << "not a logical operator: " << e.what() << "\n";
        return kExitNotLogical;
    } catch (const eehm::resource_limit_error& e) {
        std::cerr << "resource cap exceeded: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
