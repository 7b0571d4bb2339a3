// apnspectra: construct APN family instances over GF(2^n), compute exact
// Walsh and differential spectra, and verify the quadranomial kernel-bound
// machinery numerically.
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "apnspectra/analysis.hpp"
#include "apnspectra/families.hpp"
#include "apnspectra/quadratic.hpp"

using json = nlohmann::ordered_json;
using namespace apnspectra;

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitCap = 3;

struct RunConfig {
    int n = 0;
    std::string poly_override;
    std::string family;
    std::string poly_text;
    std::string table_path;
    int k = -1, s = -1, i = -1, m = -1, d = -1;
    std::string v, w, t, beta, u;
    std::vector<std::string> gammas;
    std::string format = "json";
    std::string output;
    int n_cap = 16;
    bool force = false;
    int threads = 0;
    long long sample_b_raw = -1;
    bool seed_given = false;
    std::optional<std::size_t> sample_b;
    std::uint64_t seed = 0;

    void finalize() {
        if (sample_b_raw >= 0) {
            if (!seed_given)
                throw std::invalid_argument("--sample-b requires --seed");
            sample_b = std::size_t(sample_b_raw);
        }
    }
};

FieldPtr open_field(const RunConfig& cfg) {
    std::optional<std::uint32_t> ov;
    if (!cfg.poly_override.empty()) ov = parse_hex(cfg.poly_override);
    return make_field(cfg.n, ov);
}

FamilyParams collect_params(const RunConfig& cfg, Family fam) {
    FamilyParams fp = default_params(fam, cfg.n);
    if (cfg.k >= 0) fp.k = cfg.k;
    if (cfg.s >= 0) fp.s = cfg.s;
    if (cfg.i >= 0) fp.i = cfg.i;
    if (cfg.m >= 0) fp.m = cfg.m;
    if (cfg.d >= 0) fp.d = cfg.d;
    if (!cfg.v.empty()) fp.v = parse_hex(cfg.v);
    if (!cfg.w.empty()) fp.w = parse_hex(cfg.w);
    if (!cfg.t.empty()) fp.t = parse_hex(cfg.t);
    if (!cfg.beta.empty()) fp.beta = parse_hex(cfg.beta);
    if (!cfg.u.empty()) fp.u_elem = parse_hex(cfg.u);
    if (!cfg.gammas.empty()) {
        fp.gammas.clear();
        for (const auto& g : cfg.gammas) fp.gammas.push_back(parse_hex(g));
    }
    return fp;
}

FunctionTable build_function(const RunConfig& cfg, FieldPtr spec) {
    if (!cfg.family.empty()) {
        auto fam = parse_family(cfg.family);
        if (!fam) throw std::invalid_argument("unknown family '" + cfg.family + "'");
        return build_family(collect_params(cfg, *fam), spec);
    }
    if (!cfg.poly_text.empty())
        return tabulate(SparsePoly::parse(cfg.poly_text, spec));
    if (!cfg.table_path.empty()) {
        std::ifstream in(cfg.table_path);
        if (!in) throw std::invalid_argument("cannot open " + cfg.table_path);
        return import_table(in, spec);
    }
    throw std::invalid_argument("one of --family, --poly, --table is required");
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(cfg.output);
        if (!out) throw std::runtime_error("cannot write " + cfg.output);
        out << text;
    }
}

int cmd_field(const RunConfig& cfg) {
    auto f = open_field(cfg);
    json rep;
    rep["n"] = f->degree();
    rep["reduction_poly"] = to_hex(f->reduction_poly());
    rep["alpha"] = to_hex(f->alpha_bits());
    rep["order"] = f->order();
    json factors = json::object();
    for (auto [p, e] : f->order_factorization()) factors[std::to_string(p)] = e;
    rep["order_factorization"] = factors;
    emit(cfg, rep.dump(2) + "\n");
    return 0;
}

json spectrum_report(const FunctionTable& t, const WalshSpectrum& sp,
                     const DiffSpectrum& ds) {
    json rep;
    rep["n"] = t.degree();
    rep["provenance"] = t.provenance;
    json spec = json::array();
    for (auto [v, c] : sp.counts) spec.push_back({{"value", v}, {"count", c}});
    rep["spectrum"] = spec;
    rep["nonlinearity"] = nonlinearity(sp);
    rep["differential_uniformity"] = ds.max_count;
    rep["is_apn"] = ds.is_apn();
    if (sp.sampled_b) {
        json bs = json::array();
        for (auto b : *sp.sampled_b) bs.push_back(to_hex(b));
        rep["sampled_b"] = bs;
    }
    if (ds.sampled_a) rep["sampled_a_rows"] = ds.sampled_a->size();
    return rep;
}

int cmd_analyze(const RunConfig& cfg) {
    auto f = open_field(cfg);
    auto t = build_function(cfg, f);

    if (!cfg.sample_b && cfg.n > cfg.n_cap && !cfg.force)
        throw CapExceeded("full spectrum at n=" + std::to_string(cfg.n) +
                          " exceeds the cap (" + std::to_string(cfg.n_cap) +
                          "); pass --force or use --sample-b");

    WalshSpectrum sp = cfg.sample_b
                           ? sampled_spectrum(t, *cfg.sample_b, cfg.seed, cfg.threads)
                           : full_spectrum(t, cfg.threads);
    DiffSpectrum ds =
        cfg.sample_b ? diff_spectrum_sampled(t, std::min<std::size_t>(512, t.size() - 1),
                                             cfg.seed)
                     : diff_spectrum(t, cfg.threads);

    if (cfg.format == "json") {
        emit(cfg, spectrum_report(t, sp, ds).dump(2) + "\n");
    } else if (cfg.format == "csv") {
        std::string out = "value,count\n";
        for (auto [v, c] : sp.counts)
            out += std::to_string(v) + "," + std::to_string(c) + "\n";
        emit(cfg, out);
    } else {
        std::string out = "n=" + std::to_string(t.degree()) + "  " + t.provenance + "\n";
        for (auto [v, c] : sp.counts)
            out += "  W=" + std::to_string(v) + "  x" + std::to_string(c) + "\n";
        out += "nonlinearity " + std::to_string(nonlinearity(sp)) +
               ", differential uniformity " + std::to_string(ds.max_count) +
               (ds.is_apn() ? " (APN)" : "") + "\n";
        emit(cfg, out);
    }
    return 0;
}

std::vector<std::uint32_t> b_values(const FunctionTable& t, const RunConfig& cfg) {
    std::vector<std::uint32_t> bs;
    for (std::uint32_t b = 1; b < t.size(); ++b) bs.push_back(b);
    if (cfg.sample_b) {
        std::mt19937_64 rng(cfg.seed);
        std::shuffle(bs.begin(), bs.end(), rng);
        bs.resize(std::min(bs.size(), *cfg.sample_b));
        std::sort(bs.begin(), bs.end());
    }
    return bs;
}

int cmd_kernels(const RunConfig& cfg) {
    auto f = open_field(cfg);
    auto t = build_function(cfg, f);
    if (!is_quadratic(t))
        throw NotQuadratic("function is not quadratic: B_f fails bilinearity");

    bool is_f5 = !cfg.family.empty() && parse_family(cfg.family) == Family::F5;
    std::map<int, std::uint64_t> dim_hist;
    json violations = json::array();
    std::string out;
    for (std::uint32_t b : b_values(t, cfg)) {
        auto m = kernel_map_generic(t, b, false);
        auto elems = m.kernel_elements();
        int dim = m.kernel_dim();
        ++dim_hist[dim];
        if (is_f5 && dim > 2) violations.push_back(to_hex(b));
        json line;
        line["b"] = to_hex(b);
        line["dim"] = dim;
        json ker = json::array();
        for (auto u : elems) ker.push_back(to_hex(u));
        line["kernel"] = ker;
        out += line.dump() + "\n";
    }
    json summary;
    json dims = json::object();
    for (auto [d, c] : dim_hist) dims[std::to_string(d)] = c;
    summary["summary"] = {{"dims", dims}};
    if (is_f5) summary["summary"]["kernel_bound_violations"] = violations;
    out += summary.dump() + "\n";
    emit(cfg, out);
    return 0;
}

int cmd_verify_proof(const RunConfig& cfg) {
    if (cfg.family.empty() || parse_family(cfg.family) != Family::F5)
        throw std::invalid_argument("verify-proof applies to --family f5 only");
    auto f = open_field(cfg);
    auto fp = collect_params(cfg, Family::F5);
    auto t = build_family(fp, f);  // validates parameters

    bool all_ok = true;
    std::string out;
    for (std::uint32_t b : b_values(t, cfg)) {
        auto tr = proof_trace_f5(fp, f, b);
        json line;
        line["b"] = to_hex(b);
        line["theta_bar_nonzero"] = tr.theta_bar_nonzero;
        line["p_theta_nonzero"] = tr.p_nonzero;
        line["p_theta_in_subfield"] = tr.p_in_subfield;
        line["z_in_subfield"] = tr.z_in_subfield;
        line["d_nonzero"] = tr.d_nonzero;
        line["kernel_dim"] = tr.kernel_dim;
        line["kernel_bound"] = tr.kernel_bound;
        line["t_image_values"] = tr.t_image_values;
        line["t_image_bound"] = tr.t_image_bound;
        bool eqs = true;
        for (const auto& rec : tr.kernel)
            eqs = eqs && rec.conj_relation && rec.t_substitution && rec.r_substitution && rec.trace_t && rec.trace_r;
        line["equations_ok"] = eqs;
        bool ok = tr.all_pass();
        line["pass"] = ok;
        all_ok = all_ok && ok;
        out += line.dump() + "\n";
    }
    out += json{{"overall_pass", all_ok}}.dump() + "\n";
    emit(cfg, out);
    return all_ok ? 0 : 1;
}

int cmd_export_table(const RunConfig& cfg) {
    auto f = open_field(cfg);
    auto t = build_function(cfg, f);
    std::ostringstream os;
    export_table(t, os);
    emit(cfg, os.str());
    return 0;
}

int cmd_import_table(const RunConfig& cfg) {
    auto f = open_field(cfg);
    std::ifstream in(cfg.table_path);
    if (!in) throw std::invalid_argument("cannot open " + cfg.table_path);
    auto t = import_table(in, f);
    json rep;
    rep["n"] = t.degree();
    rep["entries"] = t.values.size();
    rep["ok"] = true;
    emit(cfg, rep.dump() + "\n");
    return 0;
}

void add_common(CLI::App* cmd, RunConfig& cfg, bool with_function) {
    cmd->add_option("--n", cfg.n, "field degree")->required();
    cmd->add_option("--poly-override", cfg.poly_override,
                    "reduction polynomial bit mask (hex)");
    if (with_function) {
        cmd->add_option("--family", cfg.family, "f1|f2|f3|f4|f5|gold|dillon");
        cmd->add_option("--poly", cfg.poly_text, "polynomial expression");
        cmd->add_option("--table", cfg.table_path, "value table file (hex per line)");
        cmd->add_option("--k", cfg.k);
        cmd->add_option("--s", cfg.s);
        cmd->add_option("--i", cfg.i);
        cmd->add_option("--m", cfg.m);
        cmd->add_option("--d", cfg.d);
        cmd->add_option("--v", cfg.v, "F5 v (hex, in GF(2^k))");
        cmd->add_option("--w", cfg.w, "F5 w (hex, in GF(2^k))");
        cmd->add_option("--t", cfg.t, "F1/F2 primitive t (hex)");
        cmd->add_option("--beta", cfg.beta, "F3 beta (hex)");
        cmd->add_option("--u", cfg.u, "Dillon u (hex)");
        cmd->add_option("--gammas", cfg.gammas, "F3 gamma list (hex)");
    }
    cmd->add_option("--output", cfg.output, "write report to a file");
    cmd->add_option("--threads", cfg.threads, "worker count (0 = auto)");
    cmd->add_option("--sample-b", cfg.sample_b_raw,
                    "analyze a seeded random sample of b values");
    cmd->add_option("--seed", cfg.seed, "sample seed")
        ->each([&cfg](const std::string&) { cfg.seed_given = true; });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"APN function spectra over GF(2^n)"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* field = app.add_subcommand("field", "describe a field realization");
    field->add_option("--n", cfg.n, "field degree")->required();
    field->add_option("--poly-override", cfg.poly_override, "reduction polynomial (hex)");
    field->add_option("--output", cfg.output);

    auto* analyze = app.add_subcommand("analyze", "Walsh + differential spectra");
    add_common(analyze, cfg, true);
    analyze->add_option("--format", cfg.format, "json|csv|text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    analyze->add_option("--n-cap", cfg.n_cap, "full-spectrum degree cap");
    analyze->add_flag("--force", cfg.force, "run past the cap");

    auto* kernels = app.add_subcommand("kernels", "per-b kernel profile");
    add_common(kernels, cfg, true);

    auto* verify = app.add_subcommand("verify-proof", "kernel-bound proof trace (F5)");
    add_common(verify, cfg, true);

    auto* exp = app.add_subcommand("export-table", "write the value table");
    add_common(exp, cfg, true);

    auto* imp = app.add_subcommand("import-table", "validate a value table file");
    imp->add_option("--n", cfg.n, "field degree")->required();
    imp->add_option("--poly-override", cfg.poly_override);
    imp->add_option("--input", cfg.table_path, "table file")->required();
    imp->add_option("--output", cfg.output);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        cfg.finalize();
        if (app.got_subcommand(field)) return cmd_field(cfg);
        if (app.got_subcommand(analyze)) return cmd_analyze(cfg);
        if (app.got_subcommand(kernels)) return cmd_kernels(cfg);
        if (app.got_subcommand(verify)) return cmd_verify_proof(cfg);
        if (app.got_subcommand(exp)) return cmd_export_table(cfg);
        if (app.got_subcommand(imp)) return cmd_import_table(cfg);
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCap;
    } catch (const InvalidParams& e) {
        std::cerr << "error: invalid parameters\n";
        for (const auto& v : e.violations) std::cerr << "  violated: " << v << "\n";
        return kExitInvalid;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
