// Command line front end: build networks, evaluate them, run the
// verification suites and rate studies, and convert model files.
//
// Exit codes: 0 success / all checks pass, 1 a mandatory bound failed,
// 2 usage error, 3 malformed input file, 4 I/O failure.

#include <cctype>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "CLI11.hpp"

#include "hatnet/builder_1d.hpp"
#include "hatnet/builder_nd.hpp"
#include "hatnet/network.hpp"
#include "hatnet/serialize.hpp"
#include "hatnet/target_function.hpp"
#include "hatnet/verify.hpp"

namespace {

using namespace hatnet;

std::string widths_string(const std::vector<std::size_t>& w) {
    std::string s = "[";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(w[i]);
    }
    return s + "]";
}

std::vector<double> parse_point(const std::string& text) {
    std::vector<double> x;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        x.push_back(std::stod(item, &used));
        while (used < item.size() && std::isspace((unsigned char)item[used]))
            ++used;
        if (used != item.size())
            throw std::invalid_argument("bad coordinate: '" + item + "'");
    }
    if (x.empty()) throw std::invalid_argument("empty point");
    return x;
}

std::size_t thread_default() {
    if (const char* env = std::getenv("HATNET_THREADS")) {
        const long v = std::atol(env);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    return 0; // auto
}

struct BuildArgs {
    std::string fn;
    std::size_t n = 0;
    long k = 1;
    std::size_t m = 6;
    bool half = false;
    std::string out = "model.json";
    std::string dense_csv;
};

int cmd_build(const BuildArgs& a) {
    const TargetFunction f = make_target(a.fn, a.n);
    NetworkIR net = f.dim == 1 ? build_1d(f, a.k, a.half)
                               : build_nd(f, BuildSpec{f.dim, a.k, a.m, a.half});
    save_json(net, a.out);
    const ParamCounts counts = net.count_params();
    std::cout << "fn " << f.name << "\n"
              << "widths " << widths_string(net.widths()) << "\n"
              << "hidden_layers " << net.depth() << "\n"
              << "nnz " << counts.nnz_total << " dense " << counts.dense_total
              << "\n"
              << "wrote " << a.out << "\n";
    if (!a.dense_csv.empty())
        for (const std::string& p : save_dense_csv(net, a.dense_csv))
            std::cout << "wrote " << p << "\n";
    return 0;
}

int cmd_eval(const std::string& model, const std::string& at) {
    const NetworkIR net = load_json(model);
    const std::vector<double> x = parse_point(at);
    if (x.size() != net.input_dim())
        throw std::invalid_argument(
            "point has " + std::to_string(x.size()) + " coordinates, model expects " +
            std::to_string(net.input_dim()));
    const std::vector<double> y = net.forward(x);
    for (std::size_t i = 0; i < y.size(); ++i)
        std::cout << (i ? " " : "") << format_full(y[i]);
    std::cout << "\n";
    return 0;
}

struct VerifyArgs {
    std::string suite;
    std::string fn;
    long n = 0;
    long k = 0;
    long m = 0;
    long r = 0;
    long samples = 0;
    std::uint64_t seed = 42;
    std::size_t threads = thread_default();
    std::string csv;
};

int cmd_verify(const VerifyArgs& a) {
    std::vector<ReportRow> rows;
    const bool all = a.suite == "all";

    std::string fn_family;
    std::size_t fn_dim = 0;
    if (!a.fn.empty()) {
        std::tie(fn_family, fn_dim) = split_target_id(a.fn);
        make_target(a.fn, fn_dim == 0 ? 1 : 0); // validates the family name
    }

    if (all || a.suite == "lemma4") {
        Lemma4Params p;
        p.seed = a.seed + 1;
        if (a.n > 0) p.ns = {static_cast<std::size_t>(a.n)};
        if (a.k > 0) p.ks = {a.k};
        if (a.samples > 0) p.samples = static_cast<std::size_t>(a.samples);
        for (ReportRow& r : suite_lemma4(p)) rows.push_back(std::move(r));
    }
    if (all || a.suite == "theorem1") {
        Theorem1Params p;
        p.seed = a.seed + 2;
        if (!fn_family.empty()) p.families = {fn_family};
        if (fn_dim > 0) p.dims = {fn_dim};
        else if (a.n > 0) p.dims = {static_cast<std::size_t>(a.n)};
        if (a.k > 0) p.ks = {a.k};
        if (a.samples > 0) p.random_count = static_cast<std::size_t>(a.samples);
        for (ReportRow& r : suite_theorem1(p)) rows.push_back(std::move(r));
    }
    if (all || a.suite == "mult") {
        MultParams p;
        p.seed = a.seed + 3;
        p.threads = a.threads;
        if (a.r > 0) p.rs = {static_cast<std::size_t>(a.r)};
        if (a.m > 0) p.ms = {static_cast<std::size_t>(a.m)};
        if (a.samples > 0) p.samples = static_cast<std::size_t>(a.samples);
        for (ReportRow& r : suite_mult(p)) rows.push_back(std::move(r));
    }
    if (all || a.suite == "theorem2") {
        Theorem2Params p;
        p.seed = a.seed + 4;
        p.threads = a.threads;
        if (!fn_family.empty()) p.family = fn_family;
        if (a.n > 0) p.n = static_cast<std::size_t>(a.n);
        if (fn_dim > 0) {
            if (a.n > 0 && static_cast<std::size_t>(a.n) != fn_dim)
                throw std::invalid_argument("--fn dimension conflicts with --n");
            p.n = fn_dim;
        }
        if (p.n < 2) throw std::invalid_argument("theorem2 suite needs n >= 2");
        if (a.k > 0) p.ks = {a.k};
        if (a.m > 0) p.ms = {static_cast<std::size_t>(a.m)};
        if (a.samples > 0) p.random_count = static_cast<std::size_t>(a.samples);
        for (ReportRow& r : suite_theorem2(p)) rows.push_back(std::move(r));
    }

    std::cout << csv_header() << "\n";
    for (const ReportRow& r : rows) std::cout << to_csv(r) << "\n";
    if (!a.csv.empty()) write_csv(rows, a.csv);

    std::size_t failed = 0;
    for (const ReportRow& r : rows)
        if (r.mandatory && !r.pass) ++failed;
    std::cerr << rows.size() << " rows, " << failed << " mandatory failures\n";
    return failed == 0 ? 0 : 1;
}

struct RateArgs {
    std::size_t n = 2;
    std::string fn = "multiscale";
    std::vector<std::size_t> ms = {2, 4, 6, 8, 10};
    std::vector<long> ks = {2, 4, 8, 16};
    long couple_offset = 6;
    bool full = false;
    std::size_t per_axis = 51;
    std::size_t random = 2000;
    std::uint64_t seed = 42;
    std::size_t threads = thread_default();
    std::string csv;
};

int cmd_rate_study(const RateArgs& a) {
    const auto [family, fn_dim] = split_target_id(a.fn);
    const std::size_t n = fn_dim > 0 ? fn_dim : a.n;
    std::ostringstream body;
    body << "L,k,m,sup_error,per_axis_bound,conservative_bound\n";
    bool ok = true;
    if (n == 1) {
        const Rate1DResult res = rate_study_1d(family, a.ks, a.random, a.seed);
        for (const RatePoint& p : res.points)
            body << p.L << "," << p.k << "," << p.m << ","
                 << format_full(p.sup_error) << "," << format_full(p.per_axis_bound)
                 << "," << format_full(p.conservative_bound) << "\n";
        body << "# slope_log2err_per_log2k," << format_full(res.slope)
             << ",expected,-1\n";
        for (std::size_t i = 0; i < res.ratios.size(); ++i)
            body << "# halving_ratio," << format_full(res.ratios[i]) << "\n";
        ok = all_mandatory_pass(res.rows);
    } else {
        RateStudyParams p;
        p.n = n;
        p.family = family;
        p.ms = a.ms;
        p.couple_offset = a.couple_offset;
        p.half = !a.full;
        p.per_axis = a.per_axis;
        p.random_count = a.random;
        p.seed = a.seed;
        p.threads = a.threads;
        const RateStudyResult res = rate_study(p);
        for (const RatePoint& pt : res.points)
            body << pt.L << "," << pt.k << "," << pt.m << ","
                 << format_full(pt.sup_error) << ","
                 << format_full(pt.per_axis_bound) << ","
                 << format_full(pt.conservative_bound) << "\n";
        body << "# slope_log2err_per_L," << format_full(res.slope)
             << ",expected," << format_full(res.expected_slope) << ",pass,"
             << (res.slope_ok ? 1 : 0) << "\n";
        body << "# slope_per_axis_bound," << format_full(res.slope_bound) << "\n";
        ok = res.slope_ok && all_mandatory_pass(res.rows);
    }
    std::cout << body.str();
    if (!a.csv.empty()) {
        std::ofstream out(a.csv);
        if (!out) throw std::ios_base::failure("cannot open for writing: " + a.csv);
        out << body.str();
        if (!out) throw std::ios_base::failure("write failed: " + a.csv);
    }
    return ok ? 0 : 1;
}

int cmd_export(const std::string& model, const std::string& format,
               const std::string& out) {
    const NetworkIR net = load_json(model);
    if (format == "json") {
        save_json(net, out);
        std::cout << "wrote " << out << "\n";
    } else if (format == "dense-csv") {
        for (const std::string& p : save_dense_csv(net, out))
            std::cout << "wrote " << p << "\n";
    } else {
        throw std::invalid_argument("unknown format: " + format);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Locally connected ReLU networks that reproduce hat-basis "
        "interpolants, with bound verification and rate studies"};
    app.require_subcommand(1);

    BuildArgs build_args;
    CLI::App* build = app.add_subcommand(
        "build", "Construct a network for a registry function and write it as JSON");
    build->add_option("--fn", build_args.fn,
                      "Function id: family plus optional dimension suffix, "
                      "e.g. bump2, parabola1")
        ->required();
    build->add_option("--n", build_args.n, "Input dimension (if --fn has no suffix)");
    build->add_option("--k", build_args.k, "Lattice density: nodes at i/k")
        ->required();
    build->add_option("--m", build_args.m,
                      "Product block refinement (n >= 2 only)");
    build->add_flag("--half", build_args.half,
                    "Restrict to nonnegative lattice indices ([0,1]^n supports)");
    build->add_option("--out", build_args.out, "Output JSON path");
    build->add_option("--dense-csv", build_args.dense_csv,
                      "Also write dense per-layer CSV files with this prefix");

    std::string eval_model, eval_at;
    CLI::App* eval = app.add_subcommand("eval", "Evaluate a saved model at a point");
    eval->add_option("--model", eval_model, "Model JSON path")->required();
    eval->add_option("--at", eval_at, "Comma separated coordinates, e.g. 0.3,0.7")
        ->required();

    VerifyArgs verify_args;
    CLI::App* verify = app.add_subcommand(
        "verify", "Run a verification suite and emit a CSV report");
    verify
        ->add_option("--suite", verify_args.suite,
                     "One of lemma4, theorem1, mult, theorem2, all")
        ->required()
        ->check(CLI::IsMember({"lemma4", "theorem1", "mult", "theorem2", "all"}));
    verify->add_option("--fn", verify_args.fn, "Restrict to one function id");
    verify->add_option("--n", verify_args.n, "Restrict to one dimension");
    verify->add_option("--k", verify_args.k, "Restrict to one lattice density");
    verify->add_option("--m", verify_args.m, "Restrict to one refinement");
    verify->add_option("--r", verify_args.r, "Restrict to one product arity");
    verify->add_option("--samples", verify_args.samples, "Random sample count");
    verify->add_option("--seed", verify_args.seed, "RNG seed");
    verify->add_option("--threads", verify_args.threads,
                       "Worker threads (0 = hardware)");
    verify->add_option("--csv", verify_args.csv, "Also write the report here");

    RateArgs rate_args;
    CLI::App* rate = app.add_subcommand(
        "rate-study", "Measure error against depth under the mesh-depth coupling");
    rate->add_option("--n", rate_args.n, "Input dimension (1 = shallow net vs k)");
    rate->add_option("--fn", rate_args.fn, "Function id or family");
    rate->add_option("--ms", rate_args.ms, "Refinements to sweep (n >= 2)")
        ->delimiter(',');
    rate->add_option("--ks", rate_args.ks, "Lattice densities to sweep (n = 1)")
        ->delimiter(',');
    rate->add_option("--couple-offset", rate_args.couple_offset,
                     "Depth offset in k = 2^((L - offset) / (2 ceil(log2 n)))");
    rate->add_flag("--full", rate_args.full,
                   "Use the symmetric lattice instead of the half one");
    rate->add_option("--per-axis", rate_args.per_axis, "Evaluation grid per axis");
    rate->add_option("--random", rate_args.random, "Random evaluation points");
    rate->add_option("--seed", rate_args.seed, "RNG seed");
    rate->add_option("--threads", rate_args.threads,
                     "Worker threads (0 = hardware)");
    rate->add_option("--csv", rate_args.csv, "Also write the table here");

    std::string export_model, export_format = "json", export_out;
    CLI::App* exp = app.add_subcommand("export", "Convert a saved model");
    exp->add_option("--model", export_model, "Model JSON path")->required();
    exp->add_option("--format", export_format, "json or dense-csv")
        ->check(CLI::IsMember({"json", "dense-csv"}));
    exp->add_option("--out", export_out, "Output path (or prefix for dense-csv)")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*build) return cmd_build(build_args);
        if (*eval) return cmd_eval(eval_model, eval_at);
        if (*verify) return cmd_verify(verify_args);
        if (*rate) return cmd_rate_study(rate_args);
        if (*exp) return cmd_export(export_model, export_format, export_out);
    } catch (const ModelFormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
