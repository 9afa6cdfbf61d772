// certquad command line: integrate / bounds / verify / profile.
// stdout carries only the requested artifact; diagnostics go to stderr.
// Exit codes: 0 ok, 1 usage, 2 hypothesis violated, 3 tolerance not
// reached, 4 suite failures.

#include "certquad/bounds.hpp"
#include "certquad/errors.hpp"
#include "certquad/harness.hpp"
#include "certquad/integrator.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace certquad;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kHypothesis = 2;
constexpr int kTolerance = 3;
constexpr int kSuiteFail = 4;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (unsigned char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (ch < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    out += buf;
                } else {
                    out += static_cast<char>(ch);
                }
        }
    }
    return out;
}

const char* status_name(ConvexityStatus s) {
    switch (s) {
        case ConvexityStatus::VerifiedOnGrid: return "verified";
        case ConvexityStatus::Violated: return "violated";
        case ConvexityStatus::AssumedByUser: return "assumed";
    }
    return "?";
}

int write_artifact(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return kOk;
    }
    std::ofstream f(path);
    if (!f) {
        std::cerr << "certquad: cannot open " << path << "\n";
        return kUsage;
    }
    f << text;
    f.flush();
    if (!f) {
        std::cerr << "certquad: write failed: " << path << "\n";
        return kUsage;
    }
    return kOk;
}

int env_threads() {
    if (const char* env = std::getenv("CERTQUAD_THREADS")) {
        const int v = std::atoi(env);
        if (v < 1) {
            std::cerr << "certquad: ignoring CERTQUAD_THREADS=" << env << "\n";
        } else {
            return std::min(v, 512);
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

ReportFormat format_from_name(const std::string& name) {
    if (name == "json") return ReportFormat::Json;
    if (name == "csv") return ReportFormat::Csv;
    if (name == "text") return ReportFormat::Text;
    throw Error("unknown format: " + name);
}

// --x accepts "mid", "opt", or a literal.  The literal is an absolute
// coordinate for bounds/profile and a relative panel position in (0,1)
// for integrate (panels move, so only a relative choice is meaningful).
struct XSpec {
    XChoice choice = XChoice::Mid;
    double literal = 0.5;
};

XSpec parse_x(const std::string& s) {
    XSpec xs;
    if (s == "mid") return xs;
    if (s == "opt") {
        xs.choice = XChoice::Optimized;
        return xs;
    }
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw Error("--x expects mid, opt, or a number (got \"" + s + "\")");
    xs.choice = XChoice::Fixed;
    xs.literal = v;
    return xs;
}

// ---------------------------------------------------------------- integrate

struct IntegrateArgs {
    std::string expr;
    double a = 0, b = 1;
    int n = 1;
    double tol = 1e-8;
    std::string family = "convex-t21";
    double p = 2.0;
    std::string x = "mid";
    std::string format = "text";
    std::string output;
    int max_panels = 4096;
    bool assume = false;
    bool recheck = false;
};

int run_integrate(const IntegrateArgs& args) {
    const ExpressionAst ast = parse(args.expr);
    const BoundFamily family = family_from_name(args.family);
    const ReportFormat format = format_from_name(args.format);

    IntegratorOptions opts;
    opts.assume_hypotheses = args.assume;
    opts.recheck_per_panel = args.recheck;
    const XSpec xs = parse_x(args.x);
    opts.x_choice = xs.choice;
    if (xs.choice == XChoice::Fixed) {
        if (!(xs.literal > 0.0 && xs.literal < 1.0))
            throw Error("integrate --x literal is a relative panel position in (0,1)");
        opts.x_fixed = xs.literal;
    }

    const QuadratureResult qr = integrate_certified(ast, args.a, args.b, args.n, family,
                                                    args.p, args.tol, args.max_panels, opts);

    std::ostringstream out;
    if (format == ReportFormat::Json) {
        out << "{\n"
            << "  \"expr\": \"" << json_escape(args.expr) << "\",\n"
            << "  \"a\": " << fmt17(args.a) << ",\n"
            << "  \"b\": " << fmt17(args.b) << ",\n"
            << "  \"n\": " << qr.n << ",\n"
            << "  \"family\": \"" << family_name(qr.family) << "\",\n"
            << "  \"estimate\": " << fmt17(qr.estimate) << ",\n"
            << "  \"certified\": " << fmt17(qr.certified) << ",\n"
            << "  \"tolerance\": " << fmt17(args.tol) << ",\n"
            << "  \"tolerance_reached\": " << (qr.tolerance_reached ? "true" : "false") << ",\n"
            << "  \"panels\": " << qr.panels.size() << ",\n"
            << "  \"evaluations\": " << qr.evaluations << ",\n"
            << "  \"hypothesis\": \"" << status_name(qr.verdict.status) << "\"\n"
            << "}\n";
    } else if (format == ReportFormat::Csv) {
        out << "u,v,x,estimate,certified\n";
        for (const Panel& p : qr.panels)
            out << fmt17(p.u) << ',' << fmt17(p.v) << ',' << fmt17(p.x) << ','
                << fmt17(p.estimate) << ',' << fmt17(p.certified) << '\n';
    } else {
        char line[256];
        std::snprintf(line, sizeof line, "expr        %s\n", args.expr.c_str());
        out << line;
        std::snprintf(line, sizeof line, "interval    [%.17g, %.17g]   n %d   family %s\n",
                      args.a, args.b, qr.n, family_name(qr.family));
        out << line;
        std::snprintf(line, sizeof line, "estimate    %.17g\n", qr.estimate);
        out << line;
        std::snprintf(line, sizeof line, "certified   %.17g\n", qr.certified);
        out << line;
        std::snprintf(line, sizeof line, "tolerance   %.17g   %s\n", args.tol,
                      qr.tolerance_reached ? "reached" : "NOT reached");
        out << line;
        std::snprintf(line, sizeof line, "panels      %zu   evaluations %ld   hypothesis %s\n",
                      qr.panels.size(), qr.evaluations, status_name(qr.verdict.status));
        out << line;
    }

    const int rc = write_artifact(out.str(), args.output);
    if (rc != kOk) return rc;
    return qr.tolerance_reached ? kOk : kTolerance;
}

// ------------------------------------------------------------------- bounds

struct BoundsArgs {
    std::string expr;
    double a = 0, b = 1;
    int n = 1;
    std::string x = "mid";
    std::string family = "convex-t21";
    double p = 2.0;
    std::string format = "text";
    std::string output;
    bool compare = false;
    bool assume = false;
};

struct CompareRow {
    BoundFamily family;
    double x = 0, value = 0;
    double p = 0;
    std::string hypothesis;
    bool mean_form = false;
    bool usable = false;  // hypothesis not violated
    bool minimum = false;
};

BoundReport report_for(const ExpressionAst& ast, BoundFamily family, const BoundsArgs& args,
                       const XSpec& xs, const BoundOptions& bopts) {
    double x = args.a + (args.b - args.a) / 2;
    if (xs.choice == XChoice::Fixed) x = xs.literal;
    if (xs.choice == XChoice::Optimized && !is_mean_form(family)) {
        const OptimizedX ox = optimize_x(ast, args.a, args.b, args.n, family, args.p, bopts);
        x = ox.x;
    }
    return bound_report(ast, family, {args.a, args.b, x, args.n}, args.p, bopts);
}

std::string render_compare(const std::vector<CompareRow>& rows, ReportFormat format,
                           const std::string& min_name) {
    std::ostringstream out;
    if (format == ReportFormat::Json) {
        out << "{\n  \"rows\": [\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const CompareRow& r = rows[i];
            out << "    {\"family\":\"" << family_name(r.family) << "\",\"x\":" << fmt17(r.x)
                << ",\"p\":" << fmt17(r.p) << ",\"value\":"
                << (r.usable ? fmt17(r.value) : "null") << ",\"hypothesis\":\"" << r.hypothesis
                << "\",\"mean_form\":" << (r.mean_form ? "true" : "false")
                << ",\"minimum\":" << (r.minimum ? "true" : "false") << "}"
                << (i + 1 < rows.size() ? "," : "") << "\n";
        }
        out << "  ],\n  \"minimum\": \"" << min_name << "\"\n}\n";
    } else if (format == ReportFormat::Csv) {
        out << "family,x,p,value,hypothesis,mean_form,minimum\n";
        for (const CompareRow& r : rows) {
            out << family_name(r.family) << ',' << fmt17(r.x) << ',' << fmt17(r.p) << ',';
            if (r.usable) out << fmt17(r.value);
            out << ',' << r.hypothesis << ',' << (r.mean_form ? "true" : "false") << ','
                << (r.minimum ? "true" : "false") << '\n';
        }
    } else {
        char line[256];
        std::snprintf(line, sizeof line, "%-14s %12s %22s %10s %s\n", "family", "x", "value",
                      "hypothesis", "note");
        out << line;
        for (const CompareRow& r : rows) {
            char value[32] = "-";
            if (r.usable) std::snprintf(value, sizeof value, "%.12g", r.value);
            std::string note;
            if (r.mean_form) note += "mean-form";
            if (r.minimum) note += note.empty() ? "<- minimum" : "  <- minimum";
            std::snprintf(line, sizeof line, "%-14s %12.6g %22s %10s %s\n",
                          family_name(r.family), r.x, value, r.hypothesis.c_str(),
                          note.c_str());
            out << line;
        }
    }
    return out.str();
}

int run_bounds(const BoundsArgs& args) {
    const ExpressionAst ast = parse(args.expr);
    const ReportFormat format = format_from_name(args.format);
    const XSpec xs = parse_x(args.x);
    if (xs.choice == XChoice::Fixed && !(xs.literal >= args.a && xs.literal <= args.b))
        throw Error("--x outside [a, b]");
    BoundOptions bopts;
    bopts.assume_hypotheses = args.assume;

    if (!args.compare) {
        const BoundFamily family = family_from_name(args.family);
        const BoundReport rep = report_for(ast, family, args, xs, bopts);
        std::ostringstream out;
        if (format == ReportFormat::Json) {
            out << "{\"family\":\"" << family_name(rep.family) << "\",\"a\":" << fmt17(rep.params.a)
                << ",\"b\":" << fmt17(rep.params.b) << ",\"x\":" << fmt17(rep.params.x)
                << ",\"n\":" << rep.params.n << ",\"p\":" << fmt17(rep.p)
                << ",\"q\":" << fmt17(rep.q) << ",\"fa\":" << fmt17(rep.fa)
                << ",\"fb\":" << fmt17(rep.fb) << ",\"fmid\":" << fmt17(rep.fmid)
                << ",\"value\":" << fmt17(rep.value) << ",\"hypothesis\":\""
                << status_name(rep.verdict.status) << "\",\"mean_form\":"
                << (is_mean_form(rep.family) ? "true" : "false") << "}\n";
        } else if (format == ReportFormat::Csv) {
            out << "family,a,b,x,n,p,q,fa,fb,fmid,value,hypothesis,mean_form\n"
                << family_name(rep.family) << ',' << fmt17(rep.params.a) << ','
                << fmt17(rep.params.b) << ',' << fmt17(rep.params.x) << ',' << rep.params.n
                << ',' << fmt17(rep.p) << ',' << fmt17(rep.q) << ',' << fmt17(rep.fa) << ','
                << fmt17(rep.fb) << ',' << fmt17(rep.fmid) << ',' << fmt17(rep.value) << ','
                << status_name(rep.verdict.status) << ','
                << (is_mean_form(rep.family) ? "true" : "false") << '\n';
        } else {
            char line[256];
            std::snprintf(line, sizeof line,
                          "%s on [%.6g, %.6g], n %d, x %.6g%s\nvalue       %.17g\n"
                          "|f^(n)|(a) %.6g  |f^(n)|(b) %.6g  hypothesis %s%s\n",
                          family_name(rep.family), rep.params.a, rep.params.b, rep.params.n,
                          rep.params.x, is_mean_form(rep.family) ? "  (mean form)" : "",
                          rep.value, rep.fa, rep.fb, status_name(rep.verdict.status),
                          rep.verdict.status == ConvexityStatus::AssumedByUser ? " (unchecked)"
                                                                               : "");
            out << line;
        }
        return write_artifact(out.str(), args.output);
    }

    // --compare: every family that applies at this n.  The da-* baselines
    // bound a mean-normalised error, so they are listed but excluded from
    // the minimum, which only ranks like-for-like integral bounds.
    std::vector<BoundFamily> families = {BoundFamily::ConvexT21, BoundFamily::MidpointC11,
                                         BoundFamily::HolderT22, BoundFamily::ConcaveT23};
    if (args.n == 1) {
        families.push_back(BoundFamily::N1C12);
        families.push_back(BoundFamily::DaT11);
        families.push_back(BoundFamily::DaT12);
    }

    std::vector<CompareRow> rows;
    for (BoundFamily family : families) {
        CompareRow row;
        row.family = family;
        row.mean_form = is_mean_form(family);
        row.p = (family == BoundFamily::HolderT22 || family == BoundFamily::ConcaveT23 ||
                 family == BoundFamily::DaT12)
                    ? args.p
                    : 0.0;
        try {
            const BoundReport rep = report_for(ast, family, args, xs, bopts);
            row.x = rep.params.x;
            row.value = rep.value;
            row.hypothesis = status_name(rep.verdict.status);
            row.usable = true;
        } catch (const HypothesisViolation&) {
            row.x = args.a + (args.b - args.a) / 2;
            row.hypothesis = "violated";
        }
        rows.push_back(row);
    }

    std::string min_name = "none";
    const CompareRow* best = nullptr;
    for (const CompareRow& r : rows)
        if (r.usable && !r.mean_form && (best == nullptr || r.value < best->value)) best = &r;
    if (best != nullptr) {
        min_name = family_name(best->family);
        for (CompareRow& r : rows)
            if (&r == best) r.minimum = true;
    }

    return write_artifact(render_compare(rows, format, min_name), args.output);
}

// ------------------------------------------------------------------- verify

struct VerifyArgs {
    std::string suite;
    long trials = 1000;
    std::uint64_t seed = 42;
    std::string format = "text";
    std::string output;
    std::string records_path;
};

std::string summary_text(const SuiteSummary& s) {
    char line[256];
    std::snprintf(line, sizeof line,
                  "suite %-14s trials %-7ld passes %-7ld min margin %.6e at index %-6ld %s\n",
                  suite_name(s.suite), s.trials, s.passes, s.min_margin, s.argmin_index,
                  s.all_pass ? "all pass" : "FAILURES");
    return line;
}

std::string summary_json(const SuiteSummary& s) {
    std::ostringstream out;
    out << "{\"suite\":\"" << suite_name(s.suite) << "\",\"trials\":" << s.trials
        << ",\"passes\":" << s.passes << ",\"min_margin\":" << fmt17(s.min_margin)
        << ",\"argmin_index\":" << s.argmin_index << ",\"max_discrepancy\":"
        << fmt17(s.max_discrepancy) << ",\"all_pass\":" << (s.all_pass ? "true" : "false")
        << "}";
    return out.str();
}

int run_verify(const VerifyArgs& args) {
    std::vector<Suite> suites;
    if (args.suite == "all") {
        suites = all_suites();
    } else if (auto s = suite_from_name(args.suite)) {
        suites.push_back(*s);
    } else {
        throw Error("unknown suite: " + args.suite);
    }
    const ReportFormat format = format_from_name(args.format);
    const int threads = env_threads();

    bool all_pass = true;
    std::vector<TrialRecord> all_records;
    std::ostringstream out;
    std::vector<std::string> json_parts;
    for (Suite s : suites) {
        const SuiteRun run = run_suite(s, args.trials, args.seed, threads);
        all_pass = all_pass && run.summary.all_pass;
        if (format == ReportFormat::Text)
            out << summary_text(run.summary);
        else if (format == ReportFormat::Json)
            json_parts.push_back(summary_json(run.summary));
        if (format == ReportFormat::Csv || !args.records_path.empty())
            all_records.insert(all_records.end(), run.records.begin(), run.records.end());
    }
    if (format == ReportFormat::Json) {
        out << "[\n";
        for (std::size_t i = 0; i < json_parts.size(); ++i)
            out << "  " << json_parts[i] << (i + 1 < json_parts.size() ? "," : "") << "\n";
        out << "]\n";
    } else if (format == ReportFormat::Csv) {
        emit_report(all_records, ReportFormat::Csv, out);
    }
    if (!args.records_path.empty()) emit_report(all_records, ReportFormat::Csv, args.records_path);

    const int rc = write_artifact(out.str(), args.output);
    if (rc != kOk) return rc;
    return all_pass ? kOk : kSuiteFail;
}

// ------------------------------------------------------------------ profile

struct ProfileArgs {
    std::string expr;
    std::string draw;
    double a = 0, b = 1;
    int n = 1;
    int grid = 33;
    long trials = 100;
    std::uint64_t seed = 42;
    std::string family = "convex-t21";
    double p = 2.0;
    std::string format = "csv";
    std::string output;
};

FamilyKind kind_from_name(const std::string& name) {
    if (name == "poly-nonneg-nth") return FamilyKind::PolyNonnegNth;
    if (name == "exp-scaled") return FamilyKind::ExpScaled;
    if (name == "sqrt-concave-q") return FamilyKind::SqrtConcaveQ;
    if (name == "trig-window") return FamilyKind::TrigWindow;
    if (name == "poly-exact") return FamilyKind::PolyExact;
    throw Error("unknown draw family: " + name);
}

int run_profile(const ProfileArgs& args) {
    if (args.grid < 2) throw Error("--grid needs at least 2 points");
    const ReportFormat format = format_from_name(args.format);
    const BoundFamily family = family_from_name(args.family);

    std::vector<RatioRow> rows;
    if (!args.expr.empty()) {
        const ExpressionAst ast = parse(args.expr);
        std::vector<double> grid(args.grid);
        for (int i = 0; i < args.grid; ++i)
            grid[i] = args.a + (args.b - args.a) * (static_cast<double>(i) / (args.grid - 1));
        rows = ratio_profile(ast, args.a, args.b, args.n, grid, family, args.p);
    } else {
        std::vector<double> grid(args.grid);
        for (int i = 0; i < args.grid; ++i)
            grid[i] = static_cast<double>(i) / (args.grid - 1);
        rows = ratio_profile(kind_from_name(args.draw), args.n, grid, args.trials, args.seed,
                             family, args.p);
    }

    std::ostringstream out;
    if (format == ReportFormat::Json) {
        out << "[\n";
        for (std::size_t i = 0; i < rows.size(); ++i)
            out << "  {\"x\":" << fmt17(rows[i].x) << ",\"mean\":" << fmt17(rows[i].mean)
                << ",\"min\":" << fmt17(rows[i].min) << ",\"max\":" << fmt17(rows[i].max)
                << "}" << (i + 1 < rows.size() ? "," : "") << "\n";
        out << "]\n";
    } else if (format == ReportFormat::Csv) {
        out << "x,mean,min,max\n";
        for (const RatioRow& r : rows)
            out << fmt17(r.x) << ',' << fmt17(r.mean) << ',' << fmt17(r.min) << ','
                << fmt17(r.max) << '\n';
    } else {
        char line[160];
        std::snprintf(line, sizeof line, "%14s %12s %12s %12s\n", "x", "mean", "min", "max");
        out << line;
        for (const RatioRow& r : rows) {
            std::snprintf(line, sizeof line, "%14.6g %12.6g %12.6g %12.6g\n", r.x, r.mean,
                          r.min, r.max);
            out << line;
        }
    }
    return write_artifact(out.str(), args.output);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified-error quadrature from endpoint derivatives"};
    app.require_subcommand(1);

    IntegrateArgs ia;
    CLI::App* integ = app.add_subcommand("integrate", "integrate with a certified error bound");
    integ->add_option("--expr", ia.expr, "expression in x")->required();
    integ->add_option("--a", ia.a, "left endpoint")->required();
    integ->add_option("--b", ia.b, "right endpoint")->required();
    integ->add_option("--n", ia.n, "rule order (uses f..f^(n-1) at the endpoints)");
    integ->add_option("--tol", ia.tol, "certified error target");
    integ->add_option("--family", ia.family, "bound family (default convex-t21)");
    integ->add_option("--p", ia.p, "Holder exponent for holder-t22/concave-t23");
    integ->add_option("--x", ia.x, "rule point: mid, opt, or relative position in (0,1)");
    integ->add_option("--max-panels", ia.max_panels, "refinement cap");
    integ->add_option("--format", ia.format, "json, csv, or text");
    integ->add_option("--output", ia.output, "write the artifact to a file");
    integ->add_flag("--assume-hypotheses", ia.assume, "skip the convexity grid check");
    integ->add_flag("--recheck-panels", ia.recheck, "re-verify the hypothesis per panel");

    BoundsArgs ba;
    CLI::App* bounds = app.add_subcommand("bounds", "a-priori error bounds, no integration");
    bounds->add_option("--expr", ba.expr, "expression in x")->required();
    bounds->add_option("--a", ba.a, "left endpoint")->required();
    bounds->add_option("--b", ba.b, "right endpoint")->required();
    bounds->add_option("--n", ba.n, "derivative order of the hypothesis");
    bounds->add_option("--x", ba.x, "rule point: mid, opt, or a coordinate in [a,b]");
    bounds->add_option("--family", ba.family, "bound family (ignored with --compare)");
    bounds->add_option("--p", ba.p, "Holder exponent");
    bounds->add_option("--format", ba.format, "json, csv, or text");
    bounds->add_option("--output", ba.output, "write the artifact to a file");
    bounds->add_flag("--compare", ba.compare, "tabulate every applicable family");
    bounds->add_flag("--assume-hypotheses", ba.assume, "skip the convexity grid check");

    VerifyArgs va;
    CLI::App* verify = app.add_subcommand("verify", "run a randomized inequality suite");
    verify->add_option("--suite", va.suite, "suite name or 'all'")->required();
    verify->add_option("--trials", va.trials, "trial count (default 1000)");
    verify->add_option("--seed", va.seed, "base seed; trial i derives from (seed, i)");
    verify->add_option("--format", va.format, "text/json summaries or csv records");
    verify->add_option("--output", va.output, "write the artifact to a file");
    verify->add_option("--records", va.records_path, "also write full records CSV here");

    ProfileArgs pa;
    CLI::App* profile = app.add_subcommand("profile", "tightness ratio across rule points x");
    profile->add_option("--expr", pa.expr, "fixed expression in x");
    profile->add_option("--draw", pa.draw, "random family instead of --expr");
    profile->add_option("--a", pa.a, "left endpoint (with --expr)");
    profile->add_option("--b", pa.b, "right endpoint (with --expr)");
    profile->add_option("--n", pa.n, "derivative order");
    profile->add_option("--grid", pa.grid, "number of x grid points");
    profile->add_option("--trials", pa.trials, "draw count (with --draw)");
    profile->add_option("--seed", pa.seed, "seed for --draw");
    profile->add_option("--family", pa.family, "bound family");
    profile->add_option("--p", pa.p, "Holder exponent");
    profile->add_option("--format", pa.format, "json, csv, or text (default csv)");
    profile->add_option("--output", pa.output, "write the artifact to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (integ->parsed()) return run_integrate(ia);
        if (bounds->parsed()) return run_bounds(ba);
        if (verify->parsed()) return run_verify(va);
        if (profile->parsed()) {
            if (pa.expr.empty() == pa.draw.empty())
                throw certquad::Error("profile needs exactly one of --expr or --draw");
            return run_profile(pa);
        }
    } catch (const certquad::HypothesisViolation& e) {
        std::cerr << "certquad: " << e.what() << "\n";
        return kHypothesis;
    } catch (const std::exception& e) {
        std::cerr << "certquad: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
