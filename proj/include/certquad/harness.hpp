#ifndef CERTQUAD_HARNESS_HPP
#define CERTQUAD_HARNESS_HPP

#include "certquad/bounds.hpp"
#include "certquad/expr.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace certquad {

enum class FamilyKind {
    PolyNonnegNth,  // f^(n) = nonneg convex quadratic, exact rational coefficients
    ExpScaled,      // f = alpha*exp(beta*x) + poly(deg < n)
    SqrtConcaveQ,   // f^(n) = (alpha*x+beta)^e with dyadic e <= 1/q, strictly positive
    TrigWindow,     // f = alpha*sin(omega*x+phi) + poly(deg < n); no convexity hypothesis
    PolyExact,      // unconstrained rational polynomial (identity/exactness suites)
};

// One generated trial function together with the hypothesis it provably
// satisfies by construction.
struct TrialFunction {
    std::string source;       // reparsable description, exact to the bit
    ExpressionAst ast;
    double a = 0, b = 1;
    int n = 1;
    double p = 0, q = 0;      // Holder pair when the suite uses one
};

enum class Suite {
    LemmaIdentity,
    Thm21,
    Cor11,
    Cor12,
    Thm22,
    Thm23,
    Thm11,
    Thm12,
    Hh,
    Reductions,
    Tightness,
};

const char* suite_name(Suite s);
std::optional<Suite> suite_from_name(const std::string& name);
std::vector<Suite> all_suites();

struct TrialRecord {
    std::string suite;
    std::string fn;
    double a = 0, b = 0, x = 0;
    int n = 0;
    double p = 0, q = 0;  // 0 when the suite has no Holder pair
    double lhs = 0, rhs = 0;
    double margin = 0;    // rhs - lhs
    bool pass = false;    // margin >= -1e-9 * (1 + |lhs|)
    std::uint64_t seed = 0;
    long index = 0;

    bool operator==(const TrialRecord&) const = default;
};

struct SuiteSummary {
    Suite suite = Suite::Thm21;
    long trials = 0;
    long passes = 0;
    double min_margin = 0;
    long argmin_index = -1;
    double max_discrepancy = 0;  // Reductions/Tightness: worst relative gap
    bool all_pass = false;
};

struct SuiteRun {
    std::vector<TrialRecord> records;
    SuiteSummary summary;
};

// Deterministic given (suite, seed); trial i depends only on seed and i,
// so results are identical under any parallel schedule.  Failures are
// data, not exceptions.  threads > 1 splits the index range across worker
// threads; records keep their index order either way.
SuiteRun run_suite(Suite suite, long trials, std::uint64_t seed, int threads = 1);

// Runs one trial of a suite; used to reproduce a failure from (seed, index).
TrialRecord run_trial(Suite suite, std::uint64_t seed, long index);

enum class ReportFormat { Json, Csv, Text };

// CSV columns: suite,fn,a,b,x,n,p,q,lhs,rhs,margin,pass,seed,index.
// JSON is an array of objects with the same keys.  Floats carry 17
// significant digits so records round-trip exactly.
void emit_report(const std::vector<TrialRecord>& records, ReportFormat format,
                 std::ostream& out);
void emit_report(const std::vector<TrialRecord>& records, ReportFormat format,
                 const std::string& path);

std::vector<TrialRecord> parse_records_json(const std::string& json_text);
std::vector<TrialRecord> parse_records_csv(const std::string& csv_text);

struct RatioRow {
    double x = 0;
    double mean = 0, min = 0, max = 0;  // lhs/rhs tightness ratios
};

// Per-x tightness of the convex bound: ratio = |int f - Q_n(x)| / bound(x).
// Either a fixed expression with absolute grid points, or random family
// draws, where the grid holds relative positions in [0,1] mapped into each
// drawn interval.
std::vector<RatioRow> ratio_profile(const ExpressionAst& f, double a, double b, int n,
                                    const std::vector<double>& x_grid,
                                    BoundFamily family = BoundFamily::ConvexT21,
                                    double hp = 2.0);
std::vector<RatioRow> ratio_profile(FamilyKind family_kind, int n,
                                    const std::vector<double>& x_grid, long trials,
                                    std::uint64_t seed,
                                    BoundFamily family = BoundFamily::ConvexT21,
                                    double hp = 2.0);

// Random generators, exposed for the generator-validity tests.
class TrialRng;
TrialFunction draw_function(FamilyKind kind, TrialRng& rng, int n, double q = 2.0);

// Deterministic per-trial RNG stream.
class TrialRng {
public:
    TrialRng(std::uint64_t seed, long index);
    double uniform(double lo, double hi);
    long uniform_int(long lo, long hi);  // inclusive
    std::uint64_t next();

private:
    std::uint64_t state_;
};

}  // namespace certquad

#endif
