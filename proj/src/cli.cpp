#include "unitsum/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "unitsum/asymptotics.hpp"
#include "unitsum/errors.hpp"
#include "unitsum/local_solubility.hpp"
#include "unitsum/quadfield.hpp"
#include "unitsum/sums_of_units.hpp"
#include "unitsum/trace_sums.hpp"
#include "unitsum/unit_equation.hpp"

namespace unitsum::cli {

namespace {

using json = nlohmann::ordered_json;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string command;
    std::optional<std::int64_t> d, X, n, p;
    std::optional<int> k, ell, T, t_max, gap_depth, depth;
    std::string mode = "exactly";
    std::string grid, tuple, coeffs;
    BoundConfig cfg;
    int precision_bits = 64;
    std::string format = "table";
};

struct Report {
    json data;
    std::string csv;
    std::string table;
    bool stable = true;
};

template <class T>
T need(const std::optional<T>& v, const char* flag, const std::string& command)
{
    if (!v)
        throw InputError(command + " requires " + flag);
    return *v;
}

std::string fmt12(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

// a double whose shortest representation has at most 12 significant digits
double round12(double x)
{
    return std::strtod(fmt12(x).c_str(), nullptr);
}

json big(const mpz_class& z)
{
    if (z.fits_slong_p())
        return json(z.get_si());
    return json(z.get_str());
}

json quad_json(const QuadInt& x)
{
    return json{{"a", big(x.a())}, {"b", big(x.b())}, {"text", x.to_string()}};
}

json tuple_json(const UnitTuple& t)
{
    json out = json::array();
    for (const QuadInt& x : t)
        out.push_back(x.to_string());
    return out;
}

std::string join_tuple(const UnitTuple& t)
{
    std::string s;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i)
            s += ';';
        s += t[i].to_string();
    }
    return s;
}

json cert_json(const StabilityCertificate& c)
{
    return json{{"final_bound", c.final_bound}, {"window_checked", c.window_checked}, {"stable", c.stable}};
}

std::string cert_line(const StabilityCertificate& c)
{
    std::ostringstream os;
    os << "certificate: bound " << c.final_bound << ", window " << c.window_checked << ", "
       << (c.stable ? "stable" : "UNSTABLE (bound cap reached)") << '\n';
    return os.str();
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep))
        if (!cur.empty())
            parts.push_back(cur);
    return parts;
}

std::int64_t parse_int(const std::string& s)
{
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        throw InputError("not an integer: '" + s + "'");
    }
    if (used != s.size())
        throw InputError("not an integer: '" + s + "'");
    return v;
}

/* "a,b;a,b" in half coordinates */
UnitTuple parse_elements(std::int64_t d, const std::string& s)
{
    UnitTuple out;
    for (const std::string& item : split(s, ';')) {
        auto ab = split(item, ',');
        if (ab.size() != 2)
            throw InputError("expected 'a,b' but got '" + item + "'");
        out.emplace_back(d, mpz_class(parse_int(ab[0])), mpz_class(parse_int(ab[1])));
    }
    if (out.empty())
        throw InputError("empty element list");
    return out;
}

Report cmd_field(const Options& o)
{
    const auto d = need(o.d, "--d", o.command);
    FieldDescriptor F = make_field(d);
    LogApprox lg = approx_log_eta(F, o.precision_bits);
    const int digits = o.precision_bits * 30103 / 100000;
    Report r;
    r.data = json{{"d", d},
                  {"discriminant", big(F.discriminant())},
                  {"eta", quad_json(F.eta())},
                  {"norm", F.eta_norm()},
                  {"two", to_string(F.two_splitting())},
                  {"log_eta", lg.to_decimal(digits)},
                  {"log_eta_error", round12(lg.error_bound())}};
    r.csv = "d,eta_a,eta_b,norm,two,log_eta\n" + std::to_string(d) + "," + F.eta().a().get_str() + "," +
            F.eta().b().get_str() + "," + std::to_string(F.eta_norm()) + "," + to_string(F.two_splitting()) +
            "," + lg.to_decimal(digits) + "\n";
    std::ostringstream t;
    t << "field Q(sqrt(" << d << ")), discriminant " << F.discriminant().get_str() << '\n'
      << "eta = " << F.eta().to_string() << "  (norm " << F.eta_norm() << ")\n"
      << "2 is " << to_string(F.two_splitting()) << '\n'
      << "log eta = " << lg.to_decimal(digits) << "  (+- " << fmt12(lg.error_bound()) << ")\n";
    r.table = t.str();
    return r;
}

Report cmd_unit_eq(const Options& o)
{
    FieldDescriptor F = make_field(need(o.d, "--d", o.command));
    const int T = need(o.T, "--T", o.command);
    UnitEquationSolutions s = enumerate_unit_equation_solutions(F, T, o.cfg);
    Report r;
    r.stable = s.cert.stable;
    json sols = json::array();
    std::string csv = "solution\n";
    std::ostringstream t;
    t << "S_" << T << " for d=" << F.d() << ": " << s.solutions.size() << " solutions\n";
    for (const auto& sol : s.solutions) {
        sols.push_back(tuple_json(sol));
        csv += join_tuple(sol) + "\n";
        t << "  " << join_tuple(sol) << '\n';
    }
    r.data = json{{"d", F.d()}, {"T", T}, {"count", s.solutions.size()}, {"solutions", sols},
                  {"certificate", cert_json(s.cert)}};
    r.csv = csv;
    r.table = t.str() + cert_line(s.cert);
    return r;
}

Report cmd_exceptional(const Options& o)
{
    FieldDescriptor F = make_field(need(o.d, "--d", o.command));
    const int t_max = o.t_max.value_or(2);
    ExceptionalSets ex = build_exceptional_sets(F, t_max, o.cfg);
    Report r;
    r.stable = ex.cert.stable;
    json sets = json::array();
    std::string csv = "t,units\n";
    std::ostringstream t;
    t << "exceptional field: " << (is_exceptional(F) ? "yes" : "no") << '\n';
    for (std::size_t i = 0; i < ex.sets.size(); ++i) {
        sets.push_back(json{{"t", i}, {"size", ex.sets[i].size()}, {"units", tuple_json(ex.sets[i])}});
        csv += std::to_string(i) + "," + join_tuple(ex.sets[i]) + "\n";
        t << "U_" << i << " (" << ex.sets[i].size() << "): " << join_tuple(ex.sets[i]) << '\n';
    }
    r.data = json{{"d", F.d()}, {"exceptional", is_exceptional(F)}, {"sets", sets},
                  {"certificate", cert_json(ex.cert)}};
    r.csv = csv;
    r.table = t.str() + cert_line(ex.cert);
    return r;
}

Report cmd_trace_count(const Options& o)
{
    FieldDescriptor F = make_field(need(o.d, "--d", o.command));
    TraceSumQuery q;
    q.field = &F;
    q.X = need(o.X, "--X", o.command);
    if (!o.coeffs.empty()) {
        q.coefficients = parse_elements(F.d(), o.coeffs);
        if (o.ell && static_cast<std::size_t>(*o.ell) != q.coefficients.size())
            throw InputError("--ell does not match the number of --coeffs");
    } else {
        const int ell = o.ell.value_or(1);
        if (ell < 1)
            throw InputError("--ell must be at least 1");
        q.coefficients.assign(static_cast<std::size_t>(ell), F.integer(1));
    }
    TraceSumCount c = count_trace_sums(q, o.cfg);
    const int ell = static_cast<int>(q.ell());
    Report r;
    r.stable = c.cert.stable;
    r.data = json{{"d", F.d()}, {"ell", ell}, {"coefficients", tuple_json(q.coefficients)}, {"X", q.X},
                  {"count", c.count}};
    std::ostringstream t;
    t << "T(" << q.X << ") = " << c.count << "  (d=" << F.d() << ", ell=" << ell << ")\n";
    std::string csv_head = "X,count", csv_row = std::to_string(q.X) + "," + std::to_string(c.count);
    if (q.X >= 2) {
        Prediction p = predict_trace_sums(F, ell, q.X, o.precision_bits);
        r.data["predicted"] = round12(p.value);
        r.data["error_bound"] = round12(p.error_bound);
        r.data["residual"] = round12(static_cast<double>(c.count) - p.value);
        csv_head += ",predicted,residual";
        csv_row += "," + fmt12(p.value) + "," + fmt12(static_cast<double>(c.count) - p.value);
        t << "(2 log X / log eta)^ell = " << fmt12(p.value) << ", residual "
          << fmt12(static_cast<double>(c.count) - p.value) << '\n';
    }
    if (o.gap_depth) {
        GapEstimate g = gap_constant_estimate(F, q.coefficients, *o.gap_depth);
        r.data["gap"] = json{{"depth", g.depth},
                             {"lower", g.lower.get_str()},
                             {"lower_value", round12(g.lower.get_d())},
                             {"exponents", g.exponents},
                             {"minimiser", quad_json(g.minimiser)}};
        t << "gap estimate at depth " << g.depth << ": >= " << fmt12(g.lower.get_d()) << '\n';
    }
    r.data["certificate"] = cert_json(c.cert);
    r.csv = csv_head + ",stable\n" + csv_row + "," + (c.cert.stable ? "true" : "false") + "\n";
    r.table = t.str() + cert_line(c.cert);
    return r;
}

Report cmd_values(const Options& o)
{
    FieldDescriptor F = make_field(need(o.d, "--d", o.command));
    const int k = need(o.k, "--k", o.command);
    const auto X = need(o.X, "--X", o.command);
    const Mode mode = parse_mode(o.mode);
    ValueSetResult v = value_set(F, k, X, mode, o.cfg);
    Report r;
    r.stable = v.cert.stable;
    r.data = json{{"d", F.d()}, {"k", k}, {"X", X}, {"mode", to_string(mode)}, {"count", v.values.size()},
                  {"values", v.values}, {"certificate", cert_json(v.cert)}};
    std::ostringstream t, csv;
    t << "sums of " << (mode == Mode::exactly ? "exactly " : "at most ") << k << " units, |n| <= " << X << ": "
      << v.values.size() << " values\n";
    for (std::size_t i = 0; i < v.values.size(); ++i) {
        t << (i ? " " : "  ") << v.values[i];
        csv << v.values[i] << '\n';
    }
    if (!v.values.empty())
        t << '\n';
    r.csv = csv.str();
    r.table = t.str() + cert_line(v.cert);
    return r;
}

Report cmd_count(const Options& o)
{
    FieldDescriptor F = make_field(need(o.d, "--d", o.command));
    const int k = need(o.k, "--k", o.command);
    const auto X = need(o.X, "--X", o.command);
    const Mode mode = parse_mode(o.mode);
    CountResult c = count_values(F, k, X, mode, o.cfg);
    Report r;
    r.stable = c.cert.stable;
    r.data = json{{"d", F.d()}, {"k", k}, {"X", X}, {"mode", to_string(mode)}, {"count", c.count},
                  {"certificate", cert_json(c.cert)}};
    r.csv = "X,count,stable\n" + std::to_string(X) + "," + std::to_string(c.count) + "," +
            (c.cert.stable ? "true" : "false") + "\n";
    std::ostringstream t;
    t << "count = " << c.count << "  (d=" << F.d() << ", k=" << k << ", X=" << X << ", " << to_string(mode)
      << ")\n";
    r.table = t.str() + cert_line(c.cert);
    return r;
}

Report cmd_reps(const Options& o)
{
    FieldDescriptor F = make_field(need(o.d, "--d", o.command));
    const auto n = need(o.n, "--n", o.command);
    const int k = need(o.k, "--k", o.command);
    Representations reps = enumerate_representations(F, n, k, o.cfg);
    Report r;
    r.stable = reps.cert.stable;
    json classes = json::array();
    std::string csv = "n,shape,coords\n";
    std::ostringstream t;
    t << reps.classes.size() << " classes for n=" << n << " with at most " << k << " units\n";
    for (const auto& c : reps.classes) {
        classes.push_back(json{{"n", c.value}, {"length", c.coords.size()}, {"shape", to_string(c.shape)},
                               {"coords", tuple_json(c.coords)}});
        csv += std::to_string(c.value) + "," + to_string(c.shape) + "," + join_tuple(c.coords) + "\n";
        t << "  [" << to_string(c.shape) << "] " << join_tuple(c.coords) << '\n';
    }
    r.data = json{{"d", F.d()}, {"n", n}, {"k", k}, {"classes", classes}, {"certificate", cert_json(reps.cert)}};
    r.csv = csv;
    r.table = t.str() + cert_line(reps.cert);
    return r;
}

Report cmd_reduce(const Options& o)
{
    FieldDescriptor F = make_field(need(o.d, "--d", o.command));
    if (o.tuple.empty())
        throw InputError("reduce requires --tuple");
    UnitTuple t = parse_elements(F.d(), o.tuple);
    TraceFormReduction red = reduce_to_trace_form(F, t);
    Report r;
    r.data = json{{"d", F.d()},       {"input", tuple_json(t)}, {"n", red.value},
                  {"ell", red.v.size()}, {"s", red.xi.size()},  {"v", tuple_json(red.v)},
                  {"xi", tuple_json(red.xi)}};
    r.csv = "n,ell,s,v,xi\n" + std::to_string(red.value) + "," + std::to_string(red.v.size()) + "," +
            std::to_string(red.xi.size()) + "," + join_tuple(red.v) + "," + join_tuple(red.xi) + "\n";
    std::ostringstream os;
    os << "n = " << red.value << " = sum of traces of (" << join_tuple(red.v) << ") + sum of ("
       << join_tuple(red.xi) << ")\n"
       << "ell = " << red.v.size() << ", s = " << red.xi.size() << '\n';
    r.table = os.str();
    return r;
}

Report cmd_non_unique(const Options& o)
{
    FieldDescriptor F = make_field(need(o.d, "--d", o.command));
    const int k = need(o.k, "--k", o.command);
    const auto X = need(o.X, "--X", o.command);
    CountResult c = count_non_unique(F, k, X, o.cfg);
    Report r;
    r.stable = c.cert.stable;
    r.data = json{{"d", F.d()}, {"k", k}, {"X", X}, {"non_unique", c.count}, {"certificate", cert_json(c.cert)}};
    r.csv = "X,non_unique,stable\n" + std::to_string(X) + "," + std::to_string(c.count) + "," +
            (c.cert.stable ? "true" : "false") + "\n";
    r.table = "values with several representation classes: " + std::to_string(c.count) + "\n" + cert_line(c.cert);
    return r;
}

Report cmd_predict(const Options& o)
{
    FieldDescriptor F = make_field(need(o.d, "--d", o.command));
    const int k = need(o.k, "--k", o.command);
    const auto X = need(o.X, "--X", o.command);
    const Mode mode = parse_mode(o.mode);
    AsymptoticSpec spec = asymptotic_spec(k, mode);
    Prediction p = predict_count(F, k, X, mode, o.precision_bits);
    Report r;
    r.data = json{{"d", F.d()},
                  {"k", k},
                  {"rho", spec.rho},
                  {"mode", to_string(mode)},
                  {"X", X},
                  {"leading_constant", spec.leading_constant.get_str()},
                  {"predicted", round12(p.value)},
                  {"error_bound", round12(p.error_bound)}};
    r.csv = "X,predicted,error_bound\n" + std::to_string(X) + "," + fmt12(p.value) + "," + fmt12(p.error_bound) +
            "\n";
    std::ostringstream t;
    t << "c_k (2 log X / log eta)^rho = " << spec.leading_constant.get_str() << " * (...)^" << spec.rho << " = "
      << fmt12(p.value) << "  (+- " << fmt12(p.error_bound) << ")\n";
    r.table = t.str();
    return r;
}

Report cmd_compare(const Options& o)
{
    FieldDescriptor F = make_field(need(o.d, "--d", o.command));
    const int k = need(o.k, "--k", o.command);
    const Mode mode = parse_mode(o.mode);
    std::vector<std::int64_t> grid;
    for (const std::string& s : split(o.grid, ','))
        grid.push_back(parse_int(s));
    auto rows = comparison_report(F, k, grid, mode, o.cfg, o.precision_bits);
    Report r;
    json jrows = json::array();
    std::string csv = "X,exact,predicted,ratio,stable\n";
    std::ostringstream t;
    char line[160];
    std::snprintf(line, sizeof line, "%14s %8s %16s %14s %14s %s\n", "X", "exact", "predicted", "ratio",
                  "residual", "stable");
    t << line;
    for (const auto& row : rows) {
        r.stable = r.stable && row.certificate_stable;
        jrows.push_back(json{{"X", row.X},
                             {"exact", row.exact},
                             {"predicted", round12(row.predicted)},
                             {"ratio", round12(row.ratio)},
                             {"residual", round12(row.residual)},
                             {"stable", row.certificate_stable}});
        csv += std::to_string(row.X) + "," + std::to_string(row.exact) + "," + fmt12(row.predicted) + "," +
               fmt12(row.ratio) + "," + (row.certificate_stable ? "true" : "false") + "\n";
        std::snprintf(line, sizeof line, "%14lld %8lld %16s %14s %14s %s\n", static_cast<long long>(row.X),
                      static_cast<long long>(row.exact), fmt12(row.predicted).c_str(), fmt12(row.ratio).c_str(),
                      fmt12(row.residual).c_str(), row.certificate_stable ? "yes" : "no");
        t << line;
    }
    r.data = json{{"d", F.d()}, {"k", k}, {"mode", to_string(mode)}, {"rows", jrows}};
    r.csv = csv;
    r.table = t.str();
    return r;
}

json witness_json(const LocalDecision& dec)
{
    if (!dec.witness)
        return nullptr;
    json w = json::array();
    for (const auto& u : *dec.witness)
        w.push_back(u.to_string());
    return w;
}

Report cmd_local(const Options& o)
{
    FieldDescriptor F = make_field(need(o.d, "--d", o.command));
    const int k = need(o.k, "--k", o.command);
    const auto n = need(o.n, "--n", o.command);
    const std::int64_t p = o.p.value_or(2);
    LocalDecision dec = local_decision(F, k, n, p);
    Report r;
    r.data = json{{"d", F.d()}, {"k", k}, {"n", n}, {"p", p}, {"soluble", dec.soluble},
                  {"reason", to_string(dec.reason)}, {"witness", witness_json(dec)}};
    if (!o.p)
        r.data["everywhere"] = dec.soluble;
    r.csv = "p,soluble,reason\n" + std::to_string(p) + "," + (dec.soluble ? "true" : "false") + "," +
            to_string(dec.reason) + "\n";
    std::ostringstream t;
    if (!dec.soluble) {
        t << "insoluble at p=2 (parity, 2 not inert)\n";
    } else if (!o.p) {
        t << "soluble at every place\n";
    } else {
        t << "soluble at p=" << p << " (" << to_string(dec.reason) << ")\n";
        if (dec.witness) {
            t << "witness:";
            for (const auto& u : *dec.witness)
                t << ' ' << u.to_string();
            t << '\n';
        }
    }
    r.table = t.str();
    return r;
}

Report cmd_local_verify(const Options& o)
{
    FieldDescriptor F = make_field(need(o.d, "--d", o.command));
    const int k = need(o.k, "--k", o.command);
    const auto n = need(o.n, "--n", o.command);
    const auto p = need(o.p, "--p", o.command);
    const int depth = o.depth.value_or(default_residue_depth(p));
    LocalDecision dec = local_decision(F, k, n, p);
    ResidueSearch s = verify_by_residue_search(F, k, n, p, depth);
    Report r;
    json w = json::array();
    for (const auto& [x, y] : s.witness)
        w.push_back(json::array({x, y}));
    r.data = json{{"d", F.d()},         {"k", k},
                  {"n", n},             {"p", p},
                  {"depth", depth},     {"modulus", s.modulus},
                  {"decision", dec.soluble}, {"found", s.found},
                  {"consistent", s.consistent}, {"reachable", s.reachable},
                  {"witness", w}};
    r.csv = "p,depth,decision,found,consistent\n" + std::to_string(p) + "," + std::to_string(depth) + "," +
            (dec.soluble ? "true" : "false") + "," + (s.found ? "true" : "false") + "," +
            (s.consistent ? "true" : "false") + "\n";
    std::ostringstream t;
    t << "mod " << p << "^" << depth << ": ";
    if (s.found) {
        t << "solution in units (x + y*omega):";
        for (const auto& [x, y] : s.witness)
            t << " (" << x << "," << y << ")";
    } else {
        t << "no solution in units among " << s.modulus * s.modulus << " residues";
    }
    t << '\n' << (s.consistent ? "consistent" : "INCONSISTENT") << " with the local decision ("
      << (dec.soluble ? "soluble" : "insoluble") << ")\n";
    r.table = t.str();
    return r;
}

Report dispatch(const Options& o)
{
    const std::string& c = o.command;
    if (c == "field") return cmd_field(o);
    if (c == "unit-eq") return cmd_unit_eq(o);
    if (c == "exceptional") return cmd_exceptional(o);
    if (c == "trace-count") return cmd_trace_count(o);
    if (c == "values") return cmd_values(o);
    if (c == "count") return cmd_count(o);
    if (c == "reps") return cmd_reps(o);
    if (c == "reduce") return cmd_reduce(o);
    if (c == "non-unique") return cmd_non_unique(o);
    if (c == "predict") return cmd_predict(o);
    if (c == "compare") return cmd_compare(o);
    if (c == "local") return cmd_local(o);
    if (c == "local-verify") return cmd_local_verify(o);
    throw InputError("unknown command '" + c + "'");
}

template <class T>
void optional_flag(CLI::App& app, const char* name, std::optional<T>& target, const char* help)
{
    app.add_option_function<T>(name, [&target](const T& v) { target = v; }, help);
}

} // namespace

CommandResult run_command(const std::vector<std::string>& args)
{
    Options o;
    CLI::App app{"Rational integers as sums of units in real quadratic fields", "unitsum"};
    app.add_option("command", o.command,
                   "field | unit-eq | exceptional | trace-count | values | count | reps | reduce | "
                   "non-unique | predict | compare | local | local-verify")
        ->required();
    optional_flag(app, "--d", o.d, "squarefree d >= 2 of Q(sqrt(d))");
    optional_flag(app, "--k", o.k, "number of units");
    optional_flag(app, "--X", o.X, "height bound |n| <= X");
    optional_flag(app, "--n", o.n, "target integer");
    optional_flag(app, "--p", o.p, "prime");
    optional_flag(app, "--ell", o.ell, "number of trace terms");
    optional_flag(app, "--T", o.T, "length in the unit equation");
    optional_flag(app, "--t-max", o.t_max, "largest t for exceptional sets (default 2)");
    optional_flag(app, "--gap-depth", o.gap_depth, "depth of the gap-constant estimate");
    optional_flag(app, "--depth", o.depth, "residue ring depth (default 3 for p=2, else 2)");
    app.add_option("--mode", o.mode, "exactly | at_most")->capture_default_str();
    app.add_option("--grid", o.grid, "comma-separated X values");
    app.add_option("--tuple", o.tuple, "units as 'a,b;a,b' in (a+b*sqrt(d))/2 coordinates");
    app.add_option("--coeffs", o.coeffs, "trace coefficients as 'a,b;a,b'");
    app.add_option("--bound", o.cfg.initial_exponent_bound, "initial exponent bound")->capture_default_str();
    app.add_option("--stability-window", o.cfg.stability_window, "stability window")->capture_default_str();
    app.add_option("--bound-cap", o.cfg.max_exponent_bound, "exponent bound cap")->capture_default_str();
    app.add_option("--precision-bits", o.precision_bits, "bits for log eta")->capture_default_str();
    app.add_option("--threads", o.cfg.threads, "worker threads")->capture_default_str();
    app.add_option("--format", o.format, "json | csv | table")
        ->check(CLI::IsMember({"json", "csv", "table"}))
        ->capture_default_str();

    CommandResult res;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        res.out = app.help();
        return res;
    } catch (const CLI::ParseError& e) {
        res.exit_code = 1;
        res.err = std::string("error: ") + e.what() + "\n";
        return res;
    }

    try {
        Report r = dispatch(o);
        if (o.format == "json")
            res.out = r.data.dump(2) + "\n";
        else if (o.format == "csv")
            res.out = r.csv;
        else
            res.out = r.table;
        if (!r.stable) {
            res.exit_code = 2;
            res.err = "warning: stability certificate not reached below the bound cap\n";
        }
    } catch (const Error& e) {
        res.exit_code = 1;
        res.err = std::string("error: ") + e.what() + "\n";
    } catch (const InputError& e) {
        res.exit_code = 1;
        res.err = std::string("error: ") + e.what() + "\n";
    } catch (const std::invalid_argument& e) {
        res.exit_code = 1;
        res.err = std::string("error: invalid argument: ") + e.what() + "\n";
    }
    return res;
}

} // namespace unitsum::cli
