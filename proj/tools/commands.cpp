#include "commands.hpp"

#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include <umfb/bench.hpp>
#include <umfb/chain_rule.hpp>
#include <umfb/errors.hpp>
#include <umfb/faa_di_bruno.hpp>
#include <umfb/multi_index.hpp>
#include <umfb/special.hpp>

namespace umfb::cli
{

namespace
{

std::vector<std::string> split(const std::string &text, char sep)
{
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(text);
    while (std::getline(in, field, sep)) {
        fields.push_back(field);
    }
    if (!text.empty() && text.back() == sep) {
        fields.emplace_back();
    }
    return fields;
}

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot read " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// "1,0=2;0,1=1;1,1=5/3". Dimension and order come from the entries.
MomentTable parse_inline_table(const std::string &text)
{
    std::vector<std::pair<MultiIndex, Rational>> entries;
    for (const auto &entry : split(text, ';')) {
        const auto eq = entry.find('=');
        if (eq == std::string::npos) {
            throw ParseError("table entry '" + entry + "' is not index=value");
        }
        entries.emplace_back(MultiIndex::parse(entry.substr(0, eq)), parse_rational(entry.substr(eq + 1)));
    }
    if (entries.empty()) {
        throw ParseError("empty table");
    }
    const auto n = entries.front().first.size();
    std::uint64_t order = 0;
    for (const auto &[i, v] : entries) {
        if (i.size() != n) {
            throw ParseError("table entries have different lengths");
        }
        order = std::max(order, i.order());
    }
    MomentTable table(static_cast<std::uint32_t>(n), order);
    for (auto &[i, v] : entries) {
        table.set(i, std::move(v));
    }
    return table;
}

struct TableSource {
    std::string file;
    std::string inline_values;

    void add_to(CLI::App *cmd, const std::string &prefix, const std::string &what)
    {
        auto *f = cmd->add_option("--" + prefix + "table", file, what + " as a JSON moment table file");
        auto *v = cmd->add_option("--" + prefix + "values", inline_values, what + " inline, e.g. \"1,0=2;0,1=1\"");
        f->excludes(v);
    }

    MomentTable load(const std::string &what) const
    {
        if (!file.empty()) {
            return MomentTable::from_json(read_file(file));
        }
        if (!inline_values.empty()) {
            return parse_inline_table(inline_values);
        }
        throw ParseError(what + " is required");
    }
};

struct ComputeArgs {
    std::string index;
    std::uint32_t n = 1;
    std::optional<std::uint32_t> m;
    std::string mode = "general";
    std::string format = "text";
    std::string output;
    unsigned threads = 0;
};

struct PartitionArgs {
    std::string index;
    bool count_only = false;
};

struct VerifyArgs {
    std::uint64_t max_order = 4;
    std::uint32_t max_n = 3;
    std::uint32_t max_m = 3;
    bool inject_fault = false;
};

struct BenchArgs {
    std::string rows;
    std::string csv;
    unsigned threads = 0;
    bool no_oracle = false;
};

struct ConvertArgs {
    TableSource table;
    std::string index;
};

struct PoissonArgs {
    TableSource alpha;
    TableSource mu;
    std::string index;
};

struct HermiteArgs {
    std::string sigma;
    std::string x;
    std::string index;
    bool scaled = false;
    bool use_float = false;
    std::string route = "appell";
};

void write_output(const std::string &text, const std::string &path, std::ostream &out)
{
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw ParseError("cannot write " + path);
    }
    file << text;
}

int cmd_compute(const ComputeArgs &a, const CLI::App &cmd, std::ostream &out)
{
    const auto index = MultiIndex::parse(a.index);
    if (a.m && *a.m != index.size()) {
        throw DimensionMismatch("-m " + std::to_string(*a.m) + " does not match the index length "
                                + std::to_string(index.size()));
    }
    CompositionSpec spec{index, a.n};
    const ExpansionOptions options{a.threads, 0};
    FormulaPoly result;
    if (a.mode == "general") {
        result = umfb::umfb(spec, options);
    } else if (a.mode == "shared-inner") {
        spec.inner_mode = InnerMode::Shared;
        result = umfb::umfb(spec, options);
    } else if (a.mode == "bell") {
        result = generalized_bell(index, a.n, InnerMode::Distinct, options);
    } else {
        if (cmd.count("-n") > 0 && a.n != 1) {
            throw std::invalid_argument("--mode uni-outer takes a univariate outer function (n = 1)");
        }
        spec.n = 1;
        result = umfb::umfb(spec, options);
    }
    const Format format = a.format == "latex" ? Format::Latex : a.format == "json" ? Format::Json : Format::Text;
    write_output(render(result, format) + "\n", a.output, out);
    return Ok;
}

int cmd_partitions(const PartitionArgs &a, std::ostream &out)
{
    const auto index = MultiIndex::parse(a.index);
    if (a.count_only) {
        out << to_string(count_partitions(index)) << '\n';
        return Ok;
    }
    for_each_partition(index, [&](const MultiIndexPartition &p) { out << p.to_matrix_string() << '\n'; });
    return Ok;
}

const char *mode_name(InnerMode mode)
{
    return mode == InnerMode::Shared ? "shared-inner" : "general";
}

int cmd_verify(const VerifyArgs &a, std::ostream &out)
{
    std::function<FormulaPoly(FormulaPoly)> tamper;
    if (a.inject_fault) {
        // Doubles the leading term of every nonconstant result.
        tamper = [](FormulaPoly p) {
            if (p.is_zero() || p.terms().front().monomial.is_unit()) {
                return p;
            }
            return p + FormulaPoly::from_terms(p.dims(), {p.terms().front()});
        };
    }
    const auto report = verify_sweep({a.max_order, a.max_n, a.max_m}, tamper);
    if (report.ok) {
        out << "verify: " << report.cases << " cases, umfb and chain rule agree\n";
        return Ok;
    }
    const auto &spec = *report.failing_spec;
    out << "verify: mismatch at i=(" << spec.index.to_string() << ") n=" << spec.n << " mode="
        << mode_name(spec.inner_mode) << ": " << report.difference.describe() << '\n';
    return Mismatch;
}

int cmd_bench(const BenchArgs &a, std::ostream &out, std::ostream &err)
{
    const auto rows = a.rows.empty() ? builtin_bench_rows() : parse_bench_rows(read_file(a.rows));
    std::ostringstream csv;
    csv << bench_csv_header() << '\n';
    BenchOptions options;
    options.threads = a.threads;
    options.run_oracle = !a.no_oracle;
    int status = Ok;
    for (const auto &row : rows) {
        const auto label = row.index.to_string() + ";" + std::to_string(row.n);
        BenchRecord record;
        try {
            record = run_bench_row(row, options);
        } catch (const ResourceCapExceeded &e) {
            err << "warning: skipping row " << label << ": " << e.what() << '\n';
            continue;
        }
        if (!record.consistent()) {
            err << "error: row " << label << ": umfb has " << record.term_count << " terms, chain rule has "
                << record.oracle_term_count << '\n';
            status = Mismatch;
        }
        if (row.expected_terms && *row.expected_terms != record.term_count) {
            err << "note: row " << label << ": " << record.term_count << " terms, published table lists "
                << *row.expected_terms << '\n';
        }
        csv << bench_csv_line(record) << '\n';
    }
    write_output(csv.str(), a.csv, out);
    return status;
}

int cmd_convert(const ConvertArgs &a, bool to_cumulants, std::ostream &out)
{
    const auto table = a.table.load("an input table (--table or --values)");
    if (a.index.empty()) {
        out << (to_cumulants ? cumulant_table(table) : moment_table(table)).to_json() << '\n';
        return Ok;
    }
    const auto index = MultiIndex::parse(a.index);
    const auto value = to_cumulants ? moments_to_cumulants(table, index) : cumulants_to_moments(table, index);
    out << to_string(value) << '\n';
    return Ok;
}

int cmd_poisson(const PoissonArgs &a, std::ostream &out)
{
    const auto alpha = a.alpha.load("the parameter moments (--alpha-table or --alpha-values)");
    const auto mu = a.mu.load("the summand moments (--table or --values)");
    out << to_string(compound_poisson_moments(alpha, mu, MultiIndex::parse(a.index))) << '\n';
    return Ok;
}

template <typename T>
T parse_number(const std::string &text)
{
    if constexpr (std::is_floating_point_v<T>) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(text, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used != text.size() || text.empty()) {
            throw ParseError("not a number: '" + text + "'");
        }
        return v;
    } else {
        return parse_rational(text);
    }
}

template <typename T>
SymmetricMatrix<T> parse_matrix(const std::string &text)
{
    const auto rows = split(text, ';');
    std::vector<T> entries;
    for (const auto &row : rows) {
        const auto fields = split(row, ',');
        if (fields.size() != rows.size()) {
            throw ParseError("--sigma must be a square matrix, rows separated by ';'");
        }
        for (const auto &f : fields) {
            entries.push_back(parse_number<T>(f));
        }
    }
    return SymmetricMatrix<T>(rows.size(), std::move(entries));
}

template <typename T>
std::string format_number(const T &v)
{
    if constexpr (std::is_floating_point_v<T>) {
        std::ostringstream s;
        s << std::setprecision(17) << v;
        return s.str();
    } else {
        return to_string(v);
    }
}

template <typename T>
int hermite_with(const HermiteArgs &a, std::ostream &out, std::ostream &err)
{
    const auto sigma = parse_matrix<T>(a.sigma);
    std::vector<T> x;
    for (const auto &f : split(a.x, ',')) {
        x.push_back(parse_number<T>(f));
    }
    const auto index = MultiIndex::parse(a.index);
    const auto kind = a.scaled ? HermiteKind::Scaled : HermiteKind::Standard;
    if (a.route == "bell") {
        out << format_number(hermite_via_bell<T>(index, sigma, x, kind)) << '\n';
        return Ok;
    }
    const T value = hermite<T>(index, sigma, x, kind);
    if (a.route == "both") {
        const T other = hermite_via_bell<T>(index, sigma, x, kind);
        if (!(other == value)) {
            err << "routes differ: " << format_number(value) << " vs " << format_number(other) << '\n';
            out << format_number(value) << '\n';
            return Mismatch;
        }
    }
    out << format_number(value) << '\n';
    return Ok;
}

int cmd_hermite(const HermiteArgs &a, std::ostream &out, std::ostream &err)
{
    return a.use_float ? hermite_with<double>(a, out, err) : hermite_with<Rational>(a, out, err);
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Compressed multivariate Faa di Bruno formulas and their applications", "umfb"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    ComputeArgs compute;
    auto *c = app.add_subcommand("compute", "Derivative of f(g1(t), ..., gn(t)) in compressed form");
    c->add_option("-i,--index", compute.index, "Derivative order, e.g. 2,1")->required();
    c->add_option("-n", compute.n, "Number of outer arguments (inner functions)")->check(CLI::PositiveNumber);
    c->add_option("-m", compute.m, "Number of variables; must equal the index length")->check(CLI::PositiveNumber);
    c->add_option("--mode", compute.mode, "general, shared-inner, bell or uni-outer")
        ->check(CLI::IsMember({"general", "shared-inner", "bell", "uni-outer"}));
    c->add_option("--format", compute.format, "text, latex or json")
        ->check(CLI::IsMember({"text", "latex", "json"}));
    c->add_option("-o,--output", compute.output, "Write to this file instead of stdout");
    c->add_option("--threads", compute.threads, "Worker threads, 0 for all cores");

    PartitionArgs parts;
    auto *p = app.add_subcommand("partitions", "List the partitions of a multi-index");
    p->add_option("-i,--index", parts.index, "Multi-index, e.g. 2,1")->required();
    p->add_flag("--count-only", parts.count_only, "Print only the number of partitions");

    VerifyArgs verify;
    auto *v = app.add_subcommand("verify", "Compare umfb against the chain-rule oracle over a grid of cases");
    v->add_option("--max-order", verify.max_order, "Largest |i|");
    v->add_option("--max-n", verify.max_n, "Largest n")->check(CLI::PositiveNumber);
    v->add_option("--max-m", verify.max_m, "Largest m")->check(CLI::PositiveNumber);
    v->add_flag("--inject-fault", verify.inject_fault)->group("");

    BenchArgs bench;
    auto *b = app.add_subcommand("bench", "Time umfb against the chain-rule oracle");
    b->add_option("--rows", bench.rows, "File of 'i;n' lines; default is the built-in table rows");
    b->add_option("--csv", bench.csv, "Write the CSV here instead of stdout");
    b->add_option("--threads", bench.threads, "Worker threads, 0 for all cores");
    b->add_flag("--no-oracle", bench.no_oracle, "Skip the chain-rule side");

    ConvertArgs cumulants;
    auto *cu = app.add_subcommand("cumulants", "Cumulants from moments");
    cumulants.table.add_to(cu, "", "Moments");
    cu->add_option("-i,--index", cumulants.index, "Single index; omit to convert the whole table");

    ConvertArgs moments;
    auto *mo = app.add_subcommand("moments", "Moments from cumulants");
    moments.table.add_to(mo, "", "Cumulants");
    mo->add_option("-i,--index", moments.index, "Single index; omit to convert the whole table");

    PoissonArgs poisson;
    auto *po = app.add_subcommand("poisson", "Moments of a randomized compound Poisson vector");
    poisson.alpha.add_to(po, "alpha-", "Univariate moments of the random parameter");
    poisson.mu.add_to(po, "", "Moments of the summands");
    po->add_option("-i,--index", poisson.index, "Moment index")->required();

    HermiteArgs hermite_args;
    auto *h = app.add_subcommand("hermite", "Multivariate Hermite polynomial value");
    h->add_option("--sigma", hermite_args.sigma, "Covariance matrix, rows separated by ';'")->required();
    h->add_option("-x", hermite_args.x, "Point, comma separated")->required();
    h->add_option("-i,--index", hermite_args.index, "Polynomial index")->required();
    h->add_flag("--scaled", hermite_args.scaled, "Scaled polynomial H~(x, Sigma) = H(x Sigma^-1, Sigma^-1)");
    h->add_flag("--float", hermite_args.use_float, "Floating-point instead of exact arithmetic");
    h->add_option("--route", hermite_args.route, "appell, bell, or both (cross-check)")
        ->check(CLI::IsMember({"appell", "bell", "both"}));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        return app.exit(e, out, err) == 0 ? Ok : Usage;
    }

    try {
        if (c->parsed()) {
            return cmd_compute(compute, *c, out);
        }
        if (p->parsed()) {
            return cmd_partitions(parts, out);
        }
        if (v->parsed()) {
            return cmd_verify(verify, out);
        }
        if (b->parsed()) {
            return cmd_bench(bench, out, err);
        }
        if (cu->parsed()) {
            return cmd_convert(cumulants, true, out);
        }
        if (mo->parsed()) {
            return cmd_convert(moments, false, out);
        }
        if (po->parsed()) {
            return cmd_poisson(poisson, out);
        }
        return cmd_hermite(hermite_args, out, err);
    } catch (const ResourceCapExceeded &e) {
        err << "umfb: " << e.what() << '\n';
        return ResourceCap;
    } catch (const std::invalid_argument &e) {
        err << "umfb: " << e.what() << '\n';
        return Usage;
    } catch (const std::out_of_range &e) {
        err << "umfb: " << e.what() << '\n';
        return Usage;
    } catch (const std::domain_error &e) {
        err << "umfb: " << e.what() << '\n';
        return Usage;
    }
}

} // namespace umfb::cli
