#include <polyprod/catalog.hpp>
#include <polyprod/cli.hpp>
#include <polyprod/error.hpp>
#include <polyprod/expr.hpp>
#include <polyprod/factorization.hpp>
#include <polyprod/io.hpp>
#include <polyprod/monodromy.hpp>
#include <polyprod/symmetry.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <type_traits>

namespace polyprod {

using Json = nlohmann::ordered_json;

namespace {

auto same(const Polytope& p, const Polytope& q) -> bool
{
    return p.size() == q.size() && p.rank() == q.rank() && p.f_vector() == q.f_vector() && is_isomorphic(p, q);
}

auto int_root(int x, int k) -> int
{
    int r = static_cast<int>(std::lround(std::pow(static_cast<double>(x), 1.0 / k)));
    for (int c : {r - 1, r, r + 1}) {
        long long v = 1;
        for (int i = 0; i < k; ++i)
            v *= c;
        if (c > 0 && v == x)
            return c;
    }
    return -1;
}

} // namespace

auto polytope_name(const Polytope& p) -> std::string
{
    const int r = p.rank();
    if (r == -1)
        return "empty";
    if (r == 0)
        return "point";
    if (r == 1)
        return "edge";
    const auto fv = p.f_vector();
    if (r == 2)
        return "gon(" + std::to_string(fv[0]) + ")";
    if (r <= 8) {
        if (p.size() == (1 << (r + 1)) && same(p, simplex(r)))
            return "simplex(" + std::to_string(r) + ")";
        if (fv[0] == (1 << r) && same(p, cube(r)))
            return "cube(" + std::to_string(r) + ")";
        if (fv[0] == 2 * r && same(p, cross(r)))
            return "cross(" + std::to_string(r) + ")";
    }
    if (r - 1 >= 2 && r - 1 <= 4) {
        int q = int_root(fv[0], r - 1);
        if (q >= 2 && same(p, torus(q, r - 1)))
            return "torus(" + std::to_string(q) + "," + std::to_string(r - 1) + ")";
    }
    std::uint64_t h = 1469598103934665603ull;
    for (int c : canonical_form(p).code) {
        h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(c));
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string("poly") + buf;
}

namespace {

// Exit statuses.
constexpr int ok = 0;
constexpr int usage = 1;
constexpr int invalid = 2;

class Rows {
public:
    auto add(std::string key, std::string value) -> Rows&
    {
        rows_.emplace_back(std::move(key), std::move(value));
        return *this;
    }
    template <class T>
        requires std::is_arithmetic_v<T>
    auto add(std::string key, T value) -> Rows&
    {
        return add(std::move(key), std::to_string(value));
    }
    auto print(std::ostream& out) const -> void
    {
        std::size_t w = 0;
        for (const auto& [k, v] : rows_)
            w = std::max(w, k.size());
        for (const auto& [k, v] : rows_)
            out << std::left << std::setw(static_cast<int>(w + 2)) << k << v << '\n';
    }

private:
    std::vector<std::pair<std::string, std::string>> rows_;
};

auto join_ints(const std::vector<int>& v) -> std::string
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? " " : "") + std::to_string(v[i]);
    return s;
}

auto print_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows) -> void
{
    std::vector<std::size_t> w;
    for (const auto& r : rows)
        for (std::size_t c = 0; c < r.size(); ++c) {
            w.resize(std::max(w.size(), r.size()), 0);
            w[c] = std::max(w[c], r[c].size());
        }
    for (const auto& r : rows) {
        std::string line;
        for (std::size_t c = 0; c < r.size(); ++c) {
            line += r[c];
            if (c + 1 < r.size())
                line += std::string(w[c] - r[c].size() + 2, ' ');
        }
        out << line << '\n';
    }
}

struct Input {
    std::string label;
    FacePoset poset;
    ValidationReport validation;
    std::optional<Polytope> polytope;
};

auto read_file(const std::string& path) -> std::string
{
    std::ifstream in(path);
    if (! in)
        throw Error(ErrorCode::SyntaxError, "cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// EXPR is a polytope expression, or @file.json holding a face poset.
auto load(const std::string& text, ProductKind default_kind) -> Input
{
    Input in;
    in.label = text;
    if (! text.empty() && text.front() == '@') {
        in.poset = poset_from_json(read_file(text.substr(1)));
        in.validation = validate_polytope(in.poset);
        if (in.validation.is_polytope)
            in.polytope = Polytope::from_poset(in.poset);
        return in;
    }
    Expr e = parse_expr(text);
    in.label = to_string(e);
    in.polytope = evaluate(e, default_kind);
    in.poset = in.polytope->poset();
    return in;
}

auto require_polytope(const Input& in) -> const Polytope&
{
    if (! in.polytope) {
        const auto& v = in.validation.violations.front();
        throw Error(ErrorCode::NotAPolytope, violation_name(v.kind) + " between faces " + std::to_string(v.lower) + " and " +
                std::to_string(v.upper));
    }
    return *in.polytope;
}

auto parse_op(const std::string& s) -> ProductKind
{
    auto k = parse_kind(s);
    if (! k)
        throw Error(ErrorCode::SyntaxError, "unknown product '" + s + "', expected join, cart, dsum or topo");
    return *k;
}

auto verdict_json(const SplitResult& s) -> Json
{
    return {{"subject", s.subject}, {"target", s.target}, {"verdict", split_verdict_name(s.verdict)}};
}

auto report_json(const ExtensionReport& r) -> Json
{
    Json j;
    j["order"] = r.monodromy_order;
    j["n"] = r.n;
    j["image_order"] = r.image_order;
    j["kernel_order"] = r.kernel_order;
    j["subgroups"] = Json::object();
    for (const auto& [name, order] : r.subgroups)
        j["subgroups"][name] = order;
    j["checks"] = Json::array();
    for (const auto& c : r.checks)
        j["checks"].push_back({{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"passed", c.passed()}});
    j["splits"] = Json::array();
    for (const auto& s : r.splits)
        j["splits"].push_back(verdict_json(s));
    return j;
}

auto info(const Input& in, bool json, std::ostream& out) -> int
{
    const bool valid = in.validation.is_polytope;
    if (json) {
        Json j;
        j["expression"] = in.label;
        if (valid) {
            const Polytope& p = require_polytope(in);
            j["rank"] = p.rank();
            j["f_vector"] = p.f_vector();
            j["faces"] = p.size();
            j["flags"] = p.flag_count();
        }
        else
            j["faces"] = in.poset.size();
        j["valid"] = valid;
        j["violations"] = Json::array();
        for (const auto& v : in.validation.violations)
            j["violations"].push_back({{"kind", violation_name(v.kind)}, {"lower", v.lower}, {"upper", v.upper}});
        out << j.dump(2) << '\n';
        return valid ? ok : invalid;
    }
    Rows rows;
    rows.add("expression", in.label);
    if (valid) {
        const Polytope& p = require_polytope(in);
        rows.add("rank", p.rank()).add("f-vector", join_ints(p.f_vector())).add("faces", p.size()).add("flags", p.flag_count());
    }
    else
        rows.add("faces", in.poset.size());
    rows.add("valid", valid ? "yes" : "no");
    for (const auto& v : in.validation.violations)
        rows.add("violation", violation_name(v.kind) + " " + std::to_string(v.lower) + " " + std::to_string(v.upper));
    rows.print(out);
    return valid ? ok : invalid;
}

auto factor_cmd(const Polytope& p, ProductKind kind, bool json, std::ostream& out) -> int
{
    auto fr = factor(p, kind);
    if (json) {
        Json j;
        j["kind"] = kind_name(kind);
        j["factors"] = Json::array();
        for (const auto& [q, m] : fr.factors)
            j["factors"].push_back({{"name", polytope_name(q)}, {"multiplicity", m}, {"rank", q.rank()}, {"faces", q.size()}});
        j["coordinatization"] = fr.coordinatization;
        out << j.dump(2) << '\n';
        return ok;
    }
    for (const auto& [q, m] : fr.factors)
        out << polytope_name(q) << " ^ " << m << '\n';
    return ok;
}

auto aut_cmd(const Polytope& p, bool json, std::ostream& out) -> int
{
    auto g = automorphism_group(p);
    auto orbits = g.orbits();
    if (json) {
        Json j;
        j["order"] = g.order();
        j["flags"] = p.flag_count();
        j["flag_orbits"] = orbits.size();
        j["generators"] = Json::array();
        for (const auto& x : g.generators())
            j["generators"].push_back(face_map(p, x));
        out << j.dump(2) << '\n';
        return ok;
    }
    Rows()
        .add("order", g.order())
        .add("flags", p.flag_count())
        .add("flag orbits", orbits.size())
        .add("generators", g.generators().size())
        .print(out);
    return ok;
}

auto orbits_cmd(const Polytope& p, ProductKind kind, bool json, std::ostream& out) -> int
{
    auto r = orbit_report(p, kind);
    if (json) {
        Json j;
        j["kind"] = kind_name(kind);
        j["flags"] = r.flag_count;
        j["actual"] = r.actual;
        j["predicted"] = r.predicted;
        j["group_order"] = r.group_order;
        j["predicted_group_order"] = r.predicted_group_order;
        j["orbit_sizes"] = r.orbit_sizes;
        j["factors"] = Json::array();
        for (const auto& t : r.terms)
            j["factors"].push_back({{"name", polytope_name(t.factor)}, {"multiplicity", t.multiplicity}, {"orbits", t.orbits},
                {"steps", t.steps}, {"group_order", t.group_order}});
        out << j.dump(2) << '\n';
        return ok;
    }
    Rows()
        .add("kind", std::string(kind_name(kind)))
        .add("flags", r.flag_count)
        .add("actual", r.actual)
        .add("predicted", r.predicted)
        .add("group order", r.group_order)
        .add("predicted order", r.predicted_group_order)
        .print(out);
    out << '\n';
    std::vector<std::vector<std::string>> table{{"factor", "m", "orbits", "steps", "group"}};
    for (const auto& t : r.terms)
        table.push_back({polytope_name(t.factor), std::to_string(t.multiplicity), std::to_string(t.orbits),
            std::to_string(t.steps), std::to_string(t.group_order)});
    print_table(out, table);
    return ok;
}

// Parameter q when name is "gon(q)".
auto gon_parameter(const std::string& name) -> int
{
    int q = 0;
    if (std::sscanf(name.c_str(), "gon(%d)", &q) == 1)
        return q;
    return 0;
}

// Structure report, using the dedicated prism, pyramid and polygon-product
// analyses when the factors match.
auto structure_of(const Polytope& p, std::optional<ProductKind> op) -> std::pair<ProductKind, ExtensionReport>
{
    std::optional<FactorizationResult> fr;
    if (op)
        fr = factor(p, *op);
    else
        for (ProductKind k : {ProductKind::Cartesian, ProductKind::Join, ProductKind::DirectSum, ProductKind::Topological}) {
            try {
                auto f = factor(p, k);
                if (f.factor_count() >= 2) {
                    fr = std::move(f);
                    break;
                }
            }
            catch (const Error&) {
            }
        }
    if (! fr || fr->factor_count() < 2)
        throw Error(ErrorCode::InvalidInput, "not a product of two or more factors under " +
                (op ? std::string(kind_name(*op)) : std::string("any product")));

    std::vector<std::string> names;
    for (const auto& q : fr->expanded())
        names.push_back(polytope_name(q));
    std::sort(names.begin(), names.end());
    const ProductKind kind = fr->kind;
    if (kind == ProductKind::Cartesian && names.size() == 2 && names[0] == "edge" && gon_parameter(names[1]) >= 3)
        return {kind, prism_structure(gon_parameter(names[1]))};
    if (kind == ProductKind::Join && names.size() == 2 && names[1] == "point" && gon_parameter(names[0]) >= 3)
        return {kind, pyramid_structure(gon_parameter(names[0]))};
    if (kind == ProductKind::Topological) {
        std::vector<int> ps;
        for (const auto& n : names)
            if (int q = gon_parameter(n); q >= 2)
                ps.push_back(q);
        if (ps.size() == names.size() && p.flag_count() <= 10'000)
            return {kind, topo_polygons_structure(ps)};
    }
    return {kind, projection_report(p, *fr)};
}

auto mono_cmd(const Polytope& p, bool structure, std::optional<ProductKind> op, bool json, std::ostream& out) -> int
{
    auto m = monodromy_group(p);
    const bool transitive = p.rank() <= 0 || m.group.orbits().size() == 1;
    Json j;
    Rows rows;
    j["flags"] = p.flag_count();
    j["order"] = m.group.order();
    j["transitive"] = transitive;
    rows.add("flags", p.flag_count()).add("order", m.group.order()).add("transitive", transitive ? "yes" : "no");
    if (structure) {
        auto [kind, r] = structure_of(p, op);
        j["kind"] = kind_name(kind);
        j["structure"] = report_json(r);
        rows.add("kind", std::string(kind_name(kind))).add("n", r.n).add("image", r.image_order).add("kernel", r.kernel_order);
        for (const auto& [name, order] : r.subgroups)
            rows.add("subgroup " + name, order);
        for (const auto& s : r.splits)
            rows.add("split " + s.subject, split_verdict_name(s.verdict));
        for (const auto& c : r.checks)
            rows.add("check", c.name + (c.passed() ? ": ok" : ": FAILED (expected " + std::to_string(c.expected) +
                                                                  ", got " + std::to_string(c.actual) + ")"));
        if (! r.all_passed()) {
            if (json)
                out << j.dump(2) << '\n';
            else
                rows.print(out);
            return invalid;
        }
    }
    if (json)
        out << j.dump(2) << '\n';
    else
        rows.print(out);
    return ok;
}

auto export_cmd(const Input& in, const std::string& format, std::ostream& out) -> int
{
    if (format == "json")
        out << to_json(in.poset) << '\n';
    else if (format == "dot")
        out << to_dot(in.poset);
    else
        throw Error(ErrorCode::SyntaxError, "unknown format '" + format + "', expected json or dot");
    return ok;
}

} // namespace

auto run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) -> int
{
    CLI::App app{"Abstract polytopes: products, factorization, symmetry and monodromy", "polyprod"};
    app.require_subcommand(1);
    bool json = false;
    app.add_flag("--json", json, "Print reports as JSON");

    std::string expr, op, format = "json";
    bool structure = false;
    auto add_expr = [&](CLI::App* sub) {
        sub->add_option("expr", expr, "Polytope expression, or @file.json with a face poset")->required();
        sub->fallthrough();
    };
    auto* info_sub = app.add_subcommand("info", "Rank, f-vector, flag count and validation");
    add_expr(info_sub);
    auto* factor_sub = app.add_subcommand("factor", "Prime factorization under one product");
    factor_sub->add_option("--op", op, "join, cart, dsum or topo")->required();
    add_expr(factor_sub);
    auto* aut_sub = app.add_subcommand("aut", "Automorphism group on flags");
    add_expr(aut_sub);
    auto* orbits_sub = app.add_subcommand("orbits", "Flag orbits against the product formula");
    orbits_sub->add_option("--op", op, "join, cart, dsum or topo")->required();
    add_expr(orbits_sub);
    auto* mono_sub = app.add_subcommand("mono", "Monodromy group");
    mono_sub->add_flag("--structure", structure, "Projection onto S_n, kernel and split verdicts");
    mono_sub->add_option("--op", op, "Product used for --structure");
    add_expr(mono_sub);
    auto* export_sub = app.add_subcommand("export", "Face poset as JSON or DOT");
    export_sub->add_option("--format", format, "json or dot");
    add_expr(export_sub);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    }
    catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return usage;
    }

    try {
        std::optional<ProductKind> kind;
        if (! op.empty())
            kind = parse_op(op);
        Input in = load(expr, kind.value_or(ProductKind::Cartesian));
        if (info_sub->parsed())
            return info(in, json, out);
        if (export_sub->parsed())
            return export_cmd(in, format, out);
        const Polytope& p = require_polytope(in);
        if (factor_sub->parsed())
            return factor_cmd(p, *kind, json, out);
        if (aut_sub->parsed())
            return aut_cmd(p, json, out);
        if (orbits_sub->parsed())
            return orbits_cmd(p, *kind, json, out);
        return mono_cmd(p, structure, kind, json, out);
    }
    catch (const Error& e) {
        err << e.what() << '\n';
        return e.code() == ErrorCode::SyntaxError || e.code() == ErrorCode::RangeError ? usage : invalid;
    }
}

} // namespace polyprod
