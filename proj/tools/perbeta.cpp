// perbeta: witnesses, periodic representations and witness graphs for an
// algebraic base given by its minimal polynomial.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "perbeta/perbeta.hpp"

namespace {

using namespace perbeta;

enum Exit { Ok = 0, Parse = 1, Mismatch = 2, SearchFailed = 3, Internal = 4, OverBudget = 5 };

int exit_code(ErrorKind k)
{
    switch (k) {
    case ErrorKind::ParseError:
    case ErrorKind::DegenerateInput:
    case ErrorKind::PreconditionViolated:
    case ErrorKind::ZeroInversion:
    case ErrorKind::NonInvertible:
        return Parse;
    case ErrorKind::SearchBudgetExceeded:
    case ErrorKind::NoPath:
    case ErrorKind::InvalidPath:
    case ErrorKind::BudgetTooSmall:
        return SearchFailed;
    case ErrorKind::SizeBudgetExceeded:
        return OverBudget;
    case ErrorKind::DensityViolated:
    case ErrorKind::ValidationFailed:
        return Internal;
    }
    return Internal;
}

struct Common {
    std::string minpoly;
    bool descending = false;
    std::string format = "text";
};

void add_common(CLI::App* cmd, Common& c)
{
    cmd->add_option("--minpoly", c.minpoly, "integer coefficients a_0,a_1,...,a_d")->required();
    cmd->add_flag("--descending", c.descending, "coefficients are given a_d,...,a_0");
}

void add_format(CLI::App* cmd, Common& c)
{
    cmd->add_option("--format", c.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
}

/// PERBETA_BUDGET caps walk steps, graph states and exported vertices.
std::optional<std::uint64_t> env_budget()
{
    const char* v = std::getenv("PERBETA_BUDGET");
    if (!v || !*v)
        return std::nullopt;
    const Integer b = io::parse_integer(v);
    if (b < 1 || !b.fits_ulong_p())
        throw Error(ErrorKind::ParseError, "PERBETA_BUDGET must be a positive integer");
    return b.get_ui();
}

SearchBudget search_budget()
{
    SearchBudget b;
    if (auto v = env_budget()) {
        b.max_walk_steps = *v;
        b.max_graph_states = *v;
    }
    return b;
}

BaseRef load_base(const Common& c, double tol = 1e-9, std::optional<std::size_t> root = {})
{
    return check_base(io::parse_minpoly(c.minpoly, c.descending), tol, root);
}

int cmd_witness(const Common& c, const std::string& n_text, const std::string& method_name)
{
    const BaseRef base = load_base(c);
    const Modulus n = io::parse_modulus(n_text);
    const Method method = method_name == "walk"    ? Method::Walk
                          : method_name == "graph" ? Method::Graph
                                                   : Method::Auto;
    const FermatWitness w = find_witness(base, n, method, search_budget());
    if (c.format == "json")
        std::cout << io::witness_json(w).dump(2) << "\n";
    else
        std::cout << w.identity() << "\n"
                  << "i = " << w.i() << ", j = " << w.j() << ", r = " << to_string(w.r()) << "\n";
    return Ok;
}

int cmd_represent(const Common& c, const std::string& target, double factor,
                  std::optional<long> normalize_bound)
{
    const BaseRef base = load_base(c);
    const FieldElement x = io::parse_field_element(target, base);
    PeriodicRep rep = rep_of_field_element(x, factor, search_budget());
    if (normalize_bound)
        rep = normalize_digits(rep, Integer(*normalize_bound));
    if (!(eval_rep(rep) == x)) {
        std::cerr << "internal error: representation does not evaluate to the target\n";
        return Internal;
    }
    const Integer bound = rep.max_abs_digit();
    if (c.format == "json") {
        io::json out = {{"rep", io::rep_json(rep)},
                        {"human", to_human(rep)},
                        {"digit_bound", io::integer_json(bound)},
                        {"value", to_string(x)}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "rep: " << io::rep_json(rep).dump() << "\n"
                  << "digits: " << to_human(rep) << "\n"
                  << "digit bound: " << bound << "\n";
    }
    return Ok;
}

int cmd_verify(const Common& c, const std::string& rep_file, const std::string& expected)
{
    const BaseRef base = load_base(c);
    std::ifstream in(rep_file);
    if (!in)
        throw Error(ErrorKind::ParseError, "cannot read " + rep_file);
    std::stringstream ss;
    ss << in.rdbuf();
    const PeriodicRep rep = io::parse_rep(ss.str(), base);
    const FieldElement want = io::parse_field_element(expected, base);
    const FieldElement got = eval_rep(rep);
    std::cout << "value:    " << to_string(got) << "\n"
              << "expected: " << to_string(want) << "\n";
    if (got == want) {
        std::cout << "match\n";
        return Ok;
    }
    std::cout << "mismatch\n";
    return Mismatch;
}

int cmd_graph(const Common& c, const std::string& n_text, const std::string& scope,
              const std::string& out_path)
{
    const BaseRef base = load_base(c);
    const Modulus n = io::parse_modulus(n_text);
    std::size_t cap = 20000;
    if (auto v = env_budget())
        cap = static_cast<std::size_t>(*v);
    const std::string dot = graph::export_dot(
        *base, n, scope == "full" ? graph::Scope::Full : graph::Scope::Reachable, cap);
    if (out_path.empty() || out_path == "-") {
        std::cout << dot;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out)
            throw Error(ErrorKind::ParseError, "cannot write " + out_path);
        out << dot;
    }
    return Ok;
}

int cmd_check_base(const Common& c, double tol, std::optional<std::size_t> root)
{
    const BaseRef base = load_base(c, tol, root);
    const Eligibility e = eligibility(*base);
    if (c.format == "json") {
        io::json roots = io::json::array();
        for (std::size_t k = 0; k < base->roots.size(); ++k)
            roots.push_back({{"re", base->roots[k].real()},
                             {"im", base->roots[k].imag()},
                             {"modulus", base->root_moduli[k]}});
        io::json out = {{"minpoly", io::poly_json(base->minpoly)},
                        {"roots", roots},
                        {"beta_index", base->designated_root_index},
                        {"unit_circle_conjugate", std::string(to_string(base->has_unit_circle_conjugate))},
                        {"eligibility", std::string(to_string(e))}};
        std::cout << out.dump(2) << "\n";
        return Ok;
    }
    std::cout << "minpoly: " << to_string(base->minpoly) << "\n";
    for (std::size_t k = 0; k < base->roots.size(); ++k) {
        const auto& r = base->roots[k];
        std::ostringstream line;
        line.precision(12);
        line << "root " << k << ": " << r.real() << (r.imag() < 0 ? " - " : " + ")
             << std::abs(r.imag()) << "i  |root| = " << base->root_moduli[k]
             << (k == base->designated_root_index ? "  (beta)" : "");
        std::cout << line.str() << "\n";
    }
    std::cout << "unit-circle conjugate: " << to_string(base->has_unit_circle_conjugate) << "\n"
              << "eligibility: " << to_string(e) << "\n";
    if (e == Eligibility::UnitFractionsOnly)
        std::cout << "warning: unit fractions 1/n have periodic representations, but one fixed "
                     "alphabet for all of Q(beta) is not guaranteed\n";
    return Ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Eventually periodic representations in an algebraic base"};
    app.require_subcommand(1);

    Common c;
    std::string n_text, method = "auto", target, rep_file, expected, scope = "reachable", out;
    double factor = 2.0, tol = 1e-9;
    std::optional<long> normalize_bound;
    std::optional<std::size_t> root;

    auto* witness = app.add_subcommand("witness", "find i > j with beta^i - beta^j in nZ[beta]");
    add_common(witness, c);
    add_format(witness, c);
    witness->add_option("--n", n_text, "modulus n >= 2")->required();
    witness->add_option("--method", method, "auto, walk or graph")
        ->check(CLI::IsMember({"auto", "walk", "graph"}));

    auto* represent = app.add_subcommand("represent", "periodic representation of an element");
    add_common(represent, c);
    add_format(represent, c);
    represent->add_option("--target", target,
                          "rational, or rational coordinates c_0,c_1,... in powers of beta")
        ->required();
    represent->add_option("--factor", factor, "densification factor (> 1)");
    represent->add_option("--normalize-bound", normalize_bound, "try to reduce digits to this bound");

    auto* verify = app.add_subcommand("verify", "evaluate a representation exactly");
    add_common(verify, c);
    verify->add_option("--rep", rep_file, "representation JSON file")->required();
    verify->add_option("--expected", expected, "expected value, as for represent --target")
        ->required();

    auto* graph_cmd = app.add_subcommand("graph", "export the witness graph G(m, n) as DOT");
    add_common(graph_cmd, c);
    graph_cmd->add_option("--n", n_text, "modulus n >= 2")->required();
    graph_cmd->add_option("--scope", scope, "reachable or full")
        ->check(CLI::IsMember({"reachable", "full"}));
    graph_cmd->add_option("--out", out, "output file (default stdout)");

    auto* check = app.add_subcommand("check-base", "root moduli and eligibility of the base");
    add_common(check, c);
    add_format(check, c);
    check->add_option("--tolerance", tol, "unit-circle tolerance");
    check->add_option("--root", root, "index of the root taken as beta (by decreasing modulus)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return Parse;
    }

    try {
        if (*witness)
            return cmd_witness(c, n_text, method);
        if (*represent)
            return cmd_represent(c, target, factor, normalize_bound);
        if (*verify)
            return cmd_verify(c, rep_file, expected);
        if (*graph_cmd)
            return cmd_graph(c, n_text, scope, out);
        if (*check)
            return cmd_check_base(c, tol, root);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return Internal;
    }
    return Parse;
}
